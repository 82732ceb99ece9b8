// C(N) for small N, one line each.
#include <iostream>

#include "veech/modn.hpp"

int main() {
  for (std::int64_t N = 1; N <= 12; ++N) {
    const veech::ModNGraph g(N);
    std::cout << "N=" << N << "  |V|=" << g.vertex_count() << "  C(N)=" << g.component_count() << "\n";
  }
}
