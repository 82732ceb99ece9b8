// Reduce a point of L8 into the box S and replay the word.
#include <iostream>

#include "veech/reduce.hpp"

int main() {
  using namespace veech;
  const SurfaceProto& S = l8();
  const SurfacePoint P = parse_point(S, "-141,100,1/2,0");
  const ReduceResult r = reduce(P);
  std::cout << "P      = " << P << "\n";
  std::cout << "word   = " << to_string(r.word) << "\n";
  std::cout << "W P    = " << r.output << "  (" << r.steps << " steps)\n";
  std::cout << "replay = " << (apply_word(P, r.word) == r.output ? "exact" : "MISMATCH") << "\n";
  return apply_word(P, r.word) == r.output ? 0 : 1;
}
