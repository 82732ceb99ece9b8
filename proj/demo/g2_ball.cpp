// Build a radius-3 ball of G'' around a B-periodic point and classify it.
#include <iostream>

#include "veech/schreier.hpp"

int main() {
  using namespace veech;
  const SurfaceProto& S = SurfaceProto::get(8, 0);
  const SurfacePoint P = parse_point(S, "1/3,5/3,1/3,0");
  const G2Ball b = build_G2(P, 3);
  const ComponentShape shape = classify_component(b);
  std::cout << "k = " << b.thresholds.k << ", l = " << b.thresholds.l << "\n";
  std::cout << "root " << b.ball.vertices[b.ball.root] << ", " << b.ball.size() << " vertices\n";
  std::cout << "shape " << to_string(shape.kind) << "\n";
  for (const auto& v : shape.violations) std::cout << "  " << v << "\n";
  return shape.kind == ShapeKind::Other ? 1 : 0;
}
