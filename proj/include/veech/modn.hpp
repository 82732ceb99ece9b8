#pragma once

// The orbit-invariant graph G_N. A connection point with least common
// denominator N is recorded by the numerators [a,b,c,d] of (x_r, x_i, y_r, y_i)
// over N, reduced mod N. The generators act linearly on these residues
// because reducing by a cylinder period only shifts numerators by multiples
// of N.

#include <array>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "veech/error.hpp"
#include "veech/graph/union_find.hpp"
#include "veech/quadfield.hpp"
#include "veech/surface.hpp"

namespace veech {

struct ModNVec {
  std::int64_t N = 1;
  std::array<std::int64_t, 4> v{0, 0, 0, 0};

  std::int64_t a() const { return v[0]; }
  std::int64_t b() const { return v[1]; }
  std::int64_t c() const { return v[2]; }
  std::int64_t d() const { return v[3]; }

  friend bool operator==(const ModNVec&, const ModNVec&) = default;
};

inline std::int64_t mod_floor(std::int64_t x, std::int64_t N) {
  const std::int64_t r = x % N;
  return r < 0 ? r + N : r;
}

inline ModNVec make_modn(std::int64_t N, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (N < 1) throw domain_error("G_N needs N >= 1");
  ModNVec out{N, {mod_floor(a, N), mod_floor(b, N), mod_floor(c, N), mod_floor(d, N)}};
  std::int64_t g = N;
  for (auto x : out.v) g = std::gcd(g, x);
  if (g != 1) throw domain_error("residue vector with gcd(a,b,c,d,N) != 1");
  return out;
}

inline std::string to_string(const ModNVec& m) {
  return "[" + std::to_string(m.v[0]) + "," + std::to_string(m.v[1]) + "," + std::to_string(m.v[2]) + "," +
         std::to_string(m.v[3]) + "] mod " + std::to_string(m.N);
}

// Integer matrices of A and B acting on (x_r, x_i, y_r, y_i). Multiplication by
// s = alpha + beta*w sends r + i*w to (alpha r + beta e i) + (beta r + (alpha +
// beta f) i) w; A adds shear_A * x to y, B adds shear_B * y to x.
class ModNAction {
 public:
  using Mat = std::array<std::array<std::int64_t, 4>, 4>;

  // The L_8 action: A[a,b,c,d] = [a, b, c+2b, d+a], B = [a+c+2d, b+c+d, c, d].
  static ModNAction l8() { return ModNAction(SurfaceProto::get(8, 0)); }

  // Derived from the prototype's shears. Only L_8 is cross-checked against
  // independently published counts; other prototypes are experimental.
  explicit ModNAction(const SurfaceProto& S) : D_(S.D()), eps_(S.eps()) {
    const FieldSpec& F = S.field();
    auto integral = [](const Rational& q) {
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw domain_error("mod-N action needs integral data");
      return static_cast<std::int64_t>(q.get_num().get_si());
    };
    const std::int64_t e = integral(F.e());
    const std::int64_t f = integral(F.f());
    auto mult = [&](const QuadNum& s) {
      const std::int64_t al = integral(s.rational_part());
      const std::int64_t be = integral(s.irrational_part());
      return std::array<std::array<std::int64_t, 2>, 2>{{{al, be * e}, {be, al + be * f}}};
    };
    const auto sa = mult(S.shear_A());
    const auto sb = mult(S.shear_B());
    A_ = identity();
    B_ = identity();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        A_[2 + r][c] = sa[r][c];
        B_[r][2 + c] = sb[r][c];
      }
  }

  const Mat& matrix(Gen g) const { return g == Gen::A ? A_ : B_; }
  long D() const { return D_; }
  int eps() const { return eps_; }

  ModNVec act(const ModNVec& m, Gen g, int power = 1) const {
    const Mat& M = matrix(g);
    ModNVec out = m;
    const int steps = power < 0 ? -power : power;
    for (int s = 0; s < steps; ++s) out = power > 0 ? apply(M, out) : apply_inverse(M, out);
    return out;
  }

 private:
  static Mat identity() {
    Mat I{};
    for (int k = 0; k < 4; ++k) I[k][k] = 1;
    return I;
  }

  static ModNVec apply(const Mat& M, const ModNVec& m) {
    ModNVec out{m.N, {}};
    for (int r = 0; r < 4; ++r) {
      std::int64_t acc = 0;
      for (int c = 0; c < 4; ++c) acc += mod_floor(M[r][c], m.N) * m.v[c] % m.N;
      out.v[r] = acc % m.N;
    }
    return out;
  }

  // Both matrices are unipotent I + U with U^2 = 0, so the inverse is I - U.
  static ModNVec apply_inverse(const Mat& M, const ModNVec& m) {
    Mat inv = M;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (r != c) inv[r][c] = -M[r][c];
    return apply(inv, m);
  }

  long D_;
  int eps_;
  Mat A_;
  Mat B_;
};

inline ModNVec act(const ModNVec& m, Gen g) { return ModNAction::l8().act(m, g); }

// Numerators over N = n_value(P), reduced mod N.
inline ModNVec project(const SurfacePoint& P) {
  const Integer N = n_value(P);
  if (!N.fits_slong_p()) throw domain_error("denominator too large for G_N");
  ModNVec out{static_cast<std::int64_t>(N.get_si()), {}};
  const auto parts = P.parts();
  for (int k = 0; k < 4; ++k) {
    Integer num = parts[k].get_num() * (N / parts[k].get_den());
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), N.get_mpz_t());
    out.v[k] = r.get_si();
  }
  return out;
}

// Dense mixed-radix view of (Z/N)^4 with the gcd filter, and the components
// of the undirected graph spanned by A and B.
class ModNGraph {
 public:
  static constexpr std::uint64_t kDefaultVertexCap = std::uint64_t{1} << 26;

  ModNGraph(std::int64_t N, const ModNAction& action = ModNAction::l8(), std::uint64_t cap = kDefaultVertexCap)
      : N_(N), action_(action) {
    if (N < 1) throw domain_error("G_N needs N >= 1");
    const std::uint64_t n = static_cast<std::uint64_t>(N);
    const std::uint64_t raw = n * n * n * n;
    if (N > 65535 || raw > cap || raw > UINT32_MAX)
      throw resource_error("G_" + std::to_string(N) + " has " + std::to_string(raw) + " raw tuples, above the cap");
    raw_ = raw;
    valid_.assign(raw_, 0);
    for (std::uint64_t idx = 0; idx < raw_; ++idx) {
      const ModNVec m = decode(idx);
      std::int64_t g = N_;
      for (auto x : m.v) g = std::gcd(g, x);
      if (g == 1) {
        valid_[idx] = 1;
        ++vertices_;
      }
    }
    UnionFind uf(raw_);
    for (std::uint64_t idx = 0; idx < raw_; ++idx) {
      if (!valid_[idx]) continue;
      const ModNVec m = decode(idx);
      uf.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(encode(action_.act(m, Gen::A))));
      uf.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(encode(action_.act(m, Gen::B))));
    }
    label_.assign(raw_, -1);
    for (std::uint64_t idx = 0; idx < raw_; ++idx) {
      if (!valid_[idx]) continue;
      const std::uint32_t root = uf.find(static_cast<std::uint32_t>(idx));
      if (label_[root] < 0) {
        label_[root] = static_cast<std::int32_t>(reps_.size());
        reps_.push_back(decode(idx));
        sizes_.push_back(0);
      }
      label_[idx] = label_[root];
      ++sizes_[label_[idx]];
    }
  }

  std::int64_t N() const { return N_; }
  std::uint64_t raw_size() const { return raw_; }
  std::uint64_t vertex_count() const { return vertices_; }
  std::size_t component_count() const { return reps_.size(); }
  // Smallest vertex (in mixed-radix order) of each component, by first appearance.
  const std::vector<ModNVec>& representatives() const { return reps_; }
  const std::vector<std::uint64_t>& component_sizes() const { return sizes_; }
  const ModNAction& action() const { return action_; }

  bool is_vertex(std::uint64_t idx) const { return idx < raw_ && valid_[idx]; }

  std::int32_t component_of(const ModNVec& m) const {
    if (m.N != N_) throw domain_error("residue vector modulo a different N");
    const auto idx = encode(m);
    if (!valid_[idx]) throw domain_error("not a vertex of G_N: " + to_string(m));
    return label_[idx];
  }

  std::uint64_t encode(const ModNVec& m) const {
    const std::uint64_t n = static_cast<std::uint64_t>(N_);
    return ((static_cast<std::uint64_t>(m.v[0]) * n + static_cast<std::uint64_t>(m.v[1])) * n +
            static_cast<std::uint64_t>(m.v[2])) * n + static_cast<std::uint64_t>(m.v[3]);
  }

  ModNVec decode(std::uint64_t idx) const {
    const std::uint64_t n = static_cast<std::uint64_t>(N_);
    ModNVec m{N_, {}};
    for (int k = 3; k >= 0; --k) {
      m.v[k] = static_cast<std::int64_t>(idx % n);
      idx /= n;
    }
    return m;
  }

 private:
  std::int64_t N_;
  ModNAction action_;
  std::uint64_t raw_ = 0;
  std::uint64_t vertices_ = 0;
  std::vector<std::uint8_t> valid_;
  std::vector<std::int32_t> label_;
  std::vector<ModNVec> reps_;
  std::vector<std::uint64_t> sizes_;
};

struct ComponentsResult {
  std::size_t count;
  std::vector<ModNVec> representatives;
};

inline ComponentsResult components(std::int64_t N) {
  ModNGraph g(N);
  return {g.component_count(), g.representatives()};
}

struct MultiplicativityRow {
  std::int64_t n, m;
  std::size_t c_n, c_m, c_nm;
  bool holds() const { return c_nm == c_n * c_m; }
};

// C(nm) against C(n)C(m) for coprime n, m >= 2 with nm <= max_n.
inline std::vector<MultiplicativityRow> multiplicativity_report(std::int64_t max_n) {
  std::vector<std::size_t> c(static_cast<std::size_t>(max_n) + 1, 0);
  for (std::int64_t n = 1; n <= max_n; ++n) c[n] = ModNGraph(n).component_count();
  std::vector<MultiplicativityRow> rows;
  for (std::int64_t n = 2; n <= max_n; ++n)
    for (std::int64_t m = n + 1; n * m <= max_n; ++m)
      if (std::gcd(n, m) == 1) rows.push_back({n, m, c[n], c[m], c[n * m]});
  return rows;
}

}  // namespace veech
