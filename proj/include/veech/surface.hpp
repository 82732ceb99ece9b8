#pragma once

// L-shaped prototype surfaces and the exact action of the two parabolic
// generators on points.
//
// Coordinates: the lower horizontal cylinder is [0,W] x [0,1], the upper one
// [0,1] x [1,H]. B twists the horizontal cylinders, A the vertical ones
// ([0,1] x [0,H] on the left, [1,W] x [0,1] on the right).
//
//   eps   shear_A   shear_B   W      H
//    0    w         1+w       1+w    w
//   +1    w-1       1+w       1+w    w-1
//   -1    w         w         w      w
//
// In every case W = shear_B and H = shear_A, so the lower and left cylinders
// have modulus exactly one full twist and the upper/right ones have the
// complementary unit period.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "veech/error.hpp"
#include "veech/quadfield.hpp"

namespace veech {

enum class Gen : std::uint8_t { A, B };

inline char gen_char(Gen g) { return g == Gen::A ? 'A' : 'B'; }

struct Letter {
  Gen gen;
  std::int64_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline std::string to_string(const Letter& l) {
  return std::string(1, gen_char(l.gen)) + "^" + std::to_string(l.exp);
}

// Letters are stored in application order: letters()[0] acts first. The
// printed form uses operator notation, so it reads right to left.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  GeneratorWord(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) push(l.gen, l.exp);
  }

  // Appends g^exp (applied after everything already in the word), merging
  // with the last letter when the generator repeats.
  void push(Gen g, std::int64_t exp) {
    if (exp == 0) return;
    if (!letters_.empty() && letters_.back().gen == g) {
      letters_.back().exp += exp;
      if (letters_.back().exp == 0) letters_.pop_back();
      return;
    }
    letters_.push_back({g, exp});
  }

  void append(const GeneratorWord& later) {
    for (const auto& l : later.letters_) push(l.gen, l.exp);
  }

  GeneratorWord inverse() const {
    GeneratorWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push(it->gen, -it->exp);
    return out;
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<Letter> letters_;
};

// "A^-1 B^-1 A^1": the rightmost letter is applied first. Empty word prints "".
inline std::string to_string(const GeneratorWord& w) {
  std::string out;
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += to_string(*it);
  }
  return out;
}

inline GeneratorWord parse_word(std::string_view text) {
  std::vector<Letter> ops;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 3 || (tok[0] != 'A' && tok[0] != 'B') || tok[1] != '^')
      throw domain_error("malformed word letter '" + tok + "'");
    std::int64_t e = 0;
    try {
      std::size_t used = 0;
      e = std::stoll(tok.substr(2), &used);
      if (used != tok.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw domain_error("malformed word letter '" + tok + "'");
    }
    ops.push_back({tok[0] == 'A' ? Gen::A : Gen::B, e});
  }
  GeneratorWord out;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.push(it->gen, it->exp);
  return out;
}

struct Matrix2 {
  QuadNum a, b, c, d;
  QuadNum det() const { return a * d - b * c; }
};

class SurfaceProto {
 public:
  // Interned; D >= 5, D = 0,1 mod 4, D not a square, and the spin must match
  // D: eps = 0 needs D = 0 mod 4, eps = -1 needs D = 1 mod 4, eps = +1 needs
  // D = 1 mod 8.
  static const SurfaceProto& get(long D, int eps) {
    static std::mutex mutex;
    static std::map<std::pair<long, int>, std::unique_ptr<SurfaceProto>> registry;
    validate(D, eps);
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{D, eps}];
    if (!slot) slot.reset(new SurfaceProto(D, eps));
    return *slot;
  }

  // "L8", "L5-", "L17+" (also "L5,-1" / "L17,+1").
  static const SurfaceProto& by_name(std::string_view name) {
    if (name.size() < 2 || name[0] != 'L') throw domain_error("unknown surface '" + std::string(name) + "'");
    std::string rest(name.substr(1));
    int eps = 0;
    for (const auto& [suffix, e] : {std::pair<std::string, int>{",+1", 1}, {",-1", -1}, {"+", 1}, {"-", -1}}) {
      if (rest.size() > suffix.size() && rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
        eps = e;
        rest.resize(rest.size() - suffix.size());
        break;
      }
    }
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw domain_error("unknown surface '" + std::string(name) + "'");
    return get(std::stol(rest), eps);
  }

  long D() const noexcept { return D_; }
  int eps() const noexcept { return eps_; }
  const FieldSpec& field() const noexcept { return *field_; }

  QuadNum w() const { return QuadNum::w(*field_); }
  QuadNum constant(const Rational& q) const { return QuadNum(*field_, q); }
  QuadNum make(const Rational& r, const Rational& i) const { return QuadNum(*field_, r, i); }

  const QuadNum& shear_A() const noexcept { return shear_A_; }
  const QuadNum& shear_B() const noexcept { return shear_B_; }
  // Horizontal periods: lower cylinder W, upper cylinder 1.
  const QuadNum& lower_period() const noexcept { return shear_B_; }
  QuadNum upper_period() const { return constant(1); }
  // Vertical periods: left cylinder H, right cylinder 1.
  const QuadNum& left_period() const noexcept { return shear_A_; }
  QuadNum right_period() const { return constant(1); }
  const QuadNum& width() const noexcept { return shear_B_; }
  const QuadNum& height() const noexcept { return shear_A_; }

  // A = [[1,0],[shear_A,1]], B = [[1,shear_B],[0,1]]. Some renderings of the
  // L_8 generators show sqrt(2) in both off-diagonal slots; the B twist is
  // 1+w there, which is what the mod-N action [a+c+2d, b+c+d, c, d] encodes.
  Matrix2 genA() const { return {constant(1), constant(0), shear_A_, constant(1)}; }
  Matrix2 genB() const { return {constant(1), shear_B_, constant(0), constant(1)}; }

  // Growth rates of the irrational-part increment in the left (A) and lower
  // (B) cylinders: |Delta_A| ~ k |x_i| a_rate, |Delta_B| ~ l |y_i| b_rate.
  // For eps = +1 the lower B rate is w-2 (the cylinder modulus exceeds 2).
  const QuadNum& a_rate() const noexcept { return a_rate_; }
  const QuadNum& b_rate() const noexcept { return b_rate_; }

  std::string name() const {
    std::string out = "L" + std::to_string(D_);
    if (eps_ > 0) out += "+";
    if (eps_ < 0) out += "-";
    return out;
  }

  SurfaceProto(const SurfaceProto&) = delete;
  SurfaceProto& operator=(const SurfaceProto&) = delete;

 private:
  static void validate(long D, int eps) {
    const std::string tag = "(D=" + std::to_string(D) + ", eps=" + std::to_string(eps) + ")";
    if (D < 5) throw domain_error("prototype needs D >= 5 " + tag);
    if (D % 4 != 0 && D % 4 != 1) throw domain_error("prototype needs D = 0,1 mod 4 " + tag);
    if (mpz_perfect_square_p(Integer(D).get_mpz_t())) throw domain_error("prototype needs non-square D " + tag);
    switch (eps) {
      case 0:
        if (D % 4 != 0) throw domain_error("eps = 0 needs D = 0 mod 4 " + tag);
        break;
      case -1:
        if (D % 4 != 1) throw domain_error("eps = -1 needs D = 1 mod 4 " + tag);
        break;
      case 1:
        if (D % 8 != 1) throw domain_error("eps = +1 needs D = 1 mod 8 " + tag);
        break;
      default:
        throw domain_error("eps must be 0, +1 or -1 " + tag);
    }
  }

  SurfaceProto(long D, int eps)
      : D_(D),
        eps_(eps),
        field_(&FieldSpec::for_discriminant(D)),
        shear_A_(*field_),
        shear_B_(*field_),
        a_rate_(*field_),
        b_rate_(*field_) {
    const QuadNum w = QuadNum::w(*field_);
    const QuadNum one = constant(1);
    switch (eps) {
      case 0:
        shear_A_ = w;
        shear_B_ = one + w;
        a_rate_ = w;
        b_rate_ = w - one;
        break;
      case 1:
        shear_A_ = w - one;
        shear_B_ = one + w;
        a_rate_ = w;
        b_rate_ = w - constant(2);
        break;
      default:
        shear_A_ = w;
        shear_B_ = w;
        a_rate_ = w - one;
        b_rate_ = w - one;
        break;
    }
    if (compare(shear_A_, Rational(1)) <= 0 || compare(shear_B_, Rational(1)) <= 0)
      throw domain_error("degenerate prototype " + name());
  }

  long D_;
  int eps_;
  const FieldSpec* field_;
  QuadNum shear_A_;
  QuadNum shear_B_;
  QuadNum a_rate_;
  QuadNum b_rate_;
};

// Why (x, y) is not a canonical nonsingular point, or nullopt if it is.
//   0 <= y < 1:  0 <= x < W
//   y == 1:      0 <  x < 1   (x >= 1 on y = 1 is the same point as (x, 0))
//   1 < y < H:   0 <= x < 1
// The cone point appears as (0,0), (1,0) and (0,1).
inline std::optional<std::string> noncanonical_reason(const SurfaceProto& S, const QuadNum& x,
                                                      const QuadNum& y) {
  if (&x.field() != &S.field() || &y.field() != &S.field()) return "coordinates over the wrong field";
  if (sign(x) < 0) return "x < 0";
  if (sign(y) < 0) return "y < 0";
  const int y1 = compare(y, Rational(1));
  if (y1 < 0) {
    if (compare(x, S.width()) >= 0) return "x >= W in the lower cylinder";
    if (y.is_zero() && (x.is_zero() || x == Rational(1))) return "cone point";
    return std::nullopt;
  }
  if (compare(y, S.height()) >= 0) return "y >= H";
  if (compare(x, Rational(1)) >= 0) return y1 == 0 ? "x >= 1 on y = 1 (use y = 0)" : "x >= 1 in the upper cylinder";
  if (y1 == 0 && x.is_zero()) return "cone point";
  return std::nullopt;
}

class SurfacePoint {
 public:
  static SurfacePoint make(const SurfaceProto& S, QuadNum x, QuadNum y) {
    if (auto why = noncanonical_reason(S, x, y))
      throw domain_error("not a canonical point of " + S.name() + ": " + *why + " at (" + to_string(x) + ", " +
                         to_string(y) + ")");
    return SurfacePoint(S, std::move(x), std::move(y));
  }
  static SurfacePoint make(const SurfaceProto& S, const Rational& xr, const Rational& xi, const Rational& yr,
                           const Rational& yi) {
    return make(S, S.make(xr, xi), S.make(yr, yi));
  }

  const SurfaceProto& proto() const noexcept { return *proto_; }
  const QuadNum& x() const noexcept { return x_; }
  const QuadNum& y() const noexcept { return y_; }
  std::array<Rational, 4> parts() const {
    return {x_.rational_part(), x_.irrational_part(), y_.rational_part(), y_.irrational_part()};
  }

  friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
    return a.proto_ == b.proto_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  // Trusted constructor for action outputs, which land in the canonical region
  // by construction. Checked in debug builds.
  static SurfacePoint unchecked(const SurfaceProto& S, QuadNum x, QuadNum y) {
    assert(!noncanonical_reason(S, x, y));
    return SurfacePoint(S, std::move(x), std::move(y));
  }

 private:
  SurfacePoint(const SurfaceProto& S, QuadNum x, QuadNum y) : proto_(&S), x_(std::move(x)), y_(std::move(y)) {}

  const SurfaceProto* proto_;
  QuadNum x_;
  QuadNum y_;
};

// Exact lexicographic order on (x_r, x_i, y_r, y_i); the canonical vertex key.
struct PointLess {
  bool operator()(const SurfacePoint& a, const SurfacePoint& b) const {
    const Rational* pa[4] = {&a.x().rational_part(), &a.x().irrational_part(), &a.y().rational_part(),
                             &a.y().irrational_part()};
    const Rational* pb[4] = {&b.x().rational_part(), &b.x().irrational_part(), &b.y().rational_part(),
                             &b.y().irrational_part()};
    for (int k = 0; k < 4; ++k) {
      const int c = cmp(*pa[k], *pb[k]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

struct PointHash {
  std::size_t operator()(const SurfacePoint& p) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const Integer& z) {
      const std::size_t limb = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
      h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
      h *= 0x100000001b3ull;
    };
    for (const auto& q : p.parts()) {
      mix(q.get_num());
      mix(q.get_den());
    }
    return h;
  }
};

// "x_r,x_i,y_r,y_i", each "p/q" reduced.
inline std::string to_string(const SurfacePoint& p) {
  const auto parts = p.parts();
  return to_string(parts[0]) + "," + to_string(parts[1]) + "," + to_string(parts[2]) + "," + to_string(parts[3]);
}

inline std::ostream& operator<<(std::ostream& os, const SurfacePoint& p) { return os << to_string(p); }

inline SurfacePoint parse_point(const SurfaceProto& S, std::string_view text) {
  std::array<Rational, 4> parts;
  std::size_t start = 0;
  for (int k = 0; k < 4; ++k) {
    const std::size_t comma = text.find(',', start);
    if ((k < 3) == (comma == std::string_view::npos))
      throw domain_error("point literal needs four comma-separated rationals: '" + std::string(text) + "'");
    const auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::string trimmed(field);
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), [](unsigned char c) { return std::isspace(c); }),
                  trimmed.end());
    parts[k] = parse_rational(trimmed);
    start = comma + 1;
  }
  return SurfacePoint::make(S, parts[0], parts[1], parts[2], parts[3]);
}

// ---- actions ---------------------------------------------------------------

inline bool in_left_cylinder(const SurfacePoint& P) { return compare(P.x(), Rational(1)) <= 0; }
inline bool in_lower_cylinder(const SurfacePoint& P) { return compare(P.y(), Rational(1)) <= 0; }

// A^k: y' = y + k*shear_A*x mod H (x <= 1), y + k*shear_A*(x-1) mod 1 (x > 1).
inline SurfacePoint apply_A(const SurfacePoint& P, std::int64_t k) {
  if (k == 0) return P;
  const SurfaceProto& S = P.proto();
  const Rational kk(static_cast<long>(k));
  if (in_left_cylinder(P)) {
    auto dm = reduce_mod(P.y() + S.shear_A() * P.x() * kk, S.left_period());
    return SurfacePoint::unchecked(S, P.x(), std::move(dm.remainder));
  }
  QuadNum t = P.y() + S.shear_A() * (P.x() - Rational(1)) * kk;
  t -= Rational(floor(t));
  return SurfacePoint::unchecked(S, P.x(), std::move(t));
}

// B^l: x' = x + l*shear_B*y mod W (y <= 1), x + l*shear_B*(y-1) mod 1 (y > 1).
inline SurfacePoint apply_B(const SurfacePoint& P, std::int64_t l) {
  if (l == 0) return P;
  const SurfaceProto& S = P.proto();
  const Rational ll(static_cast<long>(l));
  if (in_lower_cylinder(P)) {
    auto dm = reduce_mod(P.x() + S.shear_B() * P.y() * ll, S.lower_period());
    return SurfacePoint::unchecked(S, std::move(dm.remainder), P.y());
  }
  QuadNum t = P.x() + S.shear_B() * (P.y() - Rational(1)) * ll;
  t -= Rational(floor(t));
  return SurfacePoint::unchecked(S, std::move(t), P.y());
}

inline SurfacePoint apply(const SurfacePoint& P, Gen g, std::int64_t exp) {
  return g == Gen::A ? apply_A(P, exp) : apply_B(P, exp);
}

inline SurfacePoint apply(const SurfacePoint& P, const Letter& l) { return apply(P, l.gen, l.exp); }

inline SurfacePoint apply_word(const SurfacePoint& P, const GeneratorWord& W) {
  SurfacePoint Q = P;
  for (const auto& l : W.letters()) Q = apply(Q, l);
  return Q;
}

// Change of the irrational part of y under A^k, without building the image:
// irrational part of the twist minus the wrap count times the period's.
inline Rational delta_A(const SurfacePoint& P, std::int64_t k) {
  if (k == 0) return 0;
  const SurfaceProto& S = P.proto();
  const Rational kk(static_cast<long>(k));
  if (in_left_cylinder(P)) {
    const QuadNum twist = S.shear_A() * P.x() * kk;
    const Integer q = floor((P.y() + twist) / S.left_period());
    return twist.irrational_part() - Rational(q) * S.left_period().irrational_part();
  }
  return (S.shear_A() * (P.x() - Rational(1)) * kk).irrational_part();
}

inline Rational delta_B(const SurfacePoint& P, std::int64_t l) {
  if (l == 0) return 0;
  const SurfaceProto& S = P.proto();
  const Rational ll(static_cast<long>(l));
  if (in_lower_cylinder(P)) {
    const QuadNum twist = S.shear_B() * P.y() * ll;
    const Integer q = floor((P.x() + twist) / S.lower_period());
    return twist.irrational_part() - Rational(q) * S.lower_period().irrational_part();
  }
  return (S.shear_B() * (P.y() - Rational(1)) * ll).irrational_part();
}

// ---- periodicity -------------------------------------------------------------

enum class Direction { horizontal, vertical };

// Height of the point inside its cylinder over the cylinder height. Horizontal
// cylinders (twisted by B) are measured in y, vertical ones (twisted by A) in x.
inline QuadNum splitting_ratio(const SurfacePoint& P, Direction dir) {
  const SurfaceProto& S = P.proto();
  if (dir == Direction::horizontal) {
    if (in_lower_cylinder(P)) return P.y();
    return (P.y() - Rational(1)) / (S.height() - Rational(1));
  }
  if (in_left_cylinder(P)) return P.x();
  return (P.x() - Rational(1)) / (S.width() - Rational(1));
}

inline bool is_A_periodic(const SurfacePoint& P) {
  return splitting_ratio(P, Direction::vertical).is_rational();
}

inline bool is_B_periodic(const SurfacePoint& P) {
  return splitting_ratio(P, Direction::horizontal).is_rational();
}

inline bool is_periodic(const SurfacePoint& P, Gen g) { return g == Gen::A ? is_A_periodic(P) : is_B_periodic(P); }

// ---- complexity ------------------------------------------------------------

inline Rational s_value(const SurfacePoint& P) {
  return Rational(abs(P.x().irrational_part()) + abs(P.y().irrational_part()));
}

inline Integer n_value(const SurfacePoint& P) {
  Integer n = 1;
  for (const auto& q : P.parts()) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), q.get_den_mpz_t());
  return n;
}

struct Thresholds {
  QuadNum k0, l0, k1, l1;
  std::int64_t k = 0;
  std::int64_t l = 0;
};

inline Thresholds thresholds(const SurfaceProto& S, std::int64_t N) {
  if (N < 1) throw domain_error("thresholds need N >= 1");
  const Rational n(static_cast<long>(N));
  auto max_of = [](std::initializer_list<QuadNum> xs) {
    QuadNum best = *xs.begin();
    for (const auto& x : xs)
      if (compare(x, best) > 0) best = x;
    return best;
  };
  auto level0 = [&](const QuadNum& rate) { return max_of({S.constant(3 * n) / rate, S.constant(2 * n + 1)}); };
  auto level1 = [&](const QuadNum& rate, const QuadNum& lvl0) {
    return max_of({S.constant(2 + n) / rate, lvl0, S.constant(2 * (n + 1)) / rate});
  };
  // Smallest multiple of N strictly above t.
  auto next_multiple = [&](const QuadNum& t) {
    const Integer q = floor(t / n) + 1;
    const Integer m = q * Integer(static_cast<long>(N));
    if (!m.fits_slong_p()) throw resource_error("threshold exponent overflows 64 bits");
    return static_cast<std::int64_t>(m.get_si());
  };
  Thresholds t{level0(S.a_rate()), level0(S.b_rate()), S.constant(0), S.constant(0)};
  t.k1 = level1(S.a_rate(), t.k0);
  t.l1 = level1(S.b_rate(), t.l0);
  t.k = next_multiple(t.k1);
  t.l = next_multiple(t.l1);
  return t;
}

}  // namespace veech
