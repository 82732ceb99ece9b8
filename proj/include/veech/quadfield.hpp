#pragma once

// Exact arithmetic in real quadratic fields Q(w), where w is the positive
// root of w^2 = e + f*w. Every coordinate, period and threshold in the
// library is a QuadNum; sign() is the only comparison primitive.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "veech/error.hpp"

namespace veech {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_rational(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer ceil_rational(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Always "p/q", including "/1" for integers.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p" or "p/q" with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw domain_error("malformed rational '" + std::string(text) + "'");
    return Rational(to_int(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw domain_error("malformed rational '" + std::string(text) + "'");
  return make_rational(to_int(num), to_int(den));
}

// The defining relation w^2 = e + f*w of a real quadratic field. Instances are
// interned: each (e, f) pair exists once, so field identity is address
// identity and QuadNum can carry a plain pointer.
class FieldSpec {
 public:
  enum class Label { sqrt_quarter_d, half_one_plus_sqrt_d, custom };

  static const FieldSpec& get(const Rational& e, const Rational& f, Label label = Label::custom) {
    static std::mutex mutex;
    static std::vector<std::unique_ptr<FieldSpec>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& spec : registry)
      if (spec->e_ == e && spec->f_ == f) return *spec;
    registry.push_back(std::unique_ptr<FieldSpec>(new FieldSpec(e, f, label)));
    return *registry.back();
  }

  // w = sqrt(D/4) for D = 0 mod 4, w = (1 + sqrt(D))/2 for D = 1 mod 4.
  static const FieldSpec& for_discriminant(long D) {
    if (D % 4 == 0) return get(Rational(D / 4), Rational(0), Label::sqrt_quarter_d);
    if (D % 4 == 1) return get(Rational((D - 1) / 4), Rational(1), Label::half_one_plus_sqrt_d);
    throw domain_error("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
  }

  const Rational& e() const noexcept { return e_; }
  const Rational& f() const noexcept { return f_; }
  // f^2 + 4e; w = (f + sqrt(disc)) / 2.
  const Rational& disc() const noexcept { return disc_; }
  double w_approx() const noexcept { return w_; }
  Label label() const noexcept { return label_; }

  std::string describe() const {
    return "w^2 = " + to_string(e_) + " + " + to_string(f_) + "*w";
  }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

 private:
  FieldSpec(const Rational& e, const Rational& f, Label label)
      : e_(e), f_(f), disc_(f * f + 4 * e), label_(label) {
    if (sgn(disc_) <= 0) throw domain_error("field discriminant must be positive: " + describe());
    if (mpz_perfect_square_p(disc_.get_num_mpz_t()) && mpz_perfect_square_p(disc_.get_den_mpz_t()))
      throw domain_error("w is rational for " + describe());
    w_ = (f_.get_d() + std::sqrt(disc_.get_d())) / 2.0;
    if (!(w_ > 1.0)) throw domain_error("positive root must exceed 1: " + describe());
  }

  Rational e_;
  Rational f_;
  Rational disc_;
  double w_ = 0.0;
  Label label_;
};

namespace detail {

// Sign of r + i*w, exact. Rewrites the value as (P + i*sqrt(disc))/2 with
// P = 2r + i*f and compares squares when the two summands disagree.
inline int sign_parts(const Rational& r, const Rational& i, const FieldSpec& field) {
  const int si = sgn(i);
  if (si == 0) return sgn(r);
  Rational p = 2 * r;
  if (sgn(field.f()) != 0) p += i * field.f();
  const int sp = sgn(p);
  if (sp == 0) return si;
  if (sp == si) return sp;
  const Rational lhs = p * p;
  const Rational rhs = i * i * field.disc();
  const int c = cmp(lhs, rhs);
  return c > 0 ? sp : si;  // c == 0 impossible: disc is not a rational square
}

inline bool small_for_double(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 48 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 48;
}

}  // namespace detail

class QuadNum {
 public:
  explicit QuadNum(const FieldSpec& field) : field_(&field) {}
  QuadNum(const FieldSpec& field, Rational r, Rational i = 0)
      : r_(std::move(r)), i_(std::move(i)), field_(&field) {}

  static QuadNum w(const FieldSpec& field) { return QuadNum(field, 0, 1); }

  const Rational& rational_part() const noexcept { return r_; }
  const Rational& irrational_part() const noexcept { return i_; }
  const FieldSpec& field() const noexcept { return *field_; }
  bool is_rational() const { return sgn(i_) == 0; }
  bool is_zero() const { return sgn(r_) == 0 && sgn(i_) == 0; }

  double to_double() const { return r_.get_d() + i_.get_d() * field_->w_approx(); }

  QuadNum conjugate() const {
    // w' = f - w
    return QuadNum(*field_, r_ + i_ * field_->f(), -i_);
  }

  Rational norm() const {
    // (r + i w)(r + i w') = r^2 + r i f - i^2 e
    return r_ * r_ + r_ * i_ * field_->f() - i_ * i_ * field_->e();
  }

  QuadNum inverse() const {
    if (is_zero()) throw domain_error("division by zero in " + field_->describe());
    const Rational n = norm();
    QuadNum c = conjugate();
    c.r_ /= n;
    c.i_ /= n;
    return c;
  }

  QuadNum operator-() const { return QuadNum(*field_, -r_, -i_); }

  QuadNum& operator+=(const QuadNum& o) {
    check_field(o);
    r_ += o.r_;
    i_ += o.i_;
    return *this;
  }
  QuadNum& operator-=(const QuadNum& o) {
    check_field(o);
    r_ -= o.r_;
    i_ -= o.i_;
    return *this;
  }
  QuadNum& operator*=(const QuadNum& o) {
    check_field(o);
    // (a + b w)(c + d w) = ac + e bd + (ad + bc + f bd) w
    const Rational bd = i_ * o.i_;
    Rational r = r_ * o.r_ + field_->e() * bd;
    Rational i = r_ * o.i_ + i_ * o.r_;
    if (sgn(field_->f()) != 0) i += field_->f() * bd;
    r_ = std::move(r);
    i_ = std::move(i);
    return *this;
  }
  QuadNum& operator/=(const QuadNum& o) {
    check_field(o);
    if (o.is_rational()) return *this /= o.r_;
    return *this *= o.inverse();
  }

  QuadNum& operator+=(const Rational& q) { r_ += q; return *this; }
  QuadNum& operator-=(const Rational& q) { r_ -= q; return *this; }
  QuadNum& operator*=(const Rational& q) { r_ *= q; i_ *= q; return *this; }
  QuadNum& operator/=(const Rational& q) {
    if (sgn(q) == 0) throw domain_error("division by zero");
    r_ /= q;
    i_ /= q;
    return *this;
  }

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }
  friend QuadNum operator+(QuadNum a, const Rational& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const Rational& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const Rational& b) { return a *= b; }
  friend QuadNum operator*(const Rational& b, QuadNum a) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const Rational& b) { return a /= b; }

  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    return a.field_ == b.field_ && a.r_ == b.r_ && a.i_ == b.i_;
  }

  friend int sign(const QuadNum& a) { return detail::sign_parts(a.r_, a.i_, *a.field_); }

  // sign(a - b) without materialising the difference's irrational part twice.
  friend int compare(const QuadNum& a, const QuadNum& b) {
    a.check_field(b);
    return detail::sign_parts(a.r_ - b.r_, a.i_ - b.i_, *a.field_);
  }
  friend int compare(const QuadNum& a, const Rational& b) {
    return detail::sign_parts(a.r_ - b, a.i_, *a.field_);
  }

  friend std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b) {
    return compare(a, b) <=> 0;
  }
  friend std::strong_ordering operator<=>(const QuadNum& a, const Rational& b) {
    return compare(a, b) <=> 0;
  }
  friend bool operator==(const QuadNum& a, const Rational& b) {
    return sgn(a.i_) == 0 && a.r_ == b;
  }

 private:
  void check_field(const QuadNum& o) const {
    if (field_ != o.field_)
      throw domain_error("mixed fields: " + field_->describe() + " vs " + o.field_->describe());
  }

  Rational r_;
  Rational i_;
  const FieldSpec* field_;
};

inline QuadNum abs(const QuadNum& a) { return sign(a) < 0 ? -a : a; }

// Unique integer n with n <= a < n + 1. A cheap estimate (double for small
// operands, integer square root otherwise) is corrected by exact sign tests.
inline Integer floor(const QuadNum& a) {
  const Rational& r = a.rational_part();
  const Rational& i = a.irrational_part();
  if (sgn(i) == 0) return floor_rational(r);
  const FieldSpec& field = a.field();

  Integer n;
  if (detail::small_for_double(r) && detail::small_for_double(i)) {
    n = Integer(std::floor(a.to_double()));
  } else {
    // 2a = p + i*sqrt(disc); bracket |i|*sqrt(disc) between z/v and (z+1)/v.
    const Rational p = 2 * r + i * field.f();
    const Rational sq = i * i * field.disc();
    const Integer uv = sq.get_num() * sq.get_den();
    Integer z;
    mpz_sqrt(z.get_mpz_t(), uv.get_mpz_t());
    const Rational lower = sgn(i) > 0 ? Rational(p + make_rational(z, sq.get_den()))
                                      : Rational(p - make_rational(z + 1, sq.get_den()));
    n = floor_rational(Rational(lower / 2));
  }
  while (detail::sign_parts(r - n, i, field) < 0) n -= 1;
  while (detail::sign_parts(r - (n + 1), i, field) >= 0) n += 1;
  return n;
}

inline Integer ceil(const QuadNum& a) { return -floor(-a); }

struct DivMod {
  Integer quotient;
  QuadNum remainder;
};

// a = q*p + rem with 0 <= rem < p. Requires p > 0.
inline DivMod reduce_mod(const QuadNum& a, const QuadNum& p) {
  if (sign(p) <= 0) throw domain_error("reduce_mod requires a positive modulus");
  Integer q = floor(a / p);
  QuadNum rem = a - p * Rational(q);
  return {std::move(q), std::move(rem)};
}

// Canonical text form "r+i*w" with both parts as reduced "p/q", e.g.
// "-141/1+100/1*w" or "1/2-3/1*w".
inline std::string to_string(const QuadNum& a) {
  const Rational& i = a.irrational_part();
  std::string out = to_string(a.rational_part());
  out += sgn(i) < 0 ? "-" : "+";
  out += to_string(Rational(abs(i)));
  out += "*w";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const QuadNum& a) { return os << to_string(a); }

// Inverse of to_string. Also accepts a bare rational "r".
inline QuadNum parse_quad(std::string_view text, const FieldSpec& field) {
  constexpr std::string_view suffix = "*w";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix)
    return QuadNum(field, parse_rational(text));
  const auto body = text.substr(0, text.size() - suffix.size());
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
        body[k - 1] != '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return QuadNum(field, 0, parse_rational(body));
  const Rational r = parse_rational(body.substr(0, split));
  Rational i = parse_rational(body.substr(split + 1));
  if (body[split] == '-') i = -i;
  return QuadNum(field, r, i);
}

}  // namespace veech
