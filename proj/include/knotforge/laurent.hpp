// Exact Laurent polynomials in a single variable with half-integer
// exponents, plus truncated power series in h used for t = e^h.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace knotforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exponent that may be an integer or half an odd integer.  Stored doubled,
/// so t^{1/2} has `doubled == 1`.
struct HalfInt {
  int doubled = 0;

  static constexpr HalfInt whole(int k) { return HalfInt{2 * k}; }
  static constexpr HalfInt halves(int numerator) { return HalfInt{numerator}; }

  constexpr bool is_integral() const { return doubled % 2 == 0; }
  Rational value() const { return Rational(doubled) / 2; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

/// Truncated Taylor series c_0 + c_1 h + ... + c_order h^order.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order) : coeffs_(checked_size(order)) {}
  TruncatedSeries(int order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != checked_size(order)) {
      throw std::invalid_argument("TruncatedSeries: coefficient count must be order+1");
    }
  }

  /// exp(rate * h) truncated at `order`.
  static TruncatedSeries exponential(const Rational& rate, int order) {
    TruncatedSeries s(order);
    Rational term = 1;
    for (int i = 0; i <= order; ++i) {
      s.coeffs_[i] = term;
      term = term * rate / (i + 1);
    }
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](int i) const { return coeffs_.at(i); }
  Rational& operator[](int i) { return coeffs_.at(i); }

  /// i! times the h^i coefficient, i.e. the i-th derivative at h = 0.
  Rational derivative(int i) const {
    Rational out = coeffs_.at(i);
    for (int j = 2; j <= i; ++j) out *= j;
    return out;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_order(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_order(b);
    TruncatedSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= a.order(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }

  TruncatedSeries scaled(const Rational& c) const {
    TruncatedSeries out = *this;
    for (auto& x : out.coeffs_) x *= c;
    return out;
  }

  TruncatedSeries pow(unsigned n) const {
    TruncatedSeries result(order());
    result.coeffs_[0] = 1;
    TruncatedSeries base = *this;
    while (n != 0) {
      if (n & 1u) result = result * base;
      n >>= 1;
      if (n != 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    return static_cast<std::size_t>(order) + 1;
  }
  void check_order(const TruncatedSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("TruncatedSeries: order mismatch");
  }

  std::vector<Rational> coeffs_;
};

/// Laurent polynomial in one variable with rational coefficients and
/// half-integer exponents.  The zero polynomial has no terms; no stored
/// coefficient is ever zero.
class LaurentPoly {
 public:
  using TermMap = std::map<int, Rational>;  // doubled exponent -> coefficient

  LaurentPoly() = default;
  LaurentPoly(const Rational& c) { add_term(0, c); }  // NOLINT: constants convert implicitly
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}    // NOLINT

  /// c * x^{e}.
  static LaurentPoly monomial(const Rational& c, HalfInt e) {
    LaurentPoly p;
    p.add_term(e.doubled, c);
    return p;
  }
  /// Integer-exponent shorthand: {{exp, coeff}, ...}.
  static LaurentPoly from_integral(std::initializer_list<std::pair<int, long long>> terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p.add_term(2 * e, Rational(c));
    return p;
  }
  static LaurentPoly from_doubled(const TermMap& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
  }
  /// The variable itself, x^1.
  static LaurentPoly variable() { return monomial(1, HalfInt::whole(1)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// True when every exponent is an integer.
  bool is_integral() const {
    for (const auto& [e, c] : terms_) {
      if (e % 2 != 0) return false;
    }
    return true;
  }
  bool has_integer_coefficients() const {
    for (const auto& [e, c] : terms_) {
      if (denominator(c) != 1) return false;
    }
    return true;
  }

  Rational coeff(HalfInt e) const {
    auto it = terms_.find(e.doubled);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  HalfInt min_exponent() const { return HalfInt{terms_.empty() ? 0 : terms_.begin()->first}; }
  HalfInt max_exponent() const { return HalfInt{terms_.empty() ? 0 : terms_.rbegin()->first}; }

  /// Value at x = 1.
  Rational at_one() const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// x -> x^{-1}.
  LaurentPoly inverted() const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(-e, c);
    return p;
  }
  /// x^{1/2} -> -x^{1/2}; negates every half-odd-integer term.
  LaurentPoly negate_half_powers() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) {
      if (e % 2 != 0) c = -c;
    }
    return p;
  }
  /// x -> -x for integer exponents; only meaningful on integral polynomials.
  LaurentPoly odd_negated() const {
    if (!is_integral()) throw std::domain_error("odd_negated: polynomial has half-integer exponents");
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) {
      if ((e / 2) % 2 != 0) c = -c;
    }
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    }
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// Non-negative integer power.
  LaurentPoly pow(unsigned n) const {
    LaurentPoly result = 1;
    LaurentPoly base = *this;
    while (n != 0) {
      if (n & 1u) result *= base;
      n >>= 1;
      if (n != 0) base *= base;
    }
    return result;
  }

  /// Multiplication by x^{e}.
  LaurentPoly shifted(HalfInt e) const {
    LaurentPoly p;
    for (const auto& [k, c] : terms_) p.terms_.emplace(k + e.doubled, c);
    return p;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Rendering "a*t^(p/2) + ..." with exponents in lowest terms and terms in
  /// descending exponent order.  Constant terms print without the variable.
  std::string render(std::string_view var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool negative = c < 0;
      const Rational magnitude = negative ? Rational(-c) : c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      os << magnitude;
      if (e != 0) {
        os << '*' << var << "^(";
        if (e % 2 == 0) {
          os << e / 2;
        } else {
          os << e << "/2";
        }
        os << ')';
      }
    }
    return os.str();
  }

 private:
  void add_term(int doubled, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(doubled, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Sum of a_k * k^i over the terms a_k x^k; the i-th derivative of p(e^h)
/// at h = 0.
inline Rational moment(const LaurentPoly& p, int i) {
  if (i < 0) throw std::invalid_argument("moment: negative order");
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) {
    const Rational k = Rational(e) / 2;
    Rational power = 1;
    for (int j = 0; j < i; ++j) power *= k;
    total += c * power;
  }
  return total;
}

/// Taylor expansion of p(e^h) about h = 0 up to h^order.  Built from powers
/// of the series of e^{h/2} and e^{-h/2}, so it shares no code with
/// `moment`.
inline TruncatedSeries substitute_exp(const LaurentPoly& p, int order) {
  TruncatedSeries out(order);
  const TruncatedSeries half_up = TruncatedSeries::exponential(Rational(1, 2), order);
  const TruncatedSeries half_down = TruncatedSeries::exponential(Rational(-1, 2), order);
  for (const auto& [e, c] : p.terms()) {
    const TruncatedSeries& base = e >= 0 ? half_up : half_down;
    out += base.pow(static_cast<unsigned>(e >= 0 ? e : -e)).scaled(c);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.render("x"); }

namespace vars {
/// t^{1/2} as a polynomial in t.
inline LaurentPoly sqrt_t() { return LaurentPoly::monomial(1, HalfInt::halves(1)); }
inline LaurentPoly t_pow(int k) { return LaurentPoly::monomial(1, HalfInt::whole(k)); }
inline LaurentPoly z_pow(int k) { return LaurentPoly::monomial(1, HalfInt::whole(k)); }
}  // namespace vars

}  // namespace knotforge
