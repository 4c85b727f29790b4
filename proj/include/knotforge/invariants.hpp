// Numeric invariants read off the Conway and Jones polynomials, and the
// Casson / Ohtsuki invariants of (-1)-surgery on a knot.
#pragma once

#include "knotforge/diagram.hpp"
#include "knotforge/laurent.hpp"
#include "knotforge/skein.hpp"

#include <stdexcept>
#include <string>

namespace knotforge {

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline Integer integral_coeff(const LaurentPoly& p, int exponent, const char* what) {
  if (!p.is_integral() || !p.has_integer_coefficients()) {
    throw InvariantError(std::string(what) + ": expected an integral polynomial with integer coefficients");
  }
  return numerator(p.coeff(HalfInt::whole(exponent)));
}
inline Integer to_integer(const Rational& r, const char* what) {
  if (denominator(r) != 1) throw InvariantError(std::string(what) + " is not an integer");
  return numerator(r);
}
}  // namespace detail

/// Coefficient of z^2 in a Conway polynomial.
inline Integer a2(const LaurentPoly& conway_poly) { return detail::integral_coeff(conway_poly, 2, "a2"); }

/// Coefficient of z^4 in a Conway polynomial.
inline Integer c4(const LaurentPoly& conway_poly) { return detail::integral_coeff(conway_poly, 4, "c4"); }

/// i-th derivative of V(e^h) at h = 0.
inline Rational v_i(const LaurentPoly& jones_poly, int i) { return moment(jones_poly, i); }

/// Casson invariant of (-1)-surgery on a knot with z^2 Conway coefficient a2.
inline Rational casson_minus_one_surgery(const Integer& a2_value) { return Rational(-a2_value); }

/// lambda_2 = v2/2 + v3/3 + (5/3) v2^2 - 60 c4 for (-1)-surgery.
inline Rational ohtsuki_lambda2(const Rational& v2, const Rational& v3, const Rational& c4_value) {
  return v2 / 2 + v3 / 3 + Rational(5, 3) * v2 * v2 - 60 * c4_value;
}

struct SurgeryInvariants {
  Integer a2;
  Integer c4;
  Integer v0;
  Integer v1;
  Integer v2;
  Integer v3;
  Rational lambda1;
  Rational lambda2;

  friend bool operator==(const SurgeryInvariants&, const SurgeryInvariants&) = default;
};

/// Invariants of (-1)-surgery from the two polynomials of a knot.
inline SurgeryInvariants surgery_invariants(const LaurentPoly& conway_poly, const LaurentPoly& jones_poly) {
  if (!jones_poly.is_integral()) throw InvariantError("Jones polynomial of a knot must have integer exponents");
  SurgeryInvariants out;
  out.a2 = a2(conway_poly);
  out.c4 = c4(conway_poly);
  out.v0 = detail::to_integer(v_i(jones_poly, 0), "v0");
  out.v1 = detail::to_integer(v_i(jones_poly, 1), "v1");
  out.v2 = detail::to_integer(v_i(jones_poly, 2), "v2");
  out.v3 = detail::to_integer(v_i(jones_poly, 3), "v3");
  if (out.v2 != -6 * out.a2) {
    throw InvariantError("v2 = -6 a2 violated (v2 = " + out.v2.str() + ", a2 = " + out.a2.str() + ")");
  }
  out.lambda1 = casson_minus_one_surgery(out.a2);
  out.lambda2 = ohtsuki_lambda2(Rational(out.v2), Rational(out.v3), Rational(out.c4));
  return out;
}

inline SurgeryInvariants surgery_invariants(const PDDiagram& d, SkeinEngine& engine) {
  if (d.component_count() != 1) {
    throw InvariantError("surgery invariants need a knot; diagram has " + std::to_string(d.component_count()) +
                         " components");
  }
  return surgery_invariants(engine.conway(d), engine.jones(d));
}

inline SurgeryInvariants surgery_invariants(const PDDiagram& d) {
  SkeinEngine engine;
  return surgery_invariants(d, engine);
}

enum class Verdict { distinguished, inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::distinguished ? "distinguished" : "inconclusive"; }

struct DistinguishReport {
  SurgeryInvariants first;
  SurgeryInvariants second;
  Verdict verdict = Verdict::inconclusive;
  /// "lambda2", "lambda1", or empty when inconclusive.
  std::string witness;
};

/// Compares (-1)-surgeries on two knots.  Equal invariants prove nothing, so
/// the only verdicts are "distinguished" and "inconclusive".
inline DistinguishReport distinguish(const SurgeryInvariants& a, const SurgeryInvariants& b) {
  DistinguishReport r{a, b, Verdict::inconclusive, {}};
  if (a.lambda2 != b.lambda2) {
    r.verdict = Verdict::distinguished;
    r.witness = "lambda2";
  } else if (a.lambda1 != b.lambda1) {
    r.verdict = Verdict::distinguished;
    r.witness = "lambda1";
  }
  return r;
}

inline DistinguishReport distinguish(const PDDiagram& d1, const PDDiagram& d2, SkeinEngine& engine) {
  return distinguish(surgery_invariants(d1, engine), surgery_invariants(d2, engine));
}

}  // namespace knotforge
