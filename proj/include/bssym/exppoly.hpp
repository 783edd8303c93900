// Exact exp-polynomials on the jet manifold with coordinates (t, x, phi, A, B).
//
// An ExpPoly is a finite sum of terms  c * t^i x^j phi^k A^l B^m * exp(a t + b x)
// with rational c, a, b. The ring is closed under differentiation, which is
// all the Cartan calculus on the Black-Scholes ideal needs.

#ifndef BSSYM_EXPPOLY_HPP_
#define BSSYM_EXPPOLY_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "bssym/rational.hpp"

namespace bssym {

enum class Var : int { t = 0, x = 1, phi = 2, A = 3, B = 4 };

inline constexpr std::size_t kNumVars = 5;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::t, Var::x, Var::phi, Var::A, Var::B};

constexpr int index_of(Var v) { return static_cast<int>(v); }
std::string_view name_of(Var v);
// Throws std::domain_error for anything but t, x, phi, A, B.
Var variable_from_name(std::string_view name);

// Term key: monomial exponents plus the exponential signature exp(a t + b x).
struct Monomial {
  std::array<int, kNumVars> powers{};
  Rational t_rate;
  Rational x_rate;

  int degree() const { return powers[0] + powers[1] + powers[2] + powers[3] + powers[4]; }
  bool has_exponential() const { return !t_rate.is_zero() || !x_rate.is_zero(); }
  bool is_one() const { return degree() == 0 && !has_exponential(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic on the exponents, then (a, b).
struct MonomialOrder {
  bool operator()(const Monomial& l, const Monomial& r) const;
};

class ExpPoly {
public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  ExpPoly() = default;
  ExpPoly(Rational c);  // NOLINT: constants embed implicitly
  ExpPoly(std::int64_t c) : ExpPoly(Rational(c)) {}  // NOLINT

  static ExpPoly var(Var v);
  static ExpPoly exp(const Rational& t_rate, const Rational& x_rate);
  static ExpPoly term(const Rational& coef, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant ExpPoly; throws std::domain_error otherwise.
  Rational constant_value() const;

  bool depends_on(Var v) const;
  bool has_exponential() const;
  int degree_in(Var v) const;
  // Coefficient of v^k viewed as a polynomial in v.
  ExpPoly coefficient_in(Var v, int k) const;

  ExpPoly operator-() const;
  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(const ExpPoly& o);
  ExpPoly& operator*=(const Rational& c);

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(ExpPoly a, const Rational& c) { return a *= c; }
  friend ExpPoly operator*(const Rational& c, ExpPoly a) { return a *= c; }
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }

  ExpPoly pow(int e) const;

  // Replaces v by `value`. phi, A, B occur only polynomially, so any value is
  // accepted. For t and x, terms whose exponential factor depends on v need a
  // value that is a linear form in t and x without constant part (so that the
  // exponential stays in the ring); anything else throws std::domain_error.
  ExpPoly substitute(Var v, const ExpPoly& value) const;

  // Exact evaluation; throws std::domain_error if an exponential factor
  // would have a nonzero exponent at the point.
  Rational evaluate(const std::array<Rational, kNumVars>& point) const;
  double evaluate(const std::array<double, kNumVars>& point) const;

  std::string to_string() const;

private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

ExpPoly differentiate(const ExpPoly& f, Var v);
// String variant for boundary code; unknown names throw std::domain_error.
ExpPoly differentiate(const ExpPoly& f, std::string_view var_name);

}  // namespace bssym

#endif  // BSSYM_EXPPOLY_HPP_
