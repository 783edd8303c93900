// Differential forms on the 5-dimensional jet manifold with ExpPoly
// coefficients, over the covector basis dt < dx < dphi < dA < dB.

#ifndef BSSYM_DIFF_FORM_HPP_
#define BSSYM_DIFF_FORM_HPP_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "bssym/exppoly.hpp"

namespace bssym {

// Bit i set <=> the i-th basis covector (in Var order) is present.
using BasisMask = std::uint8_t;

// Lexicographic order on the increasing index tuples of same-degree masks.
struct BasisOrder {
  bool operator()(BasisMask l, BasisMask r) const;
};

int mask_degree(BasisMask m);
std::vector<Var> mask_indices(BasisMask m);

// A homogeneous form. Degrees above 5 are legal but such forms are always
// zero: that is what wedge and d return when the result degree overflows.
class DiffForm {
public:
  using CoefficientMap = std::map<BasisMask, ExpPoly, BasisOrder>;

  explicit DiffForm(int degree = 0);

  static DiffForm scalar(const ExpPoly& f);
  static DiffForm d(Var v);
  // coef * dv1 ^ dv2 ^ ... in the given (not necessarily increasing) order.
  static DiffForm basis(std::initializer_list<Var> factors, const ExpPoly& coef = ExpPoly(1));

  int degree() const { return degree_; }
  const CoefficientMap& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of dv1 ^ ... ^ dvk with the sign implied by the given order.
  ExpPoly coefficient(std::initializer_list<Var> factors) const;
  ExpPoly coefficient(BasisMask m) const;
  // The 0-form value; throws std::domain_error for positive degree.
  const ExpPoly& as_scalar() const;

  DiffForm operator-() const;
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const ExpPoly& f, const DiffForm& u);
  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  // Printed with factors in descending basis order
  // (dx^dt, dA^dx), e.g. "-dA^dx - dB^dt" for d(alpha).
  std::string to_string() const;

  void add(BasisMask m, const ExpPoly& c);

private:
  int degree_;
  CoefficientMap coeffs_;
};

DiffForm wedge(const DiffForm& u, const DiffForm& v);
DiffForm exterior_derivative(const DiffForm& u);

}  // namespace bssym

#endif  // BSSYM_DIFF_FORM_HPP_
