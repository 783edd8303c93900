#include "bssym/isovector.hpp"

#include <stdexcept>

namespace bssym {

ExpPoly SolutionSpec::to_exppoly() const {
  ExpPoly g;
  for (const Mode& m : modes) g += m.coef * ExpPoly::exp(m.a, m.b);
  return g;
}

Isovector::Isovector(ExpPoly nt, ExpPoly nx, ExpPoly nphi, ExpPoly na, ExpPoly nb)
    : comp_{std::move(nt), std::move(nx), std::move(nphi), std::move(na), std::move(nb)} {}

ExpPoly Isovector::apply(const ExpPoly& f) const {
  ExpPoly out;
  for (Var v : kAllVars) {
    const ExpPoly& c = (*this)[v];
    if (!c.is_zero()) out += c * differentiate(f, v);
  }
  return out;
}

bool Isovector::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

Isovector Isovector::operator-() const {
  Isovector out;
  for (std::size_t i = 0; i < kNumVars; ++i) out.comp_[i] = -comp_[i];
  return out;
}

Isovector& Isovector::operator+=(const Isovector& o) {
  for (std::size_t i = 0; i < kNumVars; ++i) comp_[i] += o.comp_[i];
  provenance_.reset();
  return *this;
}

Isovector& Isovector::operator-=(const Isovector& o) { return *this += -o; }

Isovector operator*(const Rational& c, const Isovector& n) {
  Isovector out;
  for (std::size_t i = 0; i < kNumVars; ++i) out.comp_[i] = n.comp_[i] * c;
  return out;
}

DiffForm contract(const Isovector& n, const DiffForm& u) {
  if (u.degree() == 0) throw std::domain_error("cannot contract a vector field into a 0-form");
  DiffForm out(u.degree() - 1);
  for (const auto& [mask, coef] : u.coefficients()) {
    // removing the k-th factor (0-based) of an increasing tuple costs (-1)^k
    int position = 0;
    for (Var v : mask_indices(mask)) {
      const ExpPoly& nv = n[v];
      if (!nv.is_zero()) {
        ExpPoly c = nv * coef;
        out.add(static_cast<BasisMask>(mask & ~(1u << index_of(v))), position % 2 == 0 ? c : -c);
      }
      ++position;
    }
  }
  return out;
}

DiffForm lie_derivative(const Isovector& n, const DiffForm& u) {
  if (u.degree() == 0) return DiffForm::scalar(n.apply(u.as_scalar()));
  DiffForm out = exterior_derivative(contract(n, u));
  DiffForm du = exterior_derivative(u);
  if (du.degree() <= static_cast<int>(kNumVars)) out += contract(n, du);
  return out;
}

}  // namespace bssym
