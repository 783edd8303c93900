// Vector fields on the jet manifold and the Cartan calculus acting on forms.

#ifndef BSSYM_ISOVECTOR_HPP_
#define BSSYM_ISOVECTOR_HPP_

#include <array>
#include <optional>
#include <vector>

#include "bssym/diff_form.hpp"
#include "bssym/exppoly.hpp"

namespace bssym {

// One exponential mode c * exp(a t + b x) of a solution g(t, x).
struct Mode {
  Rational coef;
  Rational a;
  Rational b;
  friend bool operator==(const Mode&, const Mode&) = default;
};

// g(t, x) = sum of modes. Each mode is expected to satisfy the dispersion
// relation a + (sigma2/2) b^2 + rtilde b - r = 0.
struct SolutionSpec {
  std::vector<Mode> modes;

  ExpPoly to_exppoly() const;
  friend bool operator==(const SolutionSpec&, const SolutionSpec&) = default;
};

// Parameters of the six-constant family a field was built from.
struct Provenance {
  SolutionSpec g;
  std::array<Rational, 6> constants{};
};

// N = N^t d/dt + N^x d/dx + N^phi d/dphi + N^A d/dA + N^B d/dB.
class Isovector {
public:
  Isovector() = default;
  Isovector(ExpPoly nt, ExpPoly nx, ExpPoly nphi, ExpPoly na, ExpPoly nb);

  const ExpPoly& operator[](Var v) const { return comp_[static_cast<std::size_t>(index_of(v))]; }
  ExpPoly& operator[](Var v) { return comp_[static_cast<std::size_t>(index_of(v))]; }
  const std::array<ExpPoly, kNumVars>& components() const { return comp_; }

  const std::optional<Provenance>& provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  // N as a derivation: sum_v N^v df/dv.
  ExpPoly apply(const ExpPoly& f) const;
  bool is_zero() const;

  Isovector operator-() const;
  Isovector& operator+=(const Isovector& o);
  Isovector& operator-=(const Isovector& o);
  friend Isovector operator+(Isovector a, const Isovector& b) { return a += b; }
  friend Isovector operator-(Isovector a, const Isovector& b) { return a -= b; }
  friend Isovector operator*(const Rational& c, const Isovector& n);
  // Provenance is bookkeeping; equality is on components only.
  friend bool operator==(const Isovector& a, const Isovector& b) { return a.comp_ == b.comp_; }

private:
  std::array<ExpPoly, kNumVars> comp_;
  std::optional<Provenance> provenance_;
};

// Interior product N _| u. Throws std::domain_error for 0-forms.
DiffForm contract(const Isovector& n, const DiffForm& u);
// Lie derivative by Cartan's formula N _| du + d(N _| u).
DiffForm lie_derivative(const Isovector& n, const DiffForm& u);

}  // namespace bssym

#endif  // BSSYM_ISOVECTOR_HPP_
