// The differential ideal I = <alpha, d alpha, beta> encoding the log-price
// Black-Scholes equation, and an exact membership test for 2-forms.

#ifndef BSSYM_IDEAL_HPP_
#define BSSYM_IDEAL_HPP_

#include <optional>
#include <string>

#include "bssym/diff_form.hpp"
#include "bssym/model.hpp"

namespace bssym {

struct StructuralForms {
  DiffForm alpha;   // dphi - A dx - B dt
  DiffForm dalpha;  // -dA^dx - dB^dt
  DiffForm beta;    // (B + rtilde A - r phi) dx^dt + (sigma2/2) dA^dt
};

StructuralForms structural_forms(const ModelContext& ctx);

// B + rtilde A - r phi, the coefficient of dx^dt in beta.
ExpPoly beta_drift(const ModelContext& ctx);

enum class Membership { member, not_member, undecided };

// Witness for gamma = rho ^ alpha + xi d(alpha) + omega beta with
// rho = R1 dt + R2 dx + R3 dA + R4 dB (no dphi slot), xi = R5, omega = R6.
struct MembershipCertificate {
  ExpPoly R1, R2, R3, R4, R5, R6;
  DiffForm remainder{2};
  Membership status = Membership::undecided;
  // For undecided results: the coefficient equation whose pivot was not a
  // unit of the ring, numbered 1..10 in the order dt^dx, dt^dphi, dt^dA,
  // dt^dB, dx^dphi, dx^dA, dx^dB, dphi^dA, dphi^dB, dA^dB.
  std::optional<int> failed_equation;

  DiffForm rho() const;
  bool is_member() const { return status == Membership::member; }
};

// Solves the coefficient equations in the order dphi^dB -> R4, dt^dB -> R5,
// dx^dphi -> R2, dphi^dA -> R3, dt^dphi -> R1, dt^dA -> R6, then reports what
// is left of the remaining equations as the remainder form.
// Throws std::domain_error if gamma is not a 2-form.
MembershipCertificate ideal_membership(const DiffForm& gamma, const ModelContext& ctx);

// rho ^ alpha + xi d(alpha) + omega beta for the certificate's multipliers.
DiffForm reconstruct(const MembershipCertificate& cert, const ModelContext& ctx);

std::string to_string(Membership m);

}  // namespace bssym

#endif  // BSSYM_IDEAL_HPP_
