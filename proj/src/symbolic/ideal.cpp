#include "bssym/ideal.hpp"

#include <stdexcept>

namespace bssym {

namespace {

// Pivot of a solving step: must be a nonzero constant (a unit) to divide by.
std::optional<Rational> unit_inverse(const ExpPoly& pivot) {
  if (!pivot.is_constant() || pivot.is_zero()) return std::nullopt;
  return pivot.constant_value().inverse();
}

}  // namespace

ExpPoly beta_drift(const ModelContext& ctx) {
  return ExpPoly::var(Var::B) + ctx.rtilde * ExpPoly::var(Var::A) - ctx.r * ExpPoly::var(Var::phi);
}

StructuralForms structural_forms(const ModelContext& ctx) {
  const ExpPoly A = ExpPoly::var(Var::A);
  const ExpPoly B = ExpPoly::var(Var::B);
  DiffForm alpha = DiffForm::d(Var::phi) - A * DiffForm::d(Var::x) - B * DiffForm::d(Var::t);
  DiffForm dalpha = -DiffForm::basis({Var::A, Var::x}) - DiffForm::basis({Var::B, Var::t});
  DiffForm beta = DiffForm::basis({Var::x, Var::t}, beta_drift(ctx)) +
                  DiffForm::basis({Var::A, Var::t}, ExpPoly(ctx.sigma2 / Rational(2)));
  return {alpha, dalpha, beta};
}

DiffForm MembershipCertificate::rho() const {
  return R1 * DiffForm::d(Var::t) + R2 * DiffForm::d(Var::x) + R3 * DiffForm::d(Var::A) +
         R4 * DiffForm::d(Var::B);
}

DiffForm reconstruct(const MembershipCertificate& cert, const ModelContext& ctx) {
  StructuralForms f = structural_forms(ctx);
  return wedge(cert.rho(), f.alpha) + cert.R5 * f.dalpha + cert.R6 * f.beta;
}

MembershipCertificate ideal_membership(const DiffForm& gamma, const ModelContext& ctx) {
  if (gamma.degree() != 2) throw std::domain_error("ideal membership is defined for 2-forms");
  const ExpPoly B = ExpPoly::var(Var::B);
  auto g = [&](Var a, Var b) { return gamma.coefficient({a, b}); };

  MembershipCertificate cert;
  auto undecided = [&](int eq) {
    cert.status = Membership::undecided;
    cert.failed_equation = eq;
    cert.remainder = gamma - reconstruct(cert, ctx);
    return cert;
  };

  // Coefficients of rho^alpha + xi dalpha + omega beta, with P = B + rtilde A - r phi:
  //  (1) dt^dx   -A R1 + B R2 - P R6        (6) dx^dA   A R3 + R5
  //  (2) dt^dphi  R1                        (7) dx^dB   A R4
  //  (3) dt^dA    B R3 - (sigma2/2) R6      (8) dphi^dA -R3
  //  (4) dt^dB    B R4 + R5                 (9) dphi^dB -R4
  //  (5) dx^dphi  R2                        (10) dA^dB  0
  cert.R4 = -g(Var::phi, Var::B);
  cert.R5 = g(Var::t, Var::B) - B * cert.R4;
  cert.R2 = g(Var::x, Var::phi);
  cert.R3 = -g(Var::phi, Var::A);
  cert.R1 = g(Var::t, Var::phi);
  auto inv = unit_inverse(ExpPoly(-(ctx.sigma2 / Rational(2))));
  if (!inv) return undecided(3);
  cert.R6 = (g(Var::t, Var::A) - B * cert.R3) * *inv;

  cert.remainder = gamma - reconstruct(cert, ctx);
  cert.status = cert.remainder.is_zero() ? Membership::member : Membership::not_member;
  return cert;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::not_member: return "not_member";
    case Membership::undecided: return "undecided";
  }
  return "undecided";
}

}  // namespace bssym
