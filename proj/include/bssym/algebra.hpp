// Isovectors of the log-price Black-Scholes equation: construction from a
// generating function or from the six-constant family, verification against
// the ideal, and the Lie algebra they span.

#ifndef BSSYM_ALGEBRA_HPP_
#define BSSYM_ALGEBRA_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "bssym/ideal.hpp"
#include "bssym/isovector.hpp"
#include "bssym/model.hpp"

namespace bssym {

// Raised when an isovector falls outside the structure an operation expects
// (nonlinear in phi, outside the six-constant family, bracket not closing).
class AlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// F = c + B d with c, d free of B.
class Generator {
public:
  Generator(ExpPoly c, ExpPoly d);
  // Splits an F that is affine in B; throws std::domain_error otherwise.
  static Generator from_function(const ExpPoly& f);

  const ExpPoly& c() const { return c_; }
  const ExpPoly& d() const { return d_; }
  ExpPoly function() const { return c_ + ExpPoly::var(Var::B) * d_; }

  friend bool operator==(const Generator&, const Generator&) = default;

private:
  ExpPoly c_;
  ExpPoly d_;
};

struct GHPair {
  ExpPoly g;
  ExpPoly h;
  friend bool operator==(const GHPair&, const GHPair&) = default;
};

struct VerificationReport {
  ExpPoly lambda;           // F_phi
  DiffForm alpha_residual;  // L_N(alpha) - lambda alpha
  bool alpha_check = false;
  MembershipCertificate beta_certificate;
  bool passed = false;
};

// F = N _| alpha, split by B-degree. Throws std::domain_error if F is not
// affine in B (such an N cannot be an isovector).
Generator generator_of(const Isovector& n);

// The characteristic system: N^t = -F_B, N^x = -F_A, N^phi = F - A F_A - B F_B,
// N^A = F_x + A F_phi, N^B = F_t + B F_phi.
Isovector isovector_from_generator(const Generator& f);

// Throws std::domain_error naming the first mode that violates the
// dispersion relation of the context.
void check_dispersion(const SolutionSpec& g, const ModelContext& ctx);
bool satisfies_dispersion(const Mode& m, const ModelContext& ctx);
// a = r - (sigma2/2) b^2 - rtilde b, so that c exp(a t + b x) is a solution.
Mode mode_for_rate(const Rational& b, const ModelContext& ctx, const Rational& coef = Rational(1));

// The general isovector with solution g and constants C1..C6.
Isovector isovector_from_constants(const SolutionSpec& g, const std::array<Rational, 6>& constants,
                                   const ModelContext& ctx);
// N_i: g = 0, C_i = 1, other constants 0 (i in 1..6).
Isovector basis_isovector(int i, const ModelContext& ctx);
// N_u = u d/dphi + u_x d/dA + u_t d/dB for a solution u.
Isovector solution_isovector(const ExpPoly& u);
inline Isovector solution_isovector(const SolutionSpec& u) { return solution_isovector(u.to_exppoly()); }

VerificationReport verify_isovector(const Isovector& n, const ModelContext& ctx);

// Component-wise commutator [M, N]^v = M(N^v) - N(M^v).
Isovector bracket(const Isovector& m, const Isovector& n);

// g = N^phi - phi dN^phi/dphi, h = dN^phi/dphi. Throws AlgebraError when
// N^phi is not affine in phi or g, h depend on phi, A or B.
GHPair gh_of(const Isovector& n);
// (g, h) of [M, N] evaluated from the (g, h) pairs and the t, x components.
GHPair bracket_gh(const Isovector& m, const Isovector& n);

struct FamilyCoordinates {
  std::array<Rational, 6> constants{};
  ExpPoly g;
};

// Reads C1..C6 off N^t, N^x and the constant part of h, and checks that the
// family member they describe, plus N_g, reproduces N exactly.
// Throws AlgebraError when N is not in the family.
FamilyCoordinates family_coordinates(const Isovector& n, const ModelContext& ctx);

struct Decomposition {
  std::array<Rational, 6> constants{};
  SolutionSpec g;
};

// N = sum C_i N_i + N_g. Throws AlgebraError when N is outside the family or
// g is not a sum of dispersion-compatible exponential modes.
Decomposition decompose(const Isovector& n, const ModelContext& ctx);
// Groups the terms of g into exponential modes; throws AlgebraError otherwise.
SolutionSpec modes_of(const ExpPoly& g, const ModelContext& ctx);

struct IdealCheck {
  std::string description;
  bool passed = false;
};

struct StructureTable {
  // entries[i][j] = coordinates of [N_{i+1}, N_{j+1}] in the basis N_1..N_6
  std::array<std::array<std::array<Rational, 6>, 6>, 6> entries{};
  std::vector<IdealCheck> ideal_checks;

  bool all_checks_pass() const;
};

// Solution modes used to sample the abelian ideal: exp(x), exp(r t) and one
// generic dispersion mode.
std::vector<SolutionSpec> sample_solutions(const ModelContext& ctx);

// Throws AlgebraError if a bracket of basis elements leaves their span.
StructureTable structure_constants(const ModelContext& ctx);

// "1/2 · N5", "-2 · N2 + N3", "0"
std::string format_combination(const std::array<Rational, 6>& coords);

}  // namespace bssym

#endif  // BSSYM_ALGEBRA_HPP_
