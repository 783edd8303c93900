#include "bssym/algebra.hpp"

#include <map>
#include <utility>

namespace bssym {

namespace {

const ExpPoly kT = ExpPoly::var(Var::t);
const ExpPoly kX = ExpPoly::var(Var::x);
const ExpPoly kPhi = ExpPoly::var(Var::phi);
const ExpPoly kA = ExpPoly::var(Var::A);
const ExpPoly kB = ExpPoly::var(Var::B);

bool depends_on_jet(const ExpPoly& f) {
  return f.depends_on(Var::phi) || f.depends_on(Var::A) || f.depends_on(Var::B);
}

// Coefficient of the unit monomial.
Rational constant_term(const ExpPoly& f) {
  auto it = f.terms().find(Monomial{});
  return it == f.terms().end() ? Rational(0) : it->second;
}

Rational coefficient_of(const ExpPoly& f, std::array<int, kNumVars> powers) {
  Monomial m;
  m.powers = powers;
  auto it = f.terms().find(m);
  return it == f.terms().end() ? Rational(0) : it->second;
}

// The h block shared by N^phi, N^A and N^B.
ExpPoly h_block(const std::array<Rational, 6>& C, const ModelContext& ctx) {
  const Rational& s2 = ctx.sigma2;
  ExpPoly d = C[0] * kT * kT + C[1] * kT + ExpPoly(C[2]);
  ExpPoly dprime = Rational(2) * C[0] * kT + ExpPoly(C[1]);
  ExpPoly mu = C[3] * kT + ExpPoly(C[4]);
  return ctx.rtilde / (Rational(2) * s2) * kX * dprime - C[0] / (Rational(2) * s2) * kX * kX -
         C[3] / s2 * kX - ctx.stilde_rate() * d + ctx.rtilde / s2 * mu + Rational(1, 4) * dprime +
         ExpPoly(C[5]);
}

}  // namespace

Generator::Generator(ExpPoly c, ExpPoly d) : c_(std::move(c)), d_(std::move(d)) {
  if (c_.depends_on(Var::B) || d_.depends_on(Var::B))
    throw std::domain_error("generator parts c and d must not depend on B");
}

Generator Generator::from_function(const ExpPoly& f) {
  if (f.degree_in(Var::B) > 1)
    throw std::domain_error("F = " + f.to_string() + " is not affine in B; N cannot be an isovector");
  return Generator(f.coefficient_in(Var::B, 0), f.coefficient_in(Var::B, 1));
}

Generator generator_of(const Isovector& n) {
  return Generator::from_function(n[Var::phi] - kA * n[Var::x] - kB * n[Var::t]);
}

Isovector isovector_from_generator(const Generator& gen) {
  ExpPoly f = gen.function();
  ExpPoly f_a = differentiate(f, Var::A);
  ExpPoly f_b = differentiate(f, Var::B);
  ExpPoly f_phi = differentiate(f, Var::phi);
  return Isovector(-f_b, -f_a, f - kA * f_a - kB * f_b, differentiate(f, Var::x) + kA * f_phi,
                   differentiate(f, Var::t) + kB * f_phi);
}

bool satisfies_dispersion(const Mode& m, const ModelContext& ctx) {
  return (m.a + ctx.sigma2 / Rational(2) * m.b * m.b + ctx.rtilde * m.b - ctx.r).is_zero();
}

Mode mode_for_rate(const Rational& b, const ModelContext& ctx, const Rational& coef) {
  return Mode{coef, ctx.r - ctx.sigma2 / Rational(2) * b * b - ctx.rtilde * b, b};
}

void check_dispersion(const SolutionSpec& g, const ModelContext& ctx) {
  for (std::size_t i = 0; i < g.modes.size(); ++i) {
    const Mode& m = g.modes[i];
    if (!satisfies_dispersion(m, ctx))
      throw std::domain_error("mode " + std::to_string(i) + " (coef " + m.coef.to_string() + ", a " +
                              m.a.to_string() + ", b " + m.b.to_string() +
                              ") violates the dispersion relation a + (sigma2/2) b^2 + rtilde b - r = 0");
  }
}

Isovector isovector_from_constants(const SolutionSpec& g, const std::array<Rational, 6>& C,
                                   const ModelContext& ctx) {
  check_dispersion(g, ctx);
  const Rational& s2 = ctx.sigma2;
  const Rational& rt = ctx.rtilde;
  ExpPoly gg = g.to_exppoly();
  ExpPoly dprime = Rational(2) * C[0] * kT + ExpPoly(C[1]);
  ExpPoly h = h_block(C, ctx);

  ExpPoly nt = -(C[0] * kT * kT) - C[1] * kT - ExpPoly(C[2]);
  ExpPoly nx = -(Rational(1, 2) * kX * dprime) - (C[3] * kT + ExpPoly(C[4]));
  ExpPoly nphi = gg + kPhi * h;
  ExpPoly na = differentiate(gg, Var::x) +
               kPhi * (rt / (Rational(2) * s2) * dprime - C[0] / s2 * kX - ExpPoly(C[3] / s2)) +
               Rational(1, 2) * kA * dprime + kA * h;
  // the phi coefficient below is dh/dt; its x term carries the factor C1
  ExpPoly nb = differentiate(gg, Var::t) +
               kPhi * (rt * C[0] / s2 * kX - ctx.stilde_rate() * dprime + ExpPoly(rt * C[3] / s2) +
                       ExpPoly(C[0] / Rational(2))) +
               kA * (C[0] * kX + ExpPoly(C[3])) + kB * dprime + kB * h;

  Isovector n(nt, nx, nphi, na, nb);
  n.set_provenance(Provenance{g, C});
  return n;
}

Isovector basis_isovector(int i, const ModelContext& ctx) {
  if (i < 1 || i > 6) throw std::domain_error("basis isovectors are numbered 1..6");
  std::array<Rational, 6> C{};
  C[static_cast<std::size_t>(i - 1)] = Rational(1);
  return isovector_from_constants(SolutionSpec{}, C, ctx);
}

Isovector solution_isovector(const ExpPoly& u) {
  if (depends_on_jet(u)) throw std::domain_error("a solution u must be a function of (t, x) only");
  return Isovector(ExpPoly(), ExpPoly(), u, differentiate(u, Var::x), differentiate(u, Var::t));
}

VerificationReport verify_isovector(const Isovector& n, const ModelContext& ctx) {
  StructuralForms f = structural_forms(ctx);
  VerificationReport report;
  ExpPoly generator = contract(n, f.alpha).as_scalar();
  report.lambda = differentiate(generator, Var::phi);
  report.alpha_residual = lie_derivative(n, f.alpha) - report.lambda * f.alpha;
  report.alpha_check = report.alpha_residual.is_zero();
  report.beta_certificate = ideal_membership(lie_derivative(n, f.beta), ctx);
  report.passed = report.alpha_check && report.beta_certificate.is_member();
  return report;
}

Isovector bracket(const Isovector& m, const Isovector& n) {
  Isovector out;
  for (Var v : kAllVars) out[v] = m.apply(n[v]) - n.apply(m[v]);
  return out;
}

GHPair gh_of(const Isovector& n) {
  const ExpPoly& nphi = n[Var::phi];
  if (nphi.degree_in(Var::phi) > 1)
    throw AlgebraError("N^phi = " + nphi.to_string() + " is not affine in phi");
  GHPair out{nphi.coefficient_in(Var::phi, 0), nphi.coefficient_in(Var::phi, 1)};
  if (depends_on_jet(out.g) || depends_on_jet(out.h))
    throw AlgebraError("g or h of N^phi = " + nphi.to_string() + " depends on phi, A or B");
  return out;
}

GHPair bracket_gh(const Isovector& m, const Isovector& n) {
  GHPair gm = gh_of(m), gn = gh_of(n);
  auto transport = [](const Isovector& v, const ExpPoly& f) {
    return v[Var::t] * differentiate(f, Var::t) + v[Var::x] * differentiate(f, Var::x);
  };
  return GHPair{transport(m, gn.g) + gm.g * gn.h - transport(n, gm.g) - gn.g * gm.h,
                transport(m, gn.h) - transport(n, gm.h)};
}

FamilyCoordinates family_coordinates(const Isovector& n, const ModelContext& ctx) {
  FamilyCoordinates out;
  auto& C = out.constants;
  const ExpPoly& nt = n[Var::t];
  const ExpPoly& nx = n[Var::x];
  C[0] = -coefficient_of(nt, {2, 0, 0, 0, 0});
  C[1] = -coefficient_of(nt, {1, 0, 0, 0, 0});
  C[2] = -constant_term(nt);
  C[3] = -coefficient_of(nx, {1, 0, 0, 0, 0});
  C[4] = -constant_term(nx);
  GHPair gh = gh_of(n);
  // constant part of h is -stilde_rate C3 + (rtilde/sigma2) C5 + C2/4 + C6
  C[5] = constant_term(gh.h) + ctx.stilde_rate() * C[2] - ctx.drift_ratio() * C[4] - C[1] / Rational(4);
  out.g = gh.g;

  Isovector rebuilt = isovector_from_constants(SolutionSpec{}, C, ctx) + solution_isovector(out.g);
  if (!(rebuilt == n)) throw AlgebraError("isovector is not a member of the six-constant family");
  return out;
}

SolutionSpec modes_of(const ExpPoly& g, const ModelContext& ctx) {
  SolutionSpec spec;
  for (const auto& [m, c] : g.terms()) {
    if (m.degree() != 0)
      throw AlgebraError("g = " + g.to_string() + " is not a sum of exponential modes");
    Mode mode{c, m.t_rate, m.x_rate};
    if (!satisfies_dispersion(mode, ctx))
      throw AlgebraError("mode exp(" + m.t_rate.to_string() + " t + " + m.x_rate.to_string() +
                         " x) of g does not satisfy the dispersion relation");
    spec.modes.push_back(mode);
  }
  return spec;
}

Decomposition decompose(const Isovector& n, const ModelContext& ctx) {
  FamilyCoordinates fc = family_coordinates(n, ctx);
  return Decomposition{fc.constants, modes_of(fc.g, ctx)};
}

bool StructureTable::all_checks_pass() const {
  for (const auto& c : ideal_checks)
    if (!c.passed) return false;
  return true;
}

std::vector<SolutionSpec> sample_solutions(const ModelContext& ctx) {
  return {
      SolutionSpec{{Mode{Rational(1), Rational(0), Rational(1)}}},
      SolutionSpec{{Mode{Rational(1), ctx.r, Rational(0)}}},
      SolutionSpec{{mode_for_rate(Rational(2), ctx, Rational(3, 2))}},
  };
}

StructureTable structure_constants(const ModelContext& ctx) {
  StructureTable table;
  std::array<Isovector, 6> basis;
  for (int i = 0; i < 6; ++i) basis[static_cast<std::size_t>(i)] = basis_isovector(i + 1, ctx);

  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      Isovector b = bracket(basis[i], basis[j]);
      FamilyCoordinates fc = family_coordinates(b, ctx);
      if (!fc.g.is_zero())
        throw AlgebraError("[N" + std::to_string(i + 1) + ", N" + std::to_string(j + 1) +
                           "] leaves span(N1..N6)");
      table.entries[i][j] = fc.constants;
    }
  }

  std::vector<SolutionSpec> samples = sample_solutions(ctx);
  std::vector<std::string> names = {"exp(x)", "exp(r t)", "generic mode"};
  for (std::size_t k = 0; k < samples.size(); ++k) {
    Isovector nu = solution_isovector(samples[k]);
    bool in_ideal = true;
    for (std::size_t i = 0; i < 6; ++i) {
      Isovector b = bracket(basis[i], nu);
      GHPair gh = gh_of(b);
      bool ok = b[Var::t].is_zero() && b[Var::x].is_zero() && gh.h.is_zero() &&
                b == solution_isovector(gh.g);
      in_ideal = in_ideal && ok;
    }
    table.ideal_checks.push_back({"[Ni,Nu] in J for u = " + names[k], in_ideal});
  }
  bool abelian = true;
  for (std::size_t k = 0; k < samples.size(); ++k)
    for (std::size_t l = 0; l < samples.size(); ++l)
      abelian = abelian && bracket(solution_isovector(samples[k]), solution_isovector(samples[l])).is_zero();
  table.ideal_checks.push_back({"[Nu,Nv]=0", abelian});
  return table;
}

std::string format_combination(const std::array<Rational, 6>& coords) {
  std::string out;
  for (std::size_t i = 0; i < 6; ++i) {
    const Rational& c = coords[i];
    if (c.is_zero()) continue;
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (c.abs() != Rational(1)) out += c.abs().to_string() + " · ";
    out += "N" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace bssym
