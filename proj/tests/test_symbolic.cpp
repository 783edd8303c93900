#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bssym/algebra.hpp"
#include "bssym/diff_form.hpp"
#include "bssym/exppoly.hpp"
#include "bssym/ideal.hpp"
#include "bssym/isovector.hpp"
#include "bssym/model.hpp"
#include "bssym/rational.hpp"
#include "test_support.hpp"

using namespace bssym;
using bssym::testing::random_exppoly;
using bssym::testing::random_form;
using bssym::testing::random_vector_field;

namespace {

const ExpPoly t = ExpPoly::var(Var::t);
const ExpPoly x = ExpPoly::var(Var::x);
const ExpPoly phi = ExpPoly::var(Var::phi);
const ExpPoly A = ExpPoly::var(Var::A);
const ExpPoly B = ExpPoly::var(Var::B);
const DiffForm dt = DiffForm::d(Var::t);
const DiffForm dx = DiffForm::d(Var::x);
const DiffForm dphi = DiffForm::d(Var::phi);
const DiffForm dA = DiffForm::d(Var::A);
const DiffForm dB = DiffForm::d(Var::B);

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("rational normal form") {
  CHECK(Rational(6, -4).num() == -3);
  CHECK(Rational(6, -4).den() == 2);
  CHECK(Rational(0, -7).den() == 1);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational::parse("3/100") == q(3, 100));
  CHECK(Rational::parse("-0.05") == q(-1, 20));
  CHECK(Rational::parse("7") == q(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK(q(1, 2).to_string() == "1/2");
  CHECK(q(4, 2).to_string() == "2");
  CHECK(q(-3, 9).to_string() == "-1/3");
}

TEST_CASE("rational overflow is an error") {
  Rational big(INT64_MAX / 2 + 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big + big, std::overflow_error);
}

TEST_CASE("make_context") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  CHECK(ctx.rtilde == q(3, 100));
  CHECK(ctx.stilde == q(7, 100));
  CHECK(ctx.rtilde * ctx.rtilde / (q(2) * ctx.sigma2) + ctx.r == ctx.stilde * ctx.stilde / (q(2) * ctx.sigma2));
  CHECK(ctx.stilde_rate() == q(49, 10000) * q(25, 2));

  auto c2 = make_context(q(1), q(2));
  CHECK(c2.rtilde == q(0));
  CHECK(c2.stilde == q(2));

  auto c3 = make_context(q(0), q(2));
  CHECK(c3.rtilde == q(-1));
  CHECK(c3.stilde == q(1));

  CHECK_THROWS_AS(make_context(q(1, 20), q(0)), std::domain_error);
  CHECK_THROWS_AS(make_context(q(1, 20), q(-1, 25)), std::domain_error);
}

TEST_CASE("exppoly ring operations") {
  CHECK((t + x) * (t - x) == t * t - x * x);
  auto e1 = ExpPoly::exp(q(1, 2), q(2));
  auto e2 = ExpPoly::exp(q(-1, 3), q(-1));
  CHECK(e1 * e2 == ExpPoly::exp(q(1, 6), q(1)));
  CHECK(ExpPoly::exp(q(0), q(0)) == ExpPoly(1));
  CHECK((t - t).is_zero());
  CHECK((t * q(0)).is_zero());

  auto ctx = make_context(q(1, 20), q(1, 25));
  auto drift = beta_drift(ctx);
  CHECK(drift == B + ctx.rtilde * A - ctx.r * phi);
  std::array<Rational, kNumVars> p{q(0), q(0), q(1), q(1), q(1)};
  // oracle: 1 + 3/100 - 1/20 by hand
  CHECK(drift.evaluate(p) == q(49, 50));
}

TEST_CASE("exppoly printer") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  CHECK(beta_drift(ctx).to_string() == "B + 3/100*A - 1/20*phi");
  CHECK(ExpPoly::exp(q(1, 20), q(1)).to_string() == "exp(1/20*t + x)");
  CHECK(ExpPoly().to_string() == "0");
}

TEST_CASE("exppoly evaluation") {
  auto f = t * x * ExpPoly::exp(q(1), q(-1)) + q(3, 2) * phi;
  std::array<double, kNumVars> p{0.5, 2.0, 4.0, 0.0, 0.0};
  CHECK(f.evaluate(p) == doctest::Approx(0.5 * 2.0 * std::exp(0.5 - 2.0) + 6.0).epsilon(1e-15));
  std::array<Rational, kNumVars> pe{q(1), q(1), q(0), q(0), q(0)};
  CHECK(f.evaluate(pe) == q(1));
  std::array<Rational, kNumVars> bad{q(1), q(0), q(0), q(0), q(0)};
  CHECK_THROWS_AS(f.evaluate(bad), std::domain_error);
}

TEST_CASE("exppoly substitution") {
  auto f = x * x * ExpPoly::exp(q(1, 2), q(3));
  // x -> x + 2t keeps the exponential in the ring
  auto g = f.substitute(Var::x, x + q(2) * t);
  CHECK(g == (x + q(2) * t).pow(2) * ExpPoly::exp(q(13, 2), q(3)));
  CHECK_THROWS_AS(f.substitute(Var::x, x + ExpPoly(1)), std::domain_error);
  CHECK(phi.substitute(Var::phi, A * B) == A * B);
  CHECK((x * t).substitute(Var::t, ExpPoly(5)) == q(5) * x);
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(20240501);
  for (int k = 0; k < 200; ++k) {
    auto a = random_exppoly(rng), b = random_exppoly(rng), c = random_exppoly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == ExpPoly());
    // canonical form is idempotent: rebuilding from terms changes nothing
    ExpPoly rebuilt;
    for (const auto& [m, coef] : a.terms()) {
      CHECK(!coef.is_zero());
      rebuilt += ExpPoly::term(coef, m);
    }
    CHECK(rebuilt == a);
    CHECK(rebuilt.to_string() == a.to_string());
  }
}

TEST_CASE("differentiate") {
  auto c = x * phi + q(2) * A;
  auto d = t * t + ExpPoly::exp(q(1), q(0));
  CHECK(differentiate(c + B * d, Var::B) == d);
  auto ctx = make_context(q(1, 20), q(1, 25));
  CHECK(differentiate(ExpPoly::exp(ctx.r, q(0)), Var::t) == ctx.r * ExpPoly::exp(ctx.r, q(0)));
  auto b = q(-5, 2);
  CHECK(differentiate(x * x * ExpPoly::exp(q(0), b), Var::x) == (q(2) * x + b * x * x) * ExpPoly::exp(q(0), b));
  CHECK(differentiate(c, "phi") == x);
  CHECK_THROWS_AS(differentiate(c, "y"), std::domain_error);
}

TEST_CASE("product rule on random inputs") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    auto a = random_exppoly(rng), b = random_exppoly(rng);
    for (Var v : kAllVars) {
      CHECK(differentiate(a * b, v) == differentiate(a, v) * b + a * differentiate(b, v));
      CHECK(differentiate(a + b, v) == differentiate(a, v) + differentiate(b, v));
    }
  }
}

TEST_CASE("wedge") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  auto alpha = structural_forms(ctx).alpha;
  CHECK(wedge(dx, dt) == -wedge(dt, dx));
  CHECK(wedge(dx, dt).coefficient({Var::t, Var::x}) == ExpPoly(-1));
  CHECK(wedge(alpha, alpha).is_zero());
  CHECK(wedge(-dx, alpha) == wedge(alpha, dx));
  CHECK(wedge(wedge(dt, dx), wedge(dphi, wedge(dA, dB))).degree() == 5);
  auto overflow = wedge(wedge(wedge(dt, dx), wedge(dphi, dA)), wedge(dB, dt));
  CHECK(overflow.is_zero());
  CHECK(overflow.degree() == 6);
}

TEST_CASE("wedge is graded antisymmetric and associative") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 60; ++k) {
    int p = static_cast<int>(rng() % 3), r = static_cast<int>(rng() % 2);
    auto u = random_form(rng, p), v = random_form(rng, r), w = random_form(rng, 1);
    auto sign = ((p * r) % 2 == 0) ? ExpPoly(1) : ExpPoly(-1);
    CHECK(wedge(u, v) == sign * wedge(v, u));
    CHECK(wedge(wedge(u, v), w) == wedge(u, wedge(v, w)));
  }
}

TEST_CASE("exterior derivative") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  auto f = structural_forms(ctx);
  auto da = exterior_derivative(f.alpha);
  CHECK(da == -wedge(dA, dx) - wedge(dB, dt));
  CHECK(da.to_string() == "-dA^dx - dB^dt");
  CHECK(da == f.dalpha);
  auto dbeta = exterior_derivative(f.beta);
  CHECK(dbeta == wedge(dB + ctx.rtilde * ExpPoly(1) * dA - ctx.r * ExpPoly(1) * dphi, wedge(dx, dt)));
  CHECK(exterior_derivative(da).is_zero());
  CHECK(exterior_derivative(DiffForm::scalar(t * x)) == x * dt + t * dx);
}

TEST_CASE("d of d vanishes on random forms") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 80; ++k) {
    int p = static_cast<int>(rng() % 4);
    auto u = random_form(rng, p);
    CHECK(exterior_derivative(exterior_derivative(u)).is_zero());
  }
}

TEST_CASE("Leibniz rule for d") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 60; ++k) {
    int p = static_cast<int>(rng() % 3);
    auto u = random_form(rng, p), v = random_form(rng, 1);
    auto sign = (p % 2 == 0) ? ExpPoly(1) : ExpPoly(-1);
    CHECK(exterior_derivative(wedge(u, v)) ==
          wedge(exterior_derivative(u), v) + sign * wedge(u, exterior_derivative(v)));
  }
}

TEST_CASE("printer uses descending factor order") {
  CHECK(wedge(dt, dx).to_string() == "-dx^dt");
  CHECK((q(1, 2) * ExpPoly(1) * wedge(dA, dt)).to_string() == "1/2 dA^dt");
  CHECK(DiffForm(2).to_string() == "0");
}

TEST_CASE("contract") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  auto f = structural_forms(ctx);
  // alpha evaluated on a field by hand: N^phi - A N^x - B N^t
  Isovector n(t, x * x, phi * A, B, ExpPoly(3));
  CHECK(contract(n, f.alpha).as_scalar() == phi * A - A * x * x - B * t);
  auto expected = -n[Var::A] * dx + n[Var::x] * dA - n[Var::B] * dt + n[Var::t] * dB;
  CHECK(contract(n, f.dalpha) == expected);
  CHECK_THROWS_AS(contract(n, DiffForm::scalar(t)), std::domain_error);
}

TEST_CASE("contraction is an antiderivation") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 60; ++k) {
    auto n = random_vector_field(rng);
    int p = 1 + static_cast<int>(rng() % 2);
    auto u = random_form(rng, p), v = random_form(rng, 1);
    auto sign = (p % 2 == 0) ? ExpPoly(1) : ExpPoly(-1);
    CHECK(contract(n, wedge(u, v)) == wedge(contract(n, u), v) + sign * wedge(u, contract(n, v)));
  }
}

TEST_CASE("Lie derivative commutes with d") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 60; ++k) {
    auto n = random_vector_field(rng);
    int p = static_cast<int>(rng() % 3);
    auto u = random_form(rng, p);
    CHECK(lie_derivative(n, exterior_derivative(u)) == exterior_derivative(lie_derivative(n, u)));
  }
}

TEST_CASE("Lie derivative of a function is the directional derivative") {
  Isovector n(ExpPoly(1), x, ExpPoly(), ExpPoly(), ExpPoly());
  CHECK(lie_derivative(n, DiffForm::scalar(t * x)).as_scalar() == x + t * x);
}

TEST_CASE("structural forms") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  auto f = structural_forms(ctx);
  CHECK(f.alpha == dphi - A * dx - B * dt);
  CHECK(f.beta.coefficient({Var::x, Var::t}) == B + ctx.rtilde * A - ctx.r * phi);
  CHECK(f.beta.coefficient({Var::A, Var::t}) == ExpPoly(ctx.sigma2 / q(2)));
  CHECK(f.beta.coefficient({Var::t, Var::A}) == ExpPoly(-(ctx.sigma2 / q(2))));
  auto rhs = wedge(f.dalpha, dx - ctx.rtilde * ExpPoly(1) * dt) - ctx.r * ExpPoly(1) * wedge(f.alpha, wedge(dx, dt));
  CHECK(exterior_derivative(f.beta) - rhs == DiffForm(3));
}

namespace {

// Solves the 10x6 system pointwise in long double: the columns are the
// coefficient vectors of dt^alpha, dx^alpha, dA^alpha, dB^alpha, dalpha and
// beta at a point. Returns the least-squares residual norm.
long double pointwise_residual(const DiffForm& gamma, const ModelContext& ctx, std::array<double, kNumVars> p) {
  auto f = structural_forms(ctx);
  std::vector<DiffForm> cols{wedge(dt, f.alpha), wedge(dx, f.alpha), wedge(dA, f.alpha), wedge(dB, f.alpha),
                             f.dalpha, f.beta};
  std::vector<BasisMask> masks;
  for (unsigned m = 0; m < 32; ++m)
    if (mask_degree(static_cast<BasisMask>(m)) == 2) masks.push_back(static_cast<BasisMask>(m));
  // normal equations with Gaussian elimination
  const std::size_t n = cols.size();
  std::vector<std::vector<long double>> M(masks.size(), std::vector<long double>(n));
  std::vector<long double> rhs(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) M[i][j] = cols[j].coefficient(masks[i]).evaluate(p);
    rhs[i] = gamma.coefficient(masks[i]).evaluate(p);
  }
  std::vector<std::vector<long double>> N(n, std::vector<long double>(n + 1, 0.0L));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < masks.size(); ++i) N[a][b] += M[i][a] * M[i][b];
    for (std::size_t i = 0; i < masks.size(); ++i) N[a][n] += M[i][a] * rhs[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(N[r][c]) > std::fabs(N[piv][c])) piv = r;
    std::swap(N[c], N[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      long double fac = N[r][c] / N[c][c];
      for (std::size_t k = c; k <= n; ++k) N[r][k] -= fac * N[c][k];
    }
  }
  long double res = 0.0L;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    long double s = rhs[i];
    for (std::size_t j = 0; j < n; ++j) s -= M[i][j] * N[j][n] / N[j][j];
    res += s * s;
  }
  return std::sqrt(res);
}

}  // namespace

TEST_CASE("ideal membership examples") {
  auto ctx = make_context(q(1, 20), q(1, 25));
  auto f = structural_forms(ctx);

  auto cb = ideal_membership(f.beta, ctx);
  CHECK(cb.is_member());
  CHECK(cb.R6 == ExpPoly(1));
  CHECK(cb.R1.is_zero());
  CHECK(cb.R2.is_zero());
  CHECK(cb.R3.is_zero());
  CHECK(cb.R4.is_zero());
  CHECK(cb.R5.is_zero());

  auto ca = ideal_membership(wedge(f.alpha, dx), ctx);
  CHECK(ca.is_member());
  CHECK(ca.rho() == -dx);
  CHECK(ca.R5.is_zero());
  CHECK(ca.R6.is_zero());

  std::array<double, kNumVars> p{0.3, -0.2, 1.1, 0.7, -0.4};
  auto gamma = wedge(dx, dt);
  CHECK(pointwise_residual(gamma, ctx, p) > 1e-3L);
  CHECK(pointwise_residual(f.beta, ctx, p) < 1e-12L);
  auto cg = ideal_membership(gamma, ctx);
  CHECK(cg.status == Membership::not_member);
  CHECK(cg.R1.is_zero());
  CHECK(cg.R2.is_zero());
  CHECK(cg.R3.is_zero());
  CHECK(cg.R4.is_zero());
  CHECK(cg.R5.is_zero());
  CHECK(cg.R6.is_zero());
  CHECK(cg.remainder == gamma);

  CHECK_THROWS_AS(ideal_membership(dx, ctx), std::domain_error);
}

TEST_CASE("ideal membership is sound on random members") {
  std::mt19937_64 rng(29);
  for (auto [r, s2] : {std::pair{q(1, 20), q(1, 25)}, std::pair{q(0), q(2)}, std::pair{q(3, 100), q(9, 100)}}) {
    auto ctx = make_context(r, s2);
    auto f = structural_forms(ctx);
    for (int k = 0; k < 40; ++k) {
      auto rho = random_exppoly(rng) * dt + random_exppoly(rng) * dx + random_exppoly(rng) * dphi +
                 random_exppoly(rng) * dA + random_exppoly(rng) * dB;
      auto gamma = wedge(rho, f.alpha) + random_exppoly(rng) * f.dalpha + random_exppoly(rng) * f.beta;
      auto cert = ideal_membership(gamma, ctx);
      CHECK(cert.is_member());
      CHECK(cert.remainder.is_zero());
      CHECK(reconstruct(cert, ctx) == gamma);
    }
  }
}

TEST_CASE("membership remainder accounts for the whole form") {
  std::mt19937_64 rng(31);
  auto ctx = make_context(q(1, 20), q(1, 25));
  for (int k = 0; k < 60; ++k) {
    auto gamma = random_form(rng, 2);
    auto cert = ideal_membership(gamma, ctx);
    CHECK(gamma - reconstruct(cert, ctx) == cert.remainder);
    CHECK(cert.is_member() == cert.remainder.is_zero());
    if (!cert.is_member()) {
      std::array<double, kNumVars> p{0.31, -0.27, 0.83, 0.55, -0.61};
      // a nonzero remainder is a genuine obstruction unless it happens to
      // vanish at the probe point
      if (cert.remainder.coefficients().begin()->second.evaluate(p) != 0.0)
        CHECK(pointwise_residual(gamma, ctx, p) > 1e-9L);
    }
  }
}
