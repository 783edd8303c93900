#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bssym/black_scholes.hpp"
#include "bssym/fd_solver.hpp"
#include "bssym/grid.hpp"
#include "bssym/residual.hpp"
#include "test_support.hpp"

using namespace bssym;
using bssym::testing::normal_cdf_oracle;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

const ModelContext kCtx = make_context(q(1, 20), q(1, 25));
const OptionSpec kCall = make_option(100.0, 1.0, OptionKind::call);

template <class F>
GridSolution tabulate(const Grid& g, Frame frame, F f) {
  std::vector<double> v;
  for (double ti : g.t_values())
    for (double s : g.space_values()) v.push_back(f(ti, s));
  return GridSolution(g, std::move(v), frame);
}

double fd_error_at_money(double dx, std::size_t steps) {
  const double lk = std::log(100.0);
  auto grid = Grid::uniform(0.0, 1.0, steps + 1, lk - 3.0, lk + 3.0, static_cast<std::size_t>(std::lround(6.0 / dx)) + 1);
  auto sol = fd_solve(kCall, kCtx, grid);
  return value_at(sol, 0, lk) - bs_price(kCall, kCtx, 0.0, 100.0);
}

}  // namespace

TEST_CASE("normal cdf against the series oracle") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(static_cast<double>(normal_cdf_oracle(1.96L)) == doctest::Approx(0.9750021048517795).epsilon(1e-15));
  CHECK(std::fabs(normal_cdf(1.96) - 0.9750021048517795) <= 1e-12);
  for (double z = -8.0; z <= 8.0; z += 0.01) {
    CHECK(std::fabs(normal_cdf(z) - static_cast<double>(normal_cdf_oracle(z))) <= 1e-12);
    CHECK(std::fabs(normal_cdf(z) + normal_cdf(-z) - 1.0) <= 1e-14);
    CHECK(normal_cdf(z) <= normal_cdf(z + 0.01));
  }
  CHECK(normal_cdf(-40.0) >= 0.0);
  CHECK(normal_cdf(40.0) <= 1.0);
}

TEST_CASE("option spec validation") {
  CHECK_THROWS_AS(make_option(0.0, 1.0, OptionKind::call), std::domain_error);
  CHECK_THROWS_AS(make_option(100.0, -1.0, OptionKind::put), std::domain_error);
  CHECK(option_kind_from_name("put") == OptionKind::put);
  CHECK_THROWS(option_kind_from_name("straddle"));
}

TEST_CASE("closed form prices") {
  for (double S : {50.0, 100.0, 150.0}) CHECK(bs_price(kCall, kCtx, 1.0, S) == std::max(S - 100.0, 0.0));
  auto put = make_option(100.0, 1.0, OptionKind::put);
  CHECK(bs_price(put, kCtx, 1.0, 80.0) == 20.0);

  auto zero_rate = make_context(q(0), q(1, 25));
  double oracle = static_cast<double>(100.0L * (2.0L * normal_cdf_oracle(0.1L) - 1.0L));
  CHECK(bs_price(kCall, zero_rate, 0.0, 100.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(7.9656).epsilon(1e-5));

  CHECK_THROWS_AS(bs_price(kCall, kCtx, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(bs_price(kCall, kCtx, 1.5, 100.0), std::domain_error);
}

TEST_CASE("put-call parity") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> S(20.0, 300.0), K(20.0, 300.0), t(0.0, 0.99);
  std::uniform_int_distribution<int> r(0, 20), s2(1, 30);
  for (int k = 0; k < 500; ++k) {
    auto ctx = make_context(q(r(rng), 100), q(s2(rng), 100));
    double strike = K(rng), spot = S(rng), tt = t(rng);
    auto c = make_option(strike, 1.0, OptionKind::call), p = make_option(strike, 1.0, OptionKind::put);
    double lhs = bs_price(c, ctx, tt, spot) - bs_price(p, ctx, tt, spot);
    double rhs = spot - strike * std::exp(-ctx.r_value() * (1.0 - tt));
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, spot));
  }
}

TEST_CASE("greeks match finite differences") {
  for (double S : {70.0, 100.0, 140.0}) {
    double t = 0.3, h = 1e-3;
    auto gk = bs_greeks(kCall, kCtx, t, S);
    CHECK(gk.delta == doctest::Approx((bs_price(kCall, kCtx, t, S + h) - bs_price(kCall, kCtx, t, S - h)) / (2 * h)).epsilon(1e-6));
    CHECK(gk.theta == doctest::Approx((bs_price(kCall, kCtx, t + h, S) - bs_price(kCall, kCtx, t - h, S)) / (2 * h)).epsilon(1e-6));
    double fd_gamma = (bs_price(kCall, kCtx, t, S + 0.1) - 2 * gk.value + bs_price(kCall, kCtx, t, S - 0.1)) / 0.01;
    CHECK(gk.gamma == doctest::Approx(fd_gamma).epsilon(1e-5));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({0.0, 1.0}, {0.0, 1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(Grid({0.0, 0.5, 0.5}, {0.0, 1.0, 2.0}), std::domain_error);
  auto g = Grid::with_spacing(0.0, 0.8, 1e-3, std::log(0.5), std::log(200.0), 0.01);
  CHECK(g.nt() == 801);
  CHECK(g.uniform_t());
  CHECK(g.uniform_space());
  CHECK(g.dt() == doctest::Approx(1e-3));
  CHECK_THROWS_AS(GridSolution(Grid::uniform(0, 1, 3, 0, 1, 3), std::vector<double>(9, NAN), Frame::log), std::domain_error);
  CHECK_THROWS_AS(GridSolution(Grid::uniform(0, 1, 3, -1, 1, 3), std::vector<double>(9, 1.0), Frame::price), std::domain_error);
}

TEST_CASE("frame conversion") {
  auto g = Grid::uniform(0.0, 1.0, 3, 50.0, 150.0, 5);
  auto c = tabulate(g, Frame::price, [](double, double) { return 3.5; });
  auto phi = to_log_frame(c);
  CHECK(phi.frame() == Frame::log);
  for (double v : phi.values()) CHECK(v == 3.5);
  CHECK(phi.grid().space_values()[0] == std::log(50.0));

  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> s{0.5, 1.7, 2.2, 9.0, 40.0, 41.0};
  Grid rg({0.0, 0.1, 0.35, 0.9}, s);
  std::vector<double> vals(rg.size());
  for (auto& v : vals) v = u(rng);
  GridSolution orig(rg, vals, Frame::price);
  auto back = from_log_frame(to_log_frame(orig));
  CHECK(back.values() == orig.values());
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(back.grid().space_values()[j] == doctest::Approx(s[j]).epsilon(1e-15));
  CHECK_THROWS_AS(to_log_frame(phi), std::domain_error);
}

TEST_CASE("CSV round trip") {
  auto g = Grid::uniform(0.0, 0.5, 3, 1.0, 2.0, 4);
  auto sol = tabulate(g, Frame::price, [](double t, double S) { return std::exp(t) / S + 1e-9; });
  std::stringstream ss;
  write_csv(ss, sol);
  CHECK(ss.str().rfind("t,S,value\n", 0) == 0);
  auto back = read_csv(ss);
  CHECK(back.frame() == Frame::price);
  CHECK(back.values() == sol.values());
  CHECK(back.grid().space_values() == g.space_values());
  std::stringstream bad("t,y,value\n0,1,2\n");
  CHECK_THROWS(read_csv(bad));
}

TEST_CASE("Fornberg weights are exact on polynomials") {
  std::vector<double> nodes{-0.3, -0.1, 0.05, 0.2, 0.6};
  double z = 0.07;
  auto w = fd_weights(z, nodes, 2);
  for (int deg = 0; deg < 5; ++deg) {
    double d0 = 0, d1 = 0, d2 = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      double v = std::pow(nodes[k], deg);
      d0 += w[k * 3] * v;
      d1 += w[k * 3 + 1] * v;
      d2 += w[k * 3 + 2] * v;
    }
    CHECK(d0 == doctest::Approx(std::pow(z, deg)).epsilon(1e-12));
    CHECK(d1 == doctest::Approx(deg * std::pow(z, deg - 1)).epsilon(1e-10).scale(1.0));
    CHECK(d2 == doctest::Approx(deg * (deg - 1) * std::pow(z, std::max(deg - 2, 0))).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("residual of exact solutions") {
  auto g = Grid::with_spacing(0.0, 0.8, 1e-2, -1.0, 1.0, 0.02);
  auto ert = tabulate(g, Frame::log, [](double t, double) { return std::exp(0.05 * t); });
  auto ex = tabulate(g, Frame::log, [](double, double x) { return std::exp(x); });
  auto lin = tabulate(g, Frame::log, [](double, double x) { return x; });
  for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
    CHECK(residual_E2(ert, kCtx, order).max_relative_residual < 1e-8);
    // truncation error of the centered stencils on e^x: h^2 (sigma2/24 + rtilde/6) at second order
    double bound = order == StencilOrder::second ? 1.01 * 0.02 * 0.02 * (0.04 / 24 + 0.03 / 6) : 1e-8;
    CHECK(residual_E2(ex, kCtx, order).max_relative_residual < bound);
    auto rl = residual_E2(lin, kCtx, order);
    // oracle: |rtilde - r x| by direct substitution, largest at the ends
    double expected = 0.0;
    for (std::size_t j = 1; j + 1 < g.ns(); ++j)
      expected = std::max(expected, std::fabs(0.03 - 0.05 * g.space_values()[j]));
    CHECK(rl.max_abs_residual >= 0.03);
    CHECK(rl.max_abs_residual <= expected + 1e-12);
  }
  CHECK_THROWS_AS(residual_E(ex, kCtx), std::domain_error);
  auto tiny = tabulate(Grid::uniform(0, 1, 3, 0, 1, 3), Frame::log, [](double, double x) { return x; });
  CHECK_THROWS_AS(residual_E2(tiny, kCtx, StencilOrder::fourth), std::domain_error);
  CHECK(residual_E2(tiny, kCtx, StencilOrder::second).interior_nodes == 1);
}

TEST_CASE("closed form residual converges at second order") {
  auto run = [](double ds, double dt) {
    auto g = Grid::with_spacing(0.0, 0.8, dt, 50.0, 200.0, ds);
    auto c = tabulate(g, Frame::price, [](double t, double S) { return bs_price(kCall, kCtx, t, S); });
    return residual_E(c, kCtx, StencilOrder::second).max_abs_residual;
  };
  double e1 = run(2.0, 0.02), e2 = run(1.0, 0.01), e3 = run(0.5, 0.005);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("frame conversion preserves residual verdicts") {
  // For a smooth solution the two audits measure the same operator, so the
  // relative residuals agree up to a stencil constant of 4.
  for (double h : {0.02, 0.01}) {
    auto g = Grid::with_spacing(0.0, 0.8, h / 2, std::log(50.0), std::log(200.0), h);
    auto phi = tabulate(g, Frame::log, [](double t, double x) { return bs_price(kCall, kCtx, t, std::exp(x)); });
    auto rlog = residual_E2(phi, kCtx, StencilOrder::second);
    auto rprice = residual_E(from_log_frame(phi), kCtx, StencilOrder::second);
    const double tau = 5e-4;
    CHECK(rlog.max_relative_residual <= tau);
    CHECK(rprice.max_relative_residual <= 4 * tau);
    CHECK(rprice.max_relative_residual <= 4 * rlog.max_relative_residual);
    CHECK(rlog.max_relative_residual <= 4 * rprice.max_relative_residual);
  }
  // and a non-solution is flagged in both frames with matching magnitude
  auto g = Grid::with_spacing(0.0, 0.8, 0.01, std::log(50.0), std::log(200.0), 0.01);
  auto bad = tabulate(g, Frame::log, [](double t, double x) { return std::exp(x) * t; });
  auto a = residual_E2(bad, kCtx), b = residual_E(from_log_frame(bad), kCtx);
  CHECK(a.max_abs_residual == doctest::Approx(b.max_abs_residual).epsilon(1e-6));
}

TEST_CASE("fd solver basics") {
  auto grid = Grid::uniform(0.0, 1.0, 51, std::log(100.0) - 3.0, std::log(100.0) + 3.0, 301);
  auto sol = fd_solve(kCall, kCtx, grid);
  CHECK(sol.frame() == Frame::log);
  for (std::size_t j = 0; j < grid.ns(); ++j)
    CHECK(sol.at(grid.nt() - 1, j) == payoff(kCall, std::exp(grid.space_values()[j])));

  FdProblem ex{[](double x) { return std::exp(x); }, [](double, double x) { return std::exp(x); },
               [](double, double x) { return std::exp(x); }};
  auto g2 = Grid::uniform(0.0, 1.0, 101, -1.0, 1.0, 201);
  auto se = fd_solve(ex, kCtx, g2);
  double worst = 0.0;
  for (std::size_t i = 0; i < g2.nt(); ++i)
    for (std::size_t j = 0; j < g2.ns(); ++j)
      worst = std::max(worst, std::fabs(se.at(i, j) - std::exp(g2.space_values()[j])));
  CHECK(worst < 1e-4);

  CHECK_THROWS_AS(fd_solve(kCall, kCtx, Grid::uniform(0.0, 0.5, 11, 0.0, 1.0, 11)), std::domain_error);
  CHECK_THROWS_AS(fd_solve(kCall, kCtx, Grid({0.0, 0.1, 1.0}, {0.0, 1.0, 2.0})), std::domain_error);
}

TEST_CASE("fd solver converges at second order") {
  double e1 = fd_error_at_money(0.02, 50), e2 = fd_error_at_money(0.01, 100), e3 = fd_error_at_money(0.005, 200);
  MESSAGE("errors " << e1 << " " << e2 << " " << e3);
  CHECK(std::fabs(e1 / e2) >= 3.5);
  CHECK(std::fabs(e1 / e2) <= 4.5);
  CHECK(std::fabs(e2 / e3) >= 3.5);
  CHECK(std::fabs(e2 / e3) <= 4.5);
}

TEST_CASE("fd self-convergence order away from the kink") {
  const double lk = std::log(100.0);
  std::vector<double> v;
  for (auto [dx, steps] : {std::pair{0.02, 50}, std::pair{0.01, 100}, std::pair{0.005, 200}}) {
    auto grid = Grid::uniform(0.0, 1.0, static_cast<std::size_t>(steps) + 1, lk - 3.0, lk + 3.0,
                              static_cast<std::size_t>(std::lround(6.0 / dx)) + 1);
    v.push_back(value_at(fd_solve(kCall, kCtx, grid), 0, lk + 0.2));
  }
  double p = std::log2(std::fabs(v[0] - v[1]) / std::fabs(v[1] - v[2]));
  CHECK(p >= 1.8);
  CHECK(p <= 2.2);
}
