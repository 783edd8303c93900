#include "bssym/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bssym {

namespace {

// Solves (1 - theta h L) v_new = (1 + (1 - theta) h L) v_old on the interior,
// with Dirichlet rows at both ends. L has stencil (lo, mid, hi).
void theta_step(std::vector<double>& v, double h, double theta, double lo, double mid, double hi,
                double left_value, double right_value) {
  const std::size_t n = v.size();
  std::vector<double> rhs(n), sub(n, 0.0), diag(n, 1.0), sup(n, 0.0);
  rhs[0] = left_value;
  rhs[n - 1] = right_value;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    rhs[j] = v[j] + (1.0 - theta) * h * (lo * v[j - 1] + mid * v[j] + hi * v[j + 1]);
    sub[j] = -theta * h * lo;
    diag[j] = 1.0 - theta * h * mid;
    sup[j] = -theta * h * hi;
  }
  // Thomas algorithm
  for (std::size_t j = 1; j < n; ++j) {
    double w = sub[j] / diag[j - 1];
    diag[j] -= w * sup[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  v[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) v[j] = (rhs[j] - sup[j] * v[j + 1]) / diag[j];
}

}  // namespace

GridSolution fd_solve(const FdProblem& problem, const ModelContext& ctx, const Grid& grid,
                      const FdOptions& options) {
  if (!grid.uniform_t() || !grid.uniform_space())
    throw std::domain_error("finite-difference grid must be uniform in t and x");
  const double dx = grid.ds();
  const double dt = grid.dt();
  if (!(dx > 0.0) || !(dt > 0.0)) throw std::domain_error("degenerate grid spacing");

  const double half_s2 = 0.5 * ctx.sigma2_value();
  const double rt = ctx.rtilde_value();
  const double r = ctx.r_value();
  const double lo = half_s2 / (dx * dx) - rt / (2.0 * dx);
  const double mid = -2.0 * half_s2 / (dx * dx) - r;
  const double hi = half_s2 / (dx * dx) + rt / (2.0 * dx);

  const auto& t = grid.t_values();
  const auto& x = grid.space_values();
  const std::size_t nt = t.size(), nx = x.size();
  std::vector<double> values(nt * nx);
  std::vector<double> v(nx);
  for (std::size_t j = 0; j < nx; ++j) v[j] = problem.terminal(x[j]);
  std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>((nt - 1) * nx));

  // phi_t = -L phi, so stepping from t_{i+1} down to t_i is a forward step in T - t.
  for (std::size_t step = 0; step + 1 < nt; ++step) {
    std::size_t i = nt - 2 - step;
    if (static_cast<int>(step) < options.rannacher_steps) {
      double t_mid = 0.5 * (t[i] + t[i + 1]);
      theta_step(v, 0.5 * dt, 1.0, lo, mid, hi, problem.lower(t_mid, x.front()), problem.upper(t_mid, x.back()));
      theta_step(v, 0.5 * dt, 1.0, lo, mid, hi, problem.lower(t[i], x.front()), problem.upper(t[i], x.back()));
    } else {
      theta_step(v, dt, 0.5, lo, mid, hi, problem.lower(t[i], x.front()), problem.upper(t[i], x.back()));
    }
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(i * nx));
  }
  return GridSolution(grid, std::move(values), Frame::log);
}

GridSolution fd_solve(const OptionSpec& spec, const ModelContext& ctx, const Grid& grid,
                      const FdOptions& options) {
  const double T = spec.maturity;
  if (std::abs(grid.t_values().back() - T) > 1e-12 * std::max(1.0, T))
    throw std::domain_error("finite-difference grid must end at maturity");
  const double K = spec.strike;
  const double r = ctx.r_value();
  FdProblem p;
  p.terminal = [spec](double x) { return payoff(spec, std::exp(x)); };
  if (spec.kind == OptionKind::call) {
    p.lower = [](double, double) { return 0.0; };
    p.upper = [=](double t, double x) { return std::exp(x) - K * std::exp(-r * (T - t)); };
  } else {
    p.lower = [=](double t, double x) { return K * std::exp(-r * (T - t)) - std::exp(x); };
    p.upper = [](double, double) { return 0.0; };
  }
  return fd_solve(p, ctx, grid, options);
}

double value_at(const GridSolution& sol, std::size_t time_index, double x) {
  const auto& xs = sol.grid().space_values();
  if (x < xs.front() || x > xs.back()) throw std::domain_error("x outside the grid");
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t j = it == xs.end() ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
  j = std::max<std::size_t>(j, 1);
  double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return (1.0 - w) * sol.at(time_index, j - 1) + w * sol.at(time_index, j);
}

}  // namespace bssym
