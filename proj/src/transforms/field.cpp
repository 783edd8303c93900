#include "bssym/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bssym {

namespace {

double central_difference(const std::function<double(double)>& f, double at) {
  const double h = 1e-3 * std::max(1.0, std::abs(at));
  return (-f(at + 2 * h) + 8 * f(at + h) - 8 * f(at - h) + f(at - 2 * h)) / (12 * h);
}

// Index of the first of `points` consecutive nodes around v.
std::size_t stencil_start(const std::vector<double>& nodes, double v, std::size_t points) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
  std::ptrdiff_t j = (it - nodes.begin()) - static_cast<std::ptrdiff_t>(points / 2);
  j = std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(nodes.size() - points));
  return static_cast<std::size_t>(j);
}

std::array<double, 4> lagrange_weights(const std::vector<double>& nodes, std::size_t start, std::size_t points,
                                       double v) {
  std::array<double, 4> w{};
  for (std::size_t a = 0; a < points; ++a) {
    double num = 1.0, den = 1.0;
    for (std::size_t b = 0; b < points; ++b) {
      if (a == b) continue;
      num *= v - nodes[start + b];
      den *= nodes[start + a] - nodes[start + b];
    }
    w[a] = num / den;
  }
  return w;
}

}  // namespace

double Field::derivative_t(double t, double s) const {
  if (d_t) return d_t(t, s);
  return central_difference([&](double tt) { return value(tt, s); }, t);
}

double Field::derivative_space(double t, double s) const {
  if (d_space) return d_space(t, s);
  return central_difference([&](double ss) { return value(t, ss); }, s);
}

Field closed_form_field(const OptionSpec& spec, const ModelContext& ctx, Frame frame) {
  Field f;
  f.frame = frame;
  const double T = spec.maturity;
  if (frame == Frame::price) {
    f.value = [=](double t, double S) { return bs_price(spec, ctx, t, S); };
    f.contains = [=](double t, double S) { return t <= T && S > 0.0; };
    f.d_t = [=](double t, double S) { return bs_greeks(spec, ctx, t, S).theta; };
    f.d_space = [=](double t, double S) { return bs_greeks(spec, ctx, t, S).delta; };
  } else {
    f.value = [=](double t, double x) { return bs_price(spec, ctx, t, std::exp(x)); };
    f.contains = [=](double t, double) { return t <= T; };
    f.d_t = [=](double t, double x) { return bs_greeks(spec, ctx, t, std::exp(x)).theta; };
    f.d_space = [=](double t, double x) {
      double S = std::exp(x);
      return S * bs_greeks(spec, ctx, t, S).delta;
    };
  }
  return f;
}

Field exp_mode_field(const SolutionSpec& u, Frame frame) {
  struct M {
    double c, a, b;
  };
  std::vector<M> modes;
  for (const Mode& m : u.modes) modes.push_back({m.coef.to_double(), m.a.to_double(), m.b.to_double()});
  const bool price = frame == Frame::price;
  auto x_of = [price](double s) { return price ? std::log(s) : s; };
  Field f;
  f.frame = frame;
  f.value = [=](double t, double s) {
    double x = x_of(s), v = 0.0;
    for (const M& m : modes) v += m.c * std::exp(m.a * t + m.b * x);
    return v;
  };
  f.d_t = [=](double t, double s) {
    double x = x_of(s), v = 0.0;
    for (const M& m : modes) v += m.a * m.c * std::exp(m.a * t + m.b * x);
    return v;
  };
  f.d_space = [=](double t, double s) {
    double x = x_of(s), v = 0.0;
    for (const M& m : modes) v += m.b * m.c * std::exp(m.a * t + m.b * x);
    return price ? v / s : v;
  };
  f.contains = [price](double, double s) { return !price || s > 0.0; };
  return f;
}

Field interpolated_field(const GridSolution& sol, int points) {
  if (points != 3 && points != 4) throw std::domain_error("interpolation uses 3 or 4 points per axis");
  const auto n = static_cast<std::size_t>(points);
  const auto& t = sol.grid().t_values();
  const auto& s = sol.grid().space_values();
  if (t.size() < n || s.size() < n) throw std::domain_error("grid too small for the interpolation stencil");
  Field f;
  f.frame = sol.frame();
  const double t_lo = t.front(), t_hi = t.back(), s_lo = s.front(), s_hi = s.back();
  f.contains = [=](double tt, double ss) { return tt >= t_lo && tt <= t_hi && ss >= s_lo && ss <= s_hi; };
  f.value = [sol, n](double tt, double ss) {
    const auto& tv = sol.grid().t_values();
    const auto& sv = sol.grid().space_values();
    std::size_t i0 = stencil_start(tv, tt, n), j0 = stencil_start(sv, ss, n);
    auto wt = lagrange_weights(tv, i0, n, tt);
    auto ws = lagrange_weights(sv, j0, n, ss);
    double v = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) v += wt[a] * ws[b] * sol.at(i0 + a, j0 + b);
    return v;
  };
  return f;
}

Field to_log(const Field& price) {
  if (price.frame != Frame::price) throw std::domain_error("to_log expects a price-frame field");
  Field f;
  f.frame = Frame::log;
  f.value = [p = price.value](double t, double x) { return p(t, std::exp(x)); };
  f.contains = [c = price.contains](double t, double x) { return c(t, std::exp(x)); };
  if (price.d_t) f.d_t = [d = price.d_t](double t, double x) { return d(t, std::exp(x)); };
  if (price.d_space)
    f.d_space = [d = price.d_space](double t, double x) {
      double S = std::exp(x);
      return S * d(t, S);
    };
  return f;
}

Field to_price(const Field& log) {
  if (log.frame != Frame::log) throw std::domain_error("to_price expects a log-frame field");
  Field f;
  f.frame = Frame::price;
  f.value = [p = log.value](double t, double S) { return p(t, std::log(S)); };
  f.contains = [c = log.contains](double t, double S) { return S > 0.0 && c(t, std::log(S)); };
  if (log.d_t) f.d_t = [d = log.d_t](double t, double S) { return d(t, std::log(S)); };
  if (log.d_space) f.d_space = [d = log.d_space](double t, double S) { return d(t, std::log(S)) / S; };
  return f;
}

GridSolution sample(const Field& f, const Grid& grid) {
  const auto& t = grid.t_values();
  const auto& s = grid.space_values();
  std::vector<double> values(grid.size());
  std::vector<std::pair<double, double>> clipped;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (f.contains && !f.contains(t[i], s[j])) {
        clipped.emplace_back(t[i], s[j]);
        continue;
      }
      values[i * s.size() + j] = f(t[i], s[j]);
    }
  }
  if (!clipped.empty()) {
    std::string what = std::to_string(clipped.size()) + " of " + std::to_string(grid.size()) +
                       " nodes pull back outside the solution's domain";
    throw PullbackError(what, std::move(clipped));
  }
  return GridSolution(grid, std::move(values), f.frame);
}

}  // namespace bssym
