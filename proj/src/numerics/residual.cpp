#include "bssym/residual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bssym {

std::vector<double> fd_weights(double z, std::span<const double> nodes, int max_order) {
  const std::size_t n = nodes.size();
  const auto m1 = static_cast<std::size_t>(max_order + 1);
  std::vector<double> c(n * m1, 0.0);
  auto at = [&](std::size_t k, std::size_t m) -> double& { return c[k * m1 + m]; };
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  at(0, 0) = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t mn = std::min(i, static_cast<std::size_t>(max_order));
    double c2 = 1.0;
    double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          at(i, k) = c1 * (static_cast<double>(k) * at(i - 1, k - 1) - c5 * at(i - 1, k)) / c2;
        at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) at(j, k) = (c4 * at(j, k) - static_cast<double>(k) * at(j, k - 1)) / c3;
      at(j, 0) = c4 * at(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// Shared driver: residual = u_t + a(s) u_ss + b(s) u_s + c u at interior nodes.
template <class Coefficients>
ResidualReport audit(const GridSolution& sol, StencilOrder order, Coefficients coeffs, const char* pde) {
  const auto& t = sol.grid().t_values();
  const auto& s = sol.grid().space_values();
  const std::size_t h = static_cast<std::size_t>(order) / 2;
  const std::size_t width = 2 * h + 1;
  if (t.size() < width || s.size() < width)
    throw std::domain_error("grid too small for the residual stencil");

  ResidualReport rep;
  rep.scale = sol.max_abs();
  rep.stencil = std::string(pde) + ": " + std::to_string(width) + "-point centered differences in t and " +
                (sol.frame() == Frame::log ? "x" : "S") + " (order " + std::to_string(static_cast<int>(order)) +
                "), interior nodes only";
  double sum_sq = 0.0;

  std::vector<std::vector<double>> space_w(s.size());
  for (std::size_t j = h; j + h < s.size(); ++j)
    space_w[j] = fd_weights(s[j], std::span<const double>(s.data() + j - h, width), 2);

  for (std::size_t i = h; i + h < t.size(); ++i) {
    auto time_w = fd_weights(t[i], std::span<const double>(t.data() + i - h, width), 1);
    for (std::size_t j = h; j + h < s.size(); ++j) {
      double u_t = 0.0, u_s = 0.0, u_ss = 0.0;
      for (std::size_t k = 0; k < width; ++k) {
        u_t += time_w[k * 2 + 1] * sol.at(i - h + k, j);
        double v = sol.at(i, j - h + k);
        u_s += space_w[j][k * 3 + 1] * v;
        u_ss += space_w[j][k * 3 + 2] * v;
      }
      auto [a, b, c] = coeffs(s[j]);
      double res = u_t + a * u_ss + b * u_s + c * sol.at(i, j);
      double mag = std::abs(res);
      sum_sq += res * res;
      ++rep.interior_nodes;
      if (mag > rep.max_abs_residual) {
        rep.max_abs_residual = mag;
        rep.worst_t = t[i];
        rep.worst_space = s[j];
      }
    }
  }
  rep.interior_norm = std::sqrt(sum_sq / static_cast<double>(rep.interior_nodes));
  rep.max_relative_residual = rep.scale > 0.0 ? rep.max_abs_residual / rep.scale : rep.max_abs_residual;
  return rep;
}

struct Coeffs {
  double a, b, c;
};

}  // namespace

ResidualReport residual_E2(const GridSolution& phi, const ModelContext& ctx, StencilOrder order) {
  if (phi.frame() != Frame::log) throw std::domain_error("residual_E2 expects a log-frame solution");
  const double a = 0.5 * ctx.sigma2_value(), b = ctx.rtilde_value(), c = -ctx.r_value();
  return audit(phi, order, [=](double) { return Coeffs{a, b, c}; }, "E2");
}

ResidualReport residual_E(const GridSolution& price, const ModelContext& ctx, StencilOrder order) {
  if (price.frame() != Frame::price) throw std::domain_error("residual_E expects a price-frame solution");
  const double half_s2 = 0.5 * ctx.sigma2_value(), r = ctx.r_value();
  return audit(price, order, [=](double S) { return Coeffs{half_s2 * S * S, r * S, -r}; }, "E");
}

nlohmann::json to_json(const ResidualReport& report) {
  return {{"max_abs_residual", report.max_abs_residual},
          {"interior_norm", report.interior_norm},
          {"scale", report.scale},
          {"max_relative_residual", report.max_relative_residual},
          {"interior_nodes", report.interior_nodes},
          {"worst_node", {{"t", report.worst_t}, {"space", report.worst_space}}},
          {"stencil", report.stencil}};
}

}  // namespace bssym
