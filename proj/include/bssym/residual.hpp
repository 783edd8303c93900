// Discrete PDE residual audits on interior grid nodes.

#ifndef BSSYM_RESIDUAL_HPP_
#define BSSYM_RESIDUAL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bssym/grid.hpp"
#include "bssym/model.hpp"

namespace bssym {

// Centered stencils with 3 (second order) or 5 (fourth order) points per axis.
enum class StencilOrder { second = 2, fourth = 4 };

struct ResidualReport {
  double max_abs_residual = 0.0;
  double interior_norm = 0.0;  // RMS over interior nodes
  double scale = 0.0;          // max |solution| over the whole grid
  double max_relative_residual = 0.0;
  std::size_t interior_nodes = 0;
  double worst_t = 0.0;
  double worst_space = 0.0;
  std::string stencil;
};

// Weights w[k * (max_order + 1) + m] of node k for the m-th derivative at z
// (Fornberg's recursion); exact for polynomials of degree < nodes.size().
std::vector<double> fd_weights(double z, std::span<const double> nodes, int max_order);

// phi_t + (sigma2/2) phi_xx + rtilde phi_x - r phi on a log-frame solution.
ResidualReport residual_E2(const GridSolution& phi, const ModelContext& ctx,
                           StencilOrder order = StencilOrder::fourth);
// C_t + (sigma2/2) S^2 C_SS + r S C_S - r C on a price-frame solution.
ResidualReport residual_E(const GridSolution& price, const ModelContext& ctx,
                          StencilOrder order = StencilOrder::fourth);

nlohmann::json to_json(const ResidualReport& report);

}  // namespace bssym

#endif  // BSSYM_RESIDUAL_HPP_
