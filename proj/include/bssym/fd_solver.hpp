// Crank-Nicolson solver for the log-price equation
//   phi_t + (sigma2/2) phi_xx + rtilde phi_x - r phi = 0
// marching backwards from terminal data at the last time node.

#ifndef BSSYM_FD_SOLVER_HPP_
#define BSSYM_FD_SOLVER_HPP_

#include <functional>

#include "bssym/black_scholes.hpp"
#include "bssym/grid.hpp"
#include "bssym/model.hpp"

namespace bssym {

struct FdOptions {
  // Number of initial time steps replaced by two implicit Euler half steps
  // each, which damps the oscillations a payoff kink excites.
  int rannacher_steps = 2;
};

using SpaceTimeFn = std::function<double(double t, double x)>;

struct FdProblem {
  std::function<double(double x)> terminal;
  SpaceTimeFn lower;  // Dirichlet value at the first x node
  SpaceTimeFn upper;  // Dirichlet value at the last x node
};

// Grid axes must be uniform; the last time node carries the terminal data.
// Returns a log-frame solution. Throws std::domain_error on degenerate grids.
GridSolution fd_solve(const FdProblem& problem, const ModelContext& ctx, const Grid& grid,
                      const FdOptions& options = {});

// Vanilla call or put; the last time node must equal the maturity. Boundary
// values follow the payoff asymptotics (call: 0 and e^x - K e^{-r(T-t)}).
GridSolution fd_solve(const OptionSpec& spec, const ModelContext& ctx, const Grid& grid,
                      const FdOptions& options = {});

// Linear interpolation in x of a time slice; used to read off the value at
// a spot that need not be a node.
double value_at(const GridSolution& sol, std::size_t time_index, double x);

}  // namespace bssym

#endif  // BSSYM_FD_SOLVER_HPP_
