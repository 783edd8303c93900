// Evaluable solutions: closed forms, exponential modes and interpolated
// grids behind one function-valued interface.

#ifndef BSSYM_FIELD_HPP_
#define BSSYM_FIELD_HPP_

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bssym/black_scholes.hpp"
#include "bssym/grid.hpp"
#include "bssym/isovector.hpp"
#include "bssym/model.hpp"

namespace bssym {

using ScalarFn = std::function<double(double t, double s)>;
using DomainFn = std::function<bool(double t, double s)>;

// A function u(t, s) where s is x (log frame) or S (price frame).
struct Field {
  Frame frame = Frame::log;
  ScalarFn value;
  DomainFn contains;  // where value may be evaluated
  ScalarFn d_t;       // optional analytic derivatives
  ScalarFn d_space;

  double operator()(double t, double s) const { return value(t, s); }
  // Analytic derivative when available, else a 4th-order central difference.
  double derivative_t(double t, double s) const;
  double derivative_space(double t, double s) const;
};

// Sample points that fell outside the domain of the field being sampled.
class PullbackError : public std::runtime_error {
public:
  PullbackError(const std::string& what, std::vector<std::pair<double, double>> clipped)
      : std::runtime_error(what), clipped_(std::move(clipped)) {}
  const std::vector<std::pair<double, double>>& clipped() const { return clipped_; }

private:
  std::vector<std::pair<double, double>> clipped_;
};

// Closed-form price, defined for t <= T (and S > 0 in the price frame).
Field closed_form_field(const OptionSpec& spec, const ModelContext& ctx, Frame frame);
// sum c exp(a t + b x); in the price frame sum c e^{a t} S^b.
Field exp_mode_field(const SolutionSpec& u, Frame frame);
// Tensor-product Lagrange interpolation of a grid solution with 4 (cubic)
// or 3 (quadratic) points per axis.
Field interpolated_field(const GridSolution& sol, int points = 4);

Field to_log(const Field& price);
Field to_price(const Field& log);

// Evaluates the field at every node. Throws PullbackError listing each node
// outside the field's domain.
GridSolution sample(const Field& f, const Grid& grid);

}  // namespace bssym

#endif  // BSSYM_FIELD_HPP_
