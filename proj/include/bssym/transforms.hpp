// Symmetry actions on solutions: the infinitesimal action of any isovector
// and the closed-form one-parameter flows of N3 (time shift), N4 (boost),
// N5 (x shift) and N6 (scaling).

#ifndef BSSYM_TRANSFORMS_HPP_
#define BSSYM_TRANSFORMS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bssym/field.hpp"
#include "bssym/isovector.hpp"
#include "bssym/residual.hpp"

namespace bssym {

// N~(phi) = -N^t phi_t - N^x phi_x + g_N + h_N phi.
struct InfinitesimalAction {
  Isovector source;
  ExpPoly time_coef;   // -N^t
  ExpPoly space_coef;  // -N^x
  ExpPoly g;
  ExpPoly h;

  // Applies to a log-frame field; the result is log-frame.
  Field apply(const Field& phi) const;
};

// Throws std::domain_error unless N^t, N^x, g_N, h_N depend on (t, x) only.
InfinitesimalAction infinitesimal_action(const Isovector& n);
inline Field infinitesimal_action(const Isovector& n, const Field& phi) { return infinitesimal_action(n).apply(phi); }

class UnsupportedFlow : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct FiniteTransform {
  int generator = 6;  // 3, 4, 5 or 6
  double kappa = 0.0;
  Frame frame = Frame::price;
};

// The image of `solution` under exp(kappa N~_i). The field's frame must match
// the transform's. Evaluating outside the pulled-back domain throws
// PullbackError; UnsupportedFlow for generators other than 3..6.
Field apply_transform(const FiniteTransform& tr, const Field& solution, const ModelContext& ctx);

class TransformPipeline {
public:
  // Throws std::domain_error when the stages do not share a frame.
  explicit TransformPipeline(std::vector<FiniteTransform> stages);

  const std::vector<FiniteTransform>& stages() const { return stages_; }
  Frame frame() const { return frame_; }
  // Stages are applied in listed order; `count` limits to the first stages.
  Field apply(const Field& solution, const ModelContext& ctx, std::optional<std::size_t> count = {}) const;

private:
  std::vector<FiniteTransform> stages_;
  Frame frame_ = Frame::price;
};

TransformPipeline compose(std::vector<FiniteTransform> stages);

struct Certification {
  ResidualReport residual;
  double tolerance = 0.0;
  bool passed = false;
  // Grid sources only: max |cubic - quadratic| pullback sample difference,
  // relative to the transformed solution's scale.
  std::optional<double> interpolation_error;
};

// Samples the field on the grid and audits it (residual_E in the price frame,
// residual_E2 in the log frame); passes iff the max relative residual <= tol.
Certification certify_solution(const Field& f, const Grid& grid, const ModelContext& ctx, double tol,
                               StencilOrder order = StencilOrder::fourth);
Certification certify_transform(const FiniteTransform& tr, const Field& solution, const Grid& grid,
                                const ModelContext& ctx, double tol, StencilOrder order = StencilOrder::fourth);
Certification certify_transform(const FiniteTransform& tr, const GridSolution& solution, const Grid& grid,
                                const ModelContext& ctx, double tol, StencilOrder order = StencilOrder::fourth);

nlohmann::json to_json(const Certification& c);

}  // namespace bssym

#endif  // BSSYM_TRANSFORMS_HPP_
