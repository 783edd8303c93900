#include "bssym/transforms.hpp"

#include <cmath>

#include "bssym/algebra.hpp"

namespace bssym {

namespace {

bool spacetime_only(const ExpPoly& f) {
  return !f.depends_on(Var::phi) && !f.depends_on(Var::A) && !f.depends_on(Var::B);
}

double at(const ExpPoly& f, double t, double x) { return f.evaluate(std::array<double, kNumVars>{t, x, 0, 0, 0}); }

struct Flow {
  std::function<std::pair<double, double>(double, double)> pullback;
  std::function<double(double, double)> prefactor;
};

Flow flow_for(const FiniteTransform& tr, const ModelContext& ctx) {
  const double k = tr.kappa;
  const double s2 = ctx.sigma2_value();
  const double rt = ctx.rtilde_value();
  const double decay = ctx.stilde_rate().to_double();
  const bool log = tr.frame == Frame::log;
  switch (tr.generator) {
    case 3:
      return {[k](double t, double s) { return std::pair{t + k, s}; },
              [k, decay](double, double) { return std::exp(-k * decay); }};
    case 4:
      if (log)
        return {[k](double t, double x) { return std::pair{t, x + k * t}; },
                [=](double t, double x) { return std::exp(k / s2 * (rt * t - x) - k * k * t / (2 * s2)); }};
      return {[k](double t, double S) { return std::pair{t, std::exp(k * t) * S}; },
              [=](double t, double S) { return std::exp(k * t / (2 * s2) * (2 * rt - k)) * std::pow(S, -k / s2); }};
    case 5:
      if (log)
        return {[k](double t, double x) { return std::pair{t, x + k}; },
                [=](double, double) { return std::exp(k * rt / s2); }};
      return {[k](double t, double S) { return std::pair{t, std::exp(k) * S}; },
              [=](double, double) { return std::exp(k * rt / s2); }};
    case 6:
      return {[](double t, double s) { return std::pair{t, s}; }, [k](double, double) { return std::exp(k); }};
    default:
      throw UnsupportedFlow("no closed-form flow for generator " + std::to_string(tr.generator) +
                            " (supported: 3, 4, 5, 6)");
  }
}

Certification audit(const GridSolution& sol, const ModelContext& ctx, double tol, StencilOrder order) {
  Certification c;
  c.residual = sol.frame() == Frame::price ? residual_E(sol, ctx, order) : residual_E2(sol, ctx, order);
  c.tolerance = tol;
  c.passed = c.residual.max_relative_residual <= tol;
  return c;
}

}  // namespace

InfinitesimalAction infinitesimal_action(const Isovector& n) {
  GHPair gh = gh_of(n);
  if (!spacetime_only(n[Var::t]) || !spacetime_only(n[Var::x]))
    throw std::domain_error("N^t and N^x must be functions of (t, x) for the action on solutions");
  return InfinitesimalAction{n, -n[Var::t], -n[Var::x], gh.g, gh.h};
}

Field InfinitesimalAction::apply(const Field& phi) const {
  if (phi.frame != Frame::log) throw std::domain_error("the infinitesimal action is applied in the log frame");
  Field out;
  out.frame = Frame::log;
  out.contains = phi.contains;
  out.value = [phi, tc = time_coef, sc = space_coef, g = g, h = h](double t, double x) {
    double v = at(g, t, x) + at(h, t, x) * phi(t, x);
    if (!tc.is_zero()) v += at(tc, t, x) * phi.derivative_t(t, x);
    if (!sc.is_zero()) v += at(sc, t, x) * phi.derivative_space(t, x);
    return v;
  };
  return out;
}

Field apply_transform(const FiniteTransform& tr, const Field& solution, const ModelContext& ctx) {
  if (solution.frame != tr.frame)
    throw std::domain_error("transform frame " + to_string(tr.frame) + " does not match solution frame " +
                            to_string(solution.frame));
  Flow flow = flow_for(tr, ctx);
  Field out;
  out.frame = tr.frame;
  out.contains = [src = solution.contains, pb = flow.pullback](double t, double s) {
    auto [tp, sp] = pb(t, s);
    return !src || src(tp, sp);
  };
  out.value = [src = solution, flow](double t, double s) {
    auto [tp, sp] = flow.pullback(t, s);
    if (src.contains && !src.contains(tp, sp))
      throw PullbackError("pullback leaves the solution's domain", {{t, s}});
    return flow.prefactor(t, s) * src(tp, sp);
  };
  return out;
}

TransformPipeline::TransformPipeline(std::vector<FiniteTransform> stages) : stages_(std::move(stages)) {
  if (!stages_.empty()) frame_ = stages_.front().frame;
  for (const auto& s : stages_)
    if (s.frame != frame_) throw std::domain_error("pipeline mixes price-frame and log-frame transforms");
}

Field TransformPipeline::apply(const Field& solution, const ModelContext& ctx, std::optional<std::size_t> count) const {
  Field f = solution;
  std::size_t n = count ? std::min(*count, stages_.size()) : stages_.size();
  for (std::size_t i = 0; i < n; ++i) f = apply_transform(stages_[i], f, ctx);
  return f;
}

TransformPipeline compose(std::vector<FiniteTransform> stages) { return TransformPipeline(std::move(stages)); }

Certification certify_solution(const Field& f, const Grid& grid, const ModelContext& ctx, double tol,
                               StencilOrder order) {
  return audit(sample(f, grid), ctx, tol, order);
}

Certification certify_transform(const FiniteTransform& tr, const Field& solution, const Grid& grid,
                                const ModelContext& ctx, double tol, StencilOrder order) {
  return certify_solution(apply_transform(tr, solution, ctx), grid, ctx, tol, order);
}

Certification certify_transform(const FiniteTransform& tr, const GridSolution& solution, const Grid& grid,
                                const ModelContext& ctx, double tol, StencilOrder order) {
  GridSolution cubic = sample(apply_transform(tr, interpolated_field(solution, 4), ctx), grid);
  GridSolution quadratic = sample(apply_transform(tr, interpolated_field(solution, 3), ctx), grid);
  Certification c = audit(cubic, ctx, tol, order);
  double spread = 0.0;
  for (std::size_t k = 0; k < cubic.values().size(); ++k)
    spread = std::max(spread, std::abs(cubic.values()[k] - quadratic.values()[k]));
  c.interpolation_error = cubic.max_abs() > 0.0 ? spread / cubic.max_abs() : spread;
  return c;
}

nlohmann::json to_json(const Certification& c) {
  nlohmann::json j = {{"residual", to_json(c.residual)},
                      {"tolerance", c.tolerance},
                      {"verdict", c.passed ? "pass" : "fail"}};
  if (c.interpolation_error) j["interpolation_error"] = *c.interpolation_error;
  return j;
}

}  // namespace bssym
