#include "bssym/black_scholes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bssym {

OptionSpec make_option(double strike, double maturity, OptionKind kind) {
  if (!(strike > 0.0)) throw std::domain_error("strike must be positive");
  if (!(maturity > 0.0)) throw std::domain_error("maturity must be positive");
  return OptionSpec{strike, maturity, kind};
}

OptionKind option_kind_from_name(const std::string& name) {
  if (name == "call") return OptionKind::call;
  if (name == "put") return OptionKind::put;
  throw std::invalid_argument("option kind must be 'call' or 'put', got '" + name + "'");
}

std::string to_string(OptionKind kind) { return kind == OptionKind::call ? "call" : "put"; }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double payoff(const OptionSpec& spec, double S) {
  return spec.kind == OptionKind::call ? std::max(S - spec.strike, 0.0) : std::max(spec.strike - S, 0.0);
}

Greeks bs_greeks(const OptionSpec& spec, const ModelContext& ctx, double t, double S) {
  if (!(S > 0.0)) throw std::domain_error("spot price must be positive");
  if (t > spec.maturity) throw std::domain_error("time is past maturity");
  const double K = spec.strike;
  const double r = ctx.r_value();
  const bool call = spec.kind == OptionKind::call;
  const double tau = spec.maturity - t;
  Greeks g;
  if (tau == 0.0) {
    g.value = payoff(spec, S);
    bool in_money = call ? S > K : S < K;
    g.delta = in_money ? (call ? 1.0 : -1.0) : 0.0;
    g.theta = in_money ? (call ? -r * K : r * K) : 0.0;
    return g;
  }
  const double sigma = ctx.sigma();
  const double vol = sigma * std::sqrt(tau);
  const double d1 = (std::log(S / K) + (r + 0.5 * ctx.sigma2_value()) * tau) / vol;
  const double d2 = d1 - vol;
  const double discount = K * std::exp(-r * tau);
  const double decay = -S * normal_pdf(d1) * sigma / (2.0 * std::sqrt(tau));
  g.gamma = normal_pdf(d1) / (S * vol);
  if (call) {
    g.value = S * normal_cdf(d1) - discount * normal_cdf(d2);
    g.delta = normal_cdf(d1);
    g.theta = decay - r * discount * normal_cdf(d2);
  } else {
    g.value = discount * normal_cdf(-d2) - S * normal_cdf(-d1);
    g.delta = normal_cdf(d1) - 1.0;
    g.theta = decay + r * discount * normal_cdf(-d2);
  }
  return g;
}

double bs_price(const OptionSpec& spec, const ModelContext& ctx, double t, double S) {
  return bs_greeks(spec, ctx, t, S).value;
}

}  // namespace bssym
