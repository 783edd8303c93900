// Closed-form European option prices under the Black-Scholes model.

#ifndef BSSYM_BLACK_SCHOLES_HPP_
#define BSSYM_BLACK_SCHOLES_HPP_

#include <string>

#include "bssym/model.hpp"

namespace bssym {

enum class OptionKind { call, put };

struct OptionSpec {
  double strike = 100.0;
  double maturity = 1.0;
  OptionKind kind = OptionKind::call;
};

// Throws std::domain_error unless strike > 0 and maturity > 0.
OptionSpec make_option(double strike, double maturity, OptionKind kind);
OptionKind option_kind_from_name(const std::string& name);
std::string to_string(OptionKind kind);

double normal_pdf(double z);
double normal_cdf(double z);

double payoff(const OptionSpec& spec, double S);

struct Greeks {
  double value = 0.0;
  double delta = 0.0;  // dC/dS
  double gamma = 0.0;  // d2C/dS2
  double theta = 0.0;  // dC/dt (calendar time)
};

// Price at calendar time t <= T and spot S > 0; the payoff at t = T.
// Throws std::domain_error outside that region.
double bs_price(const OptionSpec& spec, const ModelContext& ctx, double t, double S);
Greeks bs_greeks(const OptionSpec& spec, const ModelContext& ctx, double t, double S);

}  // namespace bssym

#endif  // BSSYM_BLACK_SCHOLES_HPP_
