// Model parameters of the Black-Scholes equation in exact arithmetic.

#ifndef BSSYM_MODEL_HPP_
#define BSSYM_MODEL_HPP_

#include "bssym/rational.hpp"

namespace bssym {

struct ModelContext {
  Rational r;       // risk-free rate
  Rational sigma2;  // variance rate
  Rational rtilde;  // r - sigma2/2
  Rational stilde;  // r + sigma2/2

  double r_value() const { return r.to_double(); }
  double sigma2_value() const { return sigma2.to_double(); }
  double rtilde_value() const { return rtilde.to_double(); }
  double stilde_value() const { return stilde.to_double(); }
  double sigma() const;

  // stilde^2 / (2 sigma2): the decay rate of the time-translation flow.
  Rational stilde_rate() const { return stilde * stilde / (Rational(2) * sigma2); }
  // rtilde / sigma2: the weight attached to x-translation.
  Rational drift_ratio() const { return rtilde / sigma2; }
};

// Throws std::domain_error unless sigma2 > 0.
ModelContext make_context(const Rational& r, const Rational& sigma2);

}  // namespace bssym

#endif  // BSSYM_MODEL_HPP_
