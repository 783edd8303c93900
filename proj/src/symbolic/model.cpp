#include "bssym/model.hpp"

#include <cmath>
#include <stdexcept>

namespace bssym {

double ModelContext::sigma() const { return std::sqrt(sigma2_value()); }

ModelContext make_context(const Rational& r, const Rational& sigma2) {
  if (sigma2.sign() <= 0) throw std::domain_error("sigma2 must be positive, got " + sigma2.to_string());
  Rational half = sigma2 / Rational(2);
  return ModelContext{r, sigma2, r - half, r + half};
}

}  // namespace bssym
