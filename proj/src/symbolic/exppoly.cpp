#include "bssym/exppoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bssym {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames{"t", "x", "phi", "A", "B"};

std::string linear_form_text(const Rational& a, const Rational& b) {
  std::string out;
  auto put = [&out](const Rational& c, std::string_view name) {
    if (c.is_zero()) return;
    Rational mag = c.abs();
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (mag != Rational(1)) out += mag.to_string() + "*";
    out += name;
  };
  put(a, "t");
  put(b, "x");
  return out;
}

// Text of the monomial part without coefficient; empty for the unit monomial.
std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (m.powers[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += kNames[i];
    if (m.powers[i] > 1) out += "^" + std::to_string(m.powers[i]);
  }
  if (m.has_exponential()) {
    if (!out.empty()) out += "*";
    out += "exp(" + linear_form_text(m.t_rate, m.x_rate) + ")";
  }
  return out;
}

}  // namespace

std::string_view name_of(Var v) { return kNames[static_cast<std::size_t>(index_of(v))]; }

Var variable_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (kNames[i] == name) return static_cast<Var>(i);
  throw std::domain_error("unknown jet variable '" + std::string(name) + "'");
}

bool MonomialOrder::operator()(const Monomial& l, const Monomial& r) const {
  int dl = l.degree(), dr = r.degree();
  if (dl != dr) return dl < dr;
  if (l.powers != r.powers) return l.powers < r.powers;
  if (l.t_rate != r.t_rate) return l.t_rate < r.t_rate;
  return l.x_rate < r.x_rate;
}

ExpPoly::ExpPoly(Rational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

ExpPoly ExpPoly::var(Var v) {
  Monomial m;
  m.powers[static_cast<std::size_t>(index_of(v))] = 1;
  return term(Rational(1), m);
}

ExpPoly ExpPoly::exp(const Rational& t_rate, const Rational& x_rate) {
  Monomial m;
  m.t_rate = t_rate;
  m.x_rate = x_rate;
  return term(Rational(1), m);
}

ExpPoly ExpPoly::term(const Rational& coef, const Monomial& m) {
  for (int p : m.powers)
    if (p < 0) throw std::domain_error("negative exponent in ExpPoly monomial");
  ExpPoly out;
  out.add_term(m, coef);
  return out;
}

void ExpPoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ExpPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational ExpPoly::constant_value() const {
  if (!is_constant()) throw std::domain_error("ExpPoly '" + to_string() + "' is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

bool ExpPoly::depends_on(Var v) const {
  auto i = static_cast<std::size_t>(index_of(v));
  for (const auto& [m, c] : terms_) {
    if (m.powers[i] != 0) return true;
    if (v == Var::t && !m.t_rate.is_zero()) return true;
    if (v == Var::x && !m.x_rate.is_zero()) return true;
  }
  return false;
}

bool ExpPoly::has_exponential() const {
  for (const auto& [m, c] : terms_)
    if (m.has_exponential()) return true;
  return false;
}

int ExpPoly::degree_in(Var v) const {
  auto i = static_cast<std::size_t>(index_of(v));
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.powers[i]);
  return d;
}

ExpPoly ExpPoly::coefficient_in(Var v, int k) const {
  auto i = static_cast<std::size_t>(index_of(v));
  ExpPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.powers[i] != k) continue;
    Monomial rest = m;
    rest.powers[i] = 0;
    out.add_term(rest, c);
  }
  return out;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kNumVars; ++i) m.powers[i] = ma.powers[i] + mb.powers[i];
      m.t_rate = ma.t_rate + mb.t_rate;
      m.x_rate = ma.x_rate + mb.x_rate;
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

ExpPoly& ExpPoly::operator*=(const ExpPoly& o) { return *this = *this * o; }

ExpPoly& ExpPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ExpPoly ExpPoly::pow(int e) const {
  if (e < 0) throw std::domain_error("negative power of ExpPoly");
  ExpPoly out(1);
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

ExpPoly ExpPoly::substitute(Var v, const ExpPoly& value) const {
  auto vi = static_cast<std::size_t>(index_of(v));
  // exp(rate * value) is only representable when value = alpha t + beta x.
  auto exp_of = [&](const Rational& rate) -> ExpPoly {
    if (rate.is_zero()) return ExpPoly(1);
    Rational alpha, beta;
    for (const auto& [m, c] : value.terms_) {
      bool is_t = m.powers == std::array<int, kNumVars>{1, 0, 0, 0, 0};
      bool is_x = m.powers == std::array<int, kNumVars>{0, 1, 0, 0, 0};
      if (m.has_exponential() || (!is_t && !is_x))
        throw std::domain_error("substituting '" + value.to_string() + "' for " + std::string(name_of(v)) +
                                " leaves the exponential ring");
      (is_t ? alpha : beta) = c;
    }
    return ExpPoly::exp(rate * alpha, rate * beta);
  };

  ExpPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int p = rest.powers[vi];
    rest.powers[vi] = 0;
    Rational rate;
    if (v == Var::t) std::swap(rate, rest.t_rate);
    if (v == Var::x) std::swap(rate, rest.x_rate);
    out += ExpPoly::term(c, rest) * value.pow(p) * exp_of(rate);
  }
  return out;
}

Rational ExpPoly::evaluate(const std::array<Rational, kNumVars>& point) const {
  Rational sum;
  for (const auto& [m, c] : terms_) {
    if (m.has_exponential()) {
      Rational exponent = m.t_rate * point[0] + m.x_rate * point[1];
      if (!exponent.is_zero())
        throw std::domain_error("exact evaluation of a non-rational exponential in '" + to_string() + "'");
    }
    Rational v = c;
    for (std::size_t i = 0; i < kNumVars; ++i) v *= point[i].pow(m.powers[i]);
    sum += v;
  }
  return sum;
}

double ExpPoly::evaluate(const std::array<double, kNumVars>& point) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c.to_double();
    for (std::size_t i = 0; i < kNumVars; ++i)
      for (int k = 0; k < m.powers[i]; ++k) v *= point[i];
    if (m.has_exponential()) v *= std::exp(m.t_rate.to_double() * point[0] + m.x_rate.to_double() * point[1]);
    sum += v;
  }
  return sum;
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    Rational mag = c.abs();
    std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += mag.to_string();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

ExpPoly differentiate(const ExpPoly& f, Var v) {
  auto vi = static_cast<std::size_t>(index_of(v));
  ExpPoly out;
  for (const auto& [m, c] : f.terms()) {
    if (m.powers[vi] > 0) {
      Monomial d = m;
      d.powers[vi] -= 1;
      out += ExpPoly::term(c * Rational(m.powers[vi]), d);
    }
    const Rational& rate = v == Var::t ? m.t_rate : v == Var::x ? m.x_rate : Rational();
    if (!rate.is_zero()) out += ExpPoly::term(c * rate, m);
  }
  return out;
}

ExpPoly differentiate(const ExpPoly& f, std::string_view var_name) {
  return differentiate(f, variable_from_name(var_name));
}

}  // namespace bssym
