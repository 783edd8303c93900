#include "bssym/diff_form.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bssym {

namespace {

constexpr int kDim = static_cast<int>(kNumVars);

BasisMask bit(Var v) { return static_cast<BasisMask>(1u << index_of(v)); }

// Sign of moving the factors of l past those of r into increasing order;
// 0 when they share a factor.
int wedge_sign(BasisMask l, BasisMask r) {
  if (l & r) return 0;
  int inversions = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!(l & (1u << i))) continue;
    for (int j = 0; j < i; ++j)
      if (r & (1u << j)) ++inversions;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// Canonical mask and permutation sign of an ordered list of factors.
std::pair<BasisMask, int> canonicalize(std::initializer_list<Var> factors) {
  BasisMask mask = 0;
  int sign = 1;
  for (Var v : factors) {
    BasisMask b = bit(v);
    int s = wedge_sign(mask, b);
    if (s == 0) return {0, 0};
    sign *= s;
    mask |= b;
  }
  return {mask, sign};
}

}  // namespace

int mask_degree(BasisMask m) { return std::popcount(static_cast<unsigned>(m)); }

std::vector<Var> mask_indices(BasisMask m) {
  std::vector<Var> out;
  for (int i = 0; i < kDim; ++i)
    if (m & (1u << i)) out.push_back(static_cast<Var>(i));
  return out;
}

bool BasisOrder::operator()(BasisMask l, BasisMask r) const {
  int dl = mask_degree(l), dr = mask_degree(r);
  if (dl != dr) return dl < dr;
  auto li = mask_indices(l), ri = mask_indices(r);
  return li < ri;
}

DiffForm::DiffForm(int degree) : degree_(degree) {
  if (degree < 0) throw std::domain_error("negative form degree");
}

DiffForm DiffForm::scalar(const ExpPoly& f) {
  DiffForm out(0);
  out.add(0, f);
  return out;
}

DiffForm DiffForm::d(Var v) { return basis({v}); }

DiffForm DiffForm::basis(std::initializer_list<Var> factors, const ExpPoly& coef) {
  DiffForm out(static_cast<int>(factors.size()));
  auto [mask, sign] = canonicalize(factors);
  if (sign != 0) out.add(mask, sign > 0 ? coef : -coef);
  return out;
}

void DiffForm::add(BasisMask m, const ExpPoly& c) {
  if (mask_degree(m) != degree_) throw std::domain_error("basis element does not match form degree");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

ExpPoly DiffForm::coefficient(BasisMask m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? ExpPoly() : it->second;
}

ExpPoly DiffForm::coefficient(std::initializer_list<Var> factors) const {
  if (static_cast<int>(factors.size()) != degree_) throw std::domain_error("coefficient query of wrong degree");
  auto [mask, sign] = canonicalize(factors);
  if (sign == 0) return ExpPoly();
  ExpPoly c = coefficient(mask);
  return sign > 0 ? c : -c;
}

const ExpPoly& DiffForm::as_scalar() const {
  if (degree_ != 0) throw std::domain_error("form of positive degree is not a scalar");
  static const ExpPoly zero;
  auto it = coeffs_.find(0);
  return it == coeffs_.end() ? zero : it->second;
}

DiffForm DiffForm::operator-() const {
  DiffForm out(degree_);
  for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, -c);
  return out;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  if (o.degree_ != degree_) throw std::domain_error("adding forms of different degree");
  for (const auto& [m, c] : o.coeffs_) add(m, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) { return *this += -o; }

DiffForm operator*(const ExpPoly& f, const DiffForm& u) {
  DiffForm out(u.degree_);
  if (f.is_zero()) return out;
  for (const auto& [m, c] : u.coeffs_) out.add(m, f * c);
  return out;
}

DiffForm wedge(const DiffForm& u, const DiffForm& v) {
  DiffForm out(u.degree() + v.degree());
  if (out.degree() > kDim) return out;
  for (const auto& [mu, cu] : u.coefficients()) {
    for (const auto& [mv, cv] : v.coefficients()) {
      int s = wedge_sign(mu, mv);
      if (s == 0) continue;
      ExpPoly c = cu * cv;
      out.add(static_cast<BasisMask>(mu | mv), s > 0 ? c : -c);
    }
  }
  return out;
}

DiffForm exterior_derivative(const DiffForm& u) {
  DiffForm out(u.degree() + 1);
  if (out.degree() > kDim) return out;
  for (const auto& [m, c] : u.coefficients()) {
    for (Var v : kAllVars) {
      ExpPoly dc = differentiate(c, v);
      if (dc.is_zero()) continue;
      int s = wedge_sign(bit(v), m);
      if (s == 0) continue;
      out.add(static_cast<BasisMask>(m | bit(v)), s > 0 ? dc : -dc);
    }
  }
  return out;
}

std::string DiffForm::to_string() const {
  if (coeffs_.empty()) return "0";
  // order terms by their descending factor tuples
  std::vector<std::pair<std::vector<int>, BasisMask>> keyed;
  for (const auto& [m, c] : coeffs_) {
    std::vector<int> desc;
    for (Var v : mask_indices(m)) desc.push_back(index_of(v));
    std::reverse(desc.begin(), desc.end());
    keyed.emplace_back(desc, m);
  }
  std::sort(keyed.begin(), keyed.end());

  std::string out;
  for (const auto& [desc, m] : keyed) {
    // reversing k factors costs the sign of k(k-1)/2 transpositions
    int k = static_cast<int>(desc.size());
    ExpPoly c = coeffs_.at(m);
    if ((k * (k - 1) / 2) % 2 == 1) c = -c;

    std::string basis_text;
    for (int i : desc) {
      if (!basis_text.empty()) basis_text += "^";
      basis_text += "d" + std::string(name_of(static_cast<Var>(i)));
    }

    bool negative = c.size() == 1 && c.terms().begin()->second.sign() < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    ExpPoly mag = negative ? -c : c;
    std::string coef_text;
    if (mag == ExpPoly(1)) {
      coef_text = "";
    } else if (mag.size() == 1) {
      coef_text = mag.to_string();
    } else {
      coef_text = "(" + mag.to_string() + ")";
    }
    if (basis_text.empty()) {
      out += coef_text.empty() ? "1" : coef_text;
    } else {
      out += coef_text.empty() ? basis_text : coef_text + " " + basis_text;
    }
  }
  return out;
}

}  // namespace bssym
