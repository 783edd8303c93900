#include "bssym/serialize.hpp"

#include <string>

namespace bssym {

Json to_json(const Rational& q) { return q.to_string(); }

Json to_json(const ExpPoly& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) {
    terms.push_back({{"coef", to_json(c)},
                     {"pow", m.powers},
                     {"exp", Json::array({to_json(m.t_rate), to_json(m.x_rate)})}});
  }
  return {{"text", f.to_string()}, {"terms", terms}};
}

Json to_json(const DiffForm& u) {
  Json coeffs = Json::array();
  for (const auto& [mask, c] : u.coefficients()) {
    std::string basis;
    for (Var v : mask_indices(mask)) {
      if (!basis.empty()) basis += "^";
      basis += "d" + std::string(name_of(v));
    }
    coeffs.push_back({{"basis", basis.empty() ? "1" : basis}, {"coef", to_json(c)}});
  }
  return {{"degree", u.degree()}, {"text", u.to_string()}, {"coefficients", coeffs}};
}

Json to_json(const Isovector& n) {
  Json out = {{"Nt", to_json(n[Var::t])},
              {"Nx", to_json(n[Var::x])},
              {"Nphi", to_json(n[Var::phi])},
              {"NA", to_json(n[Var::A])},
              {"NB", to_json(n[Var::B])}};
  if (const auto& p = n.provenance()) {
    Json constants = Json::array();
    for (const auto& c : p->constants) constants.push_back(to_json(c));
    out["provenance"] = {{"constants", constants}, {"g", to_json(p->g)}};
  }
  return out;
}

Json to_json(const GHPair& gh) { return {{"g", to_json(gh.g)}, {"h", to_json(gh.h)}}; }

Json to_json(const SolutionSpec& g) {
  Json modes = Json::array();
  for (const Mode& m : g.modes) modes.push_back({{"coef", to_json(m.coef)}, {"a", to_json(m.a)}, {"b", to_json(m.b)}});
  return modes;
}

Json to_json(const MembershipCertificate& cert) {
  Json out = {{"R1", to_json(cert.R1)}, {"R2", to_json(cert.R2)}, {"R3", to_json(cert.R3)},
              {"R4", to_json(cert.R4)}, {"R5", to_json(cert.R5)}, {"R6", to_json(cert.R6)},
              {"remainder", to_json(cert.remainder)}, {"status", to_string(cert.status)}};
  if (cert.failed_equation) out["failed_equation"] = *cert.failed_equation;
  return out;
}

Json to_json(const VerificationReport& report) {
  return {{"lambda", to_json(report.lambda)},
          {"alpha_check", report.alpha_check},
          {"alpha_residual", to_json(report.alpha_residual)},
          {"beta_certificate", to_json(report.beta_certificate)},
          {"verdict", report.passed ? "pass" : "fail"}};
}

Json to_json(const StructureTable& table) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      Json coords = Json::array();
      for (const auto& c : table.entries[i][j]) coords.push_back(to_json(c));
      entries.push_back({{"i", i + 1},
                         {"j", j + 1},
                         {"bracket", format_combination(table.entries[i][j])},
                         {"coordinates", coords}});
    }
  }
  Json checks = Json::array();
  for (const auto& c : table.ideal_checks)
    checks.push_back(c.description + ": " + (c.passed ? "pass" : "fail"));
  return {{"table", entries}, {"j_checks", checks}};
}

Rational rational_from_json(const Json& j) { return Rational::parse(j.get<std::string>()); }

ExpPoly exppoly_from_json(const Json& j) {
  ExpPoly out;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    m.powers = t.at("pow").get<std::array<int, kNumVars>>();
    m.t_rate = rational_from_json(t.at("exp").at(0));
    m.x_rate = rational_from_json(t.at("exp").at(1));
    out += ExpPoly::term(rational_from_json(t.at("coef")), m);
  }
  return out;
}

}  // namespace bssym
