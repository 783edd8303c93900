// JSON trees for the symbolic objects. Rationals travel as "p/q" strings.

#ifndef BSSYM_SERIALIZE_HPP_
#define BSSYM_SERIALIZE_HPP_

#include <json.hpp>

#include "bssym/algebra.hpp"

namespace bssym {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const ExpPoly& f);
Json to_json(const DiffForm& u);
Json to_json(const Isovector& n);
Json to_json(const GHPair& gh);
Json to_json(const SolutionSpec& g);
Json to_json(const MembershipCertificate& cert);
Json to_json(const VerificationReport& report);
Json to_json(const StructureTable& table);

Rational rational_from_json(const Json& j);
ExpPoly exppoly_from_json(const Json& j);

}  // namespace bssym

#endif  // BSSYM_SERIALIZE_HPP_
