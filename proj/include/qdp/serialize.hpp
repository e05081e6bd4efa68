#ifndef QDP_SERIALIZE_HPP
#define QDP_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "qdp/accountant.hpp"
#include "qdp/adversary.hpp"
#include "qdp/divergences.hpp"
#include "qdp/states_channels.hpp"

namespace qdp {

using Json = nlohmann::json;

// ComplexMatrix wire format: {"dim": n, "re": [[...]], "im": [[...]]},
// row-major IEEE-754 doubles. All file interfaces build on it.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j, const std::string& where);

// Channel file: {"dim_in", "dim_out", "kraus": [matrix...], "label"}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

// Relation file: [{"rho": matrix, "sigma": matrix}, ...].
Json relation_to_json(const NeighborRelation& rel);
NeighborRelation relation_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json curve_to_json(const PrivacyCurve& curve);
std::string curve_to_csv(const PrivacyCurve& curve);
Json violation_report_to_json(const ViolationReport& r);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

KrausChannel load_channel(const std::string& path);
NeighborRelation load_relation(const std::string& path);

} // namespace qdp

#endif
