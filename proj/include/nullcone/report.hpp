#pragma once

// JSON and text forms of the core results. Key order is fixed so reruns
// produce byte-identical output.

#include <string>
#include <vector>

#include "json.hpp"
#include "nullcone/invariants.hpp"

namespace nullcone {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kListedJsonPoints = 64;

Json field_json(const Field& f);
Json point_json(const std::vector<Scalar>& v);
Json to_json(const SeparationReport& r);
Json to_json(const NullconeStatus& s);
Json to_json(const std::vector<InvariantSpace>& spaces);
Json to_json(const GenerationCertificate& c);

/// Histogram rows "epsilon,points" (0 = undetermined) for delta/sigma.
std::string to_csv(const SeparationReport& r);
/// Short human summary, one fact per line.
std::string to_text(const SeparationReport& r);
std::string to_text(const NullconeStatus& s);
std::string to_text(const std::vector<InvariantSpace>& spaces);

}  // namespace nullcone
