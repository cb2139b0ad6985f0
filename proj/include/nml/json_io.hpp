#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "nml/core.hpp"
#include "nml/quantum.hpp"
#include "nml/report.hpp"
#include "nml/semantics.hpp"

namespace nml::io {

using Json = nlohmann::ordered_json;

/// Parses text as JSON; syntax errors become InputError with line/column.
Json parse_json(std::string_view text, std::string_view what);

/// {"atoms":[...],"table":{"": [...], "a": [...], "a,b": [...], ...}}.
/// Keys are comma-joined atom names in language order, "" for ∅; every one
/// of the 2^n keys must be present. Throws InputError naming the field.
ConsequenceTable table_from_json(const Json& j);
Json table_to_json(const ConsequenceTable& table);

/// {"atoms":[...],"models":[{"name":"m","sat":["a","c"]},...],
///  "choice":{"mode":"table","entries":[{"set":[...],"value":[...]}],"default":"identity"}
///         | {"mode":"two-case","entries":[...]}}
/// "restricted" (optional bool) records the Consistency claim. Under
/// "two-case", entries may only name definable sets; unlisted ones map to
/// themselves.
FCModel fc_model_from_json(const Json& j);
/// Writes definable sets (and explicit extras) as entries.
Json fc_model_to_json(const FCModel& fcm);

/// {"dim":2,"state":[1,2],"tolerance":1e-9,"subspaces":{"a":[[1,0]],...}}.
/// Subspaces are given by spanning vectors; "tolerance" is optional.
quantum::QuantumInstance quantum_from_json(const Json& j);
/// Writes each subspace through its orthonormal basis.
Json quantum_to_json(const quantum::QuantumInstance& q);

Json report_to_json(const PropertyReport& r);
PropertyReport report_from_json(const Json& j);

}  // namespace nml::io
