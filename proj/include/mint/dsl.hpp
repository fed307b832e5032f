#pragma once

#include <string>

#include <json.hpp>

#include "mint/exchange.hpp"
#include "mint/matroid.hpp"
#include "mint/solver.hpp"
#include "mint/stream.hpp"
#include "mint/waves.hpp"

namespace mint {

using Json = nlohmann::ordered_json;

// Matroid descriptions as JSON objects:
//   {"type":"uniform","n":3,"rank":2}
//   {"type":"partition","blocks":[[0,1],[2]],"caps":[1,1]}
//   {"type":"graphic","vertices":3,"edges":[[0,1],[1,2],[0,2]]}
//   {"type":"linear_gf2","columns":["10","01","11"]}   (character j is row j)
//   {"type":"dual","of": ...}
//   {"type":"delete","of": ..., "edges":[...]}
//   {"type":"contract","of": ..., "edges":[...]}
//   {"type":"direct_sum","parts":[...]}
// Edge indices are global; direct_sum relabels its parts consecutively.
// Errors carry the JSON path of the offending value, rooted at `where`.
Matroid parse_matroid(const Json& description, const std::string& where = "$");

// Parses the text as JSON first; syntax errors keep the parser's position info.
Matroid parse_matroid_text(const std::string& text);
Matroid load_matroid_file(const std::string& file);

Json to_json(EdgeSet s);
Json to_json(const Circuit& c);
Json to_json(const IntersectionCertificate& cert);
Json to_json(const WaveCertificate& w);
Json to_json(const CondReport& r);
Json to_json(const FeasibleReport& r);
Json to_json(const TraceStep& s);
Json to_json(const RunTrace& t);
Json to_json(const ClaimViolation& v);
Json to_json(const KeyLemmaResult& r);
Json to_json(const SolveOutcome& o);
Json to_json(const KeyLemmaRun& r);
Json to_json(const PrefixRun& r);
Json to_json(const PrefixAgreement& a);
Json to_json(const StabilizationReport& r);

// Readers for the pieces a verify pass consumes. All validate shape and throw
// InputError with a JSON path on mismatch.
EdgeSet edge_set_from_json(const Json& j, const std::string& where = "$");
IntersectionCertificate certificate_from_json(const Json& j, const std::string& where = "$");
WaveCertificate wave_from_json(const Json& j, const std::string& where = "$");
RunTrace trace_from_json(const Json& j, const std::string& where = "$");
SolveOutcome outcome_from_json(const Json& j, const std::string& where = "$");

}  // namespace mint
