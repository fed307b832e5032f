#include "mint/dsl.hpp"

#include <fstream>
#include <sstream>

#include "mint/errors.hpp"

namespace mint {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw InputError(where + ": " + message);
}

const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "required field is missing");
  return *it;
}

int require_count(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      v.get<long long>() > kMaxUniverse)
    fail(where + "." + key, "expected an integer in [0, 64]");
  return v.get<int>();
}

EdgeId parse_edge(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() >= kMaxUniverse)
    fail(where, "expected an edge index in [0, 64)");
  return v.get<EdgeId>();
}

EdgeSet parse_edge_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of edge indices");
  EdgeSet out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.add(parse_edge(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Matroid parse_uniform(const Json& j, const std::string& where) {
  const int n = require_count(j, "n", where);
  const int r = require_count(j, "rank", where);
  return Matroid::uniform(n, r);
}

Matroid parse_partition(const Json& j, const std::string& where) {
  const Json& blocks = require_field(j, "blocks", where);
  if (!blocks.is_array()) fail(where + ".blocks", "expected an array of blocks");
  std::vector<EdgeSet> parsed;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    parsed.push_back(parse_edge_array(blocks[i], where + ".blocks[" + std::to_string(i) + "]"));
  const Json& caps = require_field(j, "caps", where);
  if (!caps.is_array()) fail(where + ".caps", "expected an array of capacities");
  std::vector<int> cap_values;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const std::string spot = where + ".caps[" + std::to_string(i) + "]";
    if (!caps[i].is_number_integer() || caps[i].get<long long>() < 0)
      fail(spot, "expected a nonnegative integer");
    cap_values.push_back(caps[i].get<int>());
  }
  return Matroid::partition(std::move(parsed), std::move(cap_values));
}

Matroid parse_graphic(const Json& j, const std::string& where) {
  const Json& vertices = require_field(j, "vertices", where);
  if (!vertices.is_number_integer() || vertices.get<long long>() < 0)
    fail(where + ".vertices", "expected a nonnegative integer");
  const Json& edges = require_field(j, "edges", where);
  if (!edges.is_array()) fail(where + ".edges", "expected an array of vertex pairs");
  const int vertex_count = vertices.get<int>();
  std::vector<std::pair<int, int>> endpoints;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string spot = where + ".edges[" + std::to_string(i) + "]";
    const Json& pair = edges[i];
    if (!pair.is_array() || pair.size() != 2) fail(spot, "expected a pair [u, v]");
    int uv[2];
    for (int k = 0; k < 2; ++k) {
      if (!pair[k].is_number_integer() || pair[k].get<long long>() < 0 ||
          pair[k].get<long long>() >= vertex_count)
        fail(spot + "[" + std::to_string(k) + "]", "expected a vertex index below 'vertices'");
      uv[k] = pair[k].get<int>();
    }
    endpoints.emplace_back(uv[0], uv[1]);
  }
  return Matroid::graphic(vertex_count, std::move(endpoints));
}

Matroid parse_linear_gf2(const Json& j, const std::string& where) {
  const Json& columns = require_field(j, "columns", where);
  if (!columns.is_array()) fail(where + ".columns", "expected an array of bit strings");
  std::vector<std::uint64_t> parsed;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const std::string spot = where + ".columns[" + std::to_string(i) + "]";
    if (!columns[i].is_string()) fail(spot, "expected a bit string such as \"101\"");
    const std::string bits = columns[i].get<std::string>();
    if (bits.empty() || bits.size() > 64) fail(spot, "expected between 1 and 64 bits");
    if (i == 0) {
      rows = bits.size();
    } else if (bits.size() != rows) {
      fail(spot, "all columns must have the same number of rows");
    }
    std::uint64_t column = 0;
    for (std::size_t row = 0; row < bits.size(); ++row) {
      if (bits[row] == '1')
        column |= std::uint64_t{1} << row;
      else if (bits[row] != '0')
        fail(spot, "bit strings may contain only '0' and '1'");
    }
    parsed.push_back(column);
  }
  return Matroid::linear_gf2(std::move(parsed), static_cast<int>(rows));
}

}  // namespace

Matroid parse_matroid(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const Json& type = require_field(j, "type", where);
  if (!type.is_string()) fail(where + ".type", "expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "uniform") return parse_uniform(j, where);
  if (kind == "partition") return parse_partition(j, where);
  if (kind == "graphic") return parse_graphic(j, where);
  if (kind == "linear_gf2") return parse_linear_gf2(j, where);
  if (kind == "dual") return parse_matroid(require_field(j, "of", where), where + ".of").dual();
  if (kind == "delete") {
    const Matroid inner = parse_matroid(require_field(j, "of", where), where + ".of");
    const EdgeSet gone = parse_edge_array(require_field(j, "edges", where), where + ".edges");
    if (!gone.subset_of(inner.ground()))
      fail(where + ".edges", "deletes edges outside the inner ground set");
    return inner.deleted(gone);
  }
  if (kind == "contract") {
    const Matroid inner = parse_matroid(require_field(j, "of", where), where + ".of");
    const EdgeSet gone = parse_edge_array(require_field(j, "edges", where), where + ".edges");
    if (!gone.subset_of(inner.ground()))
      fail(where + ".edges", "contracts edges outside the inner ground set");
    return inner.contracted(gone);
  }
  if (kind == "direct_sum") {
    const Json& parts = require_field(j, "parts", where);
    if (!parts.is_array()) fail(where + ".parts", "expected an array of matroids");
    std::vector<Matroid> parsed;
    for (std::size_t i = 0; i < parts.size(); ++i)
      parsed.push_back(parse_matroid(parts[i], where + ".parts[" + std::to_string(i) + "]"));
    return Matroid::direct_sum(std::move(parsed));
  }
  fail(where + ".type", "unknown matroid type '" + kind + "'");
}

Matroid parse_matroid_text(const std::string& text) {
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(e.what());
  }
  return parse_matroid(parsed);
}

Matroid load_matroid_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read matroid file " + file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_matroid_text(buffer.str());
  } catch (const InputError& e) {
    throw InputError(file + ": " + e.what());
  }
}

Json to_json(EdgeSet s) {
  Json out = Json::array();
  for (EdgeId e : s) out.push_back(e);
  return out;
}

Json to_json(const Circuit& c) { return Json{{"circuit", to_json(c.edges)}}; }

Json to_json(const IntersectionCertificate& cert) {
  return Json{{"common_independent", to_json(cert.common_independent)},
              {"part_m", to_json(cert.part_m)},
              {"part_n", to_json(cert.part_n)}};
}

Json to_json(const WaveCertificate& w) {
  return Json{{"wave_set", to_json(w.wave_set)},
              {"witness", to_json(w.witness)},
              {"trivial", w.trivial}};
}

Json to_json(const CondReport& r) {
  Json out{{"holds", r.holds}, {"largest", to_json(r.largest)}};
  if (r.counter_wave) out["counter_wave"] = to_json(*r.counter_wave);
  if (r.n_side_base) out["n_side_base"] = to_json(*r.n_side_base);
  return out;
}

Json to_json(const FeasibleReport& r) {
  Json out{{"set", to_json(r.set)},
           {"feasible", r.feasible},
           {"nice", r.nice},
           {"quotient_cond", to_json(r.quotient_cond)}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

Json to_json(const TraceStep& s) {
  Json out{{"i_before", to_json(s.i_before)}};
  if (s.path) {
    Json path = Json::array();
    for (EdgeId e : *s.path) path.push_back(e);
    out["path"] = std::move(path);
  } else {
    out["path"] = nullptr;
  }
  out["extension"] = to_json(s.extension);
  out["i_after"] = to_json(s.i_after);
  out["span_n_after"] = to_json(s.span_n_after);
  Json reach = Json::object();
  for (const auto& [source, region] : s.reach_sets)
    reach[std::to_string(source)] = to_json(region);
  out["reach_sets"] = std::move(reach);
  return out;
}

Json to_json(const RunTrace& t) {
  Json steps = Json::array();
  for (const TraceStep& s : t.steps) steps.push_back(to_json(s));
  return Json{{"steps", std::move(steps)}};
}

Json to_json(const ClaimViolation& v) {
  return Json{{"step", v.step}, {"item", v.item}, {"detail", v.detail}};
}

Json to_json(const KeyLemmaResult& r) {
  return Json{{"independent_set", to_json(r.independent_set)}, {"trace", to_json(r.trace)}};
}

Json to_json(const SolveOutcome& o) {
  Json out{{"status", o.status == SolveStatus::found ? "found" : "violated"},
           {"payload", to_json(o.payload)}};
  if (o.counter_wave) out["counter_wave"] = to_json(*o.counter_wave);
  if (!o.violated_side.empty()) out["violated_side"] = o.violated_side;
  if (o.certificate) out["certificate"] = to_json(*o.certificate);
  return out;
}

Json to_json(const KeyLemmaRun& r) {
  return Json{{"context", to_json(r.context)},
              {"target", r.target},
              {"result", to_json(r.result)},
              {"trace", to_json(r.trace)}};
}

Json to_json(const PrefixRun& r) {
  Json runs = Json::array();
  for (const KeyLemmaRun& kr : r.runs) runs.push_back(to_json(kr));
  return Json{{"window", r.window},
              {"targets", r.targets},
              {"cond_ok", r.cond_ok},
              {"cond_plus_initial", r.cond_plus_initial},
              {"largest_wave", to_json(r.largest_wave)},
              {"seed", to_json(r.seed)},
              {"accumulated", to_json(r.accumulated)},
              {"runs", std::move(runs)}};
}

Json to_json(const PrefixAgreement& a) {
  return Json{{"window_small", a.window_small},
              {"window_large", a.window_large},
              {"agree_upto", a.agree_upto},
              {"verdict", a.verdict}};
}

Json to_json(const StabilizationReport& r) {
  Json runs = Json::array();
  for (const PrefixRun& run : r.runs) runs.push_back(to_json(run));
  Json agreements = Json::array();
  for (const PrefixAgreement& a : r.agreements) agreements.push_back(to_json(a));
  return Json{{"windows", r.windows},
              {"targets", r.targets},
              {"runs", std::move(runs)},
              {"agreements", std::move(agreements)},
              {"instrumentation_clean", r.instrumentation_clean},
              {"span_monotone", r.span_monotone}};
}

EdgeSet edge_set_from_json(const Json& j, const std::string& where) {
  return parse_edge_array(j, where);
}

IntersectionCertificate certificate_from_json(const Json& j, const std::string& where) {
  IntersectionCertificate cert;
  cert.common_independent =
      parse_edge_array(require_field(j, "common_independent", where), where + ".common_independent");
  cert.part_m = parse_edge_array(require_field(j, "part_m", where), where + ".part_m");
  cert.part_n = parse_edge_array(require_field(j, "part_n", where), where + ".part_n");
  return cert;
}

WaveCertificate wave_from_json(const Json& j, const std::string& where) {
  WaveCertificate w;
  w.wave_set = parse_edge_array(require_field(j, "wave_set", where), where + ".wave_set");
  w.witness = parse_edge_array(require_field(j, "witness", where), where + ".witness");
  const Json& trivial = require_field(j, "trivial", where);
  if (!trivial.is_boolean()) fail(where + ".trivial", "expected a boolean");
  w.trivial = trivial.get<bool>();
  return w;
}

RunTrace trace_from_json(const Json& j, const std::string& where) {
  const Json& steps = require_field(j, "steps", where);
  if (!steps.is_array()) fail(where + ".steps", "expected an array of steps");
  RunTrace out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string spot = where + ".steps[" + std::to_string(i) + "]";
    const Json& sj = steps[i];
    TraceStep step;
    step.i_before = parse_edge_array(require_field(sj, "i_before", spot), spot + ".i_before");
    const Json& path = require_field(sj, "path", spot);
    if (path.is_null()) {
      step.path = std::nullopt;
    } else if (path.is_array()) {
      std::vector<EdgeId> p;
      for (std::size_t k = 0; k < path.size(); ++k)
        p.push_back(parse_edge(path[k], spot + ".path[" + std::to_string(k) + "]"));
      step.path = std::move(p);
    } else {
      fail(spot + ".path", "expected an array or null");
    }
    step.extension = parse_edge_array(require_field(sj, "extension", spot), spot + ".extension");
    step.i_after = parse_edge_array(require_field(sj, "i_after", spot), spot + ".i_after");
    step.span_n_after =
        parse_edge_array(require_field(sj, "span_n_after", spot), spot + ".span_n_after");
    const Json& reach = require_field(sj, "reach_sets", spot);
    if (!reach.is_object()) fail(spot + ".reach_sets", "expected an object");
    for (const auto& [key, value] : reach.items()) {
      EdgeId source = -1;
      try {
        source = std::stoi(key);
      } catch (const std::exception&) {
        fail(spot + ".reach_sets", "keys must be edge indices, got '" + key + "'");
      }
      if (source < 0 || source >= kMaxUniverse)
        fail(spot + ".reach_sets", "keys must be edge indices, got '" + key + "'");
      step.reach_sets[source] = parse_edge_array(value, spot + ".reach_sets." + key);
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

SolveOutcome outcome_from_json(const Json& j, const std::string& where) {
  SolveOutcome out;
  const Json& status = require_field(j, "status", where);
  if (!status.is_string() ||
      (status.get<std::string>() != "found" && status.get<std::string>() != "violated"))
    fail(where + ".status", "expected \"found\" or \"violated\"");
  out.status = status.get<std::string>() == "found" ? SolveStatus::found : SolveStatus::violated;
  out.payload = parse_edge_array(require_field(j, "payload", where), where + ".payload");
  if (j.contains("counter_wave"))
    out.counter_wave = parse_edge_array(j.at("counter_wave"), where + ".counter_wave");
  if (j.contains("violated_side")) {
    const Json& side = j.at("violated_side");
    if (!side.is_string()) fail(where + ".violated_side", "expected a string");
    out.violated_side = side.get<std::string>();
  }
  if (j.contains("certificate"))
    out.certificate = certificate_from_json(j.at("certificate"), where + ".certificate");
  return out;
}

}  // namespace mint
