#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mint/dsl.hpp"
#include "mint/errors.hpp"
#include "mint/testkit.hpp"

using namespace mint;

namespace {

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read file " + file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

EdgeSet set_from_list(const std::vector<int>& edges) {
  EdgeSet out;
  for (int e : edges) {
    if (e < 0 || e >= kMaxUniverse)
      throw InputError("edge index " + std::to_string(e) + " is out of range");
    out.add(e);
  }
  return out;
}

// Minimal dependent subset of s, shrunk smallest-index-first so the answer is
// deterministic.
std::optional<EdgeSet> contained_circuit(const Matroid& m, EdgeSet s) {
  if (m.is_independent(s)) return std::nullopt;
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e : s) {
      if (!m.is_independent(s.without(e))) {
        s = s.without(e);
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::string dot_of(const ExchangeDigraph& d) {
  std::ostringstream out;
  out << "digraph exchange {\n  rankdir=LR;\n";
  for (EdgeId e : d.ground) {
    out << "  e" << e << " [label=\"" << e << "\"";
    if (d.independent.contains(e)) out << ",shape=box";
    if (d.sources.contains(e)) out << ",penwidth=2";
    if (d.sinks.contains(e)) out << ",peripheries=2";
    out << "];\n";
  }
  for (EdgeId a : d.ground) {
    if (a >= static_cast<EdgeId>(d.out.size())) continue;
    for (EdgeId b : d.out[a]) out << "  e" << a << " -> e" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

int verify_intersection(const Matroid& m, const Matroid& n, const Json& file) {
  IntersectionCertificate cert;
  if (file.contains("certificate"))
    cert = certificate_from_json(file.at("certificate"), "$.certificate");
  else
    cert = certificate_from_json(file);
  const auto violations = certificate_violations(m, n, cert);
  emit(Json{{"valid", violations.empty()}, {"violations", violations}});
  return violations.empty() ? 0 : 2;
}

int verify_wave(const Matroid& m, const Matroid& n, const Json& file) {
  const WaveCertificate w = wave_from_json(file);
  std::vector<std::string> issues;
  if (!w.wave_set.subset_of(m.ground())) {
    issues.push_back("wave leaves the ground set");
  } else if (!w.witness.subset_of(w.wave_set)) {
    issues.push_back("witness leaves the wave");
  } else {
    const Matroid on_m = m.restricted(w.wave_set);
    const Matroid on_n = n.onto(w.wave_set);
    if (!on_m.is_independent(w.witness) || w.witness.size() != on_m.rank())
      issues.push_back("witness is not a base of the m restriction");
    if (!on_n.is_independent(w.witness))
      issues.push_back("witness is dependent in the n quotient");
    if (w.trivial != w.wave_set.subset_of(m.loops()))
      issues.push_back("trivial flag does not match the loops");
  }
  emit(Json{{"valid", issues.empty()}, {"violations", issues}});
  return issues.empty() ? 0 : 2;
}

int verify_recomputed(const Json& fresh, const Json& file) {
  const bool valid = fresh == file;
  Json out{{"valid", valid}};
  if (!valid) out["violations"] = Json::array({"stored report differs from recomputation"});
  emit(out);
  return valid ? 0 : 2;
}

int verify_ind_span(const Matroid& m, const Matroid& n, const Json& file) {
  const SolveOutcome o = outcome_from_json(file);
  std::vector<std::string> issues;
  if (o.status == SolveStatus::found) {
    if (!m.is_independent(o.payload)) issues.push_back("payload is dependent in m");
    if (n.span(o.payload) != n.ground()) issues.push_back("payload does not span n");
  } else if (!o.counter_wave) {
    issues.push_back("violated outcome carries no wave");
  } else if (!is_wave(m, n, *o.counter_wave)) {
    issues.push_back("counter wave is not a wave");
  }
  emit(Json{{"valid", issues.empty()}, {"violations", issues}});
  return issues.empty() ? 0 : 2;
}

int verify_common_base(const Matroid& m, const Matroid& n, const Json& file) {
  const SolveOutcome o = outcome_from_json(file);
  std::vector<std::string> issues;
  if (o.status == SolveStatus::found) {
    if (!m.is_independent(o.payload) || o.payload.size() != m.rank())
      issues.push_back("payload is not a base of m");
    if (!n.is_independent(o.payload) || o.payload.size() != n.rank())
      issues.push_back("payload is not a base of n");
  } else if (!o.counter_wave) {
    issues.push_back("violated outcome carries no wave");
  } else {
    const bool ok = o.violated_side == "nm" ? is_wave(n, m, *o.counter_wave).has_value()
                                            : is_wave(m, n, *o.counter_wave).has_value();
    if (!ok) issues.push_back("counter wave is not a wave on side " + o.violated_side);
  }
  emit(Json{{"valid", issues.empty()}, {"violations", issues}});
  return issues.empty() ? 0 : 2;
}

int verify_key_lemma(const Matroid& m, const Matroid& n, EdgeId edge, const Json& file) {
  const EdgeSet i = edge_set_from_json(file.at("independent_set"), "$.independent_set");
  std::vector<std::string> issues;
  if (!feasibility(m, n, i).nice) issues.push_back("independent_set is not nice feasible");
  if (!n.spans(i, edge)) issues.push_back("independent_set does not span the edge");
  if (file.contains("trace")) {
    for (const auto& v : claim_instrumentation(trace_from_json(file.at("trace"), "$.trace"), m, n))
      issues.push_back("trace step " + std::to_string(v.step) + ": " + v.item);
  }
  emit(Json{{"valid", issues.empty()}, {"violations", issues}});
  return issues.empty() ? 0 : 2;
}

int run_oracle_corpus(std::uint64_t seed, int count, int bound) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> disagreements;
  int mutations_caught = 0;
  for (int trial = 0; trial < count; ++trial) {
    const auto [m, n] = testkit::random_pair(rng);
    const std::string tag = "trial " + std::to_string(trial);
    const auto ax_m = testkit::check_axioms(m, bound);
    const auto ax_n = testkit::check_axioms(n, bound);
    if (!ax_m.ok) disagreements.push_back(tag + ": m axioms: " + ax_m.detail);
    if (!ax_n.ok) disagreements.push_back(tag + ": n axioms: " + ax_n.detail);
    const auto fast = edmonds_max_common(m, n);
    const auto slow = testkit::brute_max_common(m, n, bound);
    if (fast.common_independent.size() != slow.size())
      disagreements.push_back(tag + ": intersection size mismatch");
    const bool holds = cond(m, n).holds;
    if (holds != testkit::brute_exists_ind_span(m, n, bound).has_value())
      disagreements.push_back(tag + ": cond disagrees with spanning search");
    const auto broken = testkit::mutate_flip(m, rng);
    if (!testkit::check_axioms(broken.matroid, bound).ok) ++mutations_caught;
  }
  emit(Json{{"pairs", count},
            {"mutations_caught", mutations_caught},
            {"disagreements", disagreements}});
  return disagreements.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid intersection laboratory"};
  app.require_subcommand(1);

  std::string m_file, n_file, verify_file, family_m, family_n;
  std::vector<int> set_list;
  std::vector<int> windows{4, 8, 16};
  std::uint64_t seed = 1;
  int bound = 16;
  int oracle_bound = 9;
  int edge = 0;
  int targets = -1;
  int count = 12;
  bool with_trace = false;
  bool with_dot = false;

  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("m", m_file, "matroid description file")->required();
    cmd->add_option("n", n_file, "matroid description file")->required();
    cmd->add_option("--bound", bound, "wave search refusal bound");
  };

  auto* ax = app.add_subcommand("check-axioms", "verify the independence axioms by enumeration");
  ax->add_option("m", m_file)->required();
  ax->add_option("--bound", oracle_bound, "enumeration refusal bound");

  auto* rank_cmd = app.add_subcommand("rank", "rank of a set, or of the ground set");
  rank_cmd->add_option("m", m_file)->required();
  rank_cmd->add_option("--set", set_list)->delimiter(',');

  auto* circuit_cmd = app.add_subcommand("circuit", "a circuit inside the given set, if any");
  circuit_cmd->add_option("m", m_file)->required();
  circuit_cmd->add_option("--set", set_list)->delimiter(',')->required();

  auto* intersect_cmd = app.add_subcommand("intersect", "maximum common independent set");
  add_pair(intersect_cmd);
  intersect_cmd->add_option("--verify", verify_file, "re-check a stored certificate");

  auto* wave_cmd = app.add_subcommand("largest-wave", "union of all waves, with witness");
  add_pair(wave_cmd);
  wave_cmd->add_option("--verify", verify_file);

  auto* cond_cmd = app.add_subcommand("cond", "solvability condition on the largest wave");
  add_pair(cond_cmd);
  cond_cmd->add_option("--verify", verify_file);

  auto* ind_span_cmd = app.add_subcommand("ind-span", "m-independent set spanning n");
  add_pair(ind_span_cmd);
  ind_span_cmd->add_option("--verify", verify_file);

  auto* base_cmd = app.add_subcommand("common-base", "base of both matroids");
  add_pair(base_cmd);
  base_cmd->add_option("--verify", verify_file);

  auto* key_cmd = app.add_subcommand("key-lemma", "grow a nice feasible set spanning one edge");
  add_pair(key_cmd);
  key_cmd->add_option("--edge", edge, "target edge")->required();
  key_cmd->add_flag("--trace", with_trace, "include the run trace");
  key_cmd->add_flag("--dot", with_dot, "with --trace, include digraph snapshots");
  key_cmd->add_option("--verify", verify_file);

  auto* stream_cmd = app.add_subcommand("stream-demo", "prefix recursion over growing windows");
  stream_cmd->add_option("--family-m", family_m)->required();
  stream_cmd->add_option("--family-n", family_n)->required();
  stream_cmd->add_option("--windows", windows)->delimiter(',');
  stream_cmd->add_option("--targets", targets, "edges to pull into the n-span");
  stream_cmd->add_option("--bound", bound);

  auto* oracle_cmd = app.add_subcommand("oracle", "random cross-checks against brute force");
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--count", count, "number of random pairs");
  oracle_cmd->add_option("--bound", oracle_bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    SearchLimits limits;
    limits.wave_bound = bound;

    if (ax->parsed()) {
      const auto report = testkit::check_axioms(load_matroid_file(m_file), oracle_bound);
      Json out{{"ok", report.ok}};
      if (!report.ok) out["detail"] = report.detail;
      emit(out);
      return report.ok ? 0 : 2;
    }
    if (rank_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const EdgeSet s = rank_cmd->count("--set") ? set_from_list(set_list) : m.ground();
      if (!s.subset_of(m.ground())) throw InputError("set leaves the ground set");
      emit(Json{{"rank", m.rank(s)}});
      return 0;
    }
    if (circuit_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const EdgeSet s = set_from_list(set_list);
      if (!s.subset_of(m.ground())) throw InputError("set leaves the ground set");
      const auto c = contained_circuit(m, s);
      emit(Json{{"circuit", c ? to_json(*c) : Json(nullptr)}});
      return 0;
    }
    if (intersect_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      if (!verify_file.empty()) return verify_intersection(m, n, load_json_file(verify_file));
      emit(to_json(intersect_solve(m, n, limits)));
      return 0;
    }
    if (wave_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      if (!verify_file.empty()) return verify_wave(m, n, load_json_file(verify_file));
      emit(to_json(largest_wave(m, n, limits)));
      return 0;
    }
    if (cond_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      const CondReport report = cond(m, n, limits);
      if (!verify_file.empty())
        return verify_recomputed(to_json(report), load_json_file(verify_file));
      emit(to_json(report));
      return report.holds ? 0 : 2;
    }
    if (ind_span_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      if (!verify_file.empty()) return verify_ind_span(m, n, load_json_file(verify_file));
      const SolveOutcome outcome = ind_span_solve(m, n, limits);
      emit(to_json(outcome));
      return outcome.status == SolveStatus::found ? 0 : 2;
    }
    if (base_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      if (!verify_file.empty()) return verify_common_base(m, n, load_json_file(verify_file));
      const SolveOutcome outcome = common_base_solve(m, n, limits);
      emit(to_json(outcome));
      return outcome.status == SolveStatus::found ? 0 : 2;
    }
    if (key_cmd->parsed()) {
      const Matroid m = load_matroid_file(m_file);
      const Matroid n = load_matroid_file(n_file);
      if (!verify_file.empty()) return verify_key_lemma(m, n, edge, load_json_file(verify_file));
      const KeyLemmaResult res = key_lemma(m, n, edge, limits);
      Json out{{"independent_set", to_json(res.independent_set)}};
      if (with_trace) {
        out["trace"] = to_json(res.trace);
        if (with_dot) {
          Json snapshots = Json::array();
          for (const TraceStep& step : res.trace.steps)
            snapshots.push_back(dot_of(build_exchange_digraph(m, n, step.i_before)));
          out["dot"] = std::move(snapshots);
        }
      }
      emit(out);
      return 0;
    }
    if (stream_cmd->parsed()) {
      const StreamFamily fm = builtin_family(family_m);
      const StreamFamily fn = builtin_family(family_n);
      if (windows.empty()) throw InputError("need at least one window");
      if (targets < 0) targets = windows.front();
      emit(to_json(stabilization_report(fm, fn, windows, targets, limits)));
      return 0;
    }
    if (oracle_cmd->parsed()) return run_oracle_corpus(seed, count, oracle_bound);
    throw InputError("no command given");
  } catch (const CondViolation& v) {
    emit(Json{{"error", v.what()}, {"wave", to_json(v.wave)}});
    return 2;
  } catch (const CapacityError& e) {
    emit(Json{{"error", e.what()}, {"bound", e.bound}});
    return 3;
  } catch (const InputError& e) {
    emit(Json{{"error", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    emit(Json{{"error", e.what()}});
    return 4;
  }
}
