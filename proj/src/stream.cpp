#include "mint/stream.hpp"

#include <algorithm>
#include <future>

#include "mint/errors.hpp"
#include "mint/waves.hpp"

namespace mint {

namespace {

Matroid triangle_sum_truncation(int n) {
  if (n < 0) throw InputError("window size must be nonnegative");
  std::vector<Matroid> parts;
  for (int b = 0; b + 3 <= n; b += 3) parts.push_back(Matroid::uniform(3, 2));
  if (n % 3 != 0) parts.push_back(Matroid::free(n % 3));
  return Matroid::direct_sum(std::move(parts));
}

// Edge 0 is the first rung. Block k appends the two rails out of rung k and
// the rung that closes the next square, so every window is a prefix of the
// same infinite ladder. Vertices 2i and 2i+1 are the two rails' stations.
Matroid ladder_truncation(int n) {
  if (n < 0) throw InputError("window size must be nonnegative");
  std::vector<std::pair<int, int>> ends;
  int vertex_count = 1;
  for (int e = 0; e < n; ++e) {
    std::pair<int, int> uv{0, 1};
    if (e > 0) {
      const int block = (e - 1) / 3;
      switch ((e - 1) % 3) {
        case 0: uv = {2 * block, 2 * block + 2}; break;
        case 1: uv = {2 * block + 1, 2 * block + 3}; break;
        default: uv = {2 * block + 2, 2 * block + 3}; break;
      }
    }
    vertex_count = std::max({vertex_count, uv.first + 1, uv.second + 1});
    ends.push_back(uv);
  }
  return Matroid::graphic(vertex_count, std::move(ends));
}

}  // namespace

StreamFamily builtin_family(const std::string& name) {
  if (name == "triangle_sum") return {name, triangle_sum_truncation};
  if (name == "ladder_graphic") return {name, ladder_truncation};
  if (name == "free") {
    return {name, [](int n) { return Matroid::free(n); }};
  }
  if (name.rfind("uniform_", 0) == 0) {
    const std::string digits = name.substr(8);
    if (!digits.empty() && digits.size() <= 2 &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      const int k = std::stoi(digits);
      return {name, [k](int n) { return Matroid::uniform(n, std::min(n, k)); }};
    }
  }
  throw InputError("unknown stream family " + name);
}

PrefixRun run_prefix(const StreamFamily& fm, const StreamFamily& fn, int window, int targets,
                     const SearchLimits& limits) {
  if (targets < 0 || targets > window)
    throw InputError("prefix run wants 0 <= targets <= window, got targets " +
                     std::to_string(targets) + " for window " + std::to_string(window));
  const Matroid m = fm.truncate(window);
  const Matroid n = fn.truncate(window);

  PrefixRun run;
  run.window = window;
  run.targets = targets;

  const CondReport gate = cond(m, n, limits);
  run.largest_wave = gate.largest.wave_set;
  run.cond_ok = gate.holds;
  run.cond_plus_initial = gate.holds && gate.largest.trivial;
  if (!run.cond_ok) return run;

  run.seed = nice_extension(m, n, limits);
  EdgeSet acc = run.seed;
  for (EdgeId e = 0; e < static_cast<EdgeId>(targets); ++e) {
    if (n.spans(acc, e)) continue;
    KeyLemmaRun step;
    step.context = acc;
    step.target = e;
    KeyLemmaResult res;
    try {
      res = key_lemma(m.contracted(acc), n.contracted(acc), e, limits);
    } catch (const CondViolation&) {
      throw InternalError("prefix recursion lost cond before target " + std::to_string(e));
    }
    step.result = res.independent_set;
    step.trace = std::move(res.trace);
    acc |= step.result;
    if (!n.spans(acc, e))
      throw InternalError("prefix recursion failed to span target " + std::to_string(e));
    run.runs.push_back(std::move(step));
  }
  run.accumulated = acc;
  if (!feasibility(m, n, acc, limits).nice)
    throw InternalError("prefix recursion built " + acc.to_string() +
                        " which is not nice feasible on window " + std::to_string(window));
  return run;
}

StabilizationReport stabilization_report(const StreamFamily& fm, const StreamFamily& fn,
                                         const std::vector<int>& windows, int targets,
                                         const SearchLimits& limits) {
  if (windows.empty()) throw InputError("stabilization needs at least one window");
  for (std::size_t i = 0; i + 1 < windows.size(); ++i)
    if (windows[i] >= windows[i + 1]) throw InputError("windows must strictly increase");
  if (targets > windows.front())
    throw InputError("targets must fit inside the smallest window");

  StabilizationReport report;
  report.windows = windows;
  report.targets = targets;

  std::vector<std::future<PrefixRun>> jobs;
  jobs.reserve(windows.size());
  for (int w : windows) {
    jobs.push_back(std::async(std::launch::async,
                              [&fm, &fn, w, targets, &limits] {
                                return run_prefix(fm, fn, w, targets, limits);
                              }));
  }
  for (auto& job : jobs) report.runs.push_back(job.get());

  for (const PrefixRun& run : report.runs) {
    if (!run.cond_ok) continue;
    const Matroid m = fm.truncate(run.window);
    const Matroid n = fn.truncate(run.window);
    EdgeSet prev_span = n.span(run.seed);
    for (const KeyLemmaRun& kr : run.runs) {
      const Matroid mq = m.contracted(kr.context);
      const Matroid nq = n.contracted(kr.context);
      if (!claim_instrumentation(kr.trace, mq, nq).empty()) report.instrumentation_clean = false;
      const EdgeSet now = n.span(kr.context | kr.result);
      if (!prev_span.subset_of(now)) report.span_monotone = false;
      prev_span = now;
    }
  }

  for (std::size_t a = 0; a < report.runs.size(); ++a) {
    for (std::size_t b = a + 1; b < report.runs.size(); ++b) {
      const PrefixRun& small = report.runs[a];
      const PrefixRun& large = report.runs[b];
      PrefixAgreement pa;
      pa.window_small = small.window;
      pa.window_large = large.window;
      if (!small.cond_ok || !large.cond_ok) {
        pa.verdict = "no-run";
        report.agreements.push_back(pa);
        continue;
      }
      const EdgeSet span_small = fn.truncate(small.window).span(small.accumulated);
      const EdgeSet span_large = fn.truncate(large.window).span(large.accumulated);
      int k = 0;
      while (k < small.window && span_small.contains(k) == span_large.contains(k) &&
             small.accumulated.contains(k) == large.accumulated.contains(k))
        ++k;
      pa.agree_upto = k;
      pa.verdict = k >= targets ? "stable" : "divergent";
      report.agreements.push_back(pa);
    }
  }
  return report;
}

}  // namespace mint
