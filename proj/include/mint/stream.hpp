#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mint/matroid.hpp"
#include "mint/solver.hpp"

namespace mint {

// A finitary matroid family presented through finite truncations: window n is
// the restriction of the infinite matroid to its first n edges. Coherence
// (independence of S within [0, n) does not depend on the window) is a
// property of the builtin families, exercised by tests rather than enforced
// per call.
struct StreamFamily {
  std::string name;
  std::function<Matroid(int)> truncate;
};

// Names: triangle_sum, ladder_graphic, free, uniform_<k>.
StreamFamily builtin_family(const std::string& name);

// One key-lemma invocation inside a prefix run. It ran on the quotient pair
// (m.contracted(context), n.contracted(context)) of the window truncation and
// returned result, a subset of the quotient ground set.
struct KeyLemmaRun {
  EdgeSet context;
  EdgeId target = 0;
  EdgeSet result;
  RunTrace trace;
};

struct PrefixRun {
  int window = 0;
  int targets = 0;
  bool cond_ok = false;
  bool cond_plus_initial = false;
  EdgeSet largest_wave;
  EdgeSet seed;
  EdgeSet accumulated;
  std::vector<KeyLemmaRun> runs;
};

// Truncates both families at the window, then runs the prefix recursion: seed
// with a nice extension, and for each target edge in ascending order pull it
// into the n-span through the key lemma on the current quotient pair. When
// cond fails on the truncation the run stops before seeding and carries the
// offending wave in largest_wave; a nontrivial wave with cond intact is
// reported through cond_plus_initial = false but does not stop the run.
PrefixRun run_prefix(const StreamFamily& fm, const StreamFamily& fn, int window, int targets,
                     const SearchLimits& limits = {});

struct PrefixAgreement {
  int window_small = 0;
  int window_large = 0;
  int agree_upto = 0;       // longest prefix [0, k) of matching decisions
  std::string verdict;      // stable, divergent, or no-run
};

struct StabilizationReport {
  std::vector<int> windows;
  int targets = 0;
  std::vector<PrefixRun> runs;
  std::vector<PrefixAgreement> agreements;
  bool instrumentation_clean = true;
  bool span_monotone = true;
};

// Runs run_prefix once per window (windows run concurrently, the merge is
// deterministic), re-checks every recorded trace with claim_instrumentation,
// asserts n-span monotonicity along each recursion, and measures for each
// window pair how long a prefix agrees on both the spanning decisions and the
// membership of the built set.
StabilizationReport stabilization_report(const StreamFamily& fm, const StreamFamily& fn,
                                         const std::vector<int>& windows, int targets,
                                         const SearchLimits& limits = {});

}  // namespace mint
