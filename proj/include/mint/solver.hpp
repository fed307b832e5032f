#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mint/exchange.hpp"
#include "mint/matroid.hpp"
#include "mint/waves.hpp"

namespace mint {

// Thrown by operations whose hypotheses include cond of the input pair; the
// wave is the counterexample and doubles as the machine-checkable refusal.
struct CondViolation : InputError {
  CondViolation(const std::string& what, EdgeSet wave_arg) : InputError(what), wave(wave_arg) {}
  EdgeSet wave;
};

// A set i is feasible when it is common independent and cond survives
// contracting it on both sides, and nice when the surviving largest wave is
// trivial on top of that.
struct FeasibleReport {
  EdgeSet set;
  bool feasible = false;
  bool nice = false;
  CondReport quotient_cond;
  std::string reason;  // why feasible is false; empty otherwise
};

FeasibleReport feasibility(const Matroid& m, const Matroid& n, EdgeSet i,
                           const SearchLimits& limits = {});

// A common base of m|W and n.W for the largest wave W. Such a base is a nice
// feasible set; the result is re-checked through feasibility on every call.
// Throws CondViolation when cond(m, n) fails (the base need not exist then).
EdgeSet nice_extension(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

// Augment the nice feasible set i along path, then extend the result to a
// nice feasible set via nice_extension of the contracted pair. The output is
// re-checked to be nice. Rejects an i that is not nice feasible.
EdgeSet aug_nice_extend(const Matroid& m, const Matroid& n, EdgeSet i,
                        const std::vector<EdgeId>& path, const SearchLimits& limits = {});

// One round of the span-growing loop. A missing path means the loop hit its
// terminal case; reach_sets maps every source x that cannot reach a sink of
// the digraph on i_before to the set of edges reachable from x.
struct TraceStep {
  EdgeSet i_before;
  std::optional<std::vector<EdgeId>> path;
  EdgeSet extension;
  EdgeSet i_after;
  EdgeSet span_n_after;
  std::map<EdgeId, EdgeSet> reach_sets;
};

struct RunTrace {
  std::vector<TraceStep> steps;
};

struct KeyLemmaResult {
  EdgeSet independent_set;
  RunTrace trace;
};

// A nice feasible set whose n-span contains e, grown from the nice extension
// of the pair by repeatedly augmenting along a path with the smallest
// available start and re-extending. Throws CondViolation when cond fails.
KeyLemmaResult key_lemma(const Matroid& m, const Matroid& n, EdgeId e,
                         const SearchLimits& limits = {});

enum class SolveStatus { found, violated };

struct SolveOutcome {
  SolveStatus status = SolveStatus::found;
  EdgeSet payload;                      // the found set when status is found
  std::optional<EdgeSet> counter_wave;  // the refuting wave when violated
  std::string violated_side;            // "mn" or "nm", set when violated
  std::optional<IntersectionCertificate> certificate;
};

// A base of n independent in m, or the wave refuting cond(m, n). The found
// set is assembled per the quotient recursion: the n-side base of the
// largest wave plus key-lemma rounds on the quotient pair, never by calling
// the augmenting search directly (that serves as a cross-check elsewhere).
SolveOutcome ind_span_solve(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

// A maximum common independent set with its certifying bipartition
// (largest wave, rest), built from the wave witness plus an independent
// spanning set of the quotient; size cross-checked against the augmenting
// search. Always found.
SolveOutcome intersect_solve(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

// A common base, or the counterexample wave of whichever cond direction
// fails first (side "mn" = cond(m, n), side "nm" = cond(n, m)).
SolveOutcome common_base_solve(const Matroid& m, const Matroid& n,
                               const SearchLimits& limits = {});

// Certified intersection for the pair and for the pair of duals.
bool dual_transfer_check(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

struct ClaimViolation {
  int step;
  std::string item;
  std::string detail;
};

// Replays a key-lemma trace against the pair it came from and checks, for
// every recorded step and every source x that could not reach a sink: the
// path avoided everything reachable from x; the independent set, the
// fundamental circuits, and the arcs inside that region did not change; and
// the region itself only grew. Structural defects of the trace (broken
// chaining, misrecorded spans) are reported the same way. Returns the
// violations instead of throwing; a healthy trace yields none.
std::vector<ClaimViolation> claim_instrumentation(const RunTrace& trace, const Matroid& m,
                                                  const Matroid& n);

}  // namespace mint
