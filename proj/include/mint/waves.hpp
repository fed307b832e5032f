#pragma once

#include <optional>
#include <utility>

#include "mint/matroid.hpp"

namespace mint {

// A wave is a set W such that some base of M restricted to W is independent
// in N contracted onto W; that base is the witness. A wave consisting purely
// of m-loops is trivial and witnessed by the empty set.
struct WaveCertificate {
  EdgeSet wave_set;
  EdgeSet witness;
  bool trivial = false;
};

// Bounds for the exhaustive searches. The accumulation loop enumerates
// subsets of quotients up to wave_bound elements; the independent oracle
// used for cross-validation only runs up to oracle_bound elements.
struct SearchLimits {
  int wave_bound = 16;
  int oracle_bound = 9;
  bool cross_validate = false;
};

std::optional<WaveCertificate> is_wave(const Matroid& m, const Matroid& n, EdgeSet w);

// The unique largest wave, grown by repeatedly merging any nonempty wave of
// the quotient pair (m contracted by the part found so far, n with it
// deleted) until none remains. With cross_validate set and a small enough
// ground set the result is compared against the exhaustive union of all
// waves; a mismatch falls back to the oracle and bumps a stats counter.
WaveCertificate largest_wave(const Matroid& m, const Matroid& n,
                             const SearchLimits& limits = {});

struct CondReport {
  bool holds = false;
  WaveCertificate largest;
  std::optional<EdgeSet> counter_wave;  // set iff holds is false
  std::optional<EdgeSet> n_side_base;   // set iff holds is true
};

// Whether every wave W has a base of n.W that is independent in m|W. It
// suffices to test the largest wave: a base of its n side that is
// independent on the m side restricts to one on any smaller wave.
CondReport cond(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

// cond holds and the largest wave is trivial.
bool cond_plus(const Matroid& m, const Matroid& n, const SearchLimits& limits = {});

// For the contraction pair (m/e, n/e): its largest wave W together with the
// witness B, which is then a common base of (m/e)|W and (n/e).W. That B
// spans the n side too is a theorem under cond_plus(m, n); the precondition
// is only checked when the assertion fails, to tell input from logic errors.
std::pair<EdgeSet, EdgeSet> one_more_edge_base(const Matroid& m, const Matroid& n, EdgeId e,
                                               const SearchLimits& limits = {});

}  // namespace mint
