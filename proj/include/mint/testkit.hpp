#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mint/matroid.hpp"

// Exhaustive reference implementations and input generators. Everything here
// trades speed for being obviously right: the brute-force routines enumerate
// subsets straight off the definitions and are the ground truth the fast
// algorithms are tested against. They refuse ground sets above a small bound
// instead of silently taking minutes.

namespace mint::testkit {

struct AxiomCheck {
  bool ok = true;
  std::string detail;  // human-readable account of the first violation
};

// Verifies the independence axioms by enumeration: empty set independent,
// closure under subsets, the exchange property for |J| = |I| + 1, and weak
// circuit elimination. Throws CapacityError above `bound` elements.
AxiomCheck check_axioms(const Matroid& m, int bound = 8);

// Largest set independent in both matroids; smallest-index-first among the
// maximum ones. The matroids must share their ground set.
EdgeSet brute_max_common(const Matroid& m, const Matroid& n, int bound = 9);

// Union of every W whose restriction m|W has a base independent in the
// quotient n.W, found by enumerating the W and their candidate bases.
EdgeSet brute_wave_union(const Matroid& m, const Matroid& n, int bound = 9);

// Smallest set independent in m and spanning in n, if one exists.
std::optional<EdgeSet> brute_exists_ind_span(const Matroid& m, const Matroid& n, int bound = 9);

// A common base of m and n, if one exists.
std::optional<EdgeSet> brute_exists_common_base(const Matroid& m, const Matroid& n,
                                                int bound = 9);

struct Fixture {
  std::string name;
  Matroid m;
  Matroid n;
};

// Hand-picked matroid pairs on a shared ground set, covering every oracle
// kind, loops, duals, minors with gaps in the ground set, and both outcomes
// of the solvability conditions.
const std::vector<Fixture>& fixture_catalog();

// A random oracle: uniform, partition, graphic or binary-linear base, then
// up to `max_wraps` of dual / delete / contract on top.
Matroid random_oracle(std::mt19937_64& rng, int max_universe = 9, int max_wraps = 3);

// Two random oracles on the same ground set, related by synchronized minor
// operations so non-dense grounds get exercised too.
std::pair<Matroid, Matroid> random_pair(std::mt19937_64& rng, int max_universe = 9);

struct Mutation {
  Matroid matroid;
  EdgeSet flipped;        // the one subset whose independence was inverted
  bool now_independent;   // its status after the flip
};

// Flips the independence of one subset, chosen so the damage is visible to
// check_axioms (a dependent set below an independent one, or vice versa).
Mutation mutate_flip(const Matroid& m, std::mt19937_64& rng);

}  // namespace mint::testkit
