#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mint/edge_set.hpp"

namespace mint {

namespace detail {
class MatroidImpl;
}

// Immutable independence oracle over a (possibly non-dense) ground set inside
// the universe [0, 64). Freshly built matroids have ground {0, ..., n-1};
// minors keep the surviving edges under their original labels, so sets coming
// out of quotient computations can be combined without relabeling.
//
// Copies are cheap and share the underlying oracle together with its memo
// cache. Deletion and restriction only narrow the handle's ground view;
// contraction and dualization wrap the oracle with a query rewriter.
// Oracles are safe to query from concurrent callers.
class Matroid {
 public:
  // Free matroid on an empty ground set.
  Matroid();

  // |S| <= r. rank_bound above the ground size is allowed and gives the free
  // matroid.
  static Matroid uniform(int n, int rank_bound);
  static Matroid free(int n);
  // Blocks must partition {0, ..., n-1}; independence caps |S ∩ block_i| by
  // caps[i].
  static Matroid partition(std::vector<EdgeSet> blocks, std::vector<int> caps);
  // Edge e is endpoints[e]; self-loops and parallel edges are allowed.
  // Independent = acyclic.
  static Matroid graphic(int vertex_count, std::vector<std::pair<int, int>> endpoints);
  // Column e of a 0/1 matrix with `rows` rows; bit j of columns[e] is the
  // entry in row j. Independent = linearly independent over GF(2).
  static Matroid linear_gf2(std::vector<std::uint64_t> columns, int rows);
  // Ground sets of the parts are relabeled consecutively.
  static Matroid direct_sum(std::vector<Matroid> parts);
  // Custom oracle, chiefly for tests. The function must be a matroid on
  // `ground`; nothing validates it here.
  static Matroid from_function(int universe, EdgeSet ground,
                               std::function<bool(EdgeSet)> independent,
                               std::string name);

  Matroid dual() const;
  Matroid deleted(EdgeSet drop) const;
  Matroid contracted(EdgeSet contract) const;
  Matroid restricted(EdgeSet keep) const;  // delete everything else
  Matroid onto(EdgeSet keep) const;        // contract everything else

  int universe() const;
  EdgeSet ground() const { return ground_; }

  bool is_independent(EdgeSet s) const;
  int rank(EdgeSet s) const;
  int rank() const;  // rank of the whole ground set
  EdgeSet span(EdgeSet s) const;
  bool spans(EdgeSet s, EdgeId e) const;
  EdgeSet loops() const;

  std::string describe() const;

 private:
  Matroid(std::shared_ptr<const detail::MatroidImpl> impl, EdgeSet ground);
  void require_in_ground(EdgeSet s) const;

  std::shared_ptr<const detail::MatroidImpl> impl_;
  EdgeSet ground_;
};

// A circuit: minimal dependent set. Produced by the operations below, which
// guarantee circuitness of the result.
struct Circuit {
  EdgeSet edges;
};

bool is_circuit(const Matroid& m, EdgeSet edges);

// The unique circuit inside `independent` + e. Requires e outside the set but
// inside its span.
Circuit fundamental_circuit(const Matroid& m, EdgeId e, EdgeSet independent);

// Strong circuit elimination: the first circuit (size-then-lex order) with
// keep ∈ C ⊆ (c1 ∪ c2) - remove, for keep ∈ c1\c2 and remove ∈ c1∩c2.
Circuit strong_circuit_eliminate(const Matroid& m, const Circuit& c1, const Circuit& c2,
                                 EdgeId keep, EdgeId remove);

// For an independent set i, a circuit c ⊆ span(i) and e ∈ i∩c, finds f ∈ c\i
// whose fundamental circuit contains e, by induction on |c\i| with strong
// circuit elimination. Candidates are scanned smallest-index first.
EdgeId circuit_simple_find(const Matroid& m, EdgeSet independent, const Circuit& c, EdgeId e);

}  // namespace mint
