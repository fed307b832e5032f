#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mint/matroid.hpp"

namespace mint {

// The auxiliary digraph D(I) for a common independent set I of two matroids
// m and n on the same ground set. Arcs:
//   f -> e  for f outside I spanned by I in m, e in the m-circuit of f over I;
//   e -> f  for f outside I spanned by I in n, e in the n-circuit of f over I.
// So arcs into I carry m-exchanges and arcs out of I carry n-exchanges; no arc
// joins two members of I or two non-members.
struct ExchangeDigraph {
  EdgeSet ground;
  EdgeSet independent;
  EdgeSet sources;  // ground minus span_n(independent)
  EdgeSet sinks;    // ground minus span_m(independent)
  std::vector<EdgeSet> out;  // indexed by EdgeId
  std::map<std::pair<EdgeId, EdgeId>, EdgeSet> witness;  // arc -> justifying circuit

  bool has_arc(EdgeId a, EdgeId b) const {
    return a >= 0 && a < static_cast<int>(out.size()) && out[a].contains(b);
  }
  // Everything reachable from `from` by a directed path, `from` included.
  EdgeSet reachable(EdgeSet from) const;
};

ExchangeDigraph build_exchange_digraph(const Matroid& m, const Matroid& n, EdgeSet i);

// Shortest augmenting path from the first source (in source order) that
// reaches a sink; BFS ties go to the smallest edge index. Default source
// order is ascending edge index. Returns nothing when no sink is reachable.
std::optional<std::vector<EdgeId>> find_augmenting_path(const ExchangeDigraph& d);
std::optional<std::vector<EdgeId>> find_augmenting_path(const ExchangeDigraph& d,
                                                        const std::vector<EdgeId>& source_order);

struct Augmentation {
  std::vector<EdgeId> path;
  EdgeSet before;
  EdgeSet after;  // before symmetric-difference path
  EdgeSet span_m_after;
  EdgeSet span_n_after;
};

// Validates the path (odd length, alternation, endpoint and arc conditions,
// no jumping arcs) against d, then applies it. The resulting set is checked
// on every call: common independence, both span identities
// span_n(I △ P) = span_n(I + x_0) and span_m(I △ P) = span_m(I + x_2n), and
// arc preservation (every arc whose tail and tail-out-neighbourhood avoid P
// survives into D(I △ P)). Violations of the former are input errors, of the
// latter internal errors.
Augmentation augment(const Matroid& m, const Matroid& n, const ExchangeDigraph& d,
                     const std::vector<EdgeId>& path);
Augmentation augment(const Matroid& m, const Matroid& n, EdgeSet i,
                     const std::vector<EdgeId>& path);

// A maximum common independent set together with the optimality bipartition:
// part_m is the set reachable in the final D(I) from the n-unspanned edges,
// I ∩ part_m spans part_m in m and I ∩ part_n spans part_n in n.
struct IntersectionCertificate {
  EdgeSet common_independent;
  EdgeSet part_m;
  EdgeSet part_n;
};

struct EdmondsTrace {
  std::vector<Augmentation> augmentations;
};

IntersectionCertificate edmonds_max_common(const Matroid& m, const Matroid& n,
                                           EdmondsTrace* trace = nullptr);

// Re-derives every certificate invariant from scratch; empty means valid.
std::vector<std::string> certificate_violations(const Matroid& m, const Matroid& n,
                                                const IntersectionCertificate& cert);

}  // namespace mint
