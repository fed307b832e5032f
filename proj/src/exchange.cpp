#include "mint/exchange.hpp"

#include <algorithm>
#include <deque>

#include "mint/errors.hpp"
#include "mint/stats.hpp"

namespace mint {

namespace {

void require_common_ground(const Matroid& m, const Matroid& n) {
  if (m.ground() != n.ground()) {
    throw InputError("matroids live on different ground sets " + m.ground().to_string() +
                     " and " + n.ground().to_string());
  }
}

void require_common_independent(const Matroid& m, const Matroid& n, EdgeSet i) {
  if (!i.subset_of(m.ground())) {
    throw InputError("set " + i.to_string() + " leaves the ground set " +
                     m.ground().to_string());
  }
  if (!m.is_independent(i) || !n.is_independent(i)) {
    throw InputError("set " + i.to_string() + " is not a common independent set");
  }
}

}  // namespace

EdgeSet ExchangeDigraph::reachable(EdgeSet from) const {
  EdgeSet seen = from & ground;
  EdgeSet frontier = seen;
  while (!frontier.empty()) {
    EdgeSet next;
    for (EdgeId e : frontier) next |= out[e];
    frontier = next - seen;
    seen |= frontier;
  }
  return seen;
}

ExchangeDigraph build_exchange_digraph(const Matroid& m, const Matroid& n, EdgeSet i) {
  require_common_ground(m, n);
  require_common_independent(m, n, i);

  ExchangeDigraph d;
  d.ground = m.ground();
  d.independent = i;
  d.out.assign(kMaxUniverse, EdgeSet{});

  const EdgeSet span_m = m.span(i);
  const EdgeSet span_n = n.span(i);
  d.sources = d.ground - span_n;
  d.sinks = d.ground - span_m;

  for (EdgeId f : d.ground - i) {
    if (span_m.contains(f)) {
      const Circuit c = fundamental_circuit(m, f, i);
      for (EdgeId e : c.edges.without(f)) {
        d.out[f].add(e);
        d.witness.emplace(std::make_pair(f, e), c.edges);
      }
    }
    if (span_n.contains(f)) {
      const Circuit c = fundamental_circuit(n, f, i);
      for (EdgeId e : c.edges.without(f)) {
        d.out[e].add(f);
        d.witness.emplace(std::make_pair(e, f), c.edges);
      }
    }
  }
  return d;
}

std::optional<std::vector<EdgeId>> find_augmenting_path(const ExchangeDigraph& d) {
  return find_augmenting_path(d, d.sources.to_vector());
}

std::optional<std::vector<EdgeId>> find_augmenting_path(const ExchangeDigraph& d,
                                                        const std::vector<EdgeId>& source_order) {
  for (EdgeId s : source_order) {
    if (!d.sources.contains(s)) {
      throw InputError("source order entry " + std::to_string(s) +
                       " is not a source of the exchange digraph");
    }
    std::vector<EdgeId> parent(kMaxUniverse, -1);
    EdgeSet seen = EdgeSet::single(s);
    std::deque<EdgeId> queue{s};
    while (!queue.empty()) {
      const EdgeId v = queue.front();
      queue.pop_front();
      if (d.sinks.contains(v)) {
        std::vector<EdgeId> path;
        for (EdgeId w = v; w != -1; w = parent[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        return path;
      }
      for (EdgeId w : d.out[v] - seen) {
        seen.add(w);
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

Augmentation augment(const Matroid& m, const Matroid& n, EdgeSet i,
                     const std::vector<EdgeId>& path) {
  return augment(m, n, build_exchange_digraph(m, n, i), path);
}

Augmentation augment(const Matroid& m, const Matroid& n, const ExchangeDigraph& d,
                     const std::vector<EdgeId>& path) {
  require_common_ground(m, n);
  const EdgeSet i = d.independent;

  if (path.empty() || path.size() % 2 == 0) {
    throw InputError("augmenting path must have odd length, got " +
                     std::to_string(path.size()) + " vertices");
  }
  EdgeSet p;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const EdgeId x = path[k];
    if (!d.ground.contains(x)) {
      throw InputError("path entry " + std::to_string(x) + " leaves the ground set " +
                       d.ground.to_string());
    }
    if (p.contains(x)) {
      throw InputError("path repeats edge " + std::to_string(x));
    }
    p.add(x);
    const bool inside = i.contains(x);
    if (k % 2 == 0 ? inside : !inside) {
      throw InputError("path entry " + std::to_string(x) + " at position " +
                       std::to_string(k) + " breaks the alternation with " + i.to_string());
    }
  }
  if (!d.sources.contains(path.front())) {
    throw InputError("path start " + std::to_string(path.front()) + " is not a source");
  }
  if (!d.sinks.contains(path.back())) {
    throw InputError("path end " + std::to_string(path.back()) + " is not a sink");
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!d.has_arc(path[k], path[k + 1])) {
      throw InputError("missing arc " + std::to_string(path[k]) + " -> " +
                       std::to_string(path[k + 1]));
    }
    for (std::size_t l = k + 2; l < path.size(); ++l) {
      if (d.has_arc(path[k], path[l])) {
        throw InputError("jumping arc " + std::to_string(path[k]) + " -> " +
                         std::to_string(path[l]) + " violates path minimality");
      }
    }
  }

  Augmentation out;
  out.path = path;
  out.before = i;
  out.after = i ^ p;

  if (out.after.size() != i.size() + 1) {
    throw InternalError("augmentation did not grow the set: " + i.to_string() + " to " +
                        out.after.to_string());
  }
  if (!m.is_independent(out.after) || !n.is_independent(out.after)) {
    throw InternalError("augmented set " + out.after.to_string() +
                        " lost common independence");
  }

  out.span_m_after = m.span(out.after);
  out.span_n_after = n.span(out.after);
  if (out.span_n_after != n.span(i.with(path.front()))) {
    throw InternalError("n-span of " + out.after.to_string() + " differs from n-span of " +
                        i.with(path.front()).to_string());
  }
  if (out.span_m_after != m.span(i.with(path.back()))) {
    throw InternalError("m-span of " + out.after.to_string() + " differs from m-span of " +
                        i.with(path.back()).to_string());
  }
  stats::span_equalities_checked += 2;

  // Arcs whose tail closed neighbourhood misses the path must survive.
  const ExchangeDigraph after = build_exchange_digraph(m, n, out.after);
  for (EdgeId a : d.ground) {
    if (d.out[a].empty() || p.contains(a) || d.out[a].intersects(p)) continue;
    for (EdgeId b : d.out[a]) {
      ++stats::arc_preservation_arcs_checked;
      if (!after.has_arc(a, b)) {
        throw InternalError("arc " + std::to_string(a) + " -> " + std::to_string(b) +
                            " away from the path vanished after augmenting along " +
                            p.to_string());
      }
    }
  }
  ++stats::augmentations_checked;
  return out;
}

IntersectionCertificate edmonds_max_common(const Matroid& m, const Matroid& n,
                                           EdmondsTrace* trace) {
  require_common_ground(m, n);
  IntersectionCertificate cert;
  EdgeSet i;
  while (true) {
    const ExchangeDigraph d = build_exchange_digraph(m, n, i);
    const auto path = find_augmenting_path(d);
    if (!path) {
      cert.common_independent = i;
      cert.part_m = d.reachable(d.sources);
      cert.part_n = d.ground - cert.part_m;
      break;
    }
    Augmentation aug = augment(m, n, d, *path);
    i = aug.after;
    if (trace) trace->augmentations.push_back(std::move(aug));
  }
  const auto violations = certificate_violations(m, n, cert);
  if (!violations.empty()) {
    throw InternalError("intersection certificate failed its own check: " + violations.front());
  }
  return cert;
}

std::vector<std::string> certificate_violations(const Matroid& m, const Matroid& n,
                                                const IntersectionCertificate& cert) {
  require_common_ground(m, n);
  std::vector<std::string> bad;
  const EdgeSet ground = m.ground();
  const EdgeSet i = cert.common_independent;
  if ((cert.part_m | cert.part_n) != ground || cert.part_m.intersects(cert.part_n)) {
    bad.push_back("parts " + cert.part_m.to_string() + " and " + cert.part_n.to_string() +
                  " do not partition " + ground.to_string());
  }
  if (!i.subset_of(ground)) {
    bad.push_back("set " + i.to_string() + " leaves the ground set");
    return bad;
  }
  if (!m.is_independent(i)) bad.push_back("set " + i.to_string() + " is dependent in m");
  if (!n.is_independent(i)) bad.push_back("set " + i.to_string() + " is dependent in n");
  if (!bad.empty()) return bad;
  if (!cert.part_m.subset_of(m.span(i & cert.part_m))) {
    bad.push_back("m-part " + cert.part_m.to_string() + " is not spanned in m by " +
                  (i & cert.part_m).to_string());
  }
  if (!cert.part_n.subset_of(n.span(i & cert.part_n))) {
    bad.push_back("n-part " + cert.part_n.to_string() + " is not spanned in n by " +
                  (i & cert.part_n).to_string());
  }
  return bad;
}

}  // namespace mint
