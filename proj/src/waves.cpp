#include "mint/waves.hpp"

#include <string>

#include "mint/errors.hpp"
#include "mint/exchange.hpp"
#include "mint/stats.hpp"
#include "mint/testkit.hpp"

namespace mint {

namespace {

void require_common_ground(const Matroid& m, const Matroid& n) {
  if (m.ground() != n.ground()) {
    throw InputError("matroids live on different ground sets " + m.ground().to_string() +
                     " and " + n.ground().to_string());
  }
}

void require_within_bound(const Matroid& m, int bound) {
  if (m.ground().size() > bound) {
    throw CapacityError("wave search refuses " + std::to_string(m.ground().size()) +
                            " elements (bound " + std::to_string(bound) + ")",
                        bound);
  }
}

// First nonempty wave of the pair in size-then-lex order, if any.
std::optional<EdgeSet> first_nonempty_wave(const Matroid& m, const Matroid& n) {
  const EdgeSet ground = m.ground();
  for (int k = 1; k <= ground.size(); ++k) {
    std::optional<EdgeSet> hit;
    for_each_subset_of_size(ground, k, [&](EdgeSet s) {
      if (is_wave(m, n, s)) {
        hit = s;
        return false;
      }
      return true;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace

std::optional<WaveCertificate> is_wave(const Matroid& m, const Matroid& n, EdgeSet w) {
  require_common_ground(m, n);
  if (!w.subset_of(m.ground())) {
    throw InputError("set " + w.to_string() + " leaves the ground set " +
                     m.ground().to_string());
  }
  const Matroid on_m = m.restricted(w);
  const Matroid on_n = n.onto(w);
  const int target = on_m.rank();
  // Cheap refutation first: the witness is independent in both minors.
  if (on_n.rank() < target) return std::nullopt;
  const IntersectionCertificate cert = edmonds_max_common(on_m, on_n);
  if (cert.common_independent.size() != target) return std::nullopt;
  WaveCertificate out;
  out.wave_set = w;
  out.witness = cert.common_independent;
  out.trivial = w.subset_of(m.loops());
  return out;
}

WaveCertificate largest_wave(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  require_common_ground(m, n);
  require_within_bound(m, limits.wave_bound);

  EdgeSet w = m.loops();
  while (true) {
    const Matroid mq = m.contracted(w);
    const Matroid nq = n.deleted(w);
    const EdgeSet fresh_loops = mq.loops();
    if (!fresh_loops.empty()) {
      w |= fresh_loops;
      continue;
    }
    const auto next = first_nonempty_wave(mq, nq);
    if (!next) break;
    w |= *next;
  }

  if (limits.cross_validate && m.ground().size() <= limits.oracle_bound) {
    const EdgeSet oracle = testkit::brute_wave_union(m, n, limits.oracle_bound);
    if (oracle != w) {
      ++stats::wave_oracle_fallbacks;
      w = oracle;
    }
  }

  const auto cert = is_wave(m, n, w);
  if (!cert) {
    throw InternalError("accumulated wave " + w.to_string() + " fails the wave check");
  }
  return *cert;
}

CondReport cond(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  CondReport report;
  report.largest = largest_wave(m, n, limits);
  const EdgeSet w = report.largest.wave_set;
  const Matroid on_m = m.restricted(w);
  const Matroid on_n = n.onto(w);
  const IntersectionCertificate cert = edmonds_max_common(on_m, on_n);
  if (cert.common_independent.size() != on_m.rank()) {
    throw InternalError("largest wave " + w.to_string() + " lost its witness");
  }
  if (cert.common_independent.size() == on_n.rank()) {
    report.holds = true;
    report.n_side_base = cert.common_independent;
  } else {
    report.holds = false;
    report.counter_wave = w;
  }
  return report;
}

bool cond_plus(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  const CondReport report = cond(m, n, limits);
  return report.holds && report.largest.trivial;
}

std::pair<EdgeSet, EdgeSet> one_more_edge_base(const Matroid& m, const Matroid& n, EdgeId e,
                                               const SearchLimits& limits) {
  require_common_ground(m, n);
  if (!m.ground().contains(e)) {
    throw InputError("edge " + std::to_string(e) + " leaves the ground set " +
                     m.ground().to_string());
  }
  const Matroid me = m.contracted(EdgeSet::single(e));
  const Matroid ne = n.contracted(EdgeSet::single(e));
  const WaveCertificate wc = largest_wave(me, ne, limits);
  const int n_side_rank = ne.onto(wc.wave_set).rank();
  if (wc.witness.size() != n_side_rank) {
    if (!cond_plus(m, n, limits)) {
      throw InputError("one more edge needs cond+ of the base pair; its largest wave " +
                       largest_wave(m, n, limits).wave_set.to_string() + " breaks it");
    }
    throw InternalError("witness " + wc.witness.to_string() + " of wave " +
                        wc.wave_set.to_string() + " does not span the n side after contracting " +
                        std::to_string(e));
  }
  return {wc.wave_set, wc.witness};
}

}  // namespace mint
