#include "mint/solver.hpp"

#include <string>

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

EdgeSet path_set(const std::vector<EdgeId>& path) {
  EdgeSet p;
  for (EdgeId x : path) p.add(x);
  return p;
}

// Sources that cannot reach any sink, each with its reachable region. These
// are the edges whose surroundings the augmentation steps must not disturb.
std::map<EdgeId, EdgeSet> qualifying_reach(const ExchangeDigraph& d) {
  std::map<EdgeId, EdgeSet> out;
  for (EdgeId x : d.sources) {
    const EdgeSet reach = d.reachable(EdgeSet::single(x));
    if (reach.intersects(d.sinks)) continue;
    out.emplace(x, reach);
  }
  return out;
}

}  // namespace

FeasibleReport feasibility(const Matroid& m, const Matroid& n, EdgeSet i,
                           const SearchLimits& limits) {
  require_common_ground(m, n);
  if (!i.subset_of(m.ground())) {
    throw InputError("set " + i.to_string() + " leaves the ground set " +
                     m.ground().to_string());
  }
  FeasibleReport report;
  report.set = i;
  report.quotient_cond = cond(m.contracted(i), n.contracted(i), limits);
  const bool in_m = m.is_independent(i);
  const bool in_n = n.is_independent(i);
  if (!in_m || !in_n) {
    report.reason = "set " + i.to_string() + " is dependent in " + (in_m ? "n" : "m");
    return report;
  }
  report.feasible = report.quotient_cond.holds;
  report.nice = report.feasible && report.quotient_cond.largest.trivial;
  if (!report.feasible) {
    report.reason = "after contracting " + i.to_string() + ", wave " +
                    report.quotient_cond.counter_wave->to_string() +
                    " has no n-side base independent on the m side";
  }
  return report;
}

EdgeSet nice_extension(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  const CondReport gate = cond(m, n, limits);
  if (!gate.holds) {
    throw CondViolation("nice extension needs cond; wave " + gate.counter_wave->to_string() +
                            " has no n-side base independent on the m side",
                        *gate.counter_wave);
  }
  const EdgeSet w = gate.largest.wave_set;
  const Matroid on_m = m.restricted(w);
  const Matroid on_n = n.onto(w);
  const EdgeSet base = edmonds_max_common(on_m, on_n).common_independent;
  if (base.size() != on_m.rank() || base.size() != on_n.rank()) {
    throw InternalError("common-base existence assertion failed on wave " + w.to_string() +
                        ": best common independent set is " + base.to_string());
  }
  const FeasibleReport check = feasibility(m, n, base, limits);
  ++stats::nice_extension_checks;
  if (!check.nice) {
    throw InternalError("extension " + base.to_string() + " from wave " + w.to_string() +
                        " is not nice: " + check.reason);
  }
  return base;
}

EdgeSet aug_nice_extend(const Matroid& m, const Matroid& n, EdgeSet i,
                        const std::vector<EdgeId>& path, const SearchLimits& limits) {
  const FeasibleReport pre = feasibility(m, n, i, limits);
  if (!pre.nice) {
    throw InputError("aug nice extend needs a nice feasible set; " +
                     (pre.reason.empty()
                          ? "the wave " + pre.quotient_cond.largest.wave_set.to_string() +
                                " left after contracting " + i.to_string() + " is not trivial"
                          : pre.reason));
  }
  const Augmentation aug = augment(m, n, i, path);
  EdgeSet extension;
  try {
    extension = nice_extension(m.contracted(aug.after), n.contracted(aug.after), limits);
  } catch (const CondViolation& v) {
    throw InternalError(std::string("quotient pair lost cond after augmenting: ") + v.what());
  }
  const EdgeSet result = aug.after | extension;
  const FeasibleReport post = feasibility(m, n, result, limits);
  ++stats::aug_nice_checks;
  if (!post.nice) {
    throw InternalError("extended set " + result.to_string() + " is not nice: " + post.reason);
  }
  return result;
}

KeyLemmaResult key_lemma(const Matroid& m, const Matroid& n, EdgeId e,
                         const SearchLimits& limits) {
  require_common_ground(m, n);
  if (!m.ground().contains(e)) {
    throw InputError("edge " + std::to_string(e) + " leaves the ground set " +
                     m.ground().to_string());
  }
  const CondReport gate = cond(m, n, limits);
  if (!gate.holds) {
    throw CondViolation("key lemma needs cond; wave " + gate.counter_wave->to_string() +
                            " has no n-side base independent on the m side",
                        *gate.counter_wave);
  }

  KeyLemmaResult out;
  EdgeSet i = nice_extension(m, n, limits);
  int rounds = 0;
  while (!n.spans(i, e)) {
    if (++rounds > m.ground().size() + 1) {
      throw InternalError("key lemma still misses edge " + std::to_string(e) + " after " +
                          std::to_string(rounds) + " rounds");
    }
    const ExchangeDigraph d = build_exchange_digraph(m, n, i);
    TraceStep step;
    step.i_before = i;
    step.reach_sets = qualifying_reach(d);
    const auto path = find_augmenting_path(d);
    if (!path) {
      // Without a path the set is an n-base already, so it spans e too.
      if (n.span(i) != n.ground()) {
        throw InternalError("no augmenting path for " + i.to_string() +
                            " yet its n-span misses " + (n.ground() - n.span(i)).to_string());
      }
      step.i_after = i;
      step.span_n_after = n.ground();
      out.trace.steps.push_back(std::move(step));
      break;
    }
    const EdgeSet next = aug_nice_extend(m, n, i, *path, limits);
    step.path = *path;
    step.extension = next - (i ^ path_set(*path));
    step.i_after = next;
    step.span_n_after = n.span(next);
    out.trace.steps.push_back(std::move(step));
    i = next;
  }
  out.independent_set = i;
  return out;
}

SolveOutcome ind_span_solve(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  require_common_ground(m, n);
  const CondReport gate = cond(m, n, limits);
  SolveOutcome out;
  if (!gate.holds) {
    out.status = SolveStatus::violated;
    out.counter_wave = gate.counter_wave;
    out.violated_side = "mn";
    // The refusal must stand on its own: a genuine wave, no n-side base.
    if (!is_wave(m, n, *gate.counter_wave)) {
      throw InternalError("counterexample " + gate.counter_wave->to_string() + " is not a wave");
    }
    const Matroid on_m = m.restricted(*gate.counter_wave);
    const Matroid on_n = n.onto(*gate.counter_wave);
    if (edmonds_max_common(on_m, on_n).common_independent.size() == on_n.rank()) {
      throw InternalError("counterexample wave " + gate.counter_wave->to_string() +
                          " has an n-side base after all");
    }
    return out;
  }

  const EdgeSet w = gate.largest.wave_set;
  const Matroid mq = m.contracted(w);
  const Matroid nq = n.deleted(w);
  EdgeSet grown;
  for (EdgeId e : nq.ground()) {
    if (nq.spans(grown, e)) continue;
    KeyLemmaResult round;
    try {
      round = key_lemma(mq.contracted(grown), nq.contracted(grown), e, limits);
    } catch (const CondViolation& v) {
      throw InternalError(std::string("quotient pair lost cond while accumulating: ") + v.what());
    }
    grown |= round.independent_set;
  }

  const EdgeSet result = *gate.n_side_base | grown;
  if (!m.is_independent(result)) {
    throw InternalError("result " + result.to_string() + " is dependent in m");
  }
  if (!n.is_independent(result)) {
    throw InternalError("result " + result.to_string() + " is dependent in n");
  }
  if (n.span(result) != n.ground()) {
    throw InternalError("result " + result.to_string() + " misses " +
                        (n.ground() - n.span(result)).to_string() + " in n");
  }
  out.status = SolveStatus::found;
  out.payload = result;
  return out;
}

SolveOutcome intersect_solve(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  require_common_ground(m, n);
  const WaveCertificate wc = largest_wave(m, n, limits);
  const SolveOutcome sub =
      ind_span_solve(m.contracted(wc.wave_set), n.deleted(wc.wave_set), limits);
  if (sub.status != SolveStatus::found) {
    throw InternalError("quotient by the largest wave " + wc.wave_set.to_string() +
                        " still violates cond");
  }
  SolveOutcome out;
  out.status = SolveStatus::found;
  out.payload = wc.witness | sub.payload;

  IntersectionCertificate cert;
  cert.common_independent = out.payload;
  cert.part_m = wc.wave_set;
  cert.part_n = m.ground() - wc.wave_set;
  const auto bad = certificate_violations(m, n, cert);
  if (!bad.empty()) {
    throw InternalError("assembled certificate fails its own check: " + bad.front());
  }
  const IntersectionCertificate direct = edmonds_max_common(m, n);
  if (direct.common_independent.size() != out.payload.size()) {
    throw InternalError("construction reached size " + std::to_string(out.payload.size()) +
                        " but the augmenting search reached " +
                        std::to_string(direct.common_independent.size()));
  }
  out.certificate = cert;
  return out;
}

SolveOutcome common_base_solve(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  require_common_ground(m, n);
  SolveOutcome out;
  const CondReport mn = cond(m, n, limits);
  if (!mn.holds) {
    out.status = SolveStatus::violated;
    out.counter_wave = mn.counter_wave;
    out.violated_side = "mn";
    return out;
  }
  const CondReport nm = cond(n, m, limits);
  if (!nm.holds) {
    out.status = SolveStatus::violated;
    out.counter_wave = nm.counter_wave;
    out.violated_side = "nm";
    return out;
  }
  const IntersectionCertificate cert = edmonds_max_common(m, n);
  if (cert.common_independent.size() != m.rank() || cert.common_independent.size() != n.rank()) {
    throw InternalError("cond holds both ways yet the best common independent set " +
                        cert.common_independent.to_string() + " is not a common base");
  }
  out.status = SolveStatus::found;
  out.payload = cert.common_independent;
  out.certificate = cert;
  return out;
}

bool dual_transfer_check(const Matroid& m, const Matroid& n, const SearchLimits& limits) {
  const SolveOutcome primal = intersect_solve(m, n, limits);
  const SolveOutcome co = intersect_solve(m.dual(), n.dual(), limits);
  return certificate_violations(m, n, *primal.certificate).empty() &&
         certificate_violations(m.dual(), n.dual(), *co.certificate).empty();
}

std::vector<ClaimViolation> claim_instrumentation(const RunTrace& trace, const Matroid& m,
                                                  const Matroid& n) {
  std::vector<ClaimViolation> out;
  const auto flag = [&out](int step, std::string item, std::string detail) {
    out.push_back({step, std::move(item), std::move(detail)});
  };

  std::optional<EdgeSet> prev_span;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    const int step = static_cast<int>(k);

    if (k + 1 < trace.steps.size() && trace.steps[k + 1].i_before != s.i_after) {
      flag(step, "chain", "next step starts from " + trace.steps[k + 1].i_before.to_string() +
                              " instead of " + s.i_after.to_string());
    }
    if (s.path) {
      const EdgeSet p = path_set(*s.path);
      if (((s.i_before ^ p) | s.extension) != s.i_after ||
          s.extension.intersects(s.i_before ^ p)) {
        flag(step, "composition", "i_after " + s.i_after.to_string() +
                                      " is not the augmented set plus a fresh extension");
      }
    } else if (s.i_after != s.i_before || !s.extension.empty()) {
      flag(step, "composition", "terminal step still changed the set");
    }
    if (n.span(s.i_after) != s.span_n_after) {
      flag(step, "span-recorded", "recorded n-span " + s.span_n_after.to_string() +
                                      " differs from " + n.span(s.i_after).to_string());
    }
    if (!prev_span) prev_span = n.span(s.i_before);
    if (!prev_span->subset_of(s.span_n_after)) {
      flag(step, "span-monotone", "n-span shrank from " + prev_span->to_string() + " to " +
                                      s.span_n_after.to_string());
    } else if (s.path && s.span_n_after == *prev_span) {
      flag(step, "span-strict", "augmenting step left the n-span at " + prev_span->to_string());
    }
    prev_span = s.span_n_after;

    try {
      const ExchangeDigraph d = build_exchange_digraph(m, n, s.i_before);
      const auto regions = qualifying_reach(d);
      if (regions != s.reach_sets) {
        flag(step, "reach-recorded", "recorded reach sets differ from the digraph's");
      }
      if (!s.path) continue;
      const EdgeSet p = path_set(*s.path);
      const ExchangeDigraph next = build_exchange_digraph(m, n, s.i_after);
      for (const auto& [x, region] : regions) {
        const std::string where = "around edge " + std::to_string(x);
        if (p.intersects(region)) {
          flag(step, "path-avoids-reach", where + " the path touches " +
                                              (p & region).to_string());
        }
        if ((s.i_before & region) != (s.i_after & region)) {
          flag(step, "intersection-stable",
               where + " the independent set changed inside " + region.to_string());
        }
        for (EdgeId f : region - s.i_before) {
          if (!m.spans(s.i_before, f)) {
            flag(step, "circuit-stable",
                 where + " edge " + std::to_string(f) + " has no m-circuit before the step");
            continue;
          }
          const EdgeSet now = fundamental_circuit(m, f, s.i_before).edges;
          if (!now.subset_of(region)) {
            flag(step, "circuit-stable", where + " the m-circuit of " + std::to_string(f) +
                                             " leaves " + region.to_string());
          }
          if (!m.spans(s.i_after, f)) {
            flag(step, "circuit-stable",
                 where + " edge " + std::to_string(f) + " lost its m-circuit over the step");
            continue;
          }
          if (now != fundamental_circuit(m, f, s.i_after).edges) {
            flag(step, "circuit-stable",
                 where + " the m-circuit of " + std::to_string(f) + " changed over the step");
          }
        }
        for (EdgeId a : region) {
          for (EdgeId b : d.out[a] & region) {
            if (!next.has_arc(a, b)) {
              flag(step, "subdigraph", where + " arc " + std::to_string(a) + " -> " +
                                           std::to_string(b) + " vanished");
            }
          }
        }
        if (!region.subset_of(next.reachable(EdgeSet::single(x)))) {
          flag(step, "reach-grows", where + " the reachable region shrank");
        }
      }
    } catch (const std::exception& ex) {
      flag(step, "step-invalid", ex.what());
    }
  }
  return out;
}

}  // namespace mint
