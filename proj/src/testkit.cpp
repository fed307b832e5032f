#include "mint/testkit.hpp"

#include <algorithm>
#include <unordered_map>

namespace mint::testkit {
namespace {

void require_same_ground(const Matroid& m, const Matroid& n) {
  if (m.ground() != n.ground())
    throw InputError("the two matroids use different ground sets: " + m.ground().to_string() +
                     " vs " + n.ground().to_string());
}

void require_small(EdgeSet ground, int bound, const std::string& who) {
  if (ground.size() > bound)
    throw CapacityError(who + " refuses " + std::to_string(ground.size()) +
                            " elements (bound " + std::to_string(bound) + ")",
                        bound);
}

}  // namespace

AxiomCheck check_axioms(const Matroid& m, int bound) {
  require_small(m.ground(), bound, "axiom check");
  const EdgeSet ground = m.ground();

  std::unordered_map<std::uint64_t, bool> indep;
  for_each_subset(ground, [&](EdgeSet s) {
    indep.emplace(s.bits(), m.is_independent(s));
    return true;
  });
  auto is_indep = [&](EdgeSet s) { return indep.at(s.bits()); };

  if (!is_indep(EdgeSet{})) return {false, "the empty set is dependent"};

  for (auto [bits, ind] : indep) {
    if (!ind) continue;
    EdgeSet s = EdgeSet::from_bits(bits);
    for (EdgeId e : s)
      if (!is_indep(s.without(e)))
        return {false, "independent " + s.to_string() + " has dependent subset " +
                           s.without(e).to_string()};
  }

  std::vector<std::vector<EdgeSet>> by_size(ground.size() + 1);
  for (auto [bits, ind] : indep)
    if (ind) by_size[EdgeSet::from_bits(bits).size()].push_back(EdgeSet::from_bits(bits));

  for (int k = 0; k + 1 <= ground.size(); ++k) {
    for (EdgeSet i : by_size[k]) {
      for (EdgeSet j : by_size[k + 1]) {
        bool extended = false;
        for (EdgeId e : j - i)
          if (is_indep(i.with(e))) {
            extended = true;
            break;
          }
        if (!extended)
          return {false, "no element of " + j.to_string() + " extends " + i.to_string()};
      }
    }
  }

  std::vector<EdgeSet> circuits;
  for (auto [bits, ind] : indep) {
    if (ind) continue;
    EdgeSet s = EdgeSet::from_bits(bits);
    bool minimal = true;
    for (EdgeId e : s)
      if (!is_indep(s.without(e))) {
        minimal = false;
        break;
      }
    if (minimal) circuits.push_back(s);
  }
  for (EdgeSet c1 : circuits)
    for (EdgeSet c2 : circuits) {
      if (c1 == c2) continue;
      for (EdgeId e : c1 & c2)
        if (is_indep((c1 | c2).without(e)))
          return {false, "circuits " + c1.to_string() + " and " + c2.to_string() +
                             " eliminate " + std::to_string(e) + " to an independent set"};
    }

  return {true, ""};
}

EdgeSet brute_max_common(const Matroid& m, const Matroid& n, int bound) {
  require_same_ground(m, n);
  require_small(m.ground(), bound, "max common independent set search");
  EdgeSet best;
  for (int k = std::min(m.rank(), n.rank()); k > 0; --k) {
    bool found = !for_each_subset_of_size(m.ground(), k, [&](EdgeSet s) {
      if (m.is_independent(s) && n.is_independent(s)) {
        best = s;
        return false;
      }
      return true;
    });
    if (found) break;
  }
  return best;
}

namespace {

// m|W has a base independent in n.W, checked by enumerating candidate bases.
bool brute_is_wave(const Matroid& m, const Matroid& n, EdgeSet w) {
  Matroid mr = m.restricted(w);
  Matroid nq = n.onto(w);
  int r = mr.rank();
  return !for_each_subset_of_size(w, r, [&](EdgeSet b) {
    return !(mr.is_independent(b) && nq.is_independent(b));
  });
}

}  // namespace

EdgeSet brute_wave_union(const Matroid& m, const Matroid& n, int bound) {
  require_same_ground(m, n);
  require_small(m.ground(), bound, "wave union search");
  EdgeSet out;
  for_each_subset(m.ground(), [&](EdgeSet w) {
    if (!w.subset_of(out) && brute_is_wave(m, n, w)) out |= w;
    return true;
  });
  return out;
}

std::optional<EdgeSet> brute_exists_ind_span(const Matroid& m, const Matroid& n, int bound) {
  require_same_ground(m, n);
  require_small(m.ground(), bound, "independent spanning set search");
  std::optional<EdgeSet> out;
  for (int k = n.rank(); k <= m.rank() && !out; ++k) {
    for_each_subset_of_size(m.ground(), k, [&](EdgeSet s) {
      if (m.is_independent(s) && n.span(s) == n.ground()) {
        out = s;
        return false;
      }
      return true;
    });
  }
  return out;
}

std::optional<EdgeSet> brute_exists_common_base(const Matroid& m, const Matroid& n, int bound) {
  require_same_ground(m, n);
  require_small(m.ground(), bound, "common base search");
  if (m.rank() != n.rank()) return std::nullopt;
  std::optional<EdgeSet> out;
  for_each_subset_of_size(m.ground(), m.rank(), [&](EdgeSet s) {
    if (m.is_independent(s) && n.is_independent(s)) {
      out = s;
      return false;
    }
    return true;
  });
  return out;
}

const std::vector<Fixture>& fixture_catalog() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> out;
    auto add = [&](std::string name, Matroid m, Matroid n) {
      out.push_back({std::move(name), std::move(m), std::move(n)});
    };

    add("bip", Matroid::partition({{0, 1}, {2}}, {1, 1}),
        Matroid::partition({{0}, {1, 2}}, {1, 1}));
    add("u12_free2", Matroid::uniform(2, 1), Matroid::free(2));
    add("free2_u12", Matroid::free(2), Matroid::uniform(2, 1));
    add("u23_u23", Matroid::uniform(3, 2), Matroid::uniform(3, 2));
    add("loop1_loop1", Matroid::uniform(1, 0), Matroid::uniform(1, 0));
    add("loop1_free1", Matroid::uniform(1, 0), Matroid::free(1));
    add("free1_free1", Matroid::free(1), Matroid::free(1));
    add("free2_free2", Matroid::free(2), Matroid::free(2));

    // The 3-cycle as a graph and as binary columns; equal matroids behind
    // different oracle machinery.
    add("triangle_graphic_gf2", Matroid::graphic(3, {{0, 1}, {1, 2}, {2, 0}}),
        Matroid::linear_gf2({0b011, 0b110, 0b101}, 3));

    add("square_u42", Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
        Matroid::uniform(4, 2));

    // Same minor operations applied to both sides, leaving holes in the
    // shared ground set.
    {
      Matroid m0 = Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
      Matroid n0 = Matroid::linear_gf2({1, 2, 4, 8, 3, 12}, 4);
      add("minor_chain", m0.contracted({1}).deleted({4}), n0.deleted({1}).contracted({4}));
    }

    add("sum_mix",
        Matroid::direct_sum(
            {Matroid::uniform(2, 1), Matroid::free(2), Matroid::uniform(3, 2)}),
        Matroid::partition({{0, 3}, {1, 2, 4}, {5, 6}}, {1, 2, 1}));

    add("two_triangles",
        Matroid::direct_sum({Matroid::uniform(3, 2), Matroid::uniform(3, 2)}),
        Matroid::direct_sum({Matroid::uniform(3, 2), Matroid::uniform(3, 2)}));

    add("ladder7_u73",
        Matroid::graphic(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}),
        Matroid::uniform(7, 3));

    add("partition_gf2", Matroid::partition({{0, 1, 2}, {3, 4}}, {2, 1}),
        Matroid::linear_gf2({1, 2, 3, 4, 6}, 3));

    add("dual_pair", Matroid::uniform(4, 2).dual(), Matroid::graphic(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}}));

    return out;
  }();
  return fixtures;
}

namespace {

Matroid random_base_oracle(std::mt19937_64& rng, int n) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: {
      int r = std::uniform_int_distribution<int>(0, n)(rng);
      return Matroid::uniform(n, r);
    }
    case 1: {
      int b = std::uniform_int_distribution<int>(1, n)(rng);
      std::vector<EdgeSet> blocks(b);
      for (int e = 0; e < n; ++e)
        blocks[std::uniform_int_distribution<int>(0, b - 1)(rng)].add(e);
      std::vector<int> caps;
      caps.reserve(blocks.size());
      for (const EdgeSet& blk : blocks)
        caps.push_back(std::uniform_int_distribution<int>(0, blk.size())(rng));
      return Matroid::partition(std::move(blocks), std::move(caps));
    }
    case 2: {
      int v = std::uniform_int_distribution<int>(1, n + 1)(rng);
      std::vector<std::pair<int, int>> endpoints;
      endpoints.reserve(n);
      std::uniform_int_distribution<int> vert(0, v - 1);
      for (int e = 0; e < n; ++e) endpoints.push_back({vert(rng), vert(rng)});
      return Matroid::graphic(v, std::move(endpoints));
    }
    default: {
      int rows = std::uniform_int_distribution<int>(1, n)(rng);
      std::vector<std::uint64_t> cols;
      cols.reserve(n);
      std::uniform_int_distribution<std::uint64_t> word(0, (rows == 64) ? ~0ull
                                                                        : (1ull << rows) - 1);
      for (int e = 0; e < n; ++e) cols.push_back(word(rng));
      return Matroid::linear_gf2(std::move(cols), rows);
    }
  }
}

EdgeSet random_subset(std::mt19937_64& rng, EdgeSet of, double keep_prob) {
  EdgeSet out;
  std::bernoulli_distribution coin(keep_prob);
  for (EdgeId e : of)
    if (coin(rng)) out.add(e);
  return out;
}

}  // namespace

Matroid random_oracle(std::mt19937_64& rng, int max_universe, int max_wraps) {
  int n = std::uniform_int_distribution<int>(1, max_universe)(rng);
  Matroid m = random_base_oracle(rng, n);
  int wraps = std::uniform_int_distribution<int>(0, max_wraps)(rng);
  for (int i = 0; i < wraps; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        m = m.dual();
        break;
      case 1: {
        EdgeSet r = random_subset(rng, m.ground(), 0.25);
        if (r == m.ground() && r.size() > 1) r.remove(r.first());
        m = m.deleted(r);
        break;
      }
      default: {
        EdgeSet r = random_subset(rng, m.ground(), 0.25);
        if (r == m.ground() && r.size() > 1) r.remove(r.first());
        m = m.contracted(r);
        break;
      }
    }
  }
  return m;
}

std::pair<Matroid, Matroid> random_pair(std::mt19937_64& rng, int max_universe) {
  int n = std::uniform_int_distribution<int>(1, max_universe)(rng);
  Matroid m = random_base_oracle(rng, n);
  Matroid n_side = random_base_oracle(rng, n);
  if (std::bernoulli_distribution(0.25)(rng)) m = m.dual();
  if (std::bernoulli_distribution(0.25)(rng)) n_side = n_side.dual();
  // Minor steps applied to both sides keep the ground sets identical while
  // still exercising contraction wrappers and sparse grounds.
  int steps = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < steps; ++i) {
    EdgeSet r = random_subset(rng, m.ground(), 0.2);
    if (r == m.ground() && r.size() > 1) r.remove(r.first());
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0:
        m = m.contracted(r), n_side = n_side.deleted(r);
        break;
      case 1:
        m = m.deleted(r), n_side = n_side.contracted(r);
        break;
      case 2:
        m = m.deleted(r), n_side = n_side.deleted(r);
        break;
      default:
        m = m.contracted(r), n_side = n_side.contracted(r);
        break;
    }
  }
  return {std::move(m), std::move(n_side)};
}

Mutation mutate_flip(const Matroid& m, std::mt19937_64& rng) {
  const EdgeSet ground = m.ground();
  std::vector<EdgeSet> eligible;
  for_each_subset(ground, [&](EdgeSet s) {
    if (m.is_independent(s)) {
      bool ok = s.empty();
      for (EdgeId e : ground - s)
        if (!ok && m.is_independent(s.with(e))) ok = true;
      if (ok) eligible.push_back(s);
    } else {
      for (EdgeId e : s)
        if (!m.is_independent(s.without(e))) {
          eligible.push_back(s);
          break;
        }
    }
    return true;
  });
  EdgeSet pick =
      eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
  bool was = m.is_independent(pick);
  Matroid broken = Matroid::from_function(
      m.universe(), ground,
      [m, pick, was](EdgeSet s) { return s == pick ? !was : m.is_independent(s); },
      "flipped(" + m.describe() + "," + pick.to_string() + ")");
  return Mutation{std::move(broken), pick, !was};
}

}  // namespace mint::testkit
