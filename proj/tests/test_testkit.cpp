#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mint/testkit.hpp"

using namespace mint;
using namespace mint::testkit;

TEST_CASE("axiom check accepts real matroids") {
  for (const Fixture& f : fixture_catalog()) {
    CAPTURE(f.name);
    if (f.m.ground().size() <= 8) CHECK(check_axioms(f.m).ok);
    if (f.n.ground().size() <= 8) CHECK(check_axioms(f.n).ok);
  }
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    Matroid m = random_oracle(rng, 8, 3);
    AxiomCheck c = check_axioms(m);
    CAPTURE(m.describe());
    CAPTURE(c.detail);
    CHECK(c.ok);
  }
}

TEST_CASE("axiom check notices each kind of breakage") {
  Matroid u = Matroid::uniform(3, 2);

  Matroid no_empty = Matroid::from_function(
      3, EdgeSet::range(3), [](EdgeSet s) { return !s.empty() && s.size() <= 2; }, "no-empty");
  AxiomCheck c1 = check_axioms(no_empty);
  CHECK(!c1.ok);
  CHECK(c1.detail == "the empty set is dependent");

  Matroid hole = Matroid::from_function(
      3, EdgeSet::range(3), [](EdgeSet s) { return s.size() <= 2 && s != EdgeSet{1}; }, "hole");
  CHECK(!check_axioms(hole).ok);

  // Independence closed downward but sizes of maximal sets differ.
  Matroid lopsided = Matroid::from_function(
      3, EdgeSet::range(3),
      [](EdgeSet s) { return s.subset_of(EdgeSet{0, 1}) || s == EdgeSet{2}; }, "lopsided");
  AxiomCheck c3 = check_axioms(lopsided);
  CHECK(!c3.ok);
  CHECK(c3.detail.find("extends") != std::string::npos);

  CHECK(check_axioms(u).ok);
}

TEST_CASE("axiom check respects its bound") {
  CHECK_THROWS_AS(check_axioms(Matroid::free(9)), CapacityError);
  CHECK_NOTHROW(check_axioms(Matroid::free(9).deleted({0})));
  try {
    check_axioms(Matroid::free(9), 4);
  } catch (const CapacityError& e) {
    CHECK(e.bound == 4);
  }
}

TEST_CASE("brute max common independent set") {
  const auto& fx = fixture_catalog();
  auto find = [&](const std::string& name) -> const Fixture& {
    for (const Fixture& f : fx)
      if (f.name == name) return f;
    throw std::runtime_error("missing fixture " + name);
  };

  CHECK(brute_max_common(find("bip").m, find("bip").n) == EdgeSet{0, 2});
  CHECK(brute_max_common(find("u12_free2").m, find("u12_free2").n) == EdgeSet{0});
  CHECK(brute_max_common(find("u23_u23").m, find("u23_u23").n) == EdgeSet{0, 1});
  CHECK(brute_max_common(find("loop1_loop1").m, find("loop1_loop1").n).empty());
  CHECK(brute_max_common(find("loop1_free1").m, find("loop1_free1").n).empty());

  CHECK_THROWS_AS(brute_max_common(Matroid::free(10), Matroid::free(10)), CapacityError);
  CHECK_THROWS_AS(brute_max_common(Matroid::free(2), Matroid::free(3)), InputError);
}

TEST_CASE("brute wave union on frozen pairs") {
  const auto& fx = fixture_catalog();
  auto find = [&](const std::string& name) -> const Fixture& {
    for (const Fixture& f : fx)
      if (f.name == name) return f;
    throw std::runtime_error("missing fixture " + name);
  };

  CHECK(brute_wave_union(find("bip").m, find("bip").n) == EdgeSet{0, 1, 2});
  CHECK(brute_wave_union(find("u12_free2").m, find("u12_free2").n) == EdgeSet{0, 1});
  CHECK(brute_wave_union(find("free2_u12").m, find("free2_u12").n).empty());
  CHECK(brute_wave_union(find("loop1_loop1").m, find("loop1_loop1").n) == EdgeSet{0});
  CHECK(brute_wave_union(find("loop1_free1").m, find("loop1_free1").n) == EdgeSet{0});
  // A common base makes the whole ground set a wave.
  CHECK(brute_wave_union(find("free1_free1").m, find("free1_free1").n) == EdgeSet{0});
}

TEST_CASE("brute solvability witnesses") {
  CHECK(brute_exists_ind_span(Matroid::free(2), Matroid::uniform(2, 1)) == EdgeSet{0});
  CHECK(brute_exists_ind_span(Matroid::uniform(3, 2), Matroid::uniform(3, 2)) == EdgeSet{0, 1});
  CHECK(!brute_exists_ind_span(Matroid::uniform(2, 1), Matroid::free(2)).has_value());
  CHECK(brute_exists_ind_span(Matroid::uniform(1, 0), Matroid::uniform(1, 0)) == EdgeSet{});

  CHECK(brute_exists_common_base(Matroid::uniform(3, 2), Matroid::uniform(3, 2)) ==
        EdgeSet{0, 1});
  CHECK(!brute_exists_common_base(Matroid::free(2), Matroid::uniform(2, 1)).has_value());
  CHECK(brute_exists_common_base(Matroid::uniform(1, 0), Matroid::uniform(1, 0)) == EdgeSet{});
  Matroid bip_m = Matroid::partition({{0, 1}, {2}}, {1, 1});
  Matroid bip_n = Matroid::partition({{0}, {1, 2}}, {1, 1});
  CHECK(brute_exists_common_base(bip_m, bip_n) == EdgeSet{0, 2});
}

TEST_CASE("fixtures share grounds and pass axioms") {
  for (const Fixture& f : fixture_catalog()) {
    CAPTURE(f.name);
    CHECK(f.m.ground() == f.n.ground());
    CHECK(!f.m.ground().empty());
  }
}

TEST_CASE("random pairs share grounds") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    auto [m, n] = random_pair(rng, 9);
    CHECK(m.ground() == n.ground());
    CHECK(m.universe() <= 9);
  }
}

TEST_CASE("random oracles satisfy the axioms") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 120; ++trial) {
    Matroid m = random_oracle(rng, 7, 3);
    AxiomCheck c = check_axioms(m);
    CAPTURE(m.describe());
    CAPTURE(c.detail);
    CHECK(c.ok);
  }
}

TEST_CASE("mutations are detected") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    Matroid m = random_oracle(rng, 6, 2);
    Mutation bad = mutate_flip(m, rng);
    AxiomCheck c = check_axioms(bad.matroid);
    CAPTURE(m.describe());
    CAPTURE(bad.flipped.to_string());
    CHECK(!c.ok);
    CHECK(bad.matroid.is_independent(bad.flipped) == bad.now_independent);
    CHECK(m.is_independent(bad.flipped) != bad.now_independent);
  }
}
