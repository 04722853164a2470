#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "sfh/circle.hpp"

using namespace sfh;
using namespace sfh::fixtures;

namespace {

IntMatrix random_unimodular3(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2), steps(3, 8);
  IntMatrix a = IntMatrix::identity(3);
  int n = steps(rng);
  for (int s = 0; s < n; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j)
      a.swap_rows(i, (i + 1) % 3);
    else
      a.add_row(i, j, coef(rng));
  }
  return a;
}

// Weight triples allowed for a semi-free action in dimension six.
bool in_catalogue(const FixedComponent& c) {
  const auto& w = c.weights;
  auto is = [&](int a, int b, int d) {
    return w == std::vector<Int>{Int(a), Int(b), Int(d)};
  };
  switch (c.kind) {
    case ComponentKind::IsolatedPoint:
      return is(1, 1, 1) || is(-1, -1, -1) || is(-1, 1, 1) || is(-1, -1, 1);
    case ComponentKind::Sphere:
      return is(0, 1, 1) || is(-1, -1, 0) || is(-1, 0, 1);
    case ComponentKind::FourManifold:
      return is(0, 0, 1) || is(-1, 0, 0);
  }
  return false;
}

std::multiset<int> index_multiset(const std::vector<FixedComponent>& cs) {
  std::multiset<int> m;
  for (const auto& c : cs) m.insert(c.index);
  return m;
}

}  // namespace

TEST_CASE("semifree checks") {
  CHECK(semifree_check(p1_circle(Rat(1, 2))).ok);
  CHECK(semifree_check(cube_circle(Rat(1, 10))).ok);
  CHECK(semifree_check(tilted_circle()).ok);

  auto bad = make_restriction(cube(Rat(1, 10)), {2, 1, 0});
  auto rep = semifree_check(bad);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.violating_edges.empty());
  for (int ei : rep.violating_edges) {
    IntVec d = bad.polytope.edges[ei].direction;
    CHECK((d == IntVec{1, 0, 0}));  // the e1-direction edges
  }
  CHECK(rep.violating_edges.size() == 4);
}

TEST_CASE("fixed components of the cube") {
  auto r = cube_circle(Rat(1, 10));
  auto cs = fixed_components(r);
  REQUIRE(cs.size() == 4);
  std::vector<Rat> levels;
  for (const auto& c : cs) {
    CHECK(c.kind == ComponentKind::Sphere);
    CHECK(*c.size == 1);
    levels.push_back(c.level);
  }
  CHECK(levels == std::vector<Rat>{Rat(0), Rat(1), Rat(11, 10), Rat(21, 10)});
  CHECK(cs[0].extremal);
  CHECK_FALSE(cs[1].extremal);
  CHECK(cs[1].index == 1);
  CHECK_FALSE(cs[2].extremal);
  CHECK(cs[2].index == 1);
  CHECK(cs[3].extremal);
  CHECK(cs[3].index == 2);

  CHECK(critical_values(r) ==
        std::vector<Rat>{Rat(0), Rat(1), Rat(11, 10), Rat(21, 10)});
}

TEST_CASE("fixed components of P1 and P2") {
  for (auto r : {p1_circle(Rat(1, 2)), p2_circle(Rat(1, 2))}) {
    auto cs = fixed_components(r);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].kind == ComponentKind::Sphere);
    CHECK(cs[0].level == 0);
    CHECK(cs[0].index == 1);
    CHECK(*cs[0].size == 2);
    CHECK_FALSE(cs[0].extremal);
    CHECK(critical_values(r) == std::vector<Rat>{Rat(0)});

    auto w = momentum_window(r);
    CHECK(w.lo == Rat(-1, 2));
    CHECK(w.hi == Rat(1, 2));
    CHECK_FALSE(w.lo_attained);
    CHECK_FALSE(w.hi_attained);
  }
}

TEST_CASE("fixed points of the tilted cube") {
  auto r = tilted_circle();
  auto cs = fixed_components(r);
  REQUIRE(cs.size() == 8);
  std::vector<Rat> levels;
  for (const auto& c : cs) {
    CHECK(c.kind == ComponentKind::IsolatedPoint);
    levels.push_back(c.level);
  }
  CHECK(levels == std::vector<Rat>{Rat(-2), Rat(0), Rat(0), Rat(0), Rat(2), Rat(2),
                                   Rat(2), Rat(4)});
  int idx2_at_2 = 0;
  for (const auto& c : cs)
    if (c.level == 2) {
      CHECK(c.index == 2);
      ++idx2_at_2;
    }
  CHECK(idx2_at_2 == 3);
  CHECK(critical_values(r) == std::vector<Rat>{Rat(-2), Rat(0), Rat(2), Rat(4)});
}

TEST_CASE("weights stay in the semi-free catalogue") {
  for (auto r : {cube_circle(Rat(1, 10)), p1_circle(Rat(1, 2)), p2_circle(Rat(1, 2)),
                 tilted_circle()}) {
    for (const auto& c : fixed_components(r)) {
      CHECK(in_catalogue(c));
      if (c.extremal) {
        bool pos = false, neg = false;
        for (const auto& w : c.weights) {
          pos = pos || w > 0;
          neg = neg || w < 0;
        }
        CHECK_FALSE((pos && neg));
      }
    }
  }
}

TEST_CASE("extremal four-manifold on a box facet") {
  auto r = make_restriction(cube(Rat(1, 10)), {0, 0, 1});
  auto cs = fixed_components(r);
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) {
    CHECK(c.kind == ComponentKind::FourManifold);
    CHECK(c.extremal);
  }
  CHECK(cs[0].level == 0);
  CHECK(cs[0].index == 0);
  CHECK(cs[1].level == 1);
  CHECK(cs[1].index == 1);
}

TEST_CASE("index data is invariant under unimodular transport") {
  std::mt19937 rng(20240813);
  for (int it = 0; it < 100; ++it) {
    IntMatrix a = random_unimodular3(rng);
    for (auto r : {cube_circle(Rat(1, 10)), tilted_circle()}) {
      auto moved = make_restriction(apply_unimodular(r.polytope, a),
                                    transform_circle(r.xi, a));
      CHECK(semifree_check(moved).ok);
      auto before = fixed_components(r);
      auto after = fixed_components(moved);
      REQUIRE(before.size() == after.size());
      CHECK(index_multiset(before) == index_multiset(after));
      CHECK(critical_values(r) == critical_values(moved));
      for (size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i].level == after[i].level);
        CHECK(before[i].weights == after[i].weights);
      }
    }
  }
}
