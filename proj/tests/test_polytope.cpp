#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "sfh/polytope.hpp"

using namespace sfh;
using namespace sfh::fixtures;

namespace {

RatVec pt3(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

bool has_vertex(const LabeledPolytope& p, const RatVec& v) {
  for (const auto& w : p.vertices)
    if (w.point == v) return true;
  return false;
}

// Random unimodular 3x3 as a short product of elementary matrices.
IntMatrix random_unimodular3(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2), steps(3, 8);
  IntMatrix a = IntMatrix::identity(3);
  int n = steps(rng);
  for (int s = 0; s < n; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) {
      a.swap_rows(i, (i + 1) % 3);
    } else {
      a.add_row(i, j, coef(rng));
    }
  }
  return a;
}

}  // namespace

TEST_CASE("cube face lattice") {
  auto p = cube(Rat(1, 10));
  CHECK(p.vertices.size() == 8);
  CHECK(p.edges.size() == 12);
  for (const auto& e : p.edges) CHECK(e.lattice_length.has_value());
  CHECK(check_delzant(p).ok);
}

TEST_CASE("triangle in the plane") {
  auto t = triangle2d();
  CHECK(t.vertices.size() == 3);
  CHECK(t.edges.size() == 3);
  CHECK(check_delzant(t).ok);
}

TEST_CASE("P1 reproduces the published face list") {
  auto p = p1(Rat(1, 2));
  REQUIRE(p.vertices.size() == 2);
  CHECK(has_vertex(p, pt3(0, 0, 2)));
  CHECK(has_vertex(p, pt3(2, 0, 2)));

  // One compact edge (the fixed sphere), four half-open edges at the two
  // vertices, three fully open edges L1, L4, L5.
  int compact = 0, half_open = 0, fully_open = 0;
  for (const auto& e : p.edges) {
    if (e.compact())
      ++compact;
    else if (e.v0 >= 0 || e.v1 >= 0)
      ++half_open;
    else
      ++fully_open;
  }
  CHECK(compact == 1);
  CHECK(half_open == 4);
  CHECK(fully_open == 3);

  std::multiset<IntVec> open_dirs;
  for (const auto& e : p.edges)
    if (e.v0 < 0 && e.v1 < 0) open_dirs.insert(e.direction);
  CHECK(open_dirs.count(IntVec{1, 1, 0}) == 1);  // L1
  CHECK(open_dirs.count(IntVec{0, 1, 0}) == 2);  // L4 and L5

  auto rep = check_delzant(p);
  CHECK(rep.ok);
  for (const auto& c : rep.per_vertex) CHECK((c.det == 1 || c.det == -1));
}

TEST_CASE("P2 reproduces the published face list") {
  auto p = p2(Rat(1, 2));
  REQUIRE(p.vertices.size() == 2);
  CHECK(has_vertex(p, pt3(0, 0, 0)));
  CHECK(has_vertex(p, pt3(0, 0, 2)));
  CHECK(check_delzant(p).ok);

  std::set<IntVec> at_origin, at_top;
  for (const auto& e : p.edges) {
    for (int side = 0; side < 2; ++side) {
      int v = side == 0 ? e.v0 : e.v1;
      if (v < 0) continue;
      IntVec d = e.direction;
      if (side == 1)
        for (auto& x : d) x = -x;
      if (p.vertices[v].point == pt3(0, 0, 0)) at_origin.insert(d);
      if (p.vertices[v].point == pt3(0, 0, 2)) at_top.insert(d);
    }
  }
  CHECK(at_origin == std::set<IntVec>{{0, 0, 1}, {-1, -1, 0}, {2, 1, 0}});
  CHECK(at_top == std::set<IntVec>{{0, 0, -1}, {-1, -1, -1}, {2, 1, 1}});

  std::multiset<IntVec> open_dirs;  // L3, L4, L5
  for (const auto& e : p.edges)
    if (e.v0 < 0 && e.v1 < 0) open_dirs.insert(e.direction);
  CHECK(open_dirs.count(IntVec{0, 1, 1}) == 1);
  CHECK(open_dirs.count(IntVec{0, 1, 0}) == 2);
}

TEST_CASE("a corner chop with a (1,2) normal fails the Delzant check") {
  std::vector<HalfSpace> w{
      hs({1, 0}, 0), hs({-1, 0}, -2), hs({0, 1}, 0), hs({0, -1}, -2),
      hs({-1, -2}, -5),
  };
  auto p = from_halfspaces(w, 2);
  auto rep = check_delzant(p);
  CHECK_FALSE(rep.ok);
  int bad = 0;
  for (const auto& c : rep.per_vertex) bad += !c.ok;
  CHECK(bad == 1);
}

TEST_CASE("a doubled facet normal fails the Delzant check at both its vertices") {
  std::vector<HalfSpace> w{
      hs({1, 0}, 0), hs({-1, 0}, -2), hs({0, 2}, 0), hs({0, -1}, -2),
  };
  auto p = from_halfspaces(w, 2);
  auto rep = check_delzant(p);
  CHECK_FALSE(rep.ok);
  int bad = 0;
  for (const auto& c : rep.per_vertex) {
    if (!c.ok) {
      CHECK((c.normal_det == 2 || c.normal_det == -2));
      ++bad;
    }
  }
  CHECK(bad == 2);
}

TEST_CASE("apply_unimodular basics") {
  auto p = cube(Rat(1, 10));
  auto q = apply_unimodular(p, IntMatrix::identity(3));
  CHECK(q.vertices.size() == p.vertices.size());
  for (const auto& v : p.vertices) CHECK(has_vertex(q, v.point));

  std::mt19937 rng(7);
  for (int it = 0; it < 20; ++it) {
    IntMatrix a = random_unimodular3(rng);
    auto pa = apply_unimodular(p, a);
    auto back = apply_unimodular(pa, a.inverse_unimodular());
    CHECK(back.vertices.size() == p.vertices.size());
    for (const auto& v : p.vertices) CHECK(has_vertex(back, v.point));
  }
}

TEST_CASE("the Fig. 2 twist maps the cut lines to vertical lines") {
  auto trap = trapezoid2d(Rat(1, 10));
  // The torus twist A = [[1,0],[1,1]] acts on the momentum image by its
  // transpose.
  IntMatrix at = IntMatrix::from_rows({{1, 1}, {0, 1}});
  auto img = apply_unimodular(trap, at);
  int vertical_excluded = 0;
  for (const auto& h : img.halfspaces) {
    if (!h.excluded) continue;
    CHECK(h.normal[1] == 0);  // cut normals (1,1),(-1,-1) become (1,0),(-1,0)
    ++vertical_excluded;
  }
  CHECK(vertical_excluded == 2);
  auto lengths = [](const LabeledPolytope& p) {
    std::multiset<Rat> ls;
    for (const auto& e : p.edges)
      if (e.lattice_length) ls.insert(*e.lattice_length);
    return ls;
  };
  CHECK(lengths(trap) == lengths(img));
}

TEST_CASE("delzant verdict is invariant under unimodular maps") {
  std::mt19937 rng(20240812);
  auto p = p1(Rat(1, 2));
  auto t = tilted_cube();
  for (int it = 0; it < 100; ++it) {
    IntMatrix a = random_unimodular3(rng);
    CHECK(check_delzant(apply_unimodular(p, a)).ok == check_delzant(p).ok);
    CHECK(check_delzant(apply_unimodular(t, a)).ok == check_delzant(t).ok);
  }
}

TEST_CASE("slice of the common region at t=-2/5 is the published pentagon") {
  auto p = p1(Rat(1, 2));
  auto q = slice_polygon(p, {0, 1, 0}, Rat(-2, 5));
  REQUIRE(q.size() == 5);
  CHECK(q.compact());
  Rat t(-2, 5);
  std::set<std::array<Rat, 2>> want{
      {t, Rat(0)}, {t, Rat(2) + t}, {Rat(2), Rat(2) + t}, {Rat(2), Rat(1)}, {Rat(1), Rat(0)}};
  std::set<std::array<Rat, 2>> got;
  for (int i = 0; i < q.size(); ++i) got.insert(q.vertex_at(i, t));
  CHECK(got == want);
  // Same slice through P2; the polytopes agree in the open half space y < 0.
  auto q2 = slice_polygon(p2(Rat(1, 2)), {0, 1, 0}, Rat(-2, 5));
  std::set<std::array<Rat, 2>> got2;
  for (int i = 0; i < q2.size(); ++i) got2.insert(q2.vertex_at(i, t));
  CHECK(got2 == want);
}

TEST_CASE("cube slices") {
  auto p = cube(Rat(1, 10));
  IntVec xi{1, 1, 0};

  // Regular slice between the interior critical values: a unit square.
  auto r = slice_polygon_symbolic(p, xi, Rat(1), Rat(11, 10));
  REQUIRE(r.size() == 4);
  auto area = r.area();
  CHECK(area.is_constant());
  CHECK(area.constant() == 1);

  // t = 1/2 gives a quadrilateral of area 1/2.
  auto q = slice_polygon(p, xi, Rat(1, 2));
  CHECK(q.size() == 4);
  CHECK(q.area().eval(Rat(1, 2)) == Rat(1, 2));

  CHECK_THROWS_AS(slice_polygon(p, xi, Rat(5)), Error);
  CHECK_THROWS_AS(slice_polygon(p, IntVec{2, 2, 0}, Rat(1)), Error);
}

TEST_CASE("symbolic slice evaluated pointwise matches the direct slice") {
  auto p = p1(Rat(1, 2));
  IntVec xi{0, 1, 0};
  auto sym = slice_polygon_symbolic(p, xi, Rat(-1, 10), Rat(0));
  for (Rat t : {Rat(-1, 20), Rat(-3, 40), Rat(-1, 12)}) {
    auto direct = slice_polygon(p, xi, t);
    REQUIRE(direct.size() == sym.size());
    std::set<std::array<Rat, 2>> a, b;
    for (int i = 0; i < sym.size(); ++i) {
      a.insert(sym.vertex_at(i, t));
      b.insert(direct.vertex_at(i, t));
    }
    CHECK(a == b);
    CHECK(sym.area().eval(t) == direct.area().eval(t));
  }
}

TEST_CASE("edge lattice lengths") {
  for (const auto& p : {p1(Rat(1, 2)), p2(Rat(1, 2))}) {
    bool found = false;
    for (const auto& e : p.edges)
      if (e.compact()) {
        found = true;
        CHECK(*edge_lattice_length(e) == 2);
      }
    CHECK(found);
  }

  // (0,0) -- (3,3) has primitive direction (1,1) and lattice length 3.
  std::vector<HalfSpace> w{hs({0, 1}, 0), hs({-1, 1}, 0), hs({-1, -1}, -6)};
  auto tri = from_halfspaces(w, 2);
  bool seen = false;
  for (const auto& e : tri.edges)
    if (e.direction == IntVec{1, 1}) {
      CHECK(*e.lattice_length == 3);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("face enumeration is involutive with the H-representation") {
  for (const auto& p : {cube(Rat(1, 10)), p1(Rat(1, 2)), p2(Rat(1, 2)), tilted_cube()}) {
    std::vector<int> support(p.halfspaces.size(), 0);
    for (const auto& v : p.vertices)
      for (int f : v.facets) support[f]++;
    for (const auto& e : p.edges)
      for (int f : e.facets) support[f]++;
    for (int f = 0; f < int(p.halfspaces.size()); ++f) {
      if (p.halfspaces[f].excluded) continue;  // window facets carry no face
      CHECK(support[f] > 0);
    }
    for (const auto& e : p.edges)
      for (int f : e.facets) {
        CHECK(dot(p.halfspaces[f].normal, e.direction) == 0);
        CHECK(dot(p.halfspaces[f].normal, e.p0) == p.halfspaces[f].offset);
      }
  }
}

TEST_CASE("empty polytope is rejected") {
  std::vector<HalfSpace> v{hs({1, 0}, 1), hs({-1, 0}, 1)};
  CHECK_THROWS_AS(from_halfspaces(v, 2), Error);
}
