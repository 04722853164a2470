#pragma once
// Shared fixture builders for the test suites. These are the momentum
// polytopes of the worked examples: the product S2xS2xS2 box, the two
// chopped open polytopes with matching published face lists, and a tilted
// box whose circle restriction has interior isolated fixed points.

#include "sfh/circle.hpp"
#include "sfh/polytope.hpp"

namespace sfh::fixtures {

inline HalfSpace hs(IntVec n, Rat c, bool excluded = false) {
  return HalfSpace{std::move(n), std::move(c), excluded};
}

// Box [0, 1+eps] x [0, 1] x [0, 1].
inline LabeledPolytope cube(const Rat& eps) {
  std::vector<HalfSpace> v{
      hs({1, 0, 0}, 0),  hs({-1, 0, 0}, -(Rat(1) + eps)),
      hs({0, 1, 0}, 0),  hs({0, -1, 0}, -1),
      hs({0, 0, 1}, 0),  hs({0, 0, -1}, -1),
  };
  return from_halfspaces(v, 3);
}

// Box [0, 2]^3.
inline LabeledPolytope tilted_cube() {
  std::vector<HalfSpace> v{
      hs({1, 0, 0}, 0),  hs({-1, 0, 0}, -2),
      hs({0, 1, 0}, 0),  hs({0, -1, 0}, -2),
      hs({0, 0, 1}, 0),  hs({0, 0, -1}, -2),
  };
  return from_halfspaces(v, 3);
}

// Open polytope P^1: hull of the five lines chopped by {z <= 2}; vertices
// (0,0,2) and (2,0,2), open edges L1, L4, L5. Momentum window is the open
// interval (-eps, eps) in y, realized by two excluded facets.
inline LabeledPolytope p1(const Rat& eps) {
  std::vector<HalfSpace> v{
      hs({1, -1, 0}, 0),         // x >= y
      hs({0, 1, -1}, -2),        // z <= y + 2
      hs({-1, 0, 0}, -2),        // x <= 2
      hs({-1, 0, 1}, -1),        // z >= x - 1
      hs({0, 0, 1}, 0),          // z >= 0
      hs({0, 0, -1}, -2),        // z <= 2 (the chop)
      hs({0, 1, 0}, -eps, true),   // y > -eps (removed end)
      hs({0, -1, 0}, -eps, true),  // y < eps (removed end)
  };
  return from_halfspaces(v, 3);
}

// Open polytope P^2: same hull chopped by {x >= 2y}; vertices (0,0,0) and
// (0,0,2), open edges L3, L4, L5.
inline LabeledPolytope p2(const Rat& eps) {
  std::vector<HalfSpace> v{
      hs({1, -1, 0}, 0),   hs({0, 1, -1}, -2),
      hs({-1, 0, 0}, -2),  hs({-1, 0, 1}, -1),
      hs({0, 0, 1}, 0),    hs({1, -2, 0}, 0),  // the chop x >= 2y
      hs({0, 1, 0}, -eps, true), hs({0, -1, 0}, -eps, true),
  };
  return from_halfspaces(v, 3);
}

// Box [0,1+eps] x [0,1]: extremal fixed spheres under xi = (0,1,1) live on
// the cube; this 2d box is the Fig. 2 ambient rectangle.
inline LabeledPolytope rectangle2d(const Rat& a, const Rat& b) {
  std::vector<HalfSpace> v{
      hs({1, 0}, 0), hs({-1, 0}, -a), hs({0, 1}, 0), hs({0, -1}, -b),
  };
  return from_halfspaces(v, 2);
}

inline LabeledPolytope triangle2d() {
  std::vector<HalfSpace> v{hs({1, 0}, 0), hs({0, 1}, 0), hs({-1, -1}, -1)};
  return from_halfspaces(v, 2);
}

// The Fig. 2 trapezoid: rectangle [0,1+eps] x [0,1] between the excluded cut
// lines x + y = 1 and x + y = 1 + eps.
inline LabeledPolytope trapezoid2d(const Rat& eps) {
  std::vector<HalfSpace> v{
      hs({1, 0}, 0),
      hs({-1, 0}, -(Rat(1) + eps)),
      hs({0, 1}, 0),
      hs({0, -1}, -1),
      hs({1, 1}, 1, true),
      hs({-1, -1}, -(Rat(1) + eps), true),
  };
  return from_halfspaces(v, 2);
}

inline CircleRestriction cube_circle(const Rat& eps) {
  return make_restriction(cube(eps), {1, 1, 0});
}
inline CircleRestriction p1_circle(const Rat& eps) {
  return make_restriction(p1(eps), {0, 1, 0});
}
inline CircleRestriction p2_circle(const Rat& eps) {
  return make_restriction(p2(eps), {0, 1, 0});
}
inline CircleRestriction tilted_circle() {
  return make_restriction(tilted_cube(), {1, 1, -1});
}

}  // namespace sfh::fixtures
