#pragma once
// Reduced spaces as Delzant polygons: blowdown normalization to a minimal
// model, divisor classes and self-intersections, Duistermaat-Heckman area
// profiles, Euler-class evaluations and volume continuity.

#include <optional>
#include <vector>

#include "sfh/circle.hpp"
#include "sfh/polygon.hpp"

namespace sfh {

// H2 of the toric surface in a terminal basis. Model CP2K: basis
// (L, E_1..E_k), intersection form diag(1,-1,...,-1). Model Hirzebruch:
// basis (s, F, E~_1..E~_k) with s^2 = -twist, F^2 = 0, s.F = 1; twist 0 is
// the S2xS2 model with B = s.
struct SurfaceLattice {
  enum class Model { CP2K, Hirzebruch };
  Model model = Model::CP2K;
  Int twist = 0;  // Hirzebruch only
  int blowups = 0;
  int rank = 0;
  IntMatrix gram;
  std::vector<IntVec> edge_class;             // class of each original edge
  IntVec canonical;
  std::vector<std::pair<int, int>> blowdowns;  // (edge index, E label)

  Int pair(const IntVec& x, const IntVec& y) const;
  Int self_intersection_of(const IntVec& x) const { return pair(x, x); }
};

// Contracts -1 edges (lexicographically first) until a triangle or a
// Hirzebruch quadrilateral remains; every original edge class is expressed
// in the terminal basis via the proper-transform rule.
SurfaceLattice polygon_normalize(const DelzantPolygon& q);

// Fan relation n_{i-1} + n_{i+1} = -a n_i for counterclockwise inward
// normals; a is the self-intersection of the edge divisor.
Int self_intersection(const DelzantPolygon& q, int edge);

// The reduced form [omega_t] as a functional on the lattice: entry i is the
// (affine in t) area of basis class i. Solved exactly from the edge areas.
PolyVec form_functional(const DelzantPolygon& q, const SurfaceLattice& lat);

struct AreaProfile {
  IntVec cls;
  Poly area;   // affine in t over the polygon's interval
  Int slope;   // e(P) evaluation on the class (DH integrality asserted)
};
AreaProfile area_profile(const DelzantPolygon& q, const SurfaceLattice& lat,
                         const IntVec& cls);
AreaProfile area_profile_edge(const DelzantPolygon& q, const SurfaceLattice& lat, int edge);

Int euler_class_eval(const DelzantPolygon& q, const SurfaceLattice& lat, const IntVec& cls);

// Polygon area as a function of the level across an interval that may
// contain critical values; one-sided limits are checked against the
// critical-slice area exactly.
struct VolumePiece {
  Rat lo, hi;
  Poly area;  // quadratic in t
};
struct VolumeProfile {
  std::vector<VolumePiece> pieces;
  std::vector<Rat> critical_levels;
  std::vector<Rat> critical_areas;
  bool continuous = true;
};
VolumeProfile reduced_volume_profile(const CircleRestriction& r, const Rat& lo, const Rat& hi);

// Basis change of Remark 6.5: CP2#k (k>=2) onto the (k-1)-blowup of S2xS2,
// sending (L-E1-E2, E3, ..., Ek) to (E~_1, ..., E~_{k-1}) with B = L-E1,
// F = L-E2. Returns the matrix pair (to, from), both unimodular isometries.
struct S2S2Change {
  IntMatrix to;    // coordinates: CP2#k -> blowup of S2xS2
  IntMatrix from;  // inverse
  SurfaceLattice target;
};
S2S2Change s2s2_basis_change(const SurfaceLattice& lat);

}  // namespace sfh
