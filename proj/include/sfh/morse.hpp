#pragma once
// Lattice-level Morse flow across a critical level: matching of slice
// polygon edges through the wall, the D / D_sph class sets, the blowdown
// class maps, and the transported Euler functionals e- / e+.

#include <optional>

#include "sfh/circle.hpp"
#include "sfh/exceptional.hpp"
#include "sfh/reduced.hpp"

namespace sfh {

struct SphereCrossing {
  int component = -1;  // index into the fixed_components list
  int below_edge = -1, at_edge = -1, above_edge = -1;
  IntVec below_class, above_class;
  Int self_int_at;   // self-intersection in the critical slice
  Int c_minus;       // DH slope of the sphere class below
  Int c_plus;        // minus the DH slope above (reversed momentum side)
};

struct PointCrossing {
  int component = -1;
  int morse_index = 0;  // 2: collapses from below; 1: collapses from above
  int edge = -1;        // the vanishing edge (below resp. above polygon)
  IntVec cls;           // its class in the below resp. above lattice
  Poly area;            // vanishing area profile
};

struct WallCrossing {
  Rat level;
  DelzantPolygon below, at, above;
  SurfaceLattice below_lat, at_lat, above_lat;
  std::vector<SphereCrossing> spheres;
  std::vector<PointCrossing> points;
  IntMatrix below_to_at, above_to_at;  // blowdown class maps
  IntMatrix lift_below, lift_above;    // sections with image D-perp

  std::vector<IntVec> d_classes() const;      // below classes, index-2 points
  std::vector<IntVec> d_sph_classes() const;  // below classes, fixed spheres
};

// lambda must be a non-extremal critical value of <xi,.>.
WallCrossing cross_level(const CircleRestriction& r, const Rat& lambda);

// e- and e+ as integer functionals on the critical-slice lattice basis
// (pushforwards of the one-sided Euler classes through the blowdowns; the
// above side is read against the reversed momentum map).
struct EulerPair {
  IntVec e_minus, e_plus;
  bool equal = false;
};
EulerPair euler_minus_plus(const WallCrossing& w);

// The exceptional classes whose reduced-form evaluation is exactly
// (lambda - t) below the wall. Proposition "D = E-prime" is checked, not
// assumed: a mismatch throws a falsification report.
std::set<H2Class> eprime_set(const WallCrossing& w);

H2Class class_from_coords(const IntVec& v);  // CP2K coordinates -> (a; b)
IntVec coords_from_class(const H2Class& x);

}  // namespace sfh
