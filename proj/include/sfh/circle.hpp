#pragma once
// Restriction of the ambient torus action to a circle subgroup: semi-free
// test, fixed components with weights and indices, critical values.

#include <optional>
#include <vector>

#include "sfh/polytope.hpp"

namespace sfh {

struct CircleRestriction {
  LabeledPolytope polytope;
  IntVec xi;  // primitive circle direction; momentum is <xi, .>
};

CircleRestriction make_restriction(LabeledPolytope p, IntVec xi);

enum class ComponentKind { IsolatedPoint, Sphere, FourManifold };

struct FixedComponent {
  ComponentKind kind = ComponentKind::IsolatedPoint;
  std::vector<int> carrier_facets;  // face identity (matching key)
  int carrier_vertex = -1;          // for isolated points
  int carrier_edge = -1;            // for spheres
  Rat level;
  std::vector<Int> weights;         // size 3, entries in {-1,0,1}, sorted
  int index = 0;                    // number of negative weights
  std::optional<Rat> size;          // sphere area
  bool extremal = false;
};

struct SemifreeReport {
  bool ok = true;
  std::vector<int> violating_edges;
};

SemifreeReport semifree_check(const CircleRestriction& r);

// Precondition: semifree_check passed. Weights at sphere components are read
// at both endpoint vertices and must agree.
std::vector<FixedComponent> fixed_components(const CircleRestriction& r);

std::vector<Rat> critical_values(const CircleRestriction& r);

// The represented momentum window (from facets perpendicular to xi and the
// attained extremes); half-open ends come from excluded facets.
struct MomentumWindow {
  Rat lo, hi;
  bool lo_attained = false, hi_attained = false;
};
MomentumWindow momentum_window(const CircleRestriction& r);

// xi transported through apply_unimodular(P, A): xi' = A^{-T} xi, so that
// levels of mapped points are preserved.
IntVec transform_circle(const IntVec& xi, const IntMatrix& a);

}  // namespace sfh
