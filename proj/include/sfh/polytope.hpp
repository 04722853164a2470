#pragma once
// Exact H-representation polytopes in R^2 / R^3 with derived face lattice,
// Delzant verification, unimodular transforms and hyperplane slicing.

#include <optional>
#include <string>
#include <vector>

#include "sfh/exact.hpp"
#include "sfh/polygon.hpp"

namespace sfh {

// Constraint <normal, x> >= offset. An excluded facet is an open (removed)
// boundary piece: points on its plane do not belong to the polytope.
struct HalfSpace {
  IntVec normal;  // primitive, inward
  Rat offset;
  bool excluded = false;
};

struct PolytopeVertex {
  RatVec point;
  std::vector<int> facets;  // all facet planes through the point
};

struct PolytopeEdge {
  std::vector<int> facets;       // (dim-1) facets whose planes carry the edge
  IntVec direction;              // primitive, deterministic orientation
  RatVec p0, p1;                 // endpoints along `direction` (clip points)
  int v0 = -1, v1 = -1;          // vertex indices; -1 for open/unbounded ends
  bool open0 = false, open1 = false;
  bool unbounded0 = false, unbounded1 = false;
  std::optional<Rat> lattice_length;  // absent when any end is open

  bool compact() const { return v0 >= 0 && v1 >= 0; }
};

struct LabeledPolytope {
  int dim = 0;
  std::vector<HalfSpace> halfspaces;
  std::vector<PolytopeVertex> vertices;
  std::vector<PolytopeEdge> edges;
  std::vector<std::string> warnings;
};

LabeledPolytope from_halfspaces(std::vector<HalfSpace> hs, int dim);

struct DelzantVertexCheck {
  int vertex = -1;
  Int det;         // determinant of the edge directions at the vertex
  Int normal_det;  // determinant of the declared facet normals (dual basis)
  bool ok = false;
};
struct DelzantReport {
  std::vector<DelzantVertexCheck> per_vertex;
  bool ok = true;
};
DelzantReport check_delzant(const LabeledPolytope& p);

// Points transform by A, normals contragradiently by A^{-T}; face incidence
// and lattice lengths are preserved. A must be unimodular of size dim x dim.
LabeledPolytope apply_unimodular(const LabeledPolytope& p, const IntMatrix& a);

// Lattice length of an edge: euclidean length divided by the length of the
// primitive direction. Unbounded (nullopt) for open-ended edges.
std::optional<Rat> edge_lattice_length(const PolytopeEdge& e);

// Reduced-space slice P (cap) {<xi,x> = t}, projected to the recorded
// integral complement frame of xi. Rational t gives a concrete polygon;
// the symbolic variant takes a regular interval (t0, t1), offsets come out
// affine in t. xi must be primitive.
DelzantPolygon slice_polygon(const LabeledPolytope& p, const IntVec& xi, const Rat& t);
DelzantPolygon slice_polygon_symbolic(const LabeledPolytope& p, const IntVec& xi,
                                      const Rat& t0, const Rat& t1);

}  // namespace sfh
