#pragma once
// Delzant polygons: the reduced-space slices. Edges are ordered counter-
// clockwise with primitive inward normals; offsets may depend affinely on
// the momentum level t (symbolic polygons over a regular interval).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sfh/exact.hpp"
#include "sfh/symbolic.hpp"

namespace sfh {

struct PolygonEdge {
  IntVec normal;             // inward, primitive, dimension 2
  Poly offset;               // constraint <normal, x> >= offset(t)
  std::vector<int> source_facets;  // 3d facet indices, when sliced
  bool excluded = false;     // edge on an excluded facet (open reduced space)
};

// A corner supported by an extra facet that meets the polygon in a single
// point; slices through critical levels produce these.
struct CriticalCorner {
  std::array<Rat, 2> point;
  std::vector<int> source_facets;
};

struct DelzantPolygon {
  std::vector<PolygonEdge> edges;                 // ccw order
  std::vector<std::array<Poly, 2>> vertices;      // vertex i = edge i (cap) edge i+1
  std::vector<CriticalCorner> critical_corners;
  bool symbolic = false;
  Rat probe;              // the rational level the structure was derived at
  Rat t_lo, t_hi;         // valid interval when symbolic
  bool degenerate = false;  // slice is a segment or point (area 0)
  std::vector<std::array<Rat, 2>> degenerate_points;
  IntMatrix frame;        // slicing frame columns (w, a, b), when sliced
  std::vector<std::string> warnings;

  int size() const { return int(edges.size()); }
  bool compact() const;
  // Endpoints of edge i are vertices i-1 and i (cyclically).
  std::array<Poly, 2> vertex_before(int edge) const { return vertices[(edge + size() - 1) % size()]; }
  std::array<Poly, 2> vertex_after(int edge) const { return vertices[edge]; }
  Poly edge_length(int edge) const;   // lattice length
  Poly area() const;                  // shoelace
  Rat value_at_probe(const Poly& q) const { return q.eval(probe); }
  bool delzant_corners() const;       // consecutive normals form Z^2 bases
  std::array<Rat, 2> vertex_at(int i, const Rat& t) const;
};

// Raw constructor from 2d halfspaces; `probe` fixes the combinatorics.
// For symbolic polygons (interval given) the structure is validated at a
// second probe point.
struct HalfPlane {
  IntVec normal;
  Poly offset;
  std::vector<int> source_facets;
  bool excluded = false;
};
DelzantPolygon build_polygon(const std::vector<HalfPlane>& hp, const Rat& probe);
DelzantPolygon build_polygon_symbolic(const std::vector<HalfPlane>& hp, const Rat& t0,
                                      const Rat& t1);

// Convenience for tests/fixtures: compact polygon from ccw vertex list.
DelzantPolygon polygon_from_vertices(const std::vector<std::array<Rat, 2>>& pts);

}  // namespace sfh
