#include "sfh/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sfh {

namespace {

struct Clip {
  bool empty = false;
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  std::vector<int> lo_binding, hi_binding;
  std::vector<int> on_facets;  // included facets containing the whole line
};

// Clips the line p + tau * d against all halfspaces except the carriers.
Clip clip_line(const std::vector<HalfSpace>& hs, const std::set<int>& carriers,
               const RatVec& p, const IntVec& d) {
  Clip c;
  for (int h = 0; h < int(hs.size()); ++h) {
    if (carriers.count(h)) continue;
    Rat a = dot(hs[h].normal, RatVec(d.begin(), d.end()));
    Rat v = dot(hs[h].normal, p) - hs[h].offset;
    if (a == 0) {
      if (v < 0) { c.empty = true; return c; }
      if (v == 0) {
        if (hs[h].excluded) { c.empty = true; return c; }
        c.on_facets.push_back(h);
      }
      continue;
    }
    Rat bound = -v / a;
    if (a > 0) {
      if (!c.has_lo || bound > c.lo) {
        c.has_lo = true;
        c.lo = bound;
        c.lo_binding = {h};
      } else if (bound == c.lo) {
        c.lo_binding.push_back(h);
      }
    } else {
      if (!c.has_hi || bound < c.hi) {
        c.has_hi = true;
        c.hi = bound;
        c.hi_binding = {h};
      } else if (bound == c.hi) {
        c.hi_binding.push_back(h);
      }
    }
  }
  if (c.has_lo && c.has_hi && c.lo >= c.hi) c.empty = true;
  return c;
}

RatVec line_point(const RatVec& p, const IntVec& d, const Rat& tau) {
  RatVec q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = p[i] + Rat(d[i]) * tau;
  return q;
}

IntVec canonical_direction(IntVec d) {
  d = primitive(d);
  for (const Int& x : d) {
    if (x > 0) return d;
    if (x < 0) break;
  }
  for (Int& x : d) x = -x;
  return d;
}

}  // namespace

LabeledPolytope from_halfspaces(std::vector<HalfSpace> hs, int dim) {
  if (dim != 2 && dim != 3) throw Error("polytope dimension must be 2 or 3");
  for (auto& h : hs) {
    if (int(h.normal.size()) != dim) throw Error("halfspace normal has wrong dimension");
    bool zero = true;
    for (const Int& x : h.normal) zero = zero && x == 0;
    if (zero) throw Error("zero normal in halfspace");
    // Normals are kept as declared; check_delzant reports non-primitive
    // labels instead of silently rescaling them.
  }
  LabeledPolytope p;
  p.dim = dim;
  p.halfspaces = hs;
  const int n = int(hs.size());

  auto feasible_vertex = [&](const RatVec& x, std::vector<int>* on) {
    for (int h = 0; h < n; ++h) {
      Rat v = dot(hs[h].normal, x) - hs[h].offset;
      if (v < 0) return false;
      if (v == 0) {
        if (hs[h].excluded) return false;
        if (on) on->push_back(h);
      }
    }
    return true;
  };

  // Vertices: feasible intersections of dim facet planes.
  // Excluded facets only clip; they never carry faces of the polytope.
  std::vector<int> face_facets;
  for (int i = 0; i < n; ++i)
    if (!hs[i].excluded) face_facets.push_back(i);
  std::vector<std::vector<int>> combos;
  if (dim == 2) {
    for (int i : face_facets)
      for (int j : face_facets)
        if (i < j) combos.push_back({i, j});
  } else {
    for (int i : face_facets)
      for (int j : face_facets)
        for (int k : face_facets)
          if (i < j && j < k) combos.push_back({i, j, k});
  }
  std::map<RatVec, std::vector<int>> verts;
  for (const auto& c : combos) {
    std::vector<RatVec> m;
    RatVec rhs;
    for (int h : c) {
      RatVec row(dim);
      for (int j = 0; j < dim; ++j) row[j] = Rat(hs[h].normal[j]);
      m.push_back(row);
      rhs.push_back(hs[h].offset);
    }
    auto x = solve_square(m, rhs);
    if (!x) continue;
    std::vector<int> on;
    if (!feasible_vertex(*x, &on)) continue;
    verts.emplace(*x, on);
  }
  for (auto& [pt, on] : verts) p.vertices.push_back({pt, on});

  auto vertex_index = [&](const RatVec& x) {
    for (int i = 0; i < int(p.vertices.size()); ++i)
      if (p.vertices[i].point == x) return i;
    return -1;
  };

  // Edges: intersections of (dim-1) facet planes, clipped by the rest.
  struct EdgeKey {
    IntVec dir;
    std::vector<int> facets;
    bool operator<(const EdgeKey& o) const {
      return std::tie(facets, dir) < std::tie(o.facets, o.dir);
    }
  };
  std::set<EdgeKey> seen;
  std::vector<std::vector<int>> edge_combos;
  if (dim == 2) {
    for (int i : face_facets) edge_combos.push_back({i});
  } else {
    for (int i : face_facets)
      for (int j : face_facets)
        if (i < j) edge_combos.push_back({i, j});
  }
  for (const auto& c : edge_combos) {
    IntVec d;
    if (dim == 3) {
      d = cross3(hs[c[0]].normal, hs[c[1]].normal);
      bool zero = true;
      for (const Int& x : d) zero = zero && x == 0;
      if (zero) continue;
    } else {
      d = {hs[c[0]].normal[1], -hs[c[0]].normal[0]};
    }
    d = canonical_direction(d);
    // Anchor point: augment carrier planes with <d, x> = 0.
    std::vector<RatVec> m;
    RatVec rhs;
    for (int h : c) {
      RatVec row(dim);
      for (int j = 0; j < dim; ++j) row[j] = Rat(hs[h].normal[j]);
      m.push_back(row);
      rhs.push_back(hs[h].offset);
    }
    RatVec drow(dim);
    for (int j = 0; j < dim; ++j) drow[j] = Rat(d[j]);
    m.push_back(drow);
    rhs.push_back(Rat(0));
    auto base = solve_square(m, rhs);
    if (!base) continue;

    std::set<int> carriers(c.begin(), c.end());
    Clip cl = clip_line(hs, carriers, *base, d);
    if (cl.empty) continue;
    if (cl.has_lo && cl.has_hi && cl.lo == cl.hi) continue;  // single point

    PolytopeEdge e;
    e.facets.assign(c.begin(), c.end());
    e.facets.insert(e.facets.end(), cl.on_facets.begin(), cl.on_facets.end());
    std::sort(e.facets.begin(), e.facets.end());
    e.direction = d;
    EdgeKey key{d, e.facets};
    if (seen.count(key)) continue;
    seen.insert(key);

    if (cl.has_lo) {
      e.p0 = line_point(*base, d, cl.lo);
      bool open = false;
      for (int h : cl.lo_binding) open = open || hs[h].excluded;
      e.open0 = open;
      if (!open) {
        e.v0 = vertex_index(e.p0);
        if (e.v0 < 0) throw Error("edge endpoint is not a derived vertex");
      }
    } else {
      e.unbounded0 = true;
      e.open0 = true;
      p.warnings.push_back("edge unbounded with no excluded facet covering it");
    }
    if (cl.has_hi) {
      e.p1 = line_point(*base, d, cl.hi);
      bool open = false;
      for (int h : cl.hi_binding) open = open || hs[h].excluded;
      e.open1 = open;
      if (!open) {
        e.v1 = vertex_index(e.p1);
        if (e.v1 < 0) throw Error("edge endpoint is not a derived vertex");
      }
    } else {
      e.unbounded1 = true;
      e.open1 = true;
      p.warnings.push_back("edge unbounded with no excluded facet covering it");
    }
    if (!e.open0 && !e.open1) e.lattice_length = cl.hi - cl.lo;
    p.edges.push_back(std::move(e));
  }
  std::sort(p.edges.begin(), p.edges.end(),
            [](const PolytopeEdge& a, const PolytopeEdge& b) { return a.facets < b.facets; });

  if (p.vertices.empty() && p.edges.empty())
    throw Error("polytope has no faces (empty interior?)");
  return p;
}

DelzantReport check_delzant(const LabeledPolytope& p) {
  DelzantReport rep;
  for (int vi = 0; vi < int(p.vertices.size()); ++vi) {
    std::vector<IntVec> dirs;
    for (const auto& e : p.edges) {
      if (e.v0 == vi) {
        dirs.push_back(e.direction);
      } else if (e.v1 == vi) {
        IntVec d = e.direction;
        for (Int& x : d) x = -x;
        dirs.push_back(d);
      }
    }
    if (int(dirs.size()) != p.dim)
      throw Error("vertex " + std::to_string(vi) + " has " + std::to_string(dirs.size()) +
                  " edges; expected " + std::to_string(p.dim) + " (malformed polytope)");
    DelzantVertexCheck c;
    c.vertex = vi;
    if (p.dim == 3) {
      c.det = IntMatrix::from_rows({dirs[0], dirs[1], dirs[2]}).det();
    } else {
      c.det = dirs[0][0] * dirs[1][1] - dirs[0][1] * dirs[1][0];
    }
    // Dual criterion on the declared facet normals: catches non-primitive
    // labels, which the derived (always primitive) edge directions cannot.
    const auto& vf = p.vertices[vi].facets;
    if (int(vf.size()) != p.dim)
      throw Error("vertex " + std::to_string(vi) + " lies on " + std::to_string(vf.size()) +
                  " facets; expected " + std::to_string(p.dim));
    std::vector<IntVec> nrm;
    for (int f : vf) nrm.push_back(p.halfspaces[f].normal);
    if (p.dim == 3) {
      c.normal_det = IntMatrix::from_rows({nrm[0], nrm[1], nrm[2]}).det();
    } else {
      c.normal_det = nrm[0][0] * nrm[1][1] - nrm[0][1] * nrm[1][0];
    }
    c.ok = (c.det == 1 || c.det == -1) && (c.normal_det == 1 || c.normal_det == -1);
    rep.ok = rep.ok && c.ok;
    rep.per_vertex.push_back(c);
  }
  return rep;
}

LabeledPolytope apply_unimodular(const LabeledPolytope& p, const IntMatrix& a) {
  if (a.rows() != p.dim || a.cols() != p.dim) throw Error("transform has wrong size");
  if (!a.is_unimodular()) throw Error("transform is not unimodular");
  IntMatrix nmap = a.inverse_unimodular().transposed();
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces)
    hs.push_back({nmap.apply(h.normal), h.offset, h.excluded});
  return from_halfspaces(hs, p.dim);
}

std::optional<Rat> edge_lattice_length(const PolytopeEdge& e) { return e.lattice_length; }

namespace {

std::vector<HalfPlane> slice_halfplanes(const LabeledPolytope& p, const IntVec& xi,
                                        IntMatrix* frame_out,
                                        std::vector<std::pair<Rat, Rat>>* window) {
  if (p.dim != 3) throw Error("slice_polygon expects a 3d polytope");
  IntVec prim = primitive(xi);
  if (prim != xi) throw Error("slice direction must be primitive");
  IntMatrix frame = extend_primitive_to_basis(xi);
  IntVec w(3), a(3), b(3);
  for (int i = 0; i < 3; ++i) {
    w[i] = frame.at(i, 0);
    a[i] = frame.at(i, 1);
    b[i] = frame.at(i, 2);
  }
  std::vector<HalfPlane> hp;
  for (int h = 0; h < int(p.halfspaces.size()); ++h) {
    const auto& hsp = p.halfspaces[h];
    Int na = dot(hsp.normal, a), nb = dot(hsp.normal, b), nw = dot(hsp.normal, w);
    if (na == 0 && nb == 0) {
      // Constraint perpendicular to the slice: bounds the momentum window,
      // t * nw >= offset.
      window->push_back({Rat(nw), hsp.offset});
      continue;
    }
    HalfPlane hpl;
    hpl.normal = {na, nb};
    hpl.offset = Poly::affine(hsp.offset, Rat(0)) - Poly::t() * Rat(nw);
    hpl.source_facets = {h};
    hpl.excluded = hsp.excluded;
    hp.push_back(std::move(hpl));
  }
  *frame_out = frame;
  return hp;
}

void check_window(const std::vector<std::pair<Rat, Rat>>& window, const Rat& t) {
  for (const auto& [s, c] : window)
    if (t * s < c) throw Error("level t is outside the momentum image");
}

}  // namespace

DelzantPolygon slice_polygon(const LabeledPolytope& p, const IntVec& xi, const Rat& t) {
  IntMatrix frame;
  std::vector<std::pair<Rat, Rat>> window;
  auto hp = slice_halfplanes(p, xi, &frame, &window);
  check_window(window, t);
  DelzantPolygon poly = build_polygon(hp, t);
  poly.frame = frame;
  return poly;
}

DelzantPolygon slice_polygon_symbolic(const LabeledPolytope& p, const IntVec& xi,
                                      const Rat& t0, const Rat& t1) {
  IntMatrix frame;
  std::vector<std::pair<Rat, Rat>> window;
  auto hp = slice_halfplanes(p, xi, &frame, &window);
  check_window(window, t0);
  check_window(window, t1);
  DelzantPolygon poly = build_polygon_symbolic(hp, t0, t1);
  poly.frame = frame;
  return poly;
}

}  // namespace sfh
