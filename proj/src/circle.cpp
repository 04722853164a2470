#include "sfh/circle.hpp"

#include <algorithm>
#include <set>

namespace sfh {

CircleRestriction make_restriction(LabeledPolytope p, IntVec xi) {
  if (int(xi.size()) != p.dim) throw Error("circle direction has wrong dimension");
  if (primitive(xi) != xi) throw Error("circle direction must be primitive");
  return {std::move(p), std::move(xi)};
}

SemifreeReport semifree_check(const CircleRestriction& r) {
  SemifreeReport rep;
  for (int i = 0; i < int(r.polytope.edges.size()); ++i) {
    Int w = dot(r.xi, r.polytope.edges[i].direction);
    if (w < -1 || w > 1) {
      rep.ok = false;
      rep.violating_edges.push_back(i);
    }
  }
  return rep;
}

namespace {

Rat level_of_point(const IntVec& xi, const RatVec& p) { return dot(xi, p); }

std::vector<Int> sorted_weights(std::vector<Int> w) {
  std::sort(w.begin(), w.end());
  return w;
}

bool is_extremal(const std::vector<Int>& w) {
  bool pos = false, neg = false;
  for (const Int& x : w) {
    pos = pos || x > 0;
    neg = neg || x < 0;
  }
  return !(pos && neg);
}

int neg_count(const std::vector<Int>& w) {
  int c = 0;
  for (const Int& x : w) c += x < 0;
  return c;
}

// Edge directions at a vertex, oriented away from it.
std::vector<std::pair<int, IntVec>> edges_at_vertex(const LabeledPolytope& p, int vi) {
  std::vector<std::pair<int, IntVec>> out;
  for (int ei = 0; ei < int(p.edges.size()); ++ei) {
    const auto& e = p.edges[ei];
    if (e.v0 == vi) {
      out.push_back({ei, e.direction});
    } else if (e.v1 == vi) {
      IntVec d = e.direction;
      for (Int& x : d) x = -x;
      out.push_back({ei, d});
    }
  }
  return out;
}

}  // namespace

std::vector<FixedComponent> fixed_components(const CircleRestriction& r) {
  const auto& p = r.polytope;
  if (p.dim != 3) throw Error("fixed_components expects a 3d momentum polytope");
  if (!semifree_check(r).ok) throw Error("action is not semi-free");

  // Facets parallel to the level sets are fixed four-manifolds.
  std::set<int> fixed_facets;
  std::vector<FixedComponent> out;
  for (int f = 0; f < int(p.halfspaces.size()); ++f) {
    const auto& h = p.halfspaces[f];
    IntVec n = h.normal;
    bool par = n == r.xi;
    IntVec neg = n;
    for (Int& x : neg) x = -x;
    bool antipar = neg == r.xi;
    if (!par && !antipar) continue;
    if (h.excluded) continue;  // removed boundary: not a face of the image
    bool supports = false;
    for (const auto& e : p.edges)
      supports = supports || std::count(e.facets.begin(), e.facets.end(), f) > 0;
    if (!supports) continue;
    fixed_facets.insert(f);
    FixedComponent c;
    c.kind = ComponentKind::FourManifold;
    c.carrier_facets = {f};
    // xi = s*n with s = +1 (minimum side) or -1 (maximum side).
    Int s = par ? 1 : -1;
    c.level = Rat(s) * h.offset;
    c.weights = sorted_weights({Int(0), Int(0), s});
    c.index = neg_count(c.weights);
    c.extremal = true;
    out.push_back(std::move(c));
  }

  // Edges pairing to zero carry fixed spheres, unless inside a fixed facet.
  std::set<int> fixed_edges;
  for (int ei = 0; ei < int(p.edges.size()); ++ei) {
    const auto& e = p.edges[ei];
    if (dot(r.xi, e.direction) != 0) continue;
    fixed_edges.insert(ei);
    bool inside = false;
    for (int f : e.facets) inside = inside || fixed_facets.count(f) > 0;
    if (inside) continue;

    FixedComponent c;
    c.kind = ComponentKind::Sphere;
    c.carrier_facets = e.facets;
    c.carrier_edge = ei;
    c.level = level_of_point(r.xi, e.p0.empty() ? e.p1 : e.p0);
    c.size = e.lattice_length;

    std::optional<std::vector<Int>> weights;
    for (int vi : {e.v0, e.v1}) {
      if (vi < 0) continue;
      std::vector<Int> w{Int(0)};
      for (const auto& [oei, dir] : edges_at_vertex(p, vi)) {
        if (oei == ei) continue;
        w.push_back(dot(r.xi, dir));
      }
      if (w.size() != 3) throw Error("fixed sphere endpoint does not have 3 edges");
      auto sw = sorted_weights(w);
      if (weights && *weights != sw)
        throw Error("inconsistent weights at the two endpoints of a fixed sphere");
      weights = sw;
    }
    if (!weights) throw Error("fixed sphere has no vertex endpoint to read weights from");
    int zeros = 0;
    for (const Int& x : *weights) zeros += x == 0;
    if (zeros != 1) throw Error("fixed sphere weights must have exactly one zero");
    c.weights = *weights;
    c.index = neg_count(c.weights);
    c.extremal = is_extremal(c.weights);
    out.push_back(std::move(c));
  }

  // Remaining vertices are isolated fixed points.
  for (int vi = 0; vi < int(p.vertices.size()); ++vi) {
    auto at = edges_at_vertex(p, vi);
    bool on_fixed = false;
    for (const auto& [ei, dir] : at) on_fixed = on_fixed || fixed_edges.count(ei) > 0;
    if (on_fixed) continue;
    if (at.size() != 3) throw Error("vertex does not have 3 edges");
    FixedComponent c;
    c.kind = ComponentKind::IsolatedPoint;
    c.carrier_facets = p.vertices[vi].facets;
    c.carrier_vertex = vi;
    c.level = level_of_point(r.xi, p.vertices[vi].point);
    std::vector<Int> w;
    for (const auto& [ei, dir] : at) w.push_back(dot(r.xi, dir));
    c.weights = sorted_weights(w);
    for (const Int& x : c.weights)
      if (x == 0) throw Error("isolated fixed point with a zero weight");
    c.index = neg_count(c.weights);
    c.extremal = is_extremal(c.weights);
    out.push_back(std::move(c));
  }

  std::sort(out.begin(), out.end(), [](const FixedComponent& a, const FixedComponent& b) {
    return std::tie(a.level, a.kind, a.carrier_facets) <
           std::tie(b.level, b.kind, b.carrier_facets);
  });
  return out;
}

std::vector<Rat> critical_values(const CircleRestriction& r) {
  std::set<Rat> lv;
  for (const auto& c : fixed_components(r)) lv.insert(c.level);
  return {lv.begin(), lv.end()};
}

MomentumWindow momentum_window(const CircleRestriction& r) {
  const auto& p = r.polytope;
  MomentumWindow w;
  bool have = false;
  auto consider = [&](const Rat& v, bool attained) {
    if (!have) {
      w.lo = w.hi = v;
      w.lo_attained = w.hi_attained = attained;
      have = true;
      return;
    }
    if (v < w.lo) {
      w.lo = v;
      w.lo_attained = attained;
    } else if (v == w.lo) {
      w.lo_attained = w.lo_attained || attained;
    }
    if (v > w.hi) {
      w.hi = v;
      w.hi_attained = attained;
    } else if (v == w.hi) {
      w.hi_attained = w.hi_attained || attained;
    }
  };
  for (const auto& v : p.vertices) consider(dot(r.xi, v.point), true);
  for (const auto& e : p.edges) {
    if (e.unbounded0 || e.unbounded1) throw Error("momentum window unbounded");
    consider(dot(r.xi, e.p0), !e.open0);
    consider(dot(r.xi, e.p1), !e.open1);
  }
  if (!have) throw Error("momentum window empty");
  return w;
}

IntVec transform_circle(const IntVec& xi, const IntMatrix& a) {
  return a.inverse_unimodular().transposed().apply(xi);
}

}  // namespace sfh
