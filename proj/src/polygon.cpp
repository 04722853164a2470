#include "sfh/polygon.hpp"

#include <algorithm>
#include <map>

namespace sfh {

namespace {

// Exact counterclockwise angular order on nonzero integer 2-vectors,
// starting from direction (1,0).
int half_of(const IntVec& v) {
  if (v[1] > 0) return 0;
  if (v[1] == 0 && v[0] > 0) return 0;
  return 1;
}
Int cross2(const IntVec& a, const IntVec& b) { return a[0] * b[1] - a[1] * b[0]; }
bool angle_less(const IntVec& a, const IntVec& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

struct Candidate {
  std::array<Rat, 2> point;
  std::vector<int> on;  // halfplane indices whose line passes through
};

std::optional<std::array<Rat, 2>> line_intersection(const IntVec& n1, const Rat& c1,
                                                    const IntVec& n2, const Rat& c2) {
  Int det = cross2(n1, n2);
  if (det == 0) return std::nullopt;
  Rat d(det);
  Rat x = (Rat(n2[1]) * c1 - Rat(n1[1]) * c2) / d;
  Rat y = (Rat(n1[0]) * c2 - Rat(n2[0]) * c1) / d;
  return std::array<Rat, 2>{x, y};
}

}  // namespace

bool DelzantPolygon::compact() const {
  if (degenerate) return false;
  for (const auto& e : edges)
    if (e.excluded) return false;
  return !edges.empty();
}

std::array<Rat, 2> DelzantPolygon::vertex_at(int i, const Rat& t) const {
  return {vertices[i][0].eval(t), vertices[i][1].eval(t)};
}

Poly DelzantPolygon::edge_length(int i) const {
  const int m = size();
  const auto& nv = edges[i].normal;
  IntVec d{nv[1], -nv[0]};  // ccw traversal direction
  auto a = vertices[(i + m - 1) % m];
  auto b = vertices[i];
  Poly dx = b[0] - a[0], dy = b[1] - a[1];
  // (dx,dy) = s * d with s the lattice length
  if (!(dx * Rat(d[1]) == dy * Rat(d[0])))
    throw Error("polygon edge not parallel to its direction");
  if (d[0] != 0) return dx / Rat(d[0]);
  return dy / Rat(d[1]);
}

Poly DelzantPolygon::area() const {
  if (degenerate) return Poly(Rat(0));
  Poly s;
  const int m = size();
  for (int i = 0; i < m; ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % m];
    s = s + p[0] * q[1] - q[0] * p[1];
  }
  return s / Rat(2);
}

bool DelzantPolygon::delzant_corners() const {
  const int m = size();
  for (int i = 0; i < m; ++i)
    if (!is_unimodular_basis_2d(edges[i].normal, edges[(i + 1) % m].normal)) return false;
  return true;
}

DelzantPolygon build_polygon(const std::vector<HalfPlane>& hp_in, const Rat& probe) {
  // Normalize and deduplicate parallel same-direction constraints: only the
  // tightest binds; ties merge their source facets.
  struct Norm {
    IntVec n;
    Poly off;
    std::vector<int> sources;
    bool excluded;
  };
  std::vector<Norm> hs;
  for (const auto& h : hp_in) {
    if (h.normal.size() != 2) throw Error("build_polygon expects 2d normals");
    if (h.normal[0] == 0 && h.normal[1] == 0) throw Error("zero normal in polygon input");
    Int g = gcd(h.normal[0], h.normal[1]);
    Norm v{IntVec{h.normal[0] / g, h.normal[1] / g}, h.offset / Rat(g), h.source_facets,
           h.excluded};
    bool merged = false;
    for (auto& w : hs) {
      if (w.n != v.n) continue;
      Rat cv = v.off.eval(probe), cw = w.off.eval(probe);
      if (cv > cw) {
        w = v;
      } else if (cv == cw) {
        w.sources.insert(w.sources.end(), v.sources.begin(), v.sources.end());
        w.excluded = w.excluded && v.excluded;
      }
      merged = true;
      break;
    }
    if (!merged) hs.push_back(std::move(v));
  }
  for (auto& w : hs) {
    std::sort(w.sources.begin(), w.sources.end());
    w.sources.erase(std::unique(w.sources.begin(), w.sources.end()), w.sources.end());
  }

  const int n = int(hs.size());
  std::vector<Rat> cval(n);
  for (int i = 0; i < n; ++i) cval[i] = hs[i].off.eval(probe);

  auto feasible = [&](const std::array<Rat, 2>& p) {
    for (int h = 0; h < n; ++h) {
      Rat v = Rat(hs[h].n[0]) * p[0] + Rat(hs[h].n[1]) * p[1] - cval[h];
      if (v < 0) return false;
    }
    return true;
  };

  std::vector<Candidate> cands;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto p = line_intersection(hs[i].n, cval[i], hs[j].n, cval[j]);
      if (!p || !feasible(*p)) continue;
      bool found = false;
      for (auto& c : cands)
        if (c.point == *p) { found = true; break; }
      if (found) continue;
      Candidate c{*p, {}};
      for (int h = 0; h < n; ++h)
        if (Rat(hs[h].n[0]) * (*p)[0] + Rat(hs[h].n[1]) * (*p)[1] == cval[h])
          c.on.push_back(h);
      cands.push_back(std::move(c));
    }

  DelzantPolygon poly;
  poly.probe = probe;
  if (cands.empty()) throw Error("polygon slice is empty");

  // Degenerate slice: all feasible corner candidates collinear.
  bool full_dim = cands.size() >= 3;
  if (full_dim) {
    full_dim = false;
    const auto& a = cands[0].point;
    const auto& b = cands[1].point;
    for (size_t k = 2; k < cands.size(); ++k) {
      const auto& c = cands[k].point;
      Rat ar = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
      if (ar != 0) { full_dim = true; break; }
    }
  }
  if (!full_dim) {
    poly.degenerate = true;
    for (const auto& c : cands) poly.degenerate_points.push_back(c.point);
    std::sort(poly.degenerate_points.begin(), poly.degenerate_points.end());
    return poly;
  }

  // A halfplane supporting two or more corners carries an edge; a single
  // corner is a critical touch.
  std::vector<int> support(n, 0);
  for (const auto& c : cands)
    for (int h : c.on) support[h]++;
  std::vector<int> active;
  for (int h = 0; h < n; ++h)
    if (support[h] >= 2) active.push_back(h);
  if (active.size() < 3) throw Error("polygon slice is unbounded or malformed");
  std::sort(active.begin(), active.end(),
            [&](int a, int b) { return angle_less(hs[a].n, hs[b].n); });
  // Bounded iff every cyclic angular gap between consecutive inward normals
  // is strictly less than pi.
  for (size_t i = 0; i < active.size(); ++i) {
    const auto& a = hs[active[i]].n;
    const auto& b = hs[active[(i + 1) % active.size()]].n;
    if (cross2(a, b) <= 0) throw Error("polygon slice is unbounded");
  }

  for (int h : active) {
    PolygonEdge e;
    e.normal = hs[h].n;
    e.offset = hs[h].off;
    e.source_facets = hs[h].sources;
    e.excluded = hs[h].excluded;
    poly.edges.push_back(std::move(e));
  }
  const int m = int(active.size());
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    const auto& a = poly.edges[i];
    const auto& b = poly.edges[j];
    Int det = cross2(a.normal, b.normal);
    if (det == 0) throw Error("adjacent polygon edges are parallel");
    Rat d(det);
    Poly x = (a.offset * Rat(b.normal[1]) - b.offset * Rat(a.normal[1])) / d;
    Poly y = (b.offset * Rat(a.normal[0]) - a.offset * Rat(b.normal[0])) / d;
    poly.vertices.push_back({x, y});
  }
  // Sanity: derived vertices are exactly the feasible corners.
  for (int i = 0; i < m; ++i) {
    auto p = poly.vertex_at(i, probe);
    if (!feasible(p)) throw Error("polygon vertex failed feasibility check");
  }
  // Critical corners: single-support halfplanes touch at a vertex.
  std::map<std::array<Rat, 2>, std::vector<int>> corners;
  for (int h = 0; h < n; ++h) {
    if (support[h] != 1) continue;
    for (const auto& c : cands)
      for (int on : c.on)
        if (on == h) {
          auto& src = corners[c.point];
          src.insert(src.end(), hs[h].sources.begin(), hs[h].sources.end());
        }
  }
  for (auto& [pt, src] : corners) {
    std::sort(src.begin(), src.end());
    src.erase(std::unique(src.begin(), src.end()), src.end());
    poly.critical_corners.push_back({pt, src});
  }
  return poly;
}

namespace {
bool same_structure(const DelzantPolygon& a, const DelzantPolygon& b) {
  if (a.degenerate || b.degenerate) return a.degenerate == b.degenerate;
  if (a.size() != b.size()) return false;
  const int m = a.size();
  // Align cyclic rotation by the lexicographically smallest normal.
  auto rot_of = [](const DelzantPolygon& p) {
    int best = 0;
    for (int i = 1; i < p.size(); ++i)
      if (p.edges[i].normal < p.edges[best].normal) best = i;
    return best;
  };
  int ra = rot_of(a), rb = rot_of(b);
  for (int k = 0; k < m; ++k) {
    const auto& ea = a.edges[(ra + k) % m];
    const auto& eb = b.edges[(rb + k) % m];
    if (ea.normal != eb.normal || ea.source_facets != eb.source_facets) return false;
    if (!(ea.offset == eb.offset)) return false;
  }
  return true;
}
}  // namespace

DelzantPolygon build_polygon_symbolic(const std::vector<HalfPlane>& hp, const Rat& t0,
                                      const Rat& t1) {
  if (!(t0 < t1)) throw Error("symbolic polygon needs a nonempty interval");
  Rat mid = (t0 + t1) / 2;
  Rat alt = (t0 + mid) / 2;
  DelzantPolygon p = build_polygon(hp, mid);
  DelzantPolygon q = build_polygon(hp, alt);
  if (!same_structure(p, q))
    throw Error("slice combinatorics change inside the interval (not regular)");
  p.symbolic = true;
  p.t_lo = t0;
  p.t_hi = t1;
  return p;
}

DelzantPolygon polygon_from_vertices(const std::vector<std::array<Rat, 2>>& pts) {
  if (pts.size() < 3) throw Error("polygon_from_vertices needs 3+ points");
  std::vector<HalfPlane> hp;
  const int m = int(pts.size());
  for (int i = 0; i < m; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % m];
    Rat dx = q[0] - p[0], dy = q[1] - p[1];
    // inward normal for ccw orientation
    Rat nx = -dy, ny = dx;
    Int num_x = nx.get_num() * ny.get_den();
    Int num_y = ny.get_num() * nx.get_den();
    IntVec nrm = primitive({num_x, num_y});
    HalfPlane h;
    h.normal = nrm;
    h.offset = Poly(Rat(nrm[0]) * p[0] + Rat(nrm[1]) * p[1]);
    hp.push_back(std::move(h));
  }
  return build_polygon(hp, Rat(0));
}

}  // namespace sfh
