#include "sfh/morse.hpp"

#include <algorithm>
#include <set>

namespace sfh {

namespace {

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    for (int y : b)
      if (x == y) return true;
  return false;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (!std::count(b.begin(), b.end(), x)) return false;
  return true;
}

// Exact solve of an overdetermined functional system: find f with
// <f, rows[i]> = vals[i] for all i; rows must span.
RatVec solve_functional(const std::vector<IntVec>& rows, const RatVec& vals, int rank) {
  const int m = int(rows.size());
  std::vector<RatVec> w(m, RatVec(rank));
  RatVec b = vals;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < rank; ++j) w[i][j] = Rat(rows[i][j]);
  std::vector<int> pivot_row(rank, -1);
  std::vector<bool> used(m, false);
  for (int col = 0; col < rank; ++col) {
    int pr = -1;
    for (int i = 0; i < m; ++i)
      if (!used[i] && w[i][col] != 0) { pr = i; break; }
    if (pr < 0) throw Error("functional system does not have full rank");
    pivot_row[col] = pr;
    used[pr] = true;
    for (int i = 0; i < m; ++i) {
      if (i == pr || w[i][col] == 0) continue;
      Rat f = w[i][col] / w[pr][col];
      for (int c = 0; c < rank; ++c) w[i][c] -= f * w[pr][c];
      b[i] -= f * b[pr];
    }
  }
  RatVec x(rank);
  for (int col = rank - 1; col >= 0; --col) {
    int pr = pivot_row[col];
    Rat v = b[pr];
    for (int c = 0; c < rank; ++c)
      if (c != col && w[pr][c] != 0) v -= x[c] * w[pr][c];
    x[col] = v / w[pr][col];
  }
  for (int i = 0; i < m; ++i) {
    Rat v(0);
    for (int j = 0; j < rank; ++j) v += Rat(rows[i][j]) * x[j];
    if (v != vals[i]) throw Error("functional system is inconsistent");
  }
  return x;
}

IntVec to_int(const RatVec& v, const char* what) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw Error(std::string(what) + " is not integral");
    r[i] = v[i].get_num();
  }
  return r;
}

// Slice-plane coordinates of a 3d point: frame^{-1} p = (t, u, v).
std::array<Rat, 2> frame_coords(const IntMatrix& frame, const RatVec& p, const Rat& t) {
  IntMatrix inv = frame.inverse_unimodular();
  RatVec c = inv.apply(p);
  if (c[0] != t) throw Error("point does not lie on the slice level");
  return {c[1], c[2]};
}

struct EdgeMatch {
  // at-edge index for each below/above edge; -1 when the edge vanishes
  std::vector<int> below_to_at, above_to_at;
};

int match_edge(const DelzantPolygon& at, const std::vector<int>& sources) {
  int found = -1;
  for (int j = 0; j < at.size(); ++j) {
    if (!intersects(at.edges[j].source_facets, sources)) continue;
    if (found >= 0) throw Error("ambiguous edge match across the wall");
    found = j;
  }
  return found;
}

}  // namespace

std::vector<IntVec> WallCrossing::d_classes() const {
  std::vector<IntVec> out;
  for (const auto& p : points)
    if (p.morse_index == 2) out.push_back(p.cls);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> WallCrossing::d_sph_classes() const {
  std::vector<IntVec> out;
  for (const auto& s : spheres) out.push_back(s.below_class);
  std::sort(out.begin(), out.end());
  return out;
}

WallCrossing cross_level(const CircleRestriction& r, const Rat& lambda) {
  auto criticals = critical_values(r);
  if (!std::count(criticals.begin(), criticals.end(), lambda))
    throw Error("level is not critical");
  auto window = momentum_window(r);
  Rat lo = window.lo, hi = window.hi;
  for (const Rat& c : criticals) {
    if (c < lambda) lo = std::max(lo, c);
    if (c > lambda) hi = std::min(hi, c);
  }
  if (!(lo < lambda && lambda < hi))
    throw Error("cross_level needs a non-extremal critical value");

  WallCrossing w;
  w.level = lambda;
  w.below = slice_polygon_symbolic(r.polytope, r.xi, lo, lambda);
  w.at = slice_polygon(r.polytope, r.xi, lambda);
  w.above = slice_polygon_symbolic(r.polytope, r.xi, lambda, hi);
  w.below_lat = polygon_normalize(w.below);
  w.above_lat = polygon_normalize(w.above);
  w.at_lat = polygon_normalize(w.at);

  auto components = fixed_components(r);

  // Match each one-sided edge to a critical edge through shared carrier
  // facets; edges without a partner must vanish at the wall.
  auto classify_side = [&](const DelzantPolygon& side, const SurfaceLattice& lat,
                           int morse_index_of_vanishing) {
    std::vector<int> to_at(side.size(), -1);
    for (int i = 0; i < side.size(); ++i) {
      int j = match_edge(w.at, side.edges[i].source_facets);
      if (j >= 0 && subset(side.edges[i].source_facets, w.at.edges[j].source_facets)) {
        to_at[i] = j;
        continue;
      }
      // vanishing edge: length must tend to zero at the wall
      Poly len = side.edge_length(i);
      if (!(len.eval(lambda) == 0))
        throw Error("unmatched edge of positive limit length at the wall");
      // the collapse point identifies an isolated fixed point at the level
      auto p0 = side.vertex_before(i);
      std::array<Rat, 2> collapse{p0[0].eval(lambda), p0[1].eval(lambda)};
      int comp = -1;
      for (int ci = 0; ci < int(components.size()); ++ci) {
        const auto& c = components[ci];
        if (c.kind != ComponentKind::IsolatedPoint || c.level != lambda) continue;
        auto uv = frame_coords(side.frame, r.polytope.vertices[c.carrier_vertex].point,
                               lambda);
        if (uv == collapse) { comp = ci; break; }
      }
      if (comp < 0) throw Error("vanishing edge does not collapse onto a fixed point");
      if (components[comp].index != morse_index_of_vanishing)
        throw Error("vanishing edge collapses onto a fixed point of the wrong index");
      PointCrossing pc;
      pc.component = comp;
      pc.morse_index = morse_index_of_vanishing;
      pc.edge = i;
      pc.cls = lat.edge_class[i];
      pc.area = len;
      w.points.push_back(pc);
    }
    return to_at;
  };
  auto below_match = classify_side(w.below, w.below_lat, 2);
  auto above_match = classify_side(w.above, w.above_lat, 1);

  // Index-1 points must exist exactly for the above-side collapses and
  // index-2 for the below side; verify the counts match the component list.
  int want1 = 0, want2 = 0, got1 = 0, got2 = 0;
  for (const auto& c : components)
    if (c.kind == ComponentKind::IsolatedPoint && c.level == lambda) {
      if (c.index == 1) ++want1;
      if (c.index == 2) ++want2;
    }
  for (const auto& p : w.points) {
    if (p.morse_index == 1) ++got1;
    if (p.morse_index == 2) ++got2;
  }
  if (want1 != got1 || want2 != got2)
    throw Error("wall collapse count disagrees with the fixed point list");

  // Fixed spheres at the level: persistent edges on their carrier facets.
  for (int ci = 0; ci < int(components.size()); ++ci) {
    const auto& c = components[ci];
    if (c.kind != ComponentKind::Sphere || c.level != lambda) continue;
    SphereCrossing sc;
    sc.component = ci;
    sc.at_edge = match_edge(w.at, c.carrier_facets);
    if (sc.at_edge < 0) throw Error("fixed sphere has no critical-slice edge");
    for (int i = 0; i < w.below.size(); ++i)
      if (below_match[i] == sc.at_edge) sc.below_edge = i;
    for (int i = 0; i < w.above.size(); ++i)
      if (above_match[i] == sc.at_edge) sc.above_edge = i;
    if (sc.below_edge < 0 || sc.above_edge < 0)
      throw Error("fixed sphere edge does not persist through the wall");
    sc.below_class = w.below_lat.edge_class[sc.below_edge];
    sc.above_class = w.above_lat.edge_class[sc.above_edge];
    sc.self_int_at = self_intersection(w.at, sc.at_edge);
    sc.c_minus = area_profile_edge(w.below, w.below_lat, sc.below_edge).slope;
    sc.c_plus = -area_profile_edge(w.above, w.above_lat, sc.above_edge).slope;
    // sphere sizes agree with the critical edge length
    if (c.size && !(w.at.edge_length(sc.at_edge).eval(lambda) == *c.size))
      throw Error("sphere size disagrees with the critical edge length");
    w.spheres.push_back(sc);
  }

  // Blowdown class maps: persistent edges go to their critical classes,
  // vanishing classes go to zero.
  auto build_map = [&](const DelzantPolygon& side, const SurfaceLattice& lat,
                       const std::vector<int>& to_at) {
    std::vector<IntVec> rows;
    std::vector<RatVec> targets(w.at_lat.rank);
    for (int i = 0; i < side.size(); ++i) {
      rows.push_back(lat.edge_class[i]);
      IntVec tgt(w.at_lat.rank, Int(0));
      if (to_at[i] >= 0) tgt = w.at_lat.edge_class[to_at[i]];
      for (int rho = 0; rho < w.at_lat.rank; ++rho) targets[rho].push_back(Rat(tgt[rho]));
    }
    IntMatrix m(w.at_lat.rank, lat.rank);
    for (int rho = 0; rho < w.at_lat.rank; ++rho) {
      IntVec row = to_int(solve_functional(rows, targets[rho], lat.rank), "blowdown map");
      for (int j = 0; j < lat.rank; ++j) m.at(rho, j) = row[j];
    }
    return m;
  };
  w.below_to_at = build_map(w.below, w.below_lat, below_match);
  w.above_to_at = build_map(w.above, w.above_lat, above_match);

  // Sections with image in the orthogonal complement of the killed classes.
  auto build_lift = [&](const SurfaceLattice& lat, const IntMatrix& proj,
                        const std::vector<IntVec>& killed) {
    const int rb = lat.rank, ra = w.at_lat.rank;
    if (rb != ra + int(killed.size()))
      throw Error("blowdown rank bookkeeping is inconsistent");
    IntMatrix lift(rb, ra);
    for (int col = 0; col < ra; ++col) {
      std::vector<RatVec> m;
      RatVec rhs;
      for (int i = 0; i < ra; ++i) {
        RatVec row(rb);
        for (int j = 0; j < rb; ++j) row[j] = Rat(proj.at(i, j));
        m.push_back(row);
        rhs.push_back(i == col ? Rat(1) : Rat(0));
      }
      for (const auto& d : killed) {
        RatVec row(rb);
        for (int j = 0; j < rb; ++j) {
          Rat s(0);
          for (int l = 0; l < rb; ++l) s += Rat(lat.gram.at(j, l)) * Rat(d[l]);
          row[j] = s;
        }
        m.push_back(row);
        rhs.push_back(Rat(0));
      }
      auto x = solve_square(m, rhs);
      if (!x) throw Error("blowdown lift is singular");
      IntVec xi = to_int(*x, "blowdown lift");
      for (int j = 0; j < rb; ++j) lift.at(j, col) = xi[j];
    }
    return lift;
  };
  std::vector<IntVec> killed_below, killed_above;
  for (const auto& p : w.points)
    (p.morse_index == 2 ? killed_below : killed_above).push_back(p.cls);
  w.lift_below = build_lift(w.below_lat, w.below_to_at, killed_below);
  w.lift_above = build_lift(w.above_lat, w.above_to_at, killed_above);

  // The lifted intersection form must agree with the critical one: the
  // blowdown is an isometry away from the killed sublattice.
  IntMatrix gb = w.lift_below.transposed() * w.below_lat.gram * w.lift_below;
  IntMatrix ga = w.lift_above.transposed() * w.above_lat.gram * w.lift_above;
  if (!(gb == w.at_lat.gram) || !(ga == w.at_lat.gram))
    throw Error("blowdown is not an isometry away from the killed classes");
  return w;
}

EulerPair euler_minus_plus(const WallCrossing& w) {
  PolyVec phi_b = form_functional(w.below, w.below_lat);
  PolyVec phi_a = form_functional(w.above, w.above_lat);
  EulerPair ep;
  ep.e_minus.assign(w.at_lat.rank, Int(0));
  ep.e_plus.assign(w.at_lat.rank, Int(0));
  for (int col = 0; col < w.at_lat.rank; ++col) {
    Rat sm(0), sp(0);
    for (int j = 0; j < w.below_lat.rank; ++j)
      sm += phi_b[j].slope() * Rat(w.lift_below.at(j, col));
    for (int j = 0; j < w.above_lat.rank; ++j)
      sp += phi_a[j].slope() * Rat(w.lift_above.at(j, col));
    if (sm.get_den() != 1 || sp.get_den() != 1)
      throw Error("Euler functional is not integral");
    ep.e_minus[col] = sm.get_num();
    ep.e_plus[col] = -sp.get_num();
  }
  ep.equal = ep.e_minus == ep.e_plus;
  return ep;
}

H2Class class_from_coords(const IntVec& v) {
  H2Class x{v.empty() ? Int(0) : v[0], IntVec(v.size() > 0 ? v.size() - 1 : 0)};
  for (size_t i = 1; i < v.size(); ++i) x.b[i - 1] = -v[i];
  return x;
}

IntVec coords_from_class(const H2Class& x) {
  IntVec v(x.k() + 1);
  v[0] = x.a;
  for (int i = 0; i < x.k(); ++i) v[i + 1] = -x.b[i];
  return v;
}

std::set<H2Class> eprime_set(const WallCrossing& w) {
  std::set<H2Class> dset;
  for (const auto& d : w.d_classes()) dset.insert(class_from_coords(d));

  std::set<H2Class> eprime;
  const auto& lat = w.below_lat;
  if (lat.model != SurfaceLattice::Model::CP2K) {
    bool no_exceptional =
        lat.blowups == 0 && (lat.model != SurfaceLattice::Model::Hirzebruch ||
                             lat.twist % 2 == 0);
    if (!no_exceptional)
      throw Error("E' computation unsupported on this lattice model");
  } else if (lat.blowups > 0) {
    // Reduced form as affine functions of t; probe inside the interval.
    PolyVec phi = form_functional(w.below, lat);
    Rat probe = w.below.probe;
    FormVector v;
    v.alpha = phi[0].eval(probe);
    for (int i = 1; i < lat.rank; ++i) v.delta.push_back(phi[i].eval(probe));
    Rat bound = w.level - probe;
    for (const auto& [cls, area] : enumerate_exceptional(v, bound)) {
      // affine area over the interval must be exactly (lambda - t)
      Poly a;
      IntVec coords = coords_from_class(cls);
      for (int j = 0; j < lat.rank; ++j) a = a + phi[j] * Rat(coords[j]);
      if (a == Poly::affine(w.level, Rat(-1))) eprime.insert(cls);
    }
  }

  if (eprime != dset) {
    std::string msg = "falsification: E' and D disagree at level " + rat_to_string(w.level);
    msg += " (|E'| = " + std::to_string(eprime.size()) +
           ", |D| = " + std::to_string(dset.size()) + ")";
    throw Error(msg);
  }
  return eprime;
}

}  // namespace sfh
