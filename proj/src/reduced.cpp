#include "sfh/reduced.hpp"

#include <algorithm>

namespace sfh {

namespace {

Int cross2(const IntVec& a, const IntVec& b) { return a[0] * b[1] - a[1] * b[0]; }

// u_prev + u_next = -a * u_edge; throws when the sum is not a multiple.
Int fan_coefficient(const IntVec& prev, const IntVec& cur, const IntVec& next) {
  IntVec s{prev[0] + next[0], prev[1] + next[1]};
  if (s[0] == 0 && s[1] == 0) return 0;
  if (cross2(s, cur) != 0) throw Error("fan relation unsolvable (malformed polygon)");
  Int a;
  if (cur[0] != 0) {
    if (s[0] % cur[0] != 0) throw Error("fan relation unsolvable (malformed polygon)");
    a = -s[0] / cur[0];
  } else {
    if (s[1] % cur[1] != 0) throw Error("fan relation unsolvable (malformed polygon)");
    a = -s[1] / cur[1];
  }
  return a;
}

struct FanEdge {
  IntVec normal;
  int id;
};

std::vector<Int> fan_self_intersections(const std::vector<FanEdge>& fan) {
  const int m = int(fan.size());
  std::vector<Int> a(m);
  for (int i = 0; i < m; ++i) {
    const auto& prev = fan[(i + m - 1) % m].normal;
    const auto& next = fan[(i + 1) % m].normal;
    if (cross2(prev, fan[i].normal) != 1 || cross2(fan[i].normal, next) != 1)
      throw Error("non-Delzant corner in polygon normalization");
    a[i] = fan_coefficient(prev, fan[i].normal, next);
  }
  return a;
}

}  // namespace

Int SurfaceLattice::pair(const IntVec& x, const IntVec& y) const {
  if (int(x.size()) != rank || int(y.size()) != rank)
    throw Error("lattice pairing dimension mismatch");
  Int s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += x[i] * gram.at(i, j) * y[j];
  return s;
}

Int self_intersection(const DelzantPolygon& q, int edge) {
  const int m = q.size();
  const auto& prev = q.edges[(edge + m - 1) % m].normal;
  const auto& next = q.edges[(edge + 1) % m].normal;
  return fan_coefficient(prev, q.edges[edge].normal, next);
}

SurfaceLattice polygon_normalize(const DelzantPolygon& q) {
  if (q.degenerate) throw Error("cannot normalize a degenerate slice");
  if (!q.compact()) throw Error("cannot normalize a non-compact slice polygon");

  std::vector<FanEdge> fan;
  for (int i = 0; i < q.size(); ++i) fan.push_back({q.edges[i].normal, i});

  struct Step {
    int removed, left, right, label;
  };
  std::vector<Step> steps;

  for (;;) {
    const int m = int(fan.size());
    if (m < 3) throw Error("polygon lost too many edges during normalization");
    auto a = fan_self_intersections(fan);

    if (m == 3) {
      for (const auto& ai : a)
        if (ai != 1) throw Error("terminal triangle is not the projective plane");
      break;
    }
    int contract = -1;
    for (int i = 0; i < m; ++i)
      if (a[i] == -1) { contract = i; break; }
    if (contract < 0) {
      if (m == 4 && a[0] == -a[2] && a[1] == -a[3] && (a[0] == 0 || a[1] == 0)) break;
      throw Error(
          "no contractible edge on a non-terminal polygon (not a rational surface slice)");
    }
    int left = (contract + m - 1) % m, right = (contract + 1) % m;
    steps.push_back({fan[contract].id, fan[left].id, fan[right].id, int(steps.size())});
    fan.erase(fan.begin() + contract);
  }

  SurfaceLattice lat;
  lat.blowups = int(steps.size());
  const int k = lat.blowups;

  std::vector<IntVec> cls(q.size());
  if (fan.size() == 3) {
    lat.model = SurfaceLattice::Model::CP2K;
    lat.rank = 1 + k;
    for (const auto& fe : fan) {
      cls[fe.id] = IntVec(lat.rank, Int(0));
      cls[fe.id][0] = 1;  // the line class
    }
    lat.gram = IntMatrix(lat.rank, lat.rank);
    lat.gram.at(0, 0) = 1;
    for (int i = 1; i < lat.rank; ++i) lat.gram.at(i, i) = -1;
    lat.canonical = IntVec(lat.rank, Int(1));
    lat.canonical[0] = -3;
  } else {
    auto a = fan_self_intersections(fan);
    lat.model = SurfaceLattice::Model::Hirzebruch;
    lat.rank = 2 + k;
    int s_pos = -1;
    for (int i = 0; i < 4; ++i)
      if (a[i] < 0) s_pos = i;
    if (s_pos < 0) {
      // trivial bundle: all self-intersections vanish; pick deterministically
      s_pos = 0;
      for (int i = 1; i < 4; ++i)
        if (fan[i].id < fan[s_pos].id) s_pos = i;
    }
    lat.twist = -a[s_pos];
    for (int i = 0; i < 4; ++i) {
      cls[fan[i].id] = IntVec(lat.rank, Int(0));
      int off = (i - s_pos + 4) % 4;
      if (off == 0) {
        cls[fan[i].id][0] = 1;  // the section s
      } else if (off == 2) {
        cls[fan[i].id][0] = 1;  // opposite edge: s + twist * F
        cls[fan[i].id][1] = lat.twist;
      } else {
        cls[fan[i].id][1] = 1;  // fiber
      }
    }
    lat.gram = IntMatrix(lat.rank, lat.rank);
    lat.gram.at(0, 0) = -lat.twist;
    lat.gram.at(0, 1) = 1;
    lat.gram.at(1, 0) = 1;
    for (int i = 2; i < lat.rank; ++i) lat.gram.at(i, i) = -1;
    lat.canonical = IntVec(lat.rank, Int(1));
    lat.canonical[0] = -2;
    lat.canonical[1] = -(Int(2) + lat.twist);
  }

  // Undo the contractions: the removed edge is the exceptional class of its
  // step; both neighbors lose that class (proper-transform rule).
  const int label_base = lat.model == SurfaceLattice::Model::CP2K ? 1 : 2;
  for (int s = int(steps.size()) - 1; s >= 0; --s) {
    const auto& st = steps[s];
    IntVec e(lat.rank, Int(0));
    e[label_base + st.label] = 1;
    cls[st.removed] = e;
    for (int side : {st.left, st.right})
      for (int i = 0; i < lat.rank; ++i) cls[side][i] -= e[i];
  }
  for (const auto& st : steps) lat.blowdowns.push_back({st.removed, st.label});
  lat.edge_class = std::move(cls);
  return lat;
}

PolyVec form_functional(const DelzantPolygon& q, const SurfaceLattice& lat) {
  const int m = q.size();
  const int r = lat.rank;
  // Solve sum_j edge_class[i][j] * phi_j = length_i for phi, exactly; the
  // system is overdetermined and must be consistent (Duistermaat-Heckman).
  std::vector<RatVec> w;
  PolyVec b;
  for (int i = 0; i < m; ++i) {
    RatVec row(r);
    for (int j = 0; j < r; ++j) row[j] = Rat(lat.edge_class[i][j]);
    w.push_back(row);
    b.push_back(q.edge_length(i));
  }
  std::vector<int> pivot_row(r, -1);
  std::vector<bool> used(m, false);
  for (int col = 0; col < r; ++col) {
    int pr = -1;
    for (int i = 0; i < m; ++i)
      if (!used[i] && w[i][col] != 0) { pr = i; break; }
    if (pr < 0) throw Error("edge classes do not span the lattice");
    pivot_row[col] = pr;
    used[pr] = true;
    for (int i = 0; i < m; ++i) {
      if (i == pr || w[i][col] == 0) continue;
      Rat f = w[i][col] / w[pr][col];
      for (int c = 0; c < r; ++c) w[i][c] -= f * w[pr][c];
      b[i] = b[i] - b[pr] * f;
    }
  }
  PolyVec phi(r);
  for (int col = r - 1; col >= 0; --col) {
    int pr = pivot_row[col];
    Poly v = b[pr];
    for (int c = 0; c < r; ++c)
      if (c != col && w[pr][c] != 0) v = v - phi[c] * w[pr][c];
    phi[col] = v / w[pr][col];
  }
  for (int i = 0; i < m; ++i) {
    Poly v;
    for (int j = 0; j < r; ++j) v = v + phi[j] * Rat(lat.edge_class[i][j]);
    if (!(v == q.edge_length(i)))
      throw Error("edge areas are inconsistent with the lattice classes");
  }
  return phi;
}

AreaProfile area_profile(const DelzantPolygon& q, const SurfaceLattice& lat,
                         const IntVec& cls) {
  if (int(cls.size()) != lat.rank) throw Error("class has wrong rank");
  PolyVec phi = form_functional(q, lat);
  Poly area;
  for (int j = 0; j < lat.rank; ++j) area = area + phi[j] * Rat(cls[j]);
  if (!area.is_affine()) throw Error("area profile is not affine");
  Rat s = area.slope();
  if (s.get_den() != 1) throw Error("DH slope is not an integer");
  return {cls, area, s.get_num()};
}

AreaProfile area_profile_edge(const DelzantPolygon& q, const SurfaceLattice& lat, int edge) {
  auto p = area_profile(q, lat, lat.edge_class[edge]);
  if (!(p.area == q.edge_length(edge)))
    throw Error("edge area disagrees with its class pairing");
  return p;
}

Int euler_class_eval(const DelzantPolygon& q, const SurfaceLattice& lat, const IntVec& cls) {
  return area_profile(q, lat, cls).slope;
}

VolumeProfile reduced_volume_profile(const CircleRestriction& r, const Rat& lo,
                                     const Rat& hi) {
  if (!(lo < hi)) throw Error("volume profile needs a nonempty interval");
  auto window = momentum_window(r);
  Rat a = std::max(lo, window.lo), b = std::min(hi, window.hi);
  if (!(a < b)) throw Error("interval misses the momentum image");
  VolumeProfile vp;
  std::vector<Rat> breaks{a};
  for (const Rat& c : critical_values(r))
    if (a < c && c < b) breaks.push_back(c);
  breaks.push_back(b);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto poly = slice_polygon_symbolic(r.polytope, r.xi, breaks[i], breaks[i + 1]);
    vp.pieces.push_back({breaks[i], breaks[i + 1], poly.area()});
  }
  auto critical_area = [&](const Rat& c) {
    auto crit = slice_polygon(r.polytope, r.xi, c);
    return crit.degenerate ? Rat(0) : crit.area().eval(c);
  };
  for (size_t i = 1; i + 1 < breaks.size(); ++i) {
    const Rat& c = breaks[i];
    Rat ca = critical_area(c);
    vp.critical_levels.push_back(c);
    vp.critical_areas.push_back(ca);
    if (vp.pieces[i - 1].area.eval(c) != ca) vp.continuous = false;
    if (vp.pieces[i].area.eval(c) != ca) vp.continuous = false;
  }
  // Extremal critical levels sit at the window ends: one-sided limits only.
  for (const Rat& c : critical_values(r)) {
    if (!((c == a && momentum_window(r).lo_attained) ||
          (c == b && momentum_window(r).hi_attained)))
      continue;
    Rat ca = critical_area(c);
    vp.critical_levels.push_back(c);
    vp.critical_areas.push_back(ca);
    if (c == a && vp.pieces.front().area.eval(c) != ca) vp.continuous = false;
    if (c == b && vp.pieces.back().area.eval(c) != ca) vp.continuous = false;
  }
  return vp;
}

S2S2Change s2s2_basis_change(const SurfaceLattice& lat) {
  if (lat.model != SurfaceLattice::Model::CP2K || lat.blowups < 2)
    throw Error("basis change needs a CP2#k lattice with k >= 2");
  const int k = lat.blowups;
  const int r = lat.rank;  // = k + 1
  // Columns: target basis (B, F, E~_1..E~_{k-1}) written in (L, E_1..E_k).
  IntMatrix from(r, r);
  auto set_col = [&](int col, const IntVec& v) {
    for (int i = 0; i < r; ++i) from.at(i, col) = v[i];
  };
  IntVec B(r, Int(0)), F(r, Int(0)), T1(r, Int(0));
  B[0] = 1;
  B[1] = -1;  // L - E1
  F[0] = 1;
  F[2] = -1;  // L - E2
  T1[0] = 1;
  T1[1] = -1;
  T1[2] = -1;  // L - E1 - E2
  set_col(0, B);
  set_col(1, F);
  set_col(2, T1);
  for (int j = 2; j < k; ++j) {
    IntVec E(r, Int(0));
    E[j + 1] = 1;  // E_{j+1} maps to E~_j
    set_col(j + 1, E);
  }
  IntMatrix to = from.inverse_unimodular();

  SurfaceLattice target;
  target.model = SurfaceLattice::Model::Hirzebruch;
  target.twist = 0;
  target.blowups = k - 1;
  target.rank = r;
  target.gram = IntMatrix(r, r);
  target.gram.at(0, 1) = 1;
  target.gram.at(1, 0) = 1;
  for (int i = 2; i < r; ++i) target.gram.at(i, i) = -1;
  target.canonical = IntVec(r, Int(1));
  target.canonical[0] = -2;
  target.canonical[1] = -2;

  IntMatrix congr = from.transposed() * lat.gram * from;
  if (!(congr == target.gram)) throw Error("basis change is not an isometry");
  return {to, from, target};
}

}  // namespace sfh
