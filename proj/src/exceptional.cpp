#include "sfh/exceptional.hpp"

#include <algorithm>
#include <numeric>

namespace sfh {

H2Class H2Class::E(int i, int k) {
  H2Class x{Int(0), IntVec(k, Int(0))};
  x.b[i] = -1;
  return x;
}

H2Class H2Class::line(int k) { return {Int(1), IntVec(k, Int(0))}; }

Int pairing(const H2Class& x, const H2Class& y) {
  if (x.k() != y.k()) throw Error("pairing of classes with different k");
  Int s = x.a * y.a;
  for (int i = 0; i < x.k(); ++i) s -= x.b[i] * y.b[i];
  return s;
}

H2Class canonical_class(int k) { return {Int(-3), IntVec(k, Int(-1))}; }

bool FormVector::is_reduced() const {
  for (const auto& d : delta)
    if (!(d > 0)) return false;
  for (int i = 0; i + 1 < k(); ++i)
    if (delta[i] < delta[i + 1]) return false;
  Rat top(0);
  for (int i = 0; i < std::min(3, k()); ++i) top += delta[i];
  return top <= alpha;
}

Rat FormVector::volume2() const {
  Rat v = alpha * alpha;
  for (const auto& d : delta) v -= d * d;
  return v;
}

Rat FormVector::area(const H2Class& x) const {
  if (x.k() != k()) throw Error("area of class with wrong k");
  Rat s = alpha * Rat(x.a);
  for (int i = 0; i < k(); ++i) s -= delta[i] * Rat(x.b[i]);
  return s;
}

namespace {

void check_indices(int k, int i, int j, int l) {
  if (i == j || j == l || i == l) throw Error("Cremona move needs distinct indices");
  for (int idx : {i, j, l})
    if (idx < 0 || idx >= k) throw Error("Cremona index out of range");
}

}  // namespace

H2Class cremona_move(const H2Class& x, int i, int j, int l) {
  check_indices(x.k(), i, j, l);
  H2Class y = x;
  Int s = x.b[i] + x.b[j] + x.b[l];
  y.a = 2 * x.a - s;
  y.b[i] = x.a - x.b[j] - x.b[l];
  y.b[j] = x.a - x.b[i] - x.b[l];
  y.b[l] = x.a - x.b[i] - x.b[j];
  return y;
}

FormVector cremona_move(const FormVector& v, int i, int j, int l) {
  check_indices(v.k(), i, j, l);
  FormVector w = v;
  Rat s = v.delta[i] + v.delta[j] + v.delta[l];
  w.alpha = Rat(2) * v.alpha - s;
  w.delta[i] = v.alpha - v.delta[j] - v.delta[l];
  w.delta[j] = v.alpha - v.delta[i] - v.delta[l];
  w.delta[l] = v.alpha - v.delta[i] - v.delta[j];
  return w;
}

bool is_exceptional(const H2Class& x) {
  if (pairing(x, x) != -1) return false;
  if (pairing(canonical_class(x.k()), x) != -1) return false;
  if (x.k() == 0) return false;

  H2Class y = x;
  for (int iter = 0; iter < 10000; ++iter) {
    if (y.a < 0) return false;
    if (y.a == 0) {
      // must be exactly one b = -1, rest zero
      int minus = 0;
      for (const auto& c : y.b) {
        if (c == -1)
          ++minus;
        else if (c != 0)
          return false;
      }
      return minus == 1;
    }
    if (y.k() < 3) return false;
    // move at the three largest coefficients
    std::vector<int> idx(y.k());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(),
                      [&](int p, int q) { return y.b[p] > y.b[q]; });
    Int top = y.b[idx[0]] + y.b[idx[1]] + y.b[idx[2]];
    if (top <= y.a) return false;  // degree cannot decrease: not in the orbit
    y = cremona_move(y, idx[0], idx[1], idx[2]);
  }
  throw Error("exceptionality test exceeded its iteration guard");
}

ReducedForm reduce_form(const FormVector& v) {
  if (!(v.volume2() > 0)) throw Error("form vector has non-positive volume");
  for (const auto& d : v.delta)
    if (!(d > 0)) throw Error("form vector entries must be positive");

  ReducedForm rf{v, {}};
  FormVector& w = rf.form;
  for (int iter = 0; iter < 1000; ++iter) {
    // sort descending
    std::vector<int> perm(w.k());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int p, int q) { return w.delta[p] > w.delta[q]; });
    bool idperm = true;
    for (int i = 0; i < w.k(); ++i) idperm = idperm && perm[i] == i;
    if (!idperm) {
      RatVec nd(w.k());
      for (int i = 0; i < w.k(); ++i) nd[i] = w.delta[perm[i]];
      w.delta = nd;
      rf.log.push_back({FormMove::Kind::Permute, perm, 0, 0, 0, 0, 0});
    }
    // normalize signs and zeros
    bool changed = false;
    for (int i = 0; i < w.k(); ++i)
      if (w.delta[i] < 0) {
        w.delta[i] = -w.delta[i];
        rf.log.push_back({FormMove::Kind::FlipSign, {}, 0, 0, 0, i, 0});
        changed = true;
      }
    if (changed) continue;
    int zeros = 0;
    while (w.k() > 0 && w.delta.back() == 0) {
      w.delta.pop_back();
      ++zeros;
    }
    if (zeros > 0) {
      rf.log.push_back({FormMove::Kind::DropZeros, {}, 0, 0, 0, 0, zeros});
      continue;
    }
    if (w.is_reduced()) return rf;
    // the Cremona step; pad a virtual zero when k < 3
    while (w.k() < 3) {
      w.delta.push_back(Rat(0));
      rf.log.push_back({FormMove::Kind::PadZero, {}, 0, 0, 0, 0, 0});
    }
    w = cremona_move(w, 0, 1, 2);
    rf.log.push_back({FormMove::Kind::Cremona, {}, 0, 1, 2, 0, 0});
  }
  throw Error("form reduction exceeded its iteration guard (invalid input?)");
}

H2Class transport(const H2Class& x, const std::vector<FormMove>& log) {
  H2Class y = x;
  for (const auto& mv : log) {
    switch (mv.kind) {
      case FormMove::Kind::Permute: {
        IntVec nb(y.k());
        for (int i = 0; i < y.k(); ++i) nb[i] = y.b[mv.perm[i]];
        y.b = nb;
        break;
      }
      case FormMove::Kind::Cremona:
        y = cremona_move(y, mv.i, mv.j, mv.l);
        break;
      case FormMove::Kind::PadZero:
        y.b.push_back(Int(0));
        break;
      case FormMove::Kind::DropZeros:
        for (int c = 0; c < mv.count; ++c) {
          if (y.b.back() != 0)
            throw Error("class transport hits a dropped basis direction");
          y.b.pop_back();
        }
        break;
      case FormMove::Kind::FlipSign:
        y.b[mv.index] = -y.b[mv.index];
        break;
    }
  }
  return y;
}

namespace {

// Degrees a with some exceptional class of area <= B satisfy
// alpha a - B <= sqrt((a^2+1) S) with S = sum delta^2 (Cauchy-Schwarz on
// the area). Q(a) = (alpha a - B)^2 - (a^2+1) S is an upward parabola with
// leading coefficient vol2 > 0, so once past its vertex a* = alpha B / vol2
// the exclusion is final.
Int positive_degree_bound(const FormVector& v, const Rat& bound) {
  Rat S = v.alpha * v.alpha - v.volume2();
  Rat a_star = v.alpha * bound / v.volume2();
  Int a = 0;
  const Int guard = 1000000;
  for (;; ++a) {
    if (a > guard) throw Error("area bound too large for the enumeration guard");
    if (Rat(a) <= a_star) continue;
    Rat lhs = v.alpha * Rat(a) - bound;
    if (lhs <= 0) continue;
    if (lhs * lhs > (Rat(a) * Rat(a) + 1) * S) return a - 1;
  }
}

Int negative_degree_bound(const FormVector& v) {
  // area > 0 with a < 0 forces a^2 + 1 < alpha^2 / vol2.
  Rat limit = v.alpha * v.alpha / v.volume2();
  Int a = -1;
  while (Rat(a) * Rat(a) + 1 < limit) --a;
  return a + 1;  // smallest admissible degree
}

void search_b(const FormVector& v, const Int& a, const Rat& bound, int pos, H2Class& cur,
              Int sq_left, Int sum_left, const Rat& target_lo, const Rat& target_hi,
              Rat acc, std::vector<std::pair<H2Class, Rat>>& out) {
  const int k = v.k();
  if (pos == k) {
    if (sq_left != 0 || sum_left != 0) return;
    Rat area = v.alpha * Rat(a) - acc;
    if (area > 0 && area <= bound) {
      if (is_exceptional(cur)) out.push_back({cur, area});
    }
    return;
  }
  // remaining square budget bounds each coefficient
  Int rem = k - pos;
  // Cauchy-Schwarz prune on the remaining sum
  if (sum_left * sum_left > sq_left * rem) return;
  // prune on the achievable area contribution of the tail
  Rat tail_sq(0);
  for (int i = pos; i < k; ++i) tail_sq += v.delta[i] * v.delta[i];
  Rat acc_min = acc, acc_max = acc;
  // |sum_{i>=pos} b_i delta_i| <= sqrt(sq_left * tail_sq)
  Rat bnd2 = Rat(sq_left) * tail_sq;
  // compare squares to avoid roots: the reachable window is
  // [acc - sqrt(bnd2), acc + sqrt(bnd2)]; it must meet [target_lo, target_hi]
  auto below = [&](const Rat& x, const Rat& y) {  // x + sqrt(bnd2) < y ?
    Rat d = y - x;
    return d > 0 && bnd2 < d * d;
  };
  if (below(acc_max, target_lo)) return;
  if (below(target_hi, acc_min)) return;

  Int m = 0;
  while ((m + 1) * (m + 1) <= sq_left) ++m;
  for (Int bi = -m; bi <= m; ++bi) {
    cur.b[pos] = bi;
    search_b(v, a, bound, pos + 1, cur, sq_left - bi * bi, sum_left - bi, target_lo,
             target_hi, acc + v.delta[pos] * Rat(bi), out);
  }
  cur.b[pos] = 0;
}

}  // namespace

std::vector<std::pair<H2Class, Rat>> enumerate_exceptional(const FormVector& v,
                                                           const Rat& bound) {
  for (const auto& d : v.delta)
    if (!(d > 0)) throw Error("enumeration needs positive form entries");
  if (!(v.volume2() > 0)) throw Error("enumeration needs positive volume");
  std::vector<std::pair<H2Class, Rat>> out;
  if (v.k() == 0 || !(bound > 0)) return out;

  Int a_hi = positive_degree_bound(v, bound);
  Int a_lo = negative_degree_bound(v);
  for (Int a = a_lo; a <= a_hi; ++a) {
    // numeric constraints: sum b = 3a - 1, sum b^2 = a^2 + 1
    H2Class cur{a, IntVec(v.k(), Int(0))};
    Rat lo = v.alpha * Rat(a) - bound;  // acc = alpha a - area
    Rat hi = v.alpha * Rat(a);          // area > 0
    search_b(v, a, bound, 0, cur, a * a + 1, 3 * a - 1, lo, hi, Rat(0), out);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<H2Class> emin_set(const FormVector& v) {
  std::set<H2Class> s;
  if (v.k() == 0) return s;
  // any E_i area is an upper bound for the minimum
  Rat bound = v.delta[0];
  for (const auto& d : v.delta) bound = std::min(bound, d);
  auto all = enumerate_exceptional(v, bound);
  if (all.empty()) return s;
  Rat best = all[0].second;
  for (const auto& [cls, area] : all) best = std::min(best, area);
  for (const auto& [cls, area] : all)
    if (area == best) s.insert(cls);
  return s;
}

}  // namespace sfh
