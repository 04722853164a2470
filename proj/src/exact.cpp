#include "sfh/exact.hpp"

#include <algorithm>

namespace sfh {

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (int(rows[i].size()) != m.cols()) throw Error("ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& f = at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += f * o.at(k, j);
    }
  return r;
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (int(x.size()) != cols_) throw Error("matrix apply shape mismatch");
  IntVec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * x[j];
  return r;
}

RatVec IntMatrix::apply(const RatVec& x) const {
  if (int(x.size()) != cols_) throw Error("matrix apply shape mismatch");
  RatVec r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * x[j];
  return r;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Int IntMatrix::det() const {
  if (rows_ != cols_) throw Error("det of non-square matrix");
  const int n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<Int> w(a_);
  auto e = [&](int i, int j) -> Int& { return w[i * n + j]; };
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (e(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (e(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(e(k, j), e(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = e(i, j) * e(k, k) - e(i, k) * e(k, j);
        mpz_divexact(e(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = e(k, k);
  }
  return sign > 0 ? e(n - 1, n - 1) : Int(-e(n - 1, n - 1));
}

bool IntMatrix::is_unimodular() const {
  if (rows_ != cols_) return false;
  Int d = det();
  return d == 1 || d == -1;
}

IntMatrix IntMatrix::inverse_unimodular() const {
  if (!is_unimodular()) throw Error("matrix is not unimodular");
  const int n = rows_;
  // Adjugate via rational elimination would do; solve column by column.
  IntMatrix inv(n, n);
  std::vector<RatVec> m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = Rat(at(i, j));
  for (int c = 0; c < n; ++c) {
    RatVec rhs(n, Rat(0));
    rhs[c] = 1;
    auto x = solve_square(m, rhs);
    if (!x) throw Error("unimodular inverse failed");
    for (int i = 0; i < n; ++i) {
      if ((*x)[i].get_den() != 1) throw Error("unimodular inverse not integral");
      inv.at(i, c) = (*x)[i].get_num();
    }
  }
  return inv;
}

void IntMatrix::swap_rows(int i, int j) {
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}
void IntMatrix::swap_cols(int i, int j) {
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}
void IntMatrix::add_row(int dst, int src, const Int& f) {
  for (int c = 0; c < cols_; ++c) at(dst, c) += f * at(src, c);
}
void IntMatrix::add_col(int dst, int src, const Int& f) {
  for (int r = 0; r < rows_; ++r) at(r, dst) += f * at(r, src);
}
void IntMatrix::negate_row(int i) {
  for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}
void IntMatrix::negate_col(int j) {
  for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  SnfDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;

  auto abscmp = [](const Int& x, const Int& y) {
    return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()) < 0;
  };

  for (int k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      // Minimal-absolute-value pivot in the trailing block.
      int pi = -1, pj = -1;
      for (int i = k; i < m; ++i)
        for (int j = k; j < n; ++j)
          if (d.at(i, j) != 0 && (pi < 0 || abscmp(d.at(i, j), d.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;  // trailing block is zero
      if (pi != k) { d.swap_rows(k, pi); s.u.swap_rows(k, pi); }
      if (pj != k) { d.swap_cols(k, pj); s.v.swap_cols(k, pj); }

      bool touched = false;
      for (int i = k + 1; i < m; ++i)
        if (d.at(i, k) != 0) {
          Int q = d.at(i, k) / d.at(k, k);  // truncated; remainder shrinks
          if (q != 0) { d.add_row(i, k, -q); s.u.add_row(i, k, -q); }
          if (d.at(i, k) != 0) touched = true;
        }
      for (int j = k + 1; j < n; ++j)
        if (d.at(k, j) != 0) {
          Int q = d.at(k, j) / d.at(k, k);
          if (q != 0) { d.add_col(j, k, -q); s.v.add_col(j, k, -q); }
          if (d.at(k, j) != 0) touched = true;
        }
      if (touched) continue;

      // Row and column are clear; enforce the divisibility chain.
      bool fixed = false;
      for (int i = k + 1; i < m && !fixed; ++i)
        for (int j = k + 1; j < n && !fixed; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            d.add_row(k, i, 1);
            s.u.add_row(k, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
  }
done:
  for (int k = 0; k < std::min(m, n); ++k)
    if (d.at(k, k) < 0) { d.negate_row(k); s.u.negate_row(k); }
  return s;
}

bool is_unimodular_basis(const IntVec& v1, const IntVec& v2, const IntVec& v3) {
  if (v1.size() != 3 || v2.size() != 3 || v3.size() != 3)
    throw Error("is_unimodular_basis expects 3-vectors");
  IntMatrix m = IntMatrix::from_rows({v1, v2, v3});
  Int d = m.det();
  return d == 1 || d == -1;
}

bool is_unimodular_basis_2d(const IntVec& v1, const IntVec& v2) {
  if (v1.size() != 2 || v2.size() != 2)
    throw Error("is_unimodular_basis_2d expects 2-vectors");
  Int d = v1[0] * v2[1] - v1[1] * v2[0];
  return d == 1 || d == -1;
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g == 0) throw Error("primitive() of the zero vector");
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error("dot dimension mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("dot dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

std::optional<IntVec> integer_solve(const IntMatrix& a, const IntVec& b) {
  if (int(b.size()) != a.rows()) throw Error("integer_solve shape mismatch");
  SnfDecomposition s = smith_normal_form(a);
  IntVec y = s.u.apply(b);
  const int r = std::min(a.rows(), a.cols());
  IntVec x(a.cols(), Int(0));
  for (int i = 0; i < a.rows(); ++i) {
    const Int di = i < r ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (y[i] != 0) return std::nullopt;
    } else {
      if (y[i] % di != 0) return std::nullopt;
      if (i < a.cols()) x[i] = y[i] / di;
    }
  }
  return s.v.apply(x);
}

IntVec CokernelPresentation::project(const IntVec& x) const {
  if (int(x.size()) != ambient) throw Error("cokernel project shape mismatch");
  IntVec c = projection.apply(x);
  for (size_t i = 0; i < invariant_factors.size(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), invariant_factors[i].get_mpz_t());
    c[i] = r;
  }
  return c;
}

bool CokernelPresentation::coords_equal(const IntVec& cx, const IntVec& cy) const {
  return cx == cy;  // coords are canonical already
}

CokernelPresentation cokernel_presentation(const IntMatrix& a) {
  SnfDecomposition s = smith_normal_form(a);
  const int m = a.rows();
  const int r = std::min(a.rows(), a.cols());
  CokernelPresentation p;
  p.ambient = m;
  std::vector<int> torsion_rows, free_rows;
  for (int i = 0; i < m; ++i) {
    Int di = i < r ? s.d.at(i, i) : Int(0);
    if (di == 0)
      free_rows.push_back(i);
    else if (di > 1) {
      torsion_rows.push_back(i);
      p.invariant_factors.push_back(di);
    }
  }
  p.free_rank = int(free_rows.size());
  p.projection = IntMatrix(int(torsion_rows.size()) + p.free_rank, m);
  int row = 0;
  for (int i : torsion_rows) {
    for (int j = 0; j < m; ++j) p.projection.at(row, j) = s.u.at(i, j);
    ++row;
  }
  for (int i : free_rows) {
    for (int j = 0; j < m; ++j) p.projection.at(row, j) = s.u.at(i, j);
    ++row;
  }
  return p;
}

IntMatrix extend_primitive_to_basis(const IntVec& xi) {
  const int n = int(xi.size());
  IntMatrix row(1, n);
  for (int j = 0; j < n; ++j) row.at(0, j) = xi[j];
  SnfDecomposition s = smith_normal_form(row);
  if (s.d.at(0, 0) != 1) throw Error("extend_primitive_to_basis: vector not primitive");
  // (u00) * xi * V = e1^T, so xi * (V * u00) = e1^T: columns of V*u00 give
  // w = col 0 with <xi,w> = 1 and kernel basis cols 1..n-1.
  IntMatrix b = s.v;
  if (s.u.at(0, 0) == -1)
    for (int i = 0; i < n; ++i) b.at(i, 0) = -b.at(i, 0);
  return b;
}

std::optional<RatVec> solve_square(const std::vector<RatVec>& m, const RatVec& rhs) {
  const int n = int(m.size());
  std::vector<RatVec> w = m;
  RatVec b = rhs;
  for (int i = 0; i < n; ++i) {
    w[i].resize(n);
    if (int(m[i].size()) != n) throw Error("solve_square: non-square input");
  }
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (w[i][k] != 0) { p = i; break; }
    if (p < 0) return std::nullopt;
    std::swap(w[k], w[p]);
    std::swap(b[k], b[p]);
    for (int i = k + 1; i < n; ++i) {
      if (w[i][k] == 0) continue;
      Rat f = w[i][k] / w[k][k];
      for (int j = k; j < n; ++j) w[i][j] -= f * w[k][j];
      b[i] -= f * b[k];
    }
  }
  RatVec x(n, Rat(0));
  for (int i = n - 1; i >= 0; --i) {
    Rat s = b[i];
    for (int j = i + 1; j < n; ++j) s -= w[i][j] * x[j];
    x[i] = s / w[i][i];
  }
  return x;
}

IntVec cross3(const IntVec& a, const IntVec& b) {
  if (a.size() != 3 || b.size() != 3) throw Error("cross3 expects 3-vectors");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace sfh
