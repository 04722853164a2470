#pragma once
// Exact integer/rational linear algebra. Everything downstream (polytopes,
// slices, homology presentations) runs on these types; no floating point
// exists anywhere in the library.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfh {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "a" or "a/b"; result canonicalized (lowest terms, denominator > 0).
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[i * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;
  IntVec apply(const IntVec& x) const;          // this * x
  RatVec apply(const RatVec& x) const;
  IntMatrix transposed() const;

  Int det() const;                              // fraction-free elimination
  bool is_unimodular() const;
  IntMatrix inverse_unimodular() const;         // requires |det| == 1

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Int& f); // row dst += f * row src
  void add_col(int dst, int src, const Int& f);
  void negate_row(int i);
  void negate_col(int i);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0.
struct SnfDecomposition {
  IntMatrix u, d, v;
};
SnfDecomposition smith_normal_form(const IntMatrix& a);

// |det(v1,v2,v3)| == 1. Vectors must be 3-dimensional.
bool is_unimodular_basis(const IntVec& v1, const IntVec& v2, const IntVec& v3);
bool is_unimodular_basis_2d(const IntVec& v1, const IntVec& v2);

// v / gcd(entries), sign preserved. Rejects the zero vector.
IntVec primitive(const IntVec& v);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);

// Some x with A x = b over the integers, if one exists.
std::optional<IntVec> integer_solve(const IntMatrix& a, const IntVec& b);

// coker(A : Z^n -> Z^m) presented as (+) Z/d_i (+) Z^free_rank. `project`
// maps Z^m onto canonical coordinates: torsion coordinates first (values
// reduced mod d_i into [0, d_i)), then free coordinates.
struct CokernelPresentation {
  std::vector<Int> invariant_factors;  // the d_i > 1
  int free_rank = 0;
  IntMatrix projection;                // (torsion + free) x ambient
  int ambient = 0;

  int coords() const { return int(invariant_factors.size()) + free_rank; }
  IntVec project(const IntVec& x) const;
  bool coords_equal(const IntVec& cx, const IntVec& cy) const;
};
CokernelPresentation cokernel_presentation(const IntMatrix& a);

// Extends a primitive vector xi to a Z-basis: returns B with columns
// (w, a_1, ..., a_{n-1}) where <xi, w> = 1 and the a_i span ker<xi,.>.
// Deterministic (derived from the SNF of xi as a 1 x n matrix).
IntMatrix extend_primitive_to_basis(const IntVec& xi);

// Solves M x = rhs exactly for square rational systems (Gaussian
// elimination); nullopt when singular.
std::optional<RatVec> solve_square(const std::vector<RatVec>& m, const RatVec& rhs);

IntVec cross3(const IntVec& a, const IntVec& b);

}  // namespace sfh
