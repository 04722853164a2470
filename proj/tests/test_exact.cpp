#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfh/exact.hpp"

using namespace sfh;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int maxdim = 4, int maxabs = 6) {
  std::uniform_int_distribution<int> dim(1, maxdim), val(-maxabs, maxabs);
  IntMatrix m(dim(rng), dim(rng));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = val(rng);
  return m;
}

void check_snf_contract(const IntMatrix& a) {
  SnfDecomposition s = smith_normal_form(a);
  CHECK(s.u * a * s.v == s.d);
  CHECK(s.u.is_unimodular());
  CHECK(s.v.is_unimodular());
  const int r = std::min(a.rows(), a.cols());
  for (int i = 0; i < r; ++i) {
    CHECK(s.d.at(i, i) >= 0);
    if (i + 1 < r && s.d.at(i + 1, i + 1) != 0) {
      if (s.d.at(i, i) == 0) {
        CHECK(s.d.at(i + 1, i + 1) == 0);
      } else {
        CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
      }
    }
  }
  for (int i = 0; i < s.d.rows(); ++i)
    for (int j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d.at(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form on the worked examples") {
  auto a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  auto s = smith_normal_form(a);
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 6);
  check_snf_contract(a);

  auto id = IntMatrix::identity(3);
  auto si = smith_normal_form(id);
  CHECK(si.d == id);

  auto z = IntMatrix(2, 2);
  auto sz = smith_normal_form(z);
  CHECK(sz.d == z);
}

TEST_CASE("unimodular bases") {
  CHECK(is_unimodular_basis({1, 0, 0}, {1, 1, 0}, {-1, -1, -1}));
  CHECK(is_unimodular_basis({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
  CHECK_FALSE(is_unimodular_basis({2, 0, 0}, {0, 1, 0}, {0, 0, 1}));
}

TEST_CASE("primitive vectors") {
  CHECK(primitive({2, 2, 0}) == IntVec{1, 1, 0});
  CHECK(primitive({0, 0, -3}) == IntVec{0, 0, -1});
  CHECK(primitive({1, 1, 1}) == IntVec{1, 1, 1});
  CHECK_THROWS_AS(primitive({0, 0, 0}), Error);
}

TEST_CASE("integer solve") {
  auto a = IntMatrix::from_rows({{2}});
  CHECK(*integer_solve(a, {4}) == IntVec{2});
  CHECK_FALSE(integer_solve(a, {3}));
  auto swap = IntMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(*integer_solve(swap, {1, 2}) == IntVec{2, 1});
}

TEST_CASE("cokernel presentations") {
  auto id = cokernel_presentation(IntMatrix::identity(3));
  CHECK(id.invariant_factors.empty());
  CHECK(id.free_rank == 0);

  auto t = cokernel_presentation(IntMatrix::from_rows({{2, 0}, {0, 0}}));
  CHECK(t.invariant_factors == std::vector<Int>{2});
  CHECK(t.free_rank == 1);

  // Example 2.1's Mayer-Vietoris matrix (identity inclusions, swap gluing).
  auto k = IntMatrix::from_rows({{1, 0}, {0, 1}, {0, -1}, {-1, 0}});
  auto ck = cokernel_presentation(k);
  CHECK(ck.invariant_factors.empty());
  CHECK(ck.free_rank == 2);
}

TEST_CASE("snf and cokernel algebra over random matrices") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int iter = 0; iter < 150; ++iter) {
    IntMatrix a = random_matrix(rng);
    check_snf_contract(a);

    auto p = cokernel_presentation(a);
    // projection kills exactly the image
    IntVec x(a.cols());
    for (auto& e : x) e = val(rng);
    IntVec image = a.apply(x);
    IntVec coords = p.project(image);
    for (const auto& c : coords) CHECK(c == 0);

    // integer_solve finds a solution iff b maps to zero in the cokernel
    IntVec b(a.rows());
    for (auto& e : b) e = val(rng);
    bool zero = true;
    for (const auto& c : p.project(b)) zero = zero && c == 0;
    auto sol = integer_solve(a, b);
    CHECK(sol.has_value() == zero);
    if (sol) CHECK(a.apply(*sol) == b);
  }
}

TEST_CASE("primitive extension to a basis") {
  for (IntVec xi : {IntVec{1, 1, 0}, IntVec{0, 1, 0}, IntVec{1, 1, -1}, IntVec{3, 2, 5}}) {
    IntMatrix b = extend_primitive_to_basis(xi);
    CHECK(b.is_unimodular());
    IntVec w{b.at(0, 0), b.at(1, 0), b.at(2, 0)};
    CHECK(dot(xi, w) == 1);
    for (int c = 1; c < 3; ++c) {
      IntVec col{b.at(0, c), b.at(1, c), b.at(2, c)};
      CHECK(dot(xi, col) == 0);
    }
  }
}

TEST_CASE("rational parsing round trips") {
  CHECK(rat_from_string("-11/10") == Rat(-11, 10));
  CHECK(rat_to_string(rat_from_string("4/6")) == "2/3");
  CHECK_THROWS_AS(rat_from_string("x"), Error);
}
