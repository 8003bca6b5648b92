#include <random>

#include "doctest.h"
#include "sgc/error.hpp"
#include "sgc/fmatrix.hpp"

using namespace sgc;

namespace {

FMatrix random_small(PrimeField f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  return random_matrix(r, c, f, rng);
}

// Square submatrices of m given by row and column bitmasks.
bool all_minors_nonsingular(const FMatrix& m) {
  for (unsigned rm = 1; rm < (1u << m.rows()); ++rm) {
    for (unsigned cm = 1; cm < (1u << m.cols()); ++cm) {
      if (__builtin_popcount(rm) != __builtin_popcount(cm)) continue;
      std::vector<std::size_t> rows, cols;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (rm >> i & 1u) rows.push_back(i);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (cm >> j & 1u) cols.push_back(j);
      if (rank(m.select_rows(rows).select_columns(cols)) != rows.size()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rank basics") {
  const PrimeField f2(2);
  CHECK(rank(FMatrix(f2, 0, 0)) == 0);
  CHECK(rank(FMatrix::identity(f2, 3)) == 3);
  CHECK(rank(FMatrix::from_rows(f2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(FMatrix::from_rows(PrimeField(3), {{1, 2}, {2, 1}})) == 1);
  CHECK(rank(FMatrix::from_rows(PrimeField(5), {{1, 2}, {2, 1}})) == 2);
}

TEST_CASE("rank equals rank of transpose") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2, 3, 5, 13}) {
    const PrimeField f(p);
    for (int t = 0; t < 50; ++t) {
      const FMatrix m = random_small(f, rng() % 7, rng() % 7, rng);
      CHECK(rank(m) == rank(m.transpose()));
    }
  }
}

TEST_CASE("GF(2) fast rank agrees with rref pivots") {
  std::mt19937_64 rng(11);
  const PrimeField f(2);
  for (int t = 0; t < 200; ++t) {
    const FMatrix m = random_small(f, 1 + rng() % 80, 1 + rng() % 80, rng);
    CHECK(rank(m) == rref(m).pivots.size());
  }
}

TEST_CASE("rref is reduced") {
  std::mt19937_64 rng(3);
  const PrimeField f(7);
  const FMatrix m = random_small(f, 5, 6, rng);
  const Echelon e = rref(m);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    CHECK(e.form.at(i, e.pivots[i]) == f.one());
    for (std::size_t r = 0; r < e.form.rows(); ++r)
      if (r != i) CHECK(e.form.at(r, e.pivots[i]).is_zero());
  }
}

TEST_CASE("cauchy entries") {
  const PrimeField f3(3);
  // 1 / (0 - 1) = -1 = 2 over GF(3).
  const FMatrix c = cauchy(1, 1, f3);
  CHECK(c.at(0, 0) == f3.elem(2));
  CHECK(all_minors_nonsingular(cauchy(2, 2, PrimeField(5))));
  CHECK_THROWS_AS(cauchy(3, 4, PrimeField(5)), FieldTooSmall);
}

TEST_CASE("cauchy matrices are MDS") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const PrimeField f(p);
    for (std::size_t r = 1; r <= 4; ++r) {
      for (std::size_t c = 1; c <= 4; ++c) {
        if (r + c > p) continue;
        CHECK(all_minors_nonsingular(cauchy(r, c, f)));
      }
    }
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) CHECK(all_minors_nonsingular(random_cauchy(3, 4, PrimeField(11), rng)));
}

TEST_CASE("solve_right") {
  const PrimeField f2(2);
  CHECK(*solve_right(FMatrix::identity(f2, 2), FMatrix::identity(f2, 2)) == FMatrix::identity(f2, 2));
  CHECK_FALSE(solve_right(FMatrix::from_rows(f2, {{1}, {0}}), FMatrix::from_rows(f2, {{0}, {1}})));
  const FMatrix a = FMatrix::from_rows(f2, {{1, 1}});
  const auto x = solve_right(a, FMatrix::from_rows(f2, {{1}}));
  REQUIRE(x);
  CHECK(a * *x == FMatrix::from_rows(f2, {{1}}));

  std::mt19937_64 rng(9);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const PrimeField f(p);
    for (int t = 0; t < 100; ++t) {
      const FMatrix m = random_small(f, 1 + rng() % 5, 1 + rng() % 5, rng);
      const FMatrix b = random_small(f, m.rows(), 1 + rng() % 3, rng);
      const auto sol = solve_right(m, b);
      CHECK(sol.has_value() == col_space_contains(m, b));
      if (sol) CHECK(m * *sol == b);
    }
  }
}

TEST_CASE("column space membership") {
  const PrimeField f2(2);
  std::mt19937_64 rng(1);
  CHECK(col_space_contains(FMatrix::identity(f2, 2), random_small(f2, 2, 3, rng)));
  CHECK_FALSE(col_space_contains(FMatrix(f2, 2, 0), FMatrix::from_rows(f2, {{1}, {0}})));
  CHECK(col_space_contains(FMatrix::from_rows(f2, {{1}, {1}}), FMatrix::from_rows(f2, {{1}, {1}})));
  CHECK(col_space_contains(FMatrix(f2, 2, 0), FMatrix(f2, 2, 1)));
}

TEST_CASE("stacking") {
  const PrimeField f(3);
  CHECK(vstack(FMatrix(f, 1, 2), FMatrix(f, 2, 2)).rows() == 3);
  const FMatrix h = hstack(FMatrix(f, 2, 1), FMatrix(f, 2, 3));
  CHECK(h.rows() == 2);
  CHECK(h.cols() == 4);
  CHECK_THROWS_AS(vstack(FMatrix(f, 1, 2), FMatrix(f, 1, 3)), DimensionMismatch);
  CHECK_THROWS_AS(hstack(FMatrix(f, 1, 2), FMatrix(PrimeField(5), 1, 2)), FieldMismatch);
  const std::vector<FMatrix> none;
  CHECK(vstack(f, none).rows() == 0);
}

TEST_CASE("matrix products") {
  const PrimeField f(5);
  const FMatrix a = FMatrix::from_rows(f, {{1, 2}, {3, 4}});
  CHECK(a * FMatrix::identity(f, 2) == a);
  CHECK(a * a == FMatrix::from_rows(f, {{2, 0}, {0, 2}}));
  CHECK((a - a).is_zero());
  CHECK(a + a.negated() == FMatrix(f, 2, 2));
  const std::vector<FieldElem> x{FieldElem{1}, FieldElem{1}};
  CHECK(a.apply(x) == std::vector<FieldElem>{FieldElem{3}, FieldElem{2}});
  CHECK_THROWS_AS(a * FMatrix(f, 3, 1), DimensionMismatch);
}
