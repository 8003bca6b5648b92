#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sgc/gf.hpp"

namespace sgc {

// Dense row-major matrix over a prime field. Value type; every operation
// that combines two matrices requires them to share the field and throws
// FieldMismatch otherwise.
class FMatrix {
 public:
  FMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  // Entries are reduced mod p. Rows must all have the same length.
  static FMatrix from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static FMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
  static FMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  FieldElem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, FieldElem v);
  void set(std::size_t r, std::size_t c, std::int64_t v) { set(r, c, field_.elem(v)); }

  std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  FMatrix transpose() const;
  FMatrix select_columns(std::span<const std::size_t> cols) const;
  FMatrix select_rows(std::span<const std::size_t> rows) const;
  bool is_zero() const;

  friend FMatrix operator*(const FMatrix& a, const FMatrix& b);
  friend FMatrix operator+(const FMatrix& a, const FMatrix& b);
  friend FMatrix operator-(const FMatrix& a, const FMatrix& b);
  FMatrix negated() const;

  // y = M x for a column vector given as a span of length cols().
  std::vector<FieldElem> apply(std::span<const FieldElem> x) const;

  friend bool operator==(const FMatrix&, const FMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElem> data_;
};

// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  FMatrix form;
  std::vector<std::size_t> pivots;
};

Echelon rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);

// Throws DimensionMismatch unless all parts share rows (hstack) / cols (vstack).
// An empty list yields a 0x0 matrix over `field`.
FMatrix hstack(PrimeField field, std::span<const FMatrix> parts);
FMatrix vstack(PrimeField field, std::span<const FMatrix> parts);
FMatrix hstack(const FMatrix& a, const FMatrix& b);
FMatrix vstack(const FMatrix& a, const FMatrix& b);
FMatrix block_diagonal(PrimeField field, std::span<const FMatrix> blocks);

// Some X with A X = B, or nullopt when B is outside the column space of A.
std::optional<FMatrix> solve_right(const FMatrix& a, const FMatrix& b);

// True iff every column of `a` lies in the column space of `basis`.
bool col_space_contains(const FMatrix& basis, const FMatrix& a);

// Cauchy matrix with entries 1/(x_i - y_j). Evaluation points default to
// x_i = i and y_j = rows + j. Throws FieldTooSmall when rows + cols > p.
FMatrix cauchy(std::size_t rows, std::size_t cols, PrimeField field);
// Explicit points; all rows + cols values must be distinct field elements.
FMatrix cauchy(PrimeField field, std::span<const FieldElem> xs, std::span<const FieldElem> ys);
// Cauchy matrix on rows + cols distinct points drawn uniformly from the field.
FMatrix random_cauchy(std::size_t rows, std::size_t cols, PrimeField field, std::mt19937_64& rng);
FMatrix random_matrix(std::size_t rows, std::size_t cols, PrimeField field, std::mt19937_64& rng);

}  // namespace sgc
