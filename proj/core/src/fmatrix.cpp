#include "sgc/fmatrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "sgc/error.hpp"

namespace sgc {
namespace {

void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (!(a == b)) {
    throw FieldMismatch("GF(" + std::to_string(a.modulus()) + ") vs GF(" + std::to_string(b.modulus()) + ")");
  }
}

std::string dims(const FMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

FMatrix::FMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

FMatrix FMatrix::from_rows(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(field, copy);
}

FMatrix FMatrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged rows in matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FMatrix FMatrix::identity(PrimeField field, std::size_t n) {
  FMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = field.one();
  return m;
}

void FMatrix::set(std::size_t r, std::size_t c, FieldElem v) {
  data_[r * cols_ + c] = FieldElem{v.value() % field_.modulus()};
}

FMatrix FMatrix::transpose() const {
  FMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

FMatrix FMatrix::select_columns(std::span<const std::size_t> cols) const {
  FMatrix m(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m.data_[r * cols.size() + j] = at(r, cols[j]);
  return m;
}

FMatrix FMatrix::select_rows(std::span<const std::size_t> rows) const {
  FMatrix m(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  return m;
}

bool FMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](FieldElem e) { return e.is_zero(); });
}

FMatrix operator*(const FMatrix& a, const FMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) throw DimensionMismatch("product of " + dims(a) + " and " + dims(b));
  const auto& f = a.field_;
  FMatrix out(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldElem aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        auto& dst = out.data_[i * b.cols_ + j];
        dst = f.add(dst, f.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

FMatrix operator+(const FMatrix& a, const FMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("sum of " + dims(a) + " and " + dims(b));
  FMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return out;
}

FMatrix operator-(const FMatrix& a, const FMatrix& b) { return a + b.negated(); }

FMatrix FMatrix::negated() const {
  FMatrix out = *this;
  for (auto& e : out.data_) e = field_.neg(e);
  return out;
}

std::vector<FieldElem> FMatrix::apply(std::span<const FieldElem> x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length " + std::to_string(x.size()) + " vs " + dims(*this));
  std::vector<FieldElem> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    FieldElem acc{};
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul(at(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

Echelon rref(const FMatrix& m) {
  const auto& f = m.field();
  FMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a.at(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        const FieldElem tmp = a.at(row, c);
        a.set(row, c, a.at(pivot, c));
        a.set(pivot, c, tmp);
      }
    }
    const FieldElem scale = f.inv(a.at(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a.set(row, c, f.mul(a.at(row, c), scale));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const FieldElem factor = a.at(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t c = col; c < a.cols(); ++c) a.set(r, c, f.sub(a.at(r, c), f.mul(factor, a.at(row, c))));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

namespace {

// Bit-packed elimination; the verifier spends most of its time here on GF(2).
std::size_t rank_gf2(const FMatrix& m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::uint64_t> bits(m.rows() * words, 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < m.rows() && (bits[pivot * words + w] & mask) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) std::swap_ranges(&bits[pivot * words], &bits[pivot * words] + words, &bits[rank * words]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if ((bits[r * words + w] & mask) == 0) continue;
      for (std::size_t i = w; i < words; ++i) bits[r * words + i] ^= bits[rank * words + i];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank(const FMatrix& m) {
  if (m.empty()) return 0;
  if (m.field().modulus() == 2) return rank_gf2(m);
  return rref(m).pivots.size();
}

FMatrix hstack(PrimeField field, std::span<const FMatrix> parts) {
  if (parts.empty()) return FMatrix(field, 0, 0);
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require_same_field(field, p.field());
    if (p.rows() != rows) throw DimensionMismatch("hstack of " + dims(parts.front()) + " and " + dims(p));
    cols += p.cols();
  }
  FMatrix out(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) out.set(r, offset + c, p.at(r, c));
    offset += p.cols();
  }
  return out;
}

FMatrix vstack(PrimeField field, std::span<const FMatrix> parts) {
  if (parts.empty()) return FMatrix(field, 0, 0);
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require_same_field(field, p.field());
    if (p.cols() != cols) throw DimensionMismatch("vstack of " + dims(parts.front()) + " and " + dims(p));
    rows += p.rows();
  }
  FMatrix out(field, rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out.set(offset + r, c, p.at(r, c));
    offset += p.rows();
  }
  return out;
}

FMatrix hstack(const FMatrix& a, const FMatrix& b) {
  const FMatrix parts[] = {a, b};
  return hstack(a.field(), parts);
}

FMatrix vstack(const FMatrix& a, const FMatrix& b) {
  const FMatrix parts[] = {a, b};
  return vstack(a.field(), parts);
}

FMatrix block_diagonal(PrimeField field, std::span<const FMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    require_same_field(field, b.field());
    rows += b.rows();
    cols += b.cols();
  }
  FMatrix out(field, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.set(r0 + r, c0 + c, b.at(r, c));
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

std::optional<FMatrix> solve_right(const FMatrix& a, const FMatrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows()) throw DimensionMismatch("solve_right with " + dims(a) + " and " + dims(b));
  const auto& f = a.field();
  const Echelon e = rref(hstack(a, b));
  FMatrix x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const std::size_t pc = e.pivots[i];
    // A pivot inside the B block means an inconsistent row 0 = nonzero.
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(pc, j, e.form.at(i, a.cols() + j));
  }
  return x;
}

bool col_space_contains(const FMatrix& basis, const FMatrix& a) {
  require_same_field(basis.field(), a.field());
  if (basis.rows() != a.rows()) throw DimensionMismatch("col_space_contains with " + dims(basis) + " and " + dims(a));
  if (a.cols() == 0) return true;
  return rank(hstack(basis, a)) == rank(basis);
}

FMatrix cauchy(std::size_t rows, std::size_t cols, PrimeField field) {
  if (rows + cols > field.modulus()) {
    throw FieldTooSmall("Cauchy " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                        std::to_string(rows + cols) + " points, GF(" + std::to_string(field.modulus()) + ") has " +
                        std::to_string(field.modulus()));
  }
  std::vector<FieldElem> xs(rows), ys(cols);
  for (std::size_t i = 0; i < rows; ++i) xs[i] = FieldElem{i};
  for (std::size_t j = 0; j < cols; ++j) ys[j] = FieldElem{rows + j};
  return cauchy(field, xs, ys);
}

FMatrix cauchy(PrimeField field, std::span<const FieldElem> xs, std::span<const FieldElem> ys) {
  std::unordered_set<std::uint64_t> seen;
  for (auto v : xs) seen.insert(v.value());
  for (auto v : ys) seen.insert(v.value());
  if (seen.size() != xs.size() + ys.size()) throw FieldTooSmall("Cauchy evaluation points are not distinct");
  FMatrix m(field, xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) m.set(i, j, field.inv(field.sub(xs[i], ys[j])));
  return m;
}

FMatrix random_cauchy(std::size_t rows, std::size_t cols, PrimeField field, std::mt19937_64& rng) {
  const std::size_t n = rows + cols;
  if (n > field.modulus()) {
    throw FieldTooSmall("random Cauchy " + std::to_string(rows) + "x" + std::to_string(cols) + " over GF(" +
                        std::to_string(field.modulus()) + ")");
  }
  // Floyd's sampling of n distinct points.
  std::vector<FieldElem> pts;
  std::unordered_set<std::uint64_t> used;
  const std::uint64_t p = field.modulus();
  for (std::uint64_t j = p - n; j < p; ++j) {
    std::uniform_int_distribution<std::uint64_t> dist(0, j);
    std::uint64_t t = dist(rng);
    if (used.contains(t)) t = j;
    used.insert(t);
    pts.emplace_back(t);
  }
  std::shuffle(pts.begin(), pts.end(), rng);
  return cauchy(field, std::span(pts).first(rows), std::span(pts).subspan(rows));
}

FMatrix random_matrix(std::size_t rows, std::size_t cols, PrimeField field, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, field.modulus() - 1);
  FMatrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, FieldElem{dist(rng)});
  return m;
}

}  // namespace sgc
