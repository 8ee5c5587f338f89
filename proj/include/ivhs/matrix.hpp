#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ivhs/errors.hpp"
#include "ivhs/field.hpp"

namespace ivhs {

template <class Field>
using Vector = std::vector<typename Field::value_type>;

// Dense row-major matrix over an exact field.
template <class Field>
class Matrix {
 public:
  using value_type = typename Field::value_type;

  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<Vector<Field>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("row length does not match column count");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector<Field>>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("column length does not match row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<value_type> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<Field> column(std::size_t j) const {
    Vector<Field> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<Vector<Field>> columns() const {
    std::vector<Vector<Field>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <class Field>
void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("operands live over " + a.spec().name() + " and " + b.spec().name());
}

template <class Field>
Matrix<Field> operator*(const Matrix<Field>& a, const Matrix<Field>& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  const Field& f = a.field();
  Matrix<Field> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

template <class Field>
Matrix<Field> operator+(const Matrix<Field>& a, const Matrix<Field>& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum shape mismatch");
  Matrix<Field> c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

template <class Field>
Vector<Field> multiply_vector(const Matrix<Field>& m, const Vector<Field>& v) {
  if (v.size() != m.cols()) throw ShapeError("vector length does not match column count");
  const Field& f = m.field();
  Vector<Field> out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!f.is_zero(v[j])) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

// Which end of the column order pivots are drawn from. `trailing` processes
// columns last-to-first; the non-pivot columns are then the greedy-first
// monomials completing the row space to the whole ambient space.
enum class PivotOrder { leading, trailing };

template <class Field>
struct Echelon {
  Matrix<Field> rows;               // rank x cols, fully reduced, pivot entries one
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

template <class Field>
Echelon<Field> gauss_jordan_modular(const Matrix<Field>& m) {
  const Field& f = m.field();
  Matrix<Field> a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && f.is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    auto inv = f.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || f.is_zero(a(i, c))) continue;
      auto factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!f.is_zero(a(r, j))) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<Field> out(f, r, a.cols());
  for (std::size_t i = 0; i < r; ++i) std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
  return {std::move(out), std::move(pivots)};
}

// Fraction-free Gauss-Jordan: rows are scaled to integers, every update is
// (pivot*a_ij - a_ic*a_rj) / previous_pivot with an exact division, and the
// only rational divisions happen once at the end when pivots are normalized.
inline Echelon<RationalField> gauss_jordan_fraction_free(const Matrix<RationalField>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (scale / m(i, j).get_den());
  }
  std::vector<std::size_t> pivots;
  mpz_class previous = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const mpz_class pivot = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const mpz_class factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) continue;
        t = pivot * a[i][j];
        if (sgn(factor) != 0) t -= factor * a[r][j];
        if (!mpz_divisible_p(t.get_mpz_t(), previous.get_mpz_t()))
          throw InternalInconsistency("fraction-free elimination lost exactness");
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = pivot;
    pivots.push_back(c);
    ++r;
  }
  RationalField q;
  Matrix<RationalField> out(q, r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& lead = a[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(a[i][j]) == 0) continue;
      out(i, j) = mpq_class(a[i][j], lead);
      out(i, j).canonicalize();
    }
  }
  return {std::move(out), std::move(pivots)};
}

}  // namespace detail

// Reduced row echelon form with deterministic pivoting: within a column the
// first row holding a nonzero entry is chosen.
template <class Field>
Echelon<Field> reduced_echelon(const Matrix<Field>& m, PivotOrder order = PivotOrder::leading) {
  auto run = [](const Matrix<Field>& x) {
    if constexpr (std::is_same_v<Field, RationalField>)
      return detail::gauss_jordan_fraction_free(x);
    else
      return detail::gauss_jordan_modular(x);
  };
  if (order == PivotOrder::leading) return run(m);

  const std::size_t n = m.cols();
  Matrix<Field> reversed(m.field(), m.rows(), n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) reversed(i, n - 1 - j) = m(i, j);
  Echelon<Field> e = run(reversed);
  Matrix<Field> back(m.field(), e.rows.rows(), n);
  for (std::size_t i = 0; i < e.rows.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) back(i, n - 1 - j) = e.rows(i, j);
  for (auto& p : e.pivots) p = n - 1 - p;
  return {std::move(back), std::move(e.pivots)};
}

template <class Field>
std::size_t rank(const Matrix<Field>& m) {
  return reduced_echelon(m).rank();
}

// Columns of the result span the right null space of m.
template <class Field>
Matrix<Field> kernel_basis(const Matrix<Field>& m) {
  const Field& f = m.field();
  Echelon<Field> e = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Matrix<Field> basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = f.one();
    for (std::size_t i = 0; i < e.rank(); ++i) basis(e.pivots[i], k) = f.neg(e.rows(i, free_cols[k]));
  }
  if (basis.cols() + e.rank() != m.cols()) throw InternalInconsistency("rank-nullity violated");
  return basis;
}

// Coefficients c with basis * c = v, or nullopt when v is outside the column
// span. Free coefficients are set to zero.
template <class Field>
std::optional<Vector<Field>> in_span(const Matrix<Field>& basis, const Vector<Field>& v) {
  if (v.size() != basis.rows())
    throw ShapeError("vector of length " + std::to_string(v.size()) + " against basis columns of length " +
                     std::to_string(basis.rows()));
  const Field& f = basis.field();
  const std::size_t k = basis.cols();
  Matrix<Field> aug(f, basis.rows(), k + 1);
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(i, j);
    aug(i, k) = v[i];
  }
  Echelon<Field> e = reduced_echelon(aug);
  Vector<Field> coeffs(k, f.zero());
  for (std::size_t i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] == k) return std::nullopt;
    coeffs[e.pivots[i]] = e.rows(i, k);
  }
  return coeffs;
}

// Every column of `inner` lies in the column span of `outer`.
template <class Field>
bool column_span_contains(const Matrix<Field>& outer, const Matrix<Field>& inner) {
  if (inner.cols() == 0) return true;
  if (outer.rows() != inner.rows()) throw ShapeError("subspaces live in different ambient spaces");
  const std::size_t base = rank(outer);
  Matrix<Field> both(outer.field(), outer.rows(), outer.cols() + inner.cols());
  for (std::size_t i = 0; i < outer.rows(); ++i) {
    for (std::size_t j = 0; j < outer.cols(); ++j) both(i, j) = outer(i, j);
    for (std::size_t j = 0; j < inner.cols(); ++j) both(i, outer.cols() + j) = inner(i, j);
  }
  return rank(both) == base;
}

// Canonical basis (columns) of the column span: the transposed nonzero rows
// of the reduced echelon form of the transpose.
template <class Field>
Matrix<Field> column_space_basis(const Matrix<Field>& m) {
  return reduced_echelon(m.transpose()).rows.transpose();
}

}  // namespace ivhs
