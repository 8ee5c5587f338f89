#pragma once

#include <random>
#include <string>
#include <vector>

#include "ivhs/field.hpp"
#include "ivhs/matrix.hpp"
#include "ivhs/poly.hpp"

namespace ivhs::testing {

inline PrimeField gf() { return PrimeField(); }

inline mpq_class q(long n, long d = 1) { return mpq_class(n, d); }

template <class Field>
Matrix<Field> random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix<Field> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.random(rng);
  return m;
}

// Rank-deficient on purpose: the last rows are combinations of the first.
template <class Field>
Matrix<Field> random_low_rank(const Field& f, std::size_t rows, std::size_t cols, std::size_t r, std::mt19937_64& rng) {
  return random_matrix(f, rows, r, rng) * random_matrix(f, r, cols, rng);
}

// Small-integer rational matrix, with a few fractional entries mixed in.
inline Matrix<RationalField> random_rational_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  RationalField f;
  Matrix<RationalField> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      long num = static_cast<long>(rng() % 11) - 5;
      long den = rng() % 4 == 0 ? static_cast<long>(1 + rng() % 3) : 1;
      m(i, j) = mpq_class(num, den);
      m(i, j).canonicalize();
    }
  return m;
}

template <class Field>
std::vector<HomogeneousPoly<Field>> fermat(const Field& f, std::size_t n_vars, std::uint32_t d) {
  HomogeneousPoly<Field> p(f, n_vars, d);
  for (std::size_t i = 0; i < n_vars; ++i) {
    std::vector<std::uint32_t> e(n_vars, 0);
    e[i] = d;
    p.add_term(Monomial(e), f.one());
  }
  return {p};
}

template <class Field>
HomogeneousPoly<Field> linear_form(const Field& f, const std::vector<std::int64_t>& coeffs) {
  HomogeneousPoly<Field> p(f, coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::variable(coeffs.size(), i), f.from_int(coeffs[i]));
  return p;
}

// Coefficients of ((1 - t^g) / (1 - t))^n, i.e. (1 + t + ... + t^(g-1))^n.
inline std::vector<std::size_t> series_oracle(std::size_t n, std::uint32_t g, std::uint32_t up_to) {
  std::vector<std::size_t> c(up_to + 1, 0);
  c[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> next(up_to + 1, 0);
    for (std::uint32_t i = 0; i <= up_to; ++i)
      for (std::uint32_t j = 0; j < g && i + j <= up_to; ++j) next[i + j] += c[i];
    c = next;
  }
  return c;
}

template <class Field>
bool same_subspace(const Matrix<Field>& a, const Matrix<Field>& b) {
  return column_span_contains(a, b) && column_span_contains(b, a);
}

}  // namespace ivhs::testing
