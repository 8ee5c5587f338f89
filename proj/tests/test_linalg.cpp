#include "doctest.h"
#include "support.hpp"

using namespace ivhs;
using namespace ivhs::testing;

TEST_CASE("prime field arithmetic") {
  PrimeField f;
  CHECK(f.characteristic() == 65537);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.from_int(-1) == 65536);
  CHECK(f.from_rational(q(1, 2)) == f.inv(2));
  CHECK(f.lift(65536) == -1);
  CHECK_THROWS_AS(PrimeField(7).from_rational(q(1, 7)), CharacteristicConflict);
  CHECK_THROWS_AS(FieldSpec::prime(65536), ConfigError);
  CHECK(FieldSpec::prime(65537).name() == "GF(65537)");
  CHECK(FieldSpec::rationals().name() == "QQ");
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(1);
  PrimeField f;
  for (int t = 0; t < 500; ++t) {
    auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
  }
}

TEST_CASE("rank examples") {
  RationalField qq;
  CHECK(rank(Matrix<RationalField>::identity(qq, 2)) == 2);
  CHECK(rank(Matrix<RationalField>(qq, 1, 3)) == 0);
  auto m = Matrix<RationalField>::from_rows(qq, 2, {{1, 2}, {2, 4}});
  CHECK(rank(m) == 1);
  CHECK(rank(Matrix<PrimeField>::from_rows(gf(), 2, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
  RationalField qq;
  CHECK(kernel_basis(Matrix<RationalField>(qq, 1, 3)).cols() == 3);
  CHECK(kernel_basis(Matrix<RationalField>::identity(qq, 2)).cols() == 0);
  auto m = Matrix<RationalField>::from_rows(qq, 3, {{1, 1, 0}});
  auto k = kernel_basis(m);
  REQUIRE(k.cols() == 2);
  CHECK((m * k).is_zero());
}

TEST_CASE("in_span examples") {
  RationalField qq;
  auto id = Matrix<RationalField>::identity(qq, 2);
  auto c = in_span(id, {1, 1});
  REQUIRE(c);
  CHECK(*c == Vector<RationalField>{1, 1});
  auto e2 = Matrix<RationalField>::from_columns(qq, 2, {{0, 1}});
  CHECK_FALSE(in_span(e2, {1, 0}));
  auto b = Matrix<RationalField>::from_columns(qq, 3, {{1, 2, 0}, {0, 1, 1}});
  auto c3 = in_span(b, {3, 6, 0});
  REQUIRE(c3);
  CHECK(*c3 == Vector<RationalField>{3, 0});
  CHECK_THROWS_AS(in_span(b, {1, 2}), ShapeError);
}

TEST_CASE("shape and field errors") {
  RationalField qq;
  Matrix<RationalField> a(qq, 2, 3), b(qq, 2, 3);
  CHECK_THROWS_AS(a * b, ShapeError);
  CHECK_THROWS_AS(Matrix<RationalField>::from_rows(qq, 2, {{1, 2, 3}}), ShapeError);
  Matrix<PrimeField> p(PrimeField(101), 2, 2), r(PrimeField(103), 2, 2);
  CHECK_THROWS_AS(p * r, FieldMismatch);
}

TEST_CASE("rank equals rank of transpose, rank-nullity") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8, r = rng() % 5;
    auto m = random_low_rank(gf(), rows, cols, r, rng);
    CHECK(rank(m) == rank(m.transpose()));
    CHECK(rank(m) <= r);
    auto k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == cols);
    CHECK((m * k).is_zero());

    auto mq = random_rational_matrix(rows, cols, rng);
    CHECK(rank(mq) == rank(mq.transpose()));
    auto kq = kernel_basis(mq);
    CHECK(rank(mq) + kq.cols() == cols);
    CHECK((mq * kq).is_zero());
  }
}

namespace {

// Textbook Gauss-Jordan with mpq division at every step.
std::size_t naive_rank(Matrix<RationalField> a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      mpq_class factor = a(i, c) / a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("fraction-free elimination agrees with the naive oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    auto m = random_rational_matrix(1 + rng() % 7, 1 + rng() % 7, rng);
    CHECK(rank(m) == naive_rank(m));
    auto e = reduced_echelon(m);
    for (std::size_t i = 0; i < e.rank(); ++i) CHECK(e.rows(i, e.pivots[i]) == 1);
  }
}

TEST_CASE("cross-field consistency at small sizes") {
  std::mt19937_64 rng(4);
  RationalField qq;
  PrimeField f;
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    Matrix<RationalField> m(qq, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
    Matrix<PrimeField> mp(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) mp(i, j) = f.from_rational(m(i, j));
    CHECK(rank(m) == rank(mp));
    auto eq = reduced_echelon(m);
    auto ep = reduced_echelon(mp);
    CHECK(eq.pivots == ep.pivots);
    for (std::size_t i = 0; i < eq.rank(); ++i)
      for (std::size_t j = 0; j < cols; ++j) CHECK(f.from_rational(eq.rows(i, j)) == ep.rows(i, j));
  }
}

TEST_CASE("trailing pivot order keeps the first columns free") {
  RationalField qq;
  auto m = Matrix<RationalField>::from_rows(qq, 3, {{1, 1, 1}});
  auto lead = reduced_echelon(m, PivotOrder::leading);
  auto trail = reduced_echelon(m, PivotOrder::trailing);
  CHECK(lead.pivots == std::vector<std::size_t>{0});
  CHECK(trail.pivots == std::vector<std::size_t>{2});
}

TEST_CASE("column space helpers") {
  std::mt19937_64 rng(5);
  auto m = random_low_rank(gf(), 6, 5, 3, rng);
  auto basis = column_space_basis(m);
  CHECK(basis.cols() == 3);
  CHECK(column_span_contains(basis, m));
  CHECK(column_span_contains(m, basis));
}
