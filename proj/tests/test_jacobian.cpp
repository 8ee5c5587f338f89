#include "doctest.h"
#include "ivhs/jacobian.hpp"
#include "support.hpp"

#include <thread>

using namespace ivhs;
using namespace ivhs::testing;

namespace {

template <class Field>
JacobianModel<Field> fermat_model(const Field& f, std::uint32_t d) {
  return JacobianModel<Field>(PolySystem<Field>(fermat(f, 3, d)));
}

}  // namespace

TEST_CASE("ideal slices of the Fermat quartic") {
  auto m = fermat_model(RationalField{}, 4);
  CHECK(m.ideal_piece(3).dimension() == 3);
  CHECK(m.ideal_piece(4).dimension() == 9);
  CHECK(m.ideal_piece(2).dimension() == 0);
  for (std::uint32_t k = 0; k < 9; ++k) CHECK(m.ideal_piece(k).dimension() + m.hilbert_value(k) == binomial(k + 2, 2));
}

TEST_CASE("Hilbert function equals the series oracle") {
  for (std::uint32_t d = 3; d <= 6; ++d) {
    const std::uint32_t top = 3 * (d - 2) + 1;
    auto expect = series_oracle(3, d - 1, top);
    CHECK(fermat_model(RationalField{}, d).hilbert_function(top) == expect);
    CHECK(fermat_model(PrimeField{}, d).hilbert_function(top) == expect);
  }
  CHECK(fermat_model(RationalField{}, 4).hilbert_function(7) == std::vector<std::size_t>{1, 3, 6, 7, 6, 3, 1, 0});
}

TEST_CASE("random smooth plane curves: series oracle, sigma, symmetry") {
  std::mt19937_64 rng(21);
  PrimeField f;
  for (std::uint32_t d = 3; d <= 6; ++d) {
    JacobianModel<PrimeField> m(PolySystem<PrimeField>({random_form(f, 3, d, rng)}));
    const std::uint32_t sigma = 3 * (d - 2);
    CHECK(m.hilbert_function(sigma + 1) == series_oracle(3, d - 1, sigma + 1));
    auto rep = m.socle_report(sigma + 1);
    REQUIRE(rep.sigma_observed);
    CHECK(*rep.sigma_observed == sigma);
    CHECK(rep.symmetric);
    CHECK(rep.top_dimension == 1);
  }
}

TEST_CASE("socle report of Fermat curves") {
  auto cubic = fermat_model(RationalField{}, 3).socle_report(5);
  CHECK(cubic.hilbert == std::vector<std::size_t>{1, 3, 3, 1, 0, 0});
  CHECK(*cubic.sigma_observed == 3);
  CHECK(cubic.symmetric);
  auto quartic = fermat_model(RationalField{}, 4).socle_report(8);
  CHECK(*quartic.sigma_observed == 6);
  CHECK(quartic.gorenstein_shaped);
  for (std::uint32_t a = 0; a <= 6; ++a) CHECK(quartic.pairing_perfect.at(a));
  CHECK(quartic.formula_sigma == 2);
  CHECK(quartic.formula_discrepancy);
}

TEST_CASE("truncated scan is flagged") {
  auto rep = fermat_model(RationalField{}, 4).socle_report(4);
  CHECK_FALSE(rep.artinian_within_bound);
  CHECK_FALSE(rep.sigma_observed);
}

TEST_CASE("multiplication maps") {
  RationalField qq;
  auto m = fermat_model(qq, 4);
  const auto& F = m.system().form(0);
  for (std::uint32_t a = 0; a < 4; ++a) CHECK(m.mult_map(F, a).matrix.is_zero());
  auto one = HomogeneousPoly<RationalField>::constant(qq, 3, 1);
  for (std::uint32_t a = 0; a < 7; ++a)
    CHECK(m.mult_map(one, a).matrix == Matrix<RationalField>::identity(qq, m.hilbert_value(a)));
  auto l = linear_form(qq, {1, 1, 1});
  auto mu = m.mult_map(l, 2);
  CHECK(mu.matrix.rows() == 7);
  CHECK(mu.matrix.cols() == 6);
  CHECK(rank(mu.matrix) == 6);
}

TEST_CASE("mult_map is linear in the multiplier") {
  std::mt19937_64 rng(22);
  PrimeField f;
  JacobianModel<PrimeField> m(PolySystem<PrimeField>({random_form(f, 3, 5, rng)}));
  for (int t = 0; t < 10; ++t) {
    const std::uint32_t e = 1 + rng() % 3, a = rng() % 4;
    auto p = random_form(f, 3, e, rng), q2 = random_form(f, 3, e, rng);
    auto sum = p;
    sum += q2;
    CHECK(m.mult_map(sum, a).matrix == m.mult_map(p, a).matrix + m.mult_map(q2, a).matrix);
  }
}

TEST_CASE("strong Lefschetz for Fermat curves with x0 + x1 + x2") {
  for (std::uint32_t d = 3; d <= 5; ++d) {
    auto m = fermat_model(RationalField{}, d);
    auto rep = m.slp_check_forms({linear_form(RationalField{}, {1, 1, 1})});
    CHECK(rep.pass);
    CHECK(*rep.sigma == 3 * (d - 2));
    for (const auto& c : rep.trials[0].checks) CHECK(c.rank == c.expected);
  }
}

TEST_CASE("strong Lefschetz for a random quintic") {
  std::mt19937_64 rng(23);
  PrimeField f;
  JacobianModel<PrimeField> m(PolySystem<PrimeField>({random_form(f, 3, 5, rng)}));
  auto rep = m.slp_check(2, 9);
  CHECK(rep.pass);
  CHECK(rep.warnings.empty());
}

TEST_CASE("small fields warn, dividing characteristics are refused") {
  CHECK_THROWS_AS(fermat_model(PrimeField(2), 4), CharacteristicConflict);
  CHECK_THROWS_AS(fermat_model(PrimeField(5), 5), CharacteristicConflict);
  auto m = fermat_model(PrimeField(31), 3);
  auto rep = m.slp_check(1, 0);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("system validation") {
  RationalField qq;
  using Sys = PolySystem<RationalField>;
  CHECK_THROWS_AS(Sys(std::vector<HomogeneousPoly<RationalField>>{}), ShapeError);
  CHECK_THROWS_AS(Sys({HomogeneousPoly<RationalField>(qq, 3, 3)}), ShapeError);
  CHECK_THROWS_AS(Sys({linear_form(qq, {1, 0, 0})}), ShapeError);
  CHECK_THROWS_AS(Sys(fermat(qq, 2, 3)), ShapeError);
}

TEST_CASE("slices are shared across threads") {
  std::mt19937_64 rng(24);
  PrimeField f;
  JacobianModel<PrimeField> m(PolySystem<PrimeField>({random_form(f, 3, 6, rng)}));
  std::vector<std::size_t> seen(8);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < seen.size(); ++i) pool.emplace_back([&, i] { seen[i] = m.hilbert_value(6 + i % 2); });
  for (auto& t : pool) t.join();
  auto expect = series_oracle(3, 5, 7);
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == expect[6 + i % 2]);
}

TEST_CASE("Cayley slices specialize to the Jacobian ring for one form") {
  std::mt19937_64 rng(25);
  PrimeField f;
  PolySystem<PrimeField> sys({random_form(f, 3, 4, rng)});
  JacobianModel<PrimeField> j(sys);
  CayleyJacobianModel<PrimeField> c(sys);
  for (std::int64_t e = -1; e <= 3; ++e) CHECK(c.dimension_y1(e) == j.hilbert_value(static_cast<std::uint32_t>(e + 4)));
}
