#include "doctest.h"
#include "ivhs/singularities.hpp"
#include "ivhs/torelli.hpp"
#include "support.hpp"

using namespace ivhs;
using namespace ivhs::testing;

namespace {

using QPoly = HomogeneousPoly<RationalField>;
const RationalField qq;

QPoly parse(std::initializer_list<std::pair<long, std::vector<std::uint32_t>>> terms) {
  std::uint32_t d = 0;
  for (auto e : terms.begin()->second) d += e;
  QPoly p(qq, 3, d);
  for (const auto& [c, e] : terms) p.add_term(Monomial(e), c);
  return p;
}

// y^2 z - x^3 - x^2 z
QPoly nodal_cubic() { return parse({{1, {0, 2, 1}}, {-1, {3, 0, 0}}, {-1, {2, 0, 1}}}); }
// y^2 z - x^3
QPoly cuspidal_cubic() { return parse({{1, {0, 2, 1}}, {-1, {3, 0, 0}}}); }
// x^2 z^2 - y^2 z^2 + x^4 + y^4 + x y^3
QPoly one_node_quartic() {
  return parse({{1, {2, 0, 2}}, {-1, {0, 2, 2}}, {1, {4, 0, 0}}, {1, {0, 4, 0}}, {1, {1, 3, 0}}});
}
// x^2 y^2 + y^2 z^2 + z^2 x^2
QPoly three_node_quartic() { return parse({{1, {2, 2, 0}}, {1, {0, 2, 2}}, {1, {2, 0, 2}}}); }
// y^2 z^2 + x^3 z + x^2 y^2 + x^4: cusp at (0:0:1), node at (0:1:0)
QPoly node_cusp_quartic() { return parse({{1, {0, 2, 2}}, {1, {3, 0, 1}}, {1, {2, 2, 0}}, {1, {4, 0, 0}}}); }

SingularPoint<RationalField> point(Vector<RationalField> c, SingularityType t) {
  return make_singular_point(qq, std::move(c), t);
}

struct Curve {
  QPoly F;
  std::vector<SingularPoint<RationalField>> pts;
};

std::vector<Curve> configured_curves() {
  return {
      {nodal_cubic(), {point({0, 0, 1}, SingularityType::A1)}},
      {cuspidal_cubic(), {point({0, 0, 1}, SingularityType::A2)}},
      {one_node_quartic(), {point({0, 0, 1}, SingularityType::A1)}},
      {three_node_quartic(),
       {point({1, 0, 0}, SingularityType::A1), point({0, 1, 0}, SingularityType::A1),
        point({0, 0, 1}, SingularityType::A1)}},
      {node_cusp_quartic(), {point({0, 0, 1}, SingularityType::A2), point({0, 1, 0}, SingularityType::A1)}},
  };
}

}  // namespace

TEST_CASE("verify_singular on the cubics") {
  auto n = verify_singular(nodal_cubic(), {0, 0, 1}, SingularityType::A1);
  CHECK(n.is_singular);
  CHECK(n.hessian_rank == 2);
  CHECK(n.consistent);
  auto c = verify_singular(cuspidal_cubic(), {0, 0, 1}, SingularityType::A2);
  CHECK(c.hessian_rank == 1);
  CHECK(c.consistent);
  CHECK_FALSE(verify_singular(cuspidal_cubic(), {0, 0, 1}, SingularityType::A1).consistent);
  CHECK_THROWS_AS(verify_singular(fermat(qq, 3, 4)[0], {0, 0, 1}, SingularityType::A1), NotSingular);
}

TEST_CASE("condition row counts") {
  auto node = equisingular_conditions(nodal_cubic(), {point({0, 0, 1}, SingularityType::A1)});
  CHECK(node.row_count() == 1);
  CHECK(rank(node.rows) == 1);
  auto cusp = equisingular_conditions(cuspidal_cubic(), {point({0, 0, 1}, SingularityType::A2)});
  CHECK(cusp.row_count() == 2);
  CHECK(rank(cusp.rows) == 2);
  CHECK(equisingular_conditions(fermat(qq, 3, 4)[0], {}).row_count() == 0);

  auto adj = adjoint_conditions(one_node_quartic(), {point({0, 0, 1}, SingularityType::A1)}, 1);
  CHECK(adj.row_count() == 1);
  CHECK(adj.rows.cols() == 3);
  auto nc = configured_curves()[4];
  for (std::uint32_t k = 0; k < 4; ++k) CHECK(adjoint_conditions(nc.F, nc.pts, k).row_count() == 2);
  CHECK(adjoint_conditions(fermat(qq, 3, 4)[0], {}, 1).row_count() == 0);
}

TEST_CASE("cusp tangent row is the derivative along y = 0") {
  auto cusp = equisingular_conditions(cuspidal_cubic(), {point({0, 0, 1}, SingularityType::A2)});
  MonomialIndex idx(3, 3);
  // The tangent cone is y^2 = 0, so x z^2 is detected and y z^2 is not.
  Vector<RationalField> g(idx.size(), 0);
  g[idx.index_of(Monomial({1, 0, 2}))] = 1;
  CHECK(multiply_vector(cusp.rows, g)[1] != 0);
  Vector<RationalField> h(idx.size(), 0);
  h[idx.index_of(Monomial({0, 1, 2}))] = 1;
  CHECK(multiply_vector(cusp.rows, h) == Vector<RationalField>{0, 0});
}

TEST_CASE("sections and H1 defect") {
  auto one = point_conditions(qq, 3, {{1, 2, 3}}, 2);
  CHECK(sections_of_ideal(one, 2).dimension() == 5);
  auto collinear = point_conditions(qq, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}}, 2);
  CHECK(sections_of_ideal(collinear, 2).dimension() == 3);
  CHECK(h1_defect(collinear, 2, 4) == 1);
  CHECK(h1_defect(point_conditions(qq, 3, {{0, 0, 1}}, 1), 1, 1) == 0);
  auto node5 = point_conditions(qq, 3, {{0, 0, 1}}, 2);
  CHECK(h1_defect(node5, 2, 1) == 0);
  auto none = point_conditions(qq, 3, {}, 3);
  CHECK(sections_of_ideal(none, 3).dimension() == 10);
  CHECK_THROWS_AS(sections_of_ideal(none, 2), ShapeError);
  CHECK_THROWS_AS(h1_defect(collinear, 2, 2), InternalInconsistency);
}

TEST_CASE("genus values") {
  CHECK(arithmetic_genus(PlaneCurveDegree{4}) == 3);
  CHECK(geometric_genus(PlaneCurveDegree{3}, std::vector<std::uint32_t>{1}) == 0);
  CHECK(geometric_genus(PlaneCurveDegree{5}, std::vector<std::uint32_t>{}) == 6);
  CHECK(geometric_genus(PlaneCurveDegree{4}, std::vector<std::uint32_t>{1, 1, 1}) == 0);
  CHECK(geometric_genus(PlaneCurveDegree{4}, std::vector<std::uint32_t>{1, 1}) == 1);
  CHECK(geometric_genus(CompleteIntersectionType{2, 3}, std::vector<std::uint32_t>{}) == 4);
  CHECK_THROWS_AS(geometric_genus(PlaneCurveDegree{3}, std::vector<std::uint32_t>{1, 1}), GenusNegative);
}

TEST_CASE("vector fields satisfy every equisingular row") {
  for (const auto& c : configured_curves()) {
    auto cond = equisingular_conditions(c.F, c.pts);
    MonomialIndex idx(3, c.F.degree());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        auto image = multiply_vector(cond.rows, coordinates(apply_vector_field(c.F, i, j), idx));
        for (const auto& v : image) CHECK(v == 0);
      }
  }
}

TEST_CASE("sections plus rank fill the slice") {
  for (const auto& c : configured_curves())
    for (std::uint32_t k = 0; k <= c.F.degree(); ++k) {
      auto cond = adjoint_conditions(c.F, c.pts, k);
      CHECK(sections_of_ideal(cond, k).dimension() + rank(cond.rows) == binomial(k + 2, 2));
      auto eq = equisingular_conditions(c.F, c.pts, k);
      CHECK(sections_of_ideal(eq, k).dimension() + rank(eq.rows) == binomial(k + 2, 2));
    }
}

TEST_CASE("adjoint forms of degree d-3 count the geometric genus") {
  for (const auto& c : configured_curves()) {
    const std::uint32_t a = c.F.degree() - 3;
    auto sections = sections_of_ideal(adjoint_conditions(c.F, c.pts, a), a);
    CHECK(static_cast<std::int64_t>(sections.dimension()) == geometric_genus(PlaneCurveDegree{c.F.degree()}, c.pts));
  }
  auto q = configured_curves()[2];
  CHECK(sections_of_ideal(adjoint_conditions(q.F, q.pts, 1), 1).dimension() == 2);
}

TEST_CASE("mislabelled points are rejected") {
  CHECK_THROWS_AS(equisingular_conditions(cuspidal_cubic(), {point({0, 0, 1}, SingularityType::A1)}),
                  MissingConditions);
  CHECK_THROWS_AS(equisingular_conditions(nodal_cubic(), {point({1, 0, 0}, SingularityType::A1)}), NotSingular);
  CHECK_THROWS_AS(make_singular_point(qq, {0, 0, 1}, SingularityType::user), MissingConditions);
  CHECK_THROWS_AS(parse_singularity_type("D4"), ConfigError);
}

TEST_CASE("user conditions reproduce the built-in node rows") {
  auto pt = make_singular_point(qq, {0, 0, 1}, SingularityType::user, 1u, 1u);
  pt.conditions.push_back(JetFunctional<RationalField>::evaluation(qq, 3));
  auto user = equisingular_conditions(nodal_cubic(), {pt});
  auto builtin = equisingular_conditions(nodal_cubic(), {point({0, 0, 1}, SingularityType::A1)});
  CHECK(user.rows == builtin.rows);
  pt.tjurina = 2;
  CHECK_THROWS_AS(equisingular_conditions(nodal_cubic(), {pt}), ConfigError);
}

TEST_CASE("random singular forms have nodes where asked") {
  std::mt19937_64 rng(31);
  PrimeField f;
  std::vector<Vector<PrimeField>> pts{{0, 0, 1}, {1, 0, 0}};
  for (std::uint32_t d = 4; d <= 6; ++d) {
    auto F = random_singular_form(f, 3, d, pts, rng);
    for (const auto& p : pts) CHECK(verify_singular(F, p, SingularityType::A1).consistent);
  }
}

TEST_CASE("nodes on complete intersections") {
  RationalField f;
  // quadric cone x0 x1 - x2^2 and a cubic through its vertex (0:0:0:1) with a smooth branch there
  HomogeneousPoly<RationalField> a(f, 4, 2), b(f, 4, 3);
  a.add_term(Monomial({1, 1, 0, 0}), 1);
  a.add_term(Monomial({0, 0, 2, 0}), -1);
  b.add_term(Monomial({1, 0, 0, 2}), 1);
  b.add_term(Monomial({0, 1, 0, 2}), 1);
  b.add_term(Monomial({3, 0, 0, 0}), 1);
  b.add_term(Monomial({0, 3, 0, 0}), 1);
  PolySystem<RationalField> sys({a, b});
  auto lambda = verify_on_system(sys, {0, 0, 0, 1});
  REQUIRE(lambda);
  CHECK(((*lambda)[0] != 0 && (*lambda)[1] == 0));
  auto cond = equisingular_conditions(sys, {make_singular_point(f, {0, 0, 0, 1}, SingularityType::A1)});
  CHECK(cond.row_count() == 1);
  CHECK(cond.rows.cols() == 10 + 20);
  CHECK_THROWS_AS(verify_on_system(sys, {1, 0, 0, 0}), NotSingular);
}
