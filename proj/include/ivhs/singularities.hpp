#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ivhs/errors.hpp"
#include "ivhs/jacobian.hpp"
#include "ivhs/matrix.hpp"
#include "ivhs/poly.hpp"

namespace ivhs {

enum class SingularityType { A1, A2, user };

std::string to_string(SingularityType t);
SingularityType parse_singularity_type(const std::string& s);

// The functional G -> sum_k c_k (d^{alpha_k} G)(p), alpha_k a multi-index.
template <class Field>
struct JetFunctional {
  std::vector<std::pair<typename Field::value_type, std::vector<std::uint32_t>>> terms;

  static JetFunctional evaluation(const Field& f, std::size_t n_vars) {
    return {{{f.one(), std::vector<std::uint32_t>(n_vars, 0)}}};
  }
  static JetFunctional directional(const Vector<Field>& direction) {
    JetFunctional out;
    for (std::size_t i = 0; i < direction.size(); ++i) {
      std::vector<std::uint32_t> alpha(direction.size(), 0);
      alpha[i] = 1;
      out.terms.emplace_back(direction[i], std::move(alpha));
    }
    return out;
  }
};

template <class Field>
struct SingularPoint {
  Vector<Field> coords;  // last nonzero coordinate is one
  SingularityType type = SingularityType::A1;
  std::uint32_t delta = 1;
  std::uint32_t tjurina = 1;
  std::vector<JetFunctional<Field>> conditions;          // equisingular rows, user types only
  std::vector<JetFunctional<Field>> adjoint_conditions;  // adjoint rows, user types only
};

template <class Field>
Vector<Field> normalize_projective(const Field& f, Vector<Field> coords) {
  std::size_t last = coords.size();
  for (std::size_t i = coords.size(); i-- > 0;)
    if (!f.is_zero(coords[i])) {
      last = i;
      break;
    }
  if (last == coords.size()) throw ShapeError("the zero vector is not a projective point");
  auto inv = f.inv(coords[last]);
  for (auto& c : coords) c = f.mul(c, inv);
  return coords;
}

// Builds a point with the delta/Tjurina table for A1 and A2; user types must
// bring their own invariants.
template <class Field>
SingularPoint<Field> make_singular_point(const Field& f, Vector<Field> coords, SingularityType type,
                                         std::optional<std::uint32_t> delta = std::nullopt,
                                         std::optional<std::uint32_t> tjurina = std::nullopt) {
  SingularPoint<Field> p;
  p.coords = normalize_projective(f, std::move(coords));
  p.type = type;
  switch (type) {
    case SingularityType::A1:
      p.delta = 1;
      p.tjurina = 1;
      break;
    case SingularityType::A2:
      p.delta = 1;
      p.tjurina = 2;
      break;
    case SingularityType::user:
      if (!delta || !tjurina) throw MissingConditions("user-supplied singularity types need delta and tjurina");
      p.delta = *delta;
      p.tjurina = *tjurina;
      break;
  }
  return p;
}

namespace detail {

template <class Field>
typename Field::value_type falling_factorial(const Field& f, std::uint32_t n, std::uint32_t k) {
  auto r = f.one();
  for (std::uint32_t i = 0; i < k; ++i) r = f.mul(r, f.from_int(static_cast<std::int64_t>(n - i)));
  return r;
}

template <class Field>
Vector<Field> jet_row(const Field& f, const MonomialIndex& index, const Vector<Field>& point,
                      const JetFunctional<Field>& jet) {
  Vector<Field> row(index.size(), f.zero());
  for (std::size_t col = 0; col < index.size(); ++col) {
    const Monomial& m = index[col];
    auto sum = f.zero();
    for (const auto& [c, alpha] : jet.terms) {
      if (alpha.size() != point.size()) throw ShapeError("jet multi-index has the wrong length");
      auto term = c;
      for (std::size_t i = 0; i < point.size() && !f.is_zero(term); ++i) {
        if (alpha[i] > m[i]) {
          term = f.zero();
          break;
        }
        term = f.mul(term, falling_factorial(f, m[i], alpha[i]));
        term = f.mul(term, f.pow(point[i], m[i] - alpha[i]));
      }
      sum = f.add(sum, term);
    }
    row[col] = sum;
  }
  return row;
}

template <class Field>
Matrix<Field> hessian_at(const HomogeneousPoly<Field>& F, const Vector<Field>& p) {
  const std::size_t n = F.n_vars();
  Matrix<Field> h(F.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto fi = partial(F, i);
    for (std::size_t j = 0; j < n; ++j) h(i, j) = evaluate(partial(fi, j), p);
  }
  return h;
}

}  // namespace detail

struct SingularityCheck {
  bool is_singular = false;
  std::size_t hessian_rank = 0;
  bool consistent = false;
};

// Checks F(p) = 0 and grad F(p) = 0, then the rank of the Hessian on the
// affine chart where the last nonzero coordinate of p is one. Only the A1
// (full rank) and A2 (corank one) Hessian shapes are compared; no further
// A_k recognition happens.
template <class Field>
SingularityCheck verify_singular(const HomogeneousPoly<Field>& F, const Vector<Field>& point, SingularityType claimed) {
  const Field& f = F.field();
  if (point.size() != F.n_vars()) throw ShapeError("point has the wrong number of coordinates");
  auto p = normalize_projective(f, point);
  bool singular = f.is_zero(evaluate(F, p));
  for (std::size_t j = 0; j < F.n_vars() && singular; ++j) singular = f.is_zero(evaluate(partial(F, j), p));
  if (!singular) throw NotSingular("F is smooth at the claimed " + to_string(claimed) + " point");

  std::size_t chart = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!f.is_zero(p[i])) chart = i;
  Matrix<Field> full = detail::hessian_at(F, p);
  Matrix<Field> affine(f, p.size() - 1, p.size() - 1);
  for (std::size_t i = 0, ai = 0; i < p.size(); ++i) {
    if (i == chart) continue;
    for (std::size_t j = 0, aj = 0; j < p.size(); ++j) {
      if (j == chart) continue;
      affine(ai, aj++) = full(i, j);
    }
    ++ai;
  }
  SingularityCheck out;
  out.is_singular = true;
  out.hessian_rank = rank(affine);
  const std::size_t local_dim = p.size() - 1;
  switch (claimed) {
    case SingularityType::A1:
      out.consistent = out.hessian_rank == local_dim;
      break;
    case SingularityType::A2:
      out.consistent = out.hessian_rank + 1 == local_dim;
      break;
    case SingularityType::user:
      out.consistent = true;
      break;
  }
  return out;
}

// For a complete intersection: every F_i vanishes at p and the Jacobian
// matrix drops rank. Returns the weights lambda spanning its left kernel when
// the drop is exactly one (the only case with built-in conditions).
template <class Field>
std::optional<Vector<Field>> verify_on_system(const PolySystem<Field>& system, const Vector<Field>& point) {
  const Field& f = system.field();
  const std::size_t r = system.size(), n = system.n_vars();
  if (point.size() != n) throw ShapeError("point has the wrong number of coordinates");
  Matrix<Field> jac(f, r, n);
  for (std::size_t i = 0; i < r; ++i) {
    if (!f.is_zero(evaluate(system.form(i), point)))
      throw NotSingular("form " + std::to_string(i + 1) + " does not vanish at the point");
    for (std::size_t j = 0; j < n; ++j) jac(i, j) = evaluate(partial(system.form(i), j), point);
  }
  Matrix<Field> left = kernel_basis(jac.transpose());
  if (left.cols() == 0) throw NotSingular("the complete intersection is smooth at the point");
  if (left.cols() != 1) return std::nullopt;
  return left.column(0);
}

// Linear conditions on one or several graded slots; rows act on the
// concatenated monomial coordinates of the slots.
template <class Field>
struct ConditionMatrix {
  std::size_t n_vars = 0;
  std::vector<std::uint32_t> degrees;
  Matrix<Field> rows;

  std::size_t row_count() const { return rows.rows(); }
  std::uint32_t degree() const {
    if (degrees.size() != 1) throw ShapeError("condition matrix spans several slots");
    return degrees.front();
  }
};

namespace detail {

template <class Field>
ConditionMatrix<Field> single_slot(const Field& f, std::size_t n_vars, std::uint32_t k,
                                   const std::vector<std::pair<Vector<Field>, JetFunctional<Field>>>& jets) {
  MonomialIndex index(n_vars, k);
  std::vector<Vector<Field>> rows;
  for (const auto& [point, jet] : jets) rows.push_back(jet_row(f, index, point, jet));
  return {n_vars, {k}, Matrix<Field>::from_rows(f, index.size(), rows)};
}

// Tangent direction of a cusp: a kernel vector of the projective Hessian
// outside the line through p. The kernel must be exactly two-dimensional.
template <class Field>
Vector<Field> cusp_direction(const HomogeneousPoly<Field>& F, const Vector<Field>& p) {
  const Field& f = F.field();
  Matrix<Field> ker = kernel_basis(hessian_at(F, p));
  if (ker.cols() != 2)
    throw MissingConditions("claimed A2 but the quadratic part is not a perfect square in one direction; "
                            "supply explicit conditions");
  Matrix<Field> pm = Matrix<Field>::from_columns(f, p.size(), {p});
  for (std::size_t c = 0; c < ker.cols(); ++c)
    if (!in_span(pm, ker.column(c))) return ker.column(c);
  throw InternalInconsistency("Hessian kernel collapsed onto the singular point");
}

template <class Field>
void require_consistent(const HomogeneousPoly<Field>& F, const SingularPoint<Field>& pt) {
  auto check = verify_singular(F, pt.coords, pt.type);
  if (!check.consistent)
    throw MissingConditions("point claimed " + to_string(pt.type) + " has Hessian rank " +
                            std::to_string(check.hessian_rank) + "; supply explicit conditions");
}

}  // namespace detail

// Tjurina-ideal membership at every point, in degree deg F. A1 gives the
// evaluation at p; A2 adds the derivative along the cusp's tangent line;
// user types contribute their explicit rows.
// The same functionals can be imposed in any degree k (deg F by default).
template <class Field>
ConditionMatrix<Field> equisingular_conditions(const HomogeneousPoly<Field>& F,
                                               const std::vector<SingularPoint<Field>>& pts,
                                               std::optional<std::uint32_t> k = std::nullopt) {
  const Field& f = F.field();
  std::vector<std::pair<Vector<Field>, JetFunctional<Field>>> jets;
  for (const auto& pt : pts) {
    switch (pt.type) {
      case SingularityType::A1:
        detail::require_consistent(F, pt);
        jets.emplace_back(pt.coords, JetFunctional<Field>::evaluation(f, F.n_vars()));
        break;
      case SingularityType::A2:
        detail::require_consistent(F, pt);
        jets.emplace_back(pt.coords, JetFunctional<Field>::evaluation(f, F.n_vars()));
        jets.emplace_back(pt.coords, JetFunctional<Field>::directional(detail::cusp_direction(F, pt.coords)));
        break;
      case SingularityType::user:
        verify_singular(F, pt.coords, pt.type);
        if (pt.conditions.empty()) throw MissingConditions("user-supplied singularity without a condition block");
        if (pt.conditions.size() != pt.tjurina)
          throw ConfigError("condition block has " + std::to_string(pt.conditions.size()) +
                            " rows but tjurina is " + std::to_string(pt.tjurina));
        for (const auto& jet : pt.conditions) jets.emplace_back(pt.coords, jet);
        break;
    }
  }
  return detail::single_slot(f, F.n_vars(), k.value_or(F.degree()), jets);
}

// Equisingular conditions for a system, one block of columns per form. For
// r = 1 this is the hypersurface case above. For r > 1 a node p (Jacobian
// rank r - 1) gives the single row sum_i lambda_i G_i(p), lambda spanning the
// left kernel of the Jacobian matrix at p.
template <class Field>
ConditionMatrix<Field> equisingular_conditions(const PolySystem<Field>& system,
                                               const std::vector<SingularPoint<Field>>& pts) {
  if (system.size() == 1) return equisingular_conditions(system.form(0), pts);
  const Field& f = system.field();
  const std::size_t n = system.n_vars();
  std::vector<MonomialIndex> blocks;
  std::size_t width = 0;
  for (auto d : system.degrees()) {
    blocks.emplace_back(n, d);
    width += blocks.back().size();
  }
  std::vector<Vector<Field>> rows;
  for (const auto& pt : pts) {
    if (pt.type != SingularityType::A1)
      throw MissingConditions("only A1 conditions are built in for complete intersections with r > 1");
    auto lambda = verify_on_system(system, pt.coords);
    if (!lambda) throw MissingConditions("Jacobian matrix drops rank by more than one; not a node");
    Vector<Field> row;
    row.reserve(width);
    for (std::size_t i = 0; i < system.size(); ++i) {
      auto block = detail::jet_row(f, blocks[i], pt.coords, JetFunctional<Field>::evaluation(f, n));
      for (auto& c : block) c = f.mul(c, (*lambda)[i]);
      row.insert(row.end(), block.begin(), block.end());
    }
    rows.push_back(std::move(row));
  }
  return {n, system.degrees(), Matrix<Field>::from_rows(f, width, rows)};
}

// Plain evaluation at each point, without any singularity verification.
template <class Field>
ConditionMatrix<Field> point_conditions(const Field& f, std::size_t n_vars, const std::vector<Vector<Field>>& points,
                                        std::uint32_t k) {
  std::vector<std::pair<Vector<Field>, JetFunctional<Field>>> jets;
  for (const auto& p : points) jets.emplace_back(normalize_projective(f, p), JetFunctional<Field>::evaluation(f, n_vars));
  return detail::single_slot(f, n_vars, k, jets);
}

// Adjoint (conductor) conditions in degree k: passage through every A1/A2
// point, explicit rows for user types.
template <class Field>
ConditionMatrix<Field> adjoint_conditions(const PolySystem<Field>& system, const std::vector<SingularPoint<Field>>& pts,
                                          std::uint32_t k) {
  const Field& f = system.field();
  const std::size_t n = system.n_vars();
  std::vector<std::pair<Vector<Field>, JetFunctional<Field>>> jets;
  for (const auto& pt : pts) {
    if (system.size() == 1)
      verify_singular(system.form(0), pt.coords, pt.type);
    else
      verify_on_system(system, pt.coords);
    if (pt.type == SingularityType::user) {
      if (pt.adjoint_conditions.empty()) throw MissingConditions("user-supplied singularity without adjoint rows");
      for (const auto& jet : pt.adjoint_conditions) jets.emplace_back(pt.coords, jet);
    } else {
      jets.emplace_back(pt.coords, JetFunctional<Field>::evaluation(f, n));
    }
  }
  return detail::single_slot(f, n, k, jets);
}

template <class Field>
ConditionMatrix<Field> adjoint_conditions(const HomogeneousPoly<Field>& F, const std::vector<SingularPoint<Field>>& pts,
                                          std::uint32_t k) {
  return adjoint_conditions(PolySystem<Field>({F}), pts, k);
}

// Forms of degree k satisfying every condition row.
template <class Field>
GradedSubspace<Field> sections_of_ideal(const ConditionMatrix<Field>& cond, std::uint32_t k) {
  if (cond.degree() != k)
    throw ShapeError("conditions were built in degree " + std::to_string(cond.degree()) + ", asked for degree " +
                     std::to_string(k));
  return {cond.n_vars, k, kernel_basis(cond.rows)};
}

// deg Z minus the number of independent conditions Z imposes in degree k.
template <class Field>
std::size_t h1_defect(const ConditionMatrix<Field>& cond, std::uint32_t k, std::size_t deg_z) {
  if (cond.degree() != k) throw ShapeError("conditions were built in a different degree");
  const std::size_t r = rank(cond.rows);
  if (r > deg_z)
    throw InternalInconsistency("rank " + std::to_string(r) + " of the conditions exceeds deg Z = " +
                                std::to_string(deg_z));
  return deg_z - r;
}

struct PlaneCurveDegree {
  std::uint32_t d = 0;
};
struct CompleteIntersectionType {
  std::uint32_t d1 = 0, d2 = 0;
};
using DegreeData = std::variant<PlaneCurveDegree, CompleteIntersectionType>;

std::int64_t arithmetic_genus(const DegreeData& data);
std::int64_t geometric_genus(const DegreeData& data, const std::vector<std::uint32_t>& deltas);

template <class Field>
std::int64_t geometric_genus(const DegreeData& data, const std::vector<SingularPoint<Field>>& pts) {
  std::vector<std::uint32_t> deltas;
  for (const auto& p : pts) deltas.push_back(p.delta);
  return geometric_genus(data, deltas);
}

// A random form of degree d singular at every given point: uniform over the
// linear space of forms whose value and first partials vanish there.
template <class Field>
HomogeneousPoly<Field> random_singular_form(const Field& f, std::size_t n_vars, std::uint32_t d,
                                            const std::vector<Vector<Field>>& points, std::mt19937_64& rng) {
  MonomialIndex index(n_vars, d);
  std::vector<Vector<Field>> rows;
  for (const auto& p : points) {
    rows.push_back(detail::jet_row(f, index, p, JetFunctional<Field>::evaluation(f, n_vars)));
    for (std::size_t j = 0; j < n_vars; ++j) {
      Vector<Field> e(n_vars, f.zero());
      e[j] = f.one();
      rows.push_back(detail::jet_row(f, index, p, JetFunctional<Field>::directional(e)));
    }
  }
  Matrix<Field> ker = kernel_basis(Matrix<Field>::from_rows(f, index.size(), rows));
  Vector<Field> coeffs(ker.cols());
  for (auto& c : coeffs) c = f.random(rng);
  return from_coordinates(f, index, multiply_vector(ker, coeffs));
}

}  // namespace ivhs
