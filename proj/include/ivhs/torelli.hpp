#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivhs/errors.hpp"
#include "ivhs/jacobian.hpp"
#include "ivhs/matrix.hpp"
#include "ivhs/poly.hpp"
#include "ivhs/singularities.hpp"

namespace ivhs {

enum class Domain { full, adjoint };
enum class Verdict { injective_mod_trivial, violated, inconclusive };

// How the period map is turned into linear algebra. `jacobian` multiplies by
// Q(G) in the ordinary Jacobian ring (hypersurfaces only); `cayley` multiplies
// by sum_i y_i G_i in the bigraded ring of the Cayley form.
enum class PeriodRoute { jacobian, cayley };

std::string to_string(Domain d);
std::string to_string(Verdict v);
std::string to_string(PeriodRoute r);
Domain parse_domain(const std::string& s);

// Coordinates on the direct sum of H^0(O(d_i)), one monomial block per form.
class TupleLayout {
 public:
  TupleLayout() = default;
  TupleLayout(std::size_t n_vars, const std::vector<std::uint32_t>& degrees) {
    offsets_.push_back(0);
    for (auto d : degrees) {
      slots_.emplace_back(n_vars, d);
      offsets_.push_back(offsets_.back() + slots_.back().size());
    }
  }

  std::size_t slot_count() const { return slots_.size(); }
  const MonomialIndex& slot(std::size_t i) const { return slots_.at(i); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t dimension() const { return offsets_.back(); }

  template <class Field>
  Vector<Field> flatten(const std::vector<HomogeneousPoly<Field>>& tuple) const {
    if (tuple.size() != slots_.size()) throw ShapeError("tuple has the wrong number of entries");
    Vector<Field> v;
    v.reserve(dimension());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      auto c = coordinates(tuple[i], slots_[i]);
      v.insert(v.end(), c.begin(), c.end());
    }
    return v;
  }

  template <class Field>
  std::vector<HomogeneousPoly<Field>> unflatten(const Field& f, const Vector<Field>& v) const {
    if (v.size() != dimension()) throw ShapeError("coordinate vector does not match the tuple layout");
    std::vector<HomogeneousPoly<Field>> out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      Vector<Field> block(v.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                          v.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
      out.push_back(from_coordinates(f, slots_[i], block));
    }
    return out;
  }

 private:
  std::vector<MonomialIndex> slots_;
  std::vector<std::size_t> offsets_;
};

template <class Field>
struct DeformationSpace {
  TupleLayout layout;
  Matrix<Field> basis;  // columns: tuples (G_1..G_r) satisfying the equisingular conditions

  std::size_t total_dim() const { return basis.cols(); }
};

template <class Field>
struct TrivialSpace {
  TupleLayout layout;
  std::vector<Vector<Field>> generators;
  std::size_t vector_field_count = 0;
  std::size_t ideal_change_count = 0;
  Matrix<Field> basis;

  std::size_t dimension() const { return basis.cols(); }
};

template <class Field>
DeformationSpace<Field> deformation_space(const PolySystem<Field>& system, const std::vector<SingularPoint<Field>>& pts) {
  const Field& f = system.field();
  DeformationSpace<Field> def{TupleLayout(system.n_vars(), system.degrees()), {}};
  if (pts.empty()) {
    def.basis = Matrix<Field>::identity(f, def.layout.dimension());
    return def;
  }
  def.basis = kernel_basis(equisingular_conditions(system, pts).rows);
  return def;
}

// Tuples (v(F_1), ..., v(F_r)) for v = x_i d/dx_j, and ideal-basis changes
// with h*F_j placed in slot i for every monomial h of degree d_i - d_j >= 0.
template <class Field>
TrivialSpace<Field> trivial_space(const PolySystem<Field>& system) {
  const Field& f = system.field();
  const std::size_t n = system.n_vars(), r = system.size();
  const auto d = system.degrees();
  TrivialSpace<Field> t;
  t.layout = TupleLayout(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<HomogeneousPoly<Field>> tuple;
      for (const auto& F : system.forms()) tuple.push_back(apply_vector_field(F, i, j));
      t.generators.push_back(t.layout.flatten(tuple));
      ++t.vector_field_count;
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (d[i] < d[j]) continue;
      for (const auto& h : monomial_basis(n, d[i] - d[j])) {
        std::vector<HomogeneousPoly<Field>> tuple;
        for (std::size_t k = 0; k < r; ++k) tuple.emplace_back(f, n, d[k]);
        tuple[i] = multiply(HomogeneousPoly<Field>::monomial(f, h, f.one()), system.form(j));
        t.generators.push_back(t.layout.flatten(tuple));
        ++t.ideal_change_count;
      }
    }
  t.basis = column_space_basis(Matrix<Field>::from_columns(f, t.layout.dimension(), t.generators));
  return t;
}

// Q = sum_i G_i prod_{j != i} F_j; Q = G when r = 1.
template <class Field>
HomogeneousPoly<Field> q_of(const PolySystem<Field>& system, const std::vector<HomogeneousPoly<Field>>& g) {
  const Field& f = system.field();
  if (g.size() != system.size()) throw ShapeError("deformation tuple has the wrong number of entries");
  HomogeneousPoly<Field> q(f, system.n_vars(), system.degree_sum());
  for (std::size_t i = 0; i < g.size(); ++i) {
    system.form(i).check_compatible(g[i]);
    if (!g[i].is_zero() && g[i].degree() != system.form(i).degree())
      throw ShapeError("G_" + std::to_string(i + 1) + " has degree " + std::to_string(g[i].degree()) +
                       ", expected " + std::to_string(system.form(i).degree()));
    if (g[i].is_zero()) continue;
    HomogeneousPoly<Field> term = g[i];
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) term = multiply(term, system.form(j));
    q += term;
  }
  return q;
}

template <class Field>
struct PeriodKernel {
  Domain domain = Domain::full;
  PeriodRoute route = PeriodRoute::jacobian;
  std::int64_t source_degree = 0;  // a = sum d_i - N - 1
  std::int64_t target_degree = 0;  // b = a + sum d_i
  std::size_t domain_dim = 0;
  std::size_t target_dim = 0;  // dimension of the quotient slice receiving H * Q
  bool no_test_forms = false;
  TupleLayout layout;
  Matrix<Field> basis;  // kernel tuples, columns in `layout` coordinates
};

namespace detail {

template <class Field>
std::vector<HomogeneousPoly<Field>> test_forms(const PolySystem<Field>& system,
                                               const std::vector<SingularPoint<Field>>& pts, Domain domain,
                                               std::uint32_t a) {
  const Field& f = system.field();
  MonomialIndex index(system.n_vars(), a);
  std::vector<HomogeneousPoly<Field>> out;
  if (domain == Domain::full) {
    for (const auto& m : index.monomials()) out.push_back(HomogeneousPoly<Field>::monomial(f, m, f.one()));
    return out;
  }
  auto sections = sections_of_ideal(adjoint_conditions(system, pts, a), a);
  for (std::size_t c = 0; c < sections.dimension(); ++c)
    out.push_back(from_coordinates(f, index, sections.basis.column(c)));
  return out;
}

}  // namespace detail

// Solves for the deformation tuples G with H * (period image of G) = 0 in the
// target quotient for every test form H of degree a.
template <class Field>
PeriodKernel<Field> period_kernel(const PolySystem<Field>& system, const std::vector<SingularPoint<Field>>& pts,
                                  Domain domain, std::optional<PeriodRoute> route = std::nullopt) {
  const Field& f = system.field();
  check_characteristic(system);
  PeriodKernel<Field> out;
  out.domain = domain;
  out.route = route.value_or(system.size() == 1 ? PeriodRoute::jacobian : PeriodRoute::cayley);
  if (out.route == PeriodRoute::jacobian && system.size() != 1)
    throw ShapeError("the Jacobian-ring route only models hypersurfaces; use the Cayley route for r > 1");
  const std::int64_t a = static_cast<std::int64_t>(system.degree_sum()) - static_cast<std::int64_t>(system.n_vars());
  out.source_degree = a;
  out.target_degree = a + system.degree_sum();

  DeformationSpace<Field> def = deformation_space(system, pts);
  out.layout = def.layout;
  if (a < 0) {
    out.no_test_forms = true;
    out.basis = def.basis;
    return out;
  }
  const auto forms = detail::test_forms(system, pts, domain, static_cast<std::uint32_t>(a));
  out.domain_dim = forms.size();

  std::vector<std::vector<HomogeneousPoly<Field>>> tuples;
  for (std::size_t t = 0; t < def.total_dim(); ++t) tuples.push_back(def.layout.unflatten(f, def.basis.column(t)));

  std::vector<Vector<Field>> columns(def.total_dim());
  if (out.route == PeriodRoute::jacobian) {
    JacobianModel<Field> model(system);
    out.target_dim = model.hilbert_value(static_cast<std::uint32_t>(out.target_degree));
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const auto q = q_of(system, tuples[t]);
      for (const auto& h : forms) {
        auto image = model.reduce(multiply(h, q));
        columns[t].insert(columns[t].end(), image.begin(), image.end());
      }
    }
  } else {
    CayleyJacobianModel<Field> model(system);
    out.target_dim = model.dimension_y1(a);
    for (std::size_t t = 0; t < tuples.size(); ++t)
      for (const auto& h : forms) {
        std::vector<HomogeneousPoly<Field>> product;
        for (const auto& g : tuples[t]) product.push_back(multiply(h, g));
        auto image = model.reduce_y1(a, product);
        columns[t].insert(columns[t].end(), image.begin(), image.end());
      }
  }
  if (forms.empty()) out.no_test_forms = true;
  Matrix<Field> equations = Matrix<Field>::from_columns(f, forms.size() * out.target_dim, columns);
  out.basis = def.basis * kernel_basis(equations);
  return out;
}

template <class Field>
struct TorelliReport {
  std::size_t dim_def = 0;
  std::size_t dim_trivial = 0;
  std::size_t dim_kernel = 0;
  bool kernel_in_trivial = false;
  bool trivial_in_kernel = false;
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::optional<std::vector<HomogeneousPoly<Field>>> witness;
  Domain domain_used = Domain::full;
  PeriodRoute route = PeriodRoute::jacobian;
  std::int64_t source_degree = 0;
  std::int64_t target_degree = 0;
  std::size_t domain_dim = 0;
  std::size_t target_dim = 0;
  std::size_t deg_z = 0;
  std::optional<std::size_t> h1_defect;  // at degree source_degree
  std::optional<std::int64_t> genus;
  std::vector<std::string> assumptions;

  std::int64_t moduli_count() const {
    return static_cast<std::int64_t>(dim_def) - static_cast<std::int64_t>(dim_trivial);
  }
  std::int64_t unexplained_kernel() const {
    return static_cast<std::int64_t>(dim_kernel) - static_cast<std::int64_t>(dim_trivial);
  }
};

// Decides ker(period map) inside the trivial directions. Nothing throws past
// the input validation: degenerate situations become verdict fields.
template <class Field>
TorelliReport<Field> torelli_verdict(const PolySystem<Field>& system, const std::vector<SingularPoint<Field>>& pts,
                                     Domain domain, std::vector<std::string> assumptions = {},
                                     std::optional<PeriodRoute> route = std::nullopt) {
  const Field& f = system.field();
  TorelliReport<Field> rep;
  rep.domain_used = domain;
  rep.assumptions = std::move(assumptions);

  const PeriodKernel<Field> kernel = period_kernel(system, pts, domain, route);
  const DeformationSpace<Field> def = deformation_space(system, pts);
  const TrivialSpace<Field> trivial = trivial_space(system);
  rep.route = kernel.route;
  rep.source_degree = kernel.source_degree;
  rep.target_degree = kernel.target_degree;
  rep.domain_dim = kernel.domain_dim;
  rep.target_dim = kernel.target_dim;
  rep.dim_def = def.total_dim();
  rep.dim_trivial = trivial.dimension();
  rep.dim_kernel = kernel.basis.cols();
  rep.trivial_in_kernel = column_span_contains(kernel.basis, trivial.basis);

  rep.kernel_in_trivial = true;
  for (std::size_t c = 0; c < kernel.basis.cols(); ++c) {
    auto column = kernel.basis.column(c);
    if (in_span(trivial.basis, column)) continue;
    rep.kernel_in_trivial = false;
    rep.witness = kernel.layout.unflatten(f, column);
    break;
  }

  if (kernel.source_degree >= 0) {
    const auto a = static_cast<std::uint32_t>(kernel.source_degree);
    ConditionMatrix<Field> cond;
    if (system.size() == 1) {
      cond = equisingular_conditions(system.form(0), pts, a);
    } else {
      std::vector<Vector<Field>> coords;
      for (const auto& p : pts) coords.push_back(p.coords);
      cond = point_conditions(f, system.n_vars(), coords, a);
    }
    rep.deg_z = cond.row_count();
    rep.h1_defect = h1_defect(cond, a, rep.deg_z);
  }

  try {
    const auto d = system.degrees();
    if (system.size() == 1 && system.n_vars() == 3)
      rep.genus = geometric_genus(PlaneCurveDegree{d[0]}, pts);
    else if (system.size() == 2 && system.n_vars() == 4)
      rep.genus = geometric_genus(CompleteIntersectionType{d[0], d[1]}, pts);
  } catch (const GenusNegative&) {
    rep.genus.reset();
  }

  if (kernel.no_test_forms) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "no test forms";
  } else if (rep.kernel_in_trivial) {
    rep.verdict = Verdict::injective_mod_trivial;
  } else {
    rep.verdict = Verdict::violated;
    rep.reason = "kernel direction outside the trivial deformations";
  }
  return rep;
}

}  // namespace ivhs
