#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ivhs/errors.hpp"
#include "ivhs/field.hpp"
#include "ivhs/matrix.hpp"

namespace ivhs {

// Exponent vector of a monomial in x0..xN.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {
    for (auto e : exps_) degree_ += e;
  }

  static Monomial one(std::size_t n_vars) { return Monomial(std::vector<std::uint32_t>(n_vars, 0)); }
  static Monomial variable(std::size_t n_vars, std::size_t i) {
    std::vector<std::uint32_t> e(n_vars, 0);
    e.at(i) = 1;
    return Monomial(std::move(e));
  }

  std::size_t n_vars() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const {
    if (o.n_vars() != n_vars()) throw ShapeError("monomials in different numbers of variables");
    std::vector<std::uint32_t> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return Monomial(std::move(e));
  }

  // Graded lexicographic with x0 < x1 < ... < xN: degree first, then the
  // exponent of the largest variable present decides.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    if (auto c = a.exps_.size() <=> b.exps_.size(); c != 0) return c;
    for (std::size_t i = a.exps_.size(); i-- > 0;)
      if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::string to_string() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

// All degree-k monomials in n_vars variables, ascending in the canonical order.
std::vector<Monomial> monomial_basis(std::size_t n_vars, std::uint32_t k);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Monomial basis of one graded slice together with its reverse lookup.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  MonomialIndex(std::size_t n_vars, std::uint32_t degree);

  std::size_t n_vars() const { return n_vars_; }
  std::uint32_t degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t n_vars_ = 0;
  std::uint32_t degree_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> lookup_;
};

// Homogeneous form. The zero polynomial keeps a nominal degree so that it can
// stand in any graded slot.
template <class Field>
class HomogeneousPoly {
 public:
  using value_type = typename Field::value_type;
  using Terms = std::map<Monomial, value_type>;

  HomogeneousPoly() = default;
  HomogeneousPoly(Field field, std::size_t n_vars, std::uint32_t degree)
      : field_(std::move(field)), n_vars_(n_vars), degree_(degree) {}

  static HomogeneousPoly constant(const Field& f, std::size_t n_vars, const value_type& c) {
    HomogeneousPoly p(f, n_vars, 0);
    p.add_term(Monomial::one(n_vars), c);
    return p;
  }
  static HomogeneousPoly variable(const Field& f, std::size_t n_vars, std::size_t i) {
    HomogeneousPoly p(f, n_vars, 1);
    p.add_term(Monomial::variable(n_vars, i), f.one());
    return p;
  }
  static HomogeneousPoly monomial(const Field& f, const Monomial& m, const value_type& c) {
    HomogeneousPoly p(f, m.n_vars(), m.degree());
    p.add_term(m, c);
    return p;
  }

  const Field& field() const { return field_; }
  std::size_t n_vars() const { return n_vars_; }
  std::uint32_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  value_type coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  // Accumulates c*m; zero results are dropped.
  void add_term(const Monomial& m, const value_type& c) {
    if (m.n_vars() != n_vars_) throw ShapeError("term has the wrong number of variables");
    if (m.degree() != degree_)
      throw ShapeError("term " + m.to_string() + " has degree " + std::to_string(m.degree()) +
                       ", polynomial has degree " + std::to_string(degree_));
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = field_.add(it->second, c);
    if (field_.is_zero(it->second)) terms_.erase(it);
  }

  HomogeneousPoly scaled(const value_type& c) const {
    HomogeneousPoly out(field_, n_vars_, degree_);
    if (field_.is_zero(c)) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, field_.mul(v, c));
    return out;
  }

  HomogeneousPoly& operator+=(const HomogeneousPoly& o) {
    check_compatible(o);
    if (is_zero() && o.degree_ != degree_) degree_ = o.degree_;
    if (!o.is_zero() && o.degree_ != degree_) throw ShapeError("adding forms of different degrees");
    for (const auto& [m, v] : o.terms_) add_term(m, v);
    return *this;
  }
  HomogeneousPoly& operator-=(const HomogeneousPoly& o) { return *this += o.scaled(field_.neg(field_.one())); }
  friend HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
  friend HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) { return a -= b; }

  // Term-map equality; the nominal degree of a zero polynomial is ignored.
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    if (!(a.field_ == b.field_) || a.n_vars_ != b.n_vars_) return false;
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  void check_compatible(const HomogeneousPoly& o) const {
    require_same_field(field_, o.field_);
    if (o.n_vars_ != n_vars_)
      throw ShapeError("forms in " + std::to_string(n_vars_) + " and " + std::to_string(o.n_vars_) + " variables");
  }

 private:
  Field field_{};
  std::size_t n_vars_ = 0;
  std::uint32_t degree_ = 0;
  Terms terms_;
};

template <class Field>
HomogeneousPoly<Field> multiply(const HomogeneousPoly<Field>& p, const HomogeneousPoly<Field>& q) {
  p.check_compatible(q);
  const Field& f = p.field();
  HomogeneousPoly<Field> out(f, p.n_vars(), p.degree() + q.degree());
  for (const auto& [mp, cp] : p.terms())
    for (const auto& [mq, cq] : q.terms()) out.add_term(mp * mq, f.mul(cp, cq));
  return out;
}

template <class Field>
HomogeneousPoly<Field> power(const HomogeneousPoly<Field>& p, std::uint32_t e) {
  auto out = HomogeneousPoly<Field>::constant(p.field(), p.n_vars(), p.field().one());
  for (std::uint32_t i = 0; i < e; ++i) out = multiply(out, p);
  return out;
}

// Formal partial derivative; the derivative of a constant is the zero form of
// nominal degree 0.
template <class Field>
HomogeneousPoly<Field> partial(const HomogeneousPoly<Field>& p, std::size_t var) {
  if (var >= p.n_vars()) throw ShapeError("variable index out of range");
  const Field& f = p.field();
  HomogeneousPoly<Field> out(f, p.n_vars(), p.degree() == 0 ? 0 : p.degree() - 1);
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    auto e = m.exponents();
    auto k = e[var]--;
    out.add_term(Monomial(std::move(e)), f.mul(c, f.from_int(k)));
  }
  return out;
}

// x_i * d/dx_j applied to p.
template <class Field>
HomogeneousPoly<Field> apply_vector_field(const HomogeneousPoly<Field>& p, std::size_t i, std::size_t j) {
  return multiply(HomogeneousPoly<Field>::variable(p.field(), p.n_vars(), i), partial(p, j));
}

template <class Field>
typename Field::value_type evaluate(const HomogeneousPoly<Field>& p, const Vector<Field>& point) {
  if (point.size() != p.n_vars()) throw ShapeError("evaluation point has the wrong length");
  const Field& f = p.field();
  auto sum = f.zero();
  for (const auto& [m, c] : p.terms()) {
    auto term = c;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (m[i] > 0) term = f.mul(term, f.pow(point[i], m[i]));
    sum = f.add(sum, term);
  }
  return sum;
}

// p(A x): variable x_i is replaced by the linear form sum_j A(i,j) x_j.
template <class Field>
HomogeneousPoly<Field> substitute_linear(const HomogeneousPoly<Field>& p, const Matrix<Field>& a) {
  if (a.rows() != p.n_vars() || a.cols() != p.n_vars()) throw ShapeError("substitution matrix has the wrong shape");
  const Field& f = p.field();
  std::vector<HomogeneousPoly<Field>> images;
  for (std::size_t i = 0; i < p.n_vars(); ++i) {
    HomogeneousPoly<Field> li(f, p.n_vars(), 1);
    for (std::size_t j = 0; j < p.n_vars(); ++j) li.add_term(Monomial::variable(p.n_vars(), j), a(i, j));
    images.push_back(std::move(li));
  }
  HomogeneousPoly<Field> out(f, p.n_vars(), p.degree());
  for (const auto& [m, c] : p.terms()) {
    auto term = HomogeneousPoly<Field>::constant(f, p.n_vars(), c);
    for (std::size_t i = 0; i < p.n_vars(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) term = multiply(term, images[i]);
    out += term;
  }
  return out;
}

// Coordinates of p in the monomial basis of its slice.
template <class Field>
Vector<Field> coordinates(const HomogeneousPoly<Field>& p, const MonomialIndex& index) {
  if (p.n_vars() != index.n_vars()) throw ShapeError("form and basis disagree on variable count");
  if (!p.is_zero() && p.degree() != index.degree()) throw ShapeError("form and basis disagree on degree");
  Vector<Field> v(index.size(), p.field().zero());
  for (const auto& [m, c] : p.terms()) v[index.index_of(m)] = c;
  return v;
}

template <class Field>
HomogeneousPoly<Field> from_coordinates(const Field& f, const MonomialIndex& index, const Vector<Field>& v) {
  if (v.size() != index.size()) throw ShapeError("coordinate vector has the wrong length");
  HomogeneousPoly<Field> p(f, index.n_vars(), index.degree());
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(index[i], v[i]);
  return p;
}

template <class Field>
HomogeneousPoly<Field> random_form(const Field& f, std::size_t n_vars, std::uint32_t degree, std::mt19937_64& rng) {
  HomogeneousPoly<Field> p(f, n_vars, degree);
  for (const auto& m : monomial_basis(n_vars, degree)) p.add_term(m, f.random(rng));
  return p;
}

// Renders coefficients through Field::to_string (symmetric residues for
// prime fields), terms in descending canonical order.
template <class Field>
std::string to_string(const HomogeneousPoly<Field>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string c = p.field().to_string(it->second);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono = it->first.to_string();
    if (mono == "1")
      out += c;
    else if (c == "1")
      out += mono;
    else
      out += c + "*" + mono;
  }
  return out;
}

// Move a form between fields through its rational coefficients (symmetric
// lift out of a prime field).
template <class To, class From>
HomogeneousPoly<To> change_field(const HomogeneousPoly<From>& p, const To& to) {
  HomogeneousPoly<To> out(to, p.n_vars(), p.degree());
  for (const auto& [m, c] : p.terms()) out.add_term(m, to.from_rational(p.field().lift(c)));
  return out;
}

// Linear subspace of one graded slice; basis columns are coordinate vectors in
// the monomial basis of that degree.
template <class Field>
struct GradedSubspace {
  std::size_t n_vars = 0;
  std::uint32_t degree = 0;
  Matrix<Field> basis;

  std::size_t dimension() const { return basis.cols(); }
  std::size_t ambient_dimension() const { return basis.rows(); }
};

template <class Field>
GradedSubspace<Field> span(const Field& f, std::size_t n_vars, std::uint32_t degree,
                           const std::vector<HomogeneousPoly<Field>>& polys) {
  MonomialIndex index(n_vars, degree);
  std::vector<Vector<Field>> rows;
  rows.reserve(polys.size());
  for (const auto& p : polys) {
    require_same_field(f, p.field());
    if (p.n_vars() != n_vars) throw ShapeError("span over forms in different numbers of variables");
    if (!p.is_zero() && p.degree() != degree)
      throw ShapeError("span in degree " + std::to_string(degree) + " given a form of degree " +
                       std::to_string(p.degree()));
    rows.push_back(coordinates(p, index));
  }
  Matrix<Field> m = Matrix<Field>::from_rows(f, index.size(), rows);
  return {n_vars, degree, reduced_echelon(m).rows.transpose()};
}

}  // namespace ivhs
