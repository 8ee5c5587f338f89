#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ivhs/errors.hpp"
#include "ivhs/matrix.hpp"
#include "ivhs/poly.hpp"

namespace ivhs {

// The defining forms (F_1, ..., F_r) of a complete intersection in P^N.
template <class Field>
class PolySystem {
 public:
  using Poly = HomogeneousPoly<Field>;

  PolySystem() = default;
  explicit PolySystem(std::vector<Poly> forms) : forms_(std::move(forms)) {
    if (forms_.empty()) throw ShapeError("a system needs at least one form");
    field_ = forms_.front().field();
    n_vars_ = forms_.front().n_vars();
    if (n_vars_ < 3) throw ShapeError("ambient projective space must have dimension at least 2");
    for (const auto& f : forms_) {
      require_same_field(field_, f.field());
      if (f.n_vars() != n_vars_) throw ShapeError("forms of a system must share their variables");
      if (f.is_zero()) throw ShapeError("defining forms must be nonzero");
      if (f.degree() < 2) throw ShapeError("defining forms must have degree at least 2");
    }
  }

  const Field& field() const { return field_; }
  std::size_t n_vars() const { return n_vars_; }
  std::size_t ambient_dimension() const { return n_vars_ - 1; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<Poly>& forms() const { return forms_; }
  const Poly& form(std::size_t i) const { return forms_.at(i); }

  std::vector<std::uint32_t> degrees() const {
    std::vector<std::uint32_t> d;
    for (const auto& f : forms_) d.push_back(f.degree());
    return d;
  }
  std::uint32_t degree_sum() const {
    std::uint32_t s = 0;
    for (const auto& f : forms_) s += f.degree();
    return s;
  }
  std::uint32_t max_degree() const {
    std::uint32_t m = 0;
    for (const auto& f : forms_) m = std::max(m, f.degree());
    return m;
  }

 private:
  Field field_{};
  std::size_t n_vars_ = 0;
  std::vector<Poly> forms_;
};

// Refuses prime fields whose characteristic divides a defining degree: the
// Euler relation that puts F_i into its own Jacobian ideal breaks there.
template <class Field>
void check_characteristic(const PolySystem<Field>& system) {
  const auto p = system.field().characteristic();
  if (p == 0) return;
  for (auto d : system.degrees())
    if (d % p == 0)
      throw CharacteristicConflict("characteristic " + std::to_string(p) + " divides the degree " +
                                   std::to_string(d) + "; Euler's identity fails");
}

// Per-key value computed at most once. Distinct keys may be computed
// concurrently; concurrent requests for one key block on a single computation.
template <class Key, class T>
class WriteOnceCache {
 public:
  template <class Make>
  const T& get(const Key& key, Make&& make) const {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard lock(mutex_);
      auto& slot = entries_[key];
      if (!slot) slot = std::make_shared<Entry>();
      entry = slot;
    }
    std::call_once(entry->once, [&] { entry->value.emplace(make()); });
    return *entry->value;
  }

 private:
  struct Entry {
    std::once_flag once;
    std::optional<T> value;
  };
  mutable std::mutex mutex_;
  mutable std::map<Key, std::shared_ptr<Entry>> entries_;
};

// A subspace of k^n together with a monomial complement, used to compute
// coordinates of classes in the quotient.
template <class Field>
struct QuotientSlice {
  std::size_t ambient = 0;
  Echelon<Field> subspace;              // trailing pivots
  std::vector<std::size_t> complement;  // ascending non-pivot columns

  static QuotientSlice build(const Field& f, std::size_t ambient, const std::vector<Vector<Field>>& generators) {
    QuotientSlice s;
    s.ambient = ambient;
    s.subspace = reduced_echelon(Matrix<Field>::from_rows(f, ambient, generators), PivotOrder::trailing);
    std::vector<bool> pivot(ambient, false);
    for (auto p : s.subspace.pivots) pivot[p] = true;
    for (std::size_t j = 0; j < ambient; ++j)
      if (!pivot[j]) s.complement.push_back(j);
    return s;
  }

  std::size_t quotient_dimension() const { return complement.size(); }

  Vector<Field> reduce(Vector<Field> v) const {
    const Field& f = subspace.rows.field();
    if (v.size() != ambient) throw ShapeError("vector does not live in this slice");
    for (std::size_t r = 0; r < subspace.rank(); ++r) {
      const auto c = subspace.pivots[r];
      if (f.is_zero(v[c])) continue;
      const auto factor = v[c];
      auto row = subspace.rows.row(r);
      for (std::size_t j = 0; j < ambient; ++j)
        if (!f.is_zero(row[j])) v[j] = f.sub(v[j], f.mul(factor, row[j]));
    }
    Vector<Field> out;
    out.reserve(complement.size());
    for (auto j : complement) out.push_back(v[j]);
    return out;
  }

  bool contains(const Vector<Field>& v) const {
    const Field& f = subspace.rows.field();
    for (const auto& c : reduce(v))
      if (!f.is_zero(c)) return false;
    return true;
  }
};

template <class Field>
struct MultiplicationMap {
  std::uint32_t source_degree = 0;
  std::uint32_t target_degree = 0;
  Matrix<Field> matrix;  // h_target x h_source
};

template <class Field>
struct SocleReport {
  std::vector<std::size_t> hilbert;
  std::uint32_t bound = 0;
  bool artinian_within_bound = false;
  std::optional<std::uint32_t> sigma_observed;
  bool symmetric = false;
  std::size_t top_dimension = 0;
  bool gorenstein_shaped = false;  // false means NotGorensteinShaped was reported
  std::map<std::uint32_t, bool> pairing_perfect;
  std::int64_t formula_sigma = 0;  // sum(d_i - 1) - 1
  bool formula_discrepancy = false;
};

struct SlpCheck {
  std::uint32_t source = 0;
  std::uint32_t power = 0;
  std::size_t rank = 0;
  std::size_t expected = 0;
};

template <class Field>
struct SlpTrial {
  HomogeneousPoly<Field> form;
  std::vector<SlpCheck> checks;
  std::vector<SlpCheck> failures;
  bool pass = false;
};

template <class Field>
struct SlpReport {
  bool pass = false;
  bool artinian = false;
  std::optional<std::uint32_t> sigma;
  std::vector<SlpTrial<Field>> trials;
  std::vector<std::string> warnings;
};

// Graded pieces of R = k[x_0..x_N] / (dF_i/dx_j for all i, j).
template <class Field>
class JacobianModel {
 public:
  using Poly = HomogeneousPoly<Field>;
  using value_type = typename Field::value_type;

  explicit JacobianModel(PolySystem<Field> system)
      : system_(std::move(system)), cache_(std::make_shared<WriteOnceCache<std::uint32_t, Slice>>()) {
    check_characteristic(system_);
    for (const auto& f : system_.forms())
      for (std::size_t j = 0; j < system_.n_vars(); ++j) {
        Poly g = partial(f, j);
        if (!g.is_zero()) generators_.push_back(std::move(g));
      }
    for (const auto& f : system_.forms())
      if (!in_ideal(f)) throw InternalInconsistency("defining form " + to_string(f) + " escaped its Jacobian ideal");
  }

  const PolySystem<Field>& system() const { return system_; }
  const Field& field() const { return system_.field(); }
  std::size_t n_vars() const { return system_.n_vars(); }
  const std::vector<Poly>& generators() const { return generators_; }

  // (J)_k, spanned by every monomial multiple of every partial landing in degree k.
  GradedSubspace<Field> ideal_piece(std::uint32_t k) const {
    const Slice& s = slice(k);
    return {n_vars(), k, s.quotient.subspace.rows.transpose()};
  }

  std::size_t hilbert_value(std::uint32_t k) const { return slice(k).quotient.quotient_dimension(); }

  std::vector<std::size_t> hilbert_function(std::uint32_t up_to) const {
    std::vector<std::size_t> h;
    for (std::uint32_t k = 0; k <= up_to; ++k) h.push_back(hilbert_value(k));
    return h;
  }

  // Monomials whose classes form the chosen basis of R_k.
  std::vector<Monomial> complement_basis(std::uint32_t k) const {
    const Slice& s = slice(k);
    std::vector<Monomial> out;
    for (auto j : s.quotient.complement) out.push_back(s.index[j]);
    return out;
  }

  // Coordinates of the class of p in R_{deg p}.
  Vector<Field> reduce(const Poly& p) const {
    const Slice& s = slice(p.degree());
    return s.quotient.reduce(coordinates(p, s.index));
  }

  bool in_ideal(const Poly& p) const {
    if (p.is_zero()) return true;
    const Slice& s = slice(p.degree());
    return s.quotient.contains(coordinates(p, s.index));
  }

  // Matrix of H -> H*Q from R_a to R_{a + deg Q} in complement bases.
  MultiplicationMap<Field> mult_map(const Poly& q, std::uint32_t a) const {
    require_same_field(field(), q.field());
    if (q.n_vars() != n_vars()) throw ShapeError("multiplier lives in a different polynomial ring");
    const std::uint32_t b = a + q.degree();
    const auto source = complement_basis(a);
    const std::size_t target_dim = hilbert_value(b);
    Matrix<Field> m(field(), target_dim, source.size());
    for (std::size_t col = 0; col < source.size(); ++col) {
      auto image = reduce(multiply(Poly::monomial(field(), source[col], field().one()), q));
      for (std::size_t row = 0; row < target_dim; ++row) m(row, col) = image[row];
    }
    return {a, b, std::move(m)};
  }

  SocleReport<Field> socle_report(std::uint32_t k_max) const {
    SocleReport<Field> rep;
    rep.bound = k_max;
    rep.hilbert = hilbert_function(k_max);
    rep.artinian_within_bound = rep.hilbert.back() == 0;
    std::int64_t formula = -1;
    for (auto d : system_.degrees()) formula += static_cast<std::int64_t>(d) - 1;
    rep.formula_sigma = formula;
    if (!rep.artinian_within_bound) return rep;

    std::uint32_t sigma = 0;
    for (std::uint32_t k = 0; k <= k_max; ++k)
      if (rep.hilbert[k] > 0) sigma = k;
    rep.sigma_observed = sigma;
    rep.formula_discrepancy = formula != static_cast<std::int64_t>(sigma);
    rep.symmetric = true;
    for (std::uint32_t a = 0; a <= sigma; ++a)
      if (rep.hilbert[a] != rep.hilbert[sigma - a]) rep.symmetric = false;
    rep.top_dimension = rep.hilbert[sigma];
    rep.gorenstein_shaped = rep.top_dimension == 1;
    if (!rep.gorenstein_shaped) return rep;

    for (std::uint32_t a = 0; a <= sigma; ++a) {
      const auto left = complement_basis(a);
      const auto right = complement_basis(sigma - a);
      if (left.size() != right.size()) {
        rep.pairing_perfect[a] = false;
        continue;
      }
      Matrix<Field> gram(field(), left.size(), right.size());
      for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
          gram(i, j) = reduce(Poly::monomial(field(), left[i] * right[j], field().one()))[0];
      rep.pairing_perfect[a] = rank(gram) == left.size();
    }
    return rep;
  }

  // Scan bound past which a complete intersection of N+1 partials of degree
  // at most max_d - 1 has no room left.
  std::uint32_t artinian_scan_bound() const {
    return static_cast<std::uint32_t>(n_vars()) * (system_.max_degree() - 2) + 1;
  }

  SlpReport<Field> slp_check(std::size_t trials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<Poly> forms;
    for (std::size_t t = 0; t < trials; ++t) {
      Poly l(field(), n_vars(), 1);
      for (std::size_t i = 0; i < n_vars(); ++i) l.add_term(Monomial::variable(n_vars(), i), field().random_nonzero(rng));
      forms.push_back(std::move(l));
    }
    return slp_check_forms(forms);
  }

  // SLP holds when some candidate form gives maximal rank for every
  // ell^m : R_a -> R_{a+m} with a + m <= sigma.
  SlpReport<Field> slp_check_forms(const std::vector<Poly>& forms) const {
    SlpReport<Field> rep;
    const auto size = field().size();
    if (size != 0 && size < 100)
      rep.warnings.push_back("field " + field().spec().name() + " has fewer than 100 elements; sampling is weak");
    const auto bound = artinian_scan_bound();
    const auto h = hilbert_function(bound);
    rep.artinian = h.back() == 0;
    if (!rep.artinian) {
      rep.warnings.push_back("quotient is not Artinian up to degree " + std::to_string(bound));
      return rep;
    }
    std::uint32_t sigma = 0;
    for (std::uint32_t k = 0; k <= bound; ++k)
      if (h[k] > 0) sigma = k;
    rep.sigma = sigma;
    for (const auto& l : forms) {
      if (l.degree() != 1 || l.n_vars() != n_vars()) throw ShapeError("Lefschetz candidates must be linear forms");
      SlpTrial<Field> trial;
      trial.form = l;
      Poly lm = Poly::constant(field(), n_vars(), field().one());
      for (std::uint32_t m = 1; m <= sigma; ++m) {
        lm = multiply(lm, l);
        for (std::uint32_t a = 0; a + m <= sigma; ++a) {
          SlpCheck c{a, m, rank(mult_map(lm, a).matrix), std::min(h[a], h[a + m])};
          trial.checks.push_back(c);
          if (c.rank != c.expected) trial.failures.push_back(c);
        }
      }
      trial.pass = trial.failures.empty();
      rep.pass = rep.pass || trial.pass;
      rep.trials.push_back(std::move(trial));
    }
    return rep;
  }

 private:
  struct Slice {
    MonomialIndex index;
    QuotientSlice<Field> quotient;
  };

  const Slice& slice(std::uint32_t k) const {
    return cache_->get(k, [&] {
      Slice s{MonomialIndex(n_vars(), k), {}};
      std::vector<Vector<Field>> rows;
      for (const auto& g : generators_) {
        if (g.degree() > k) continue;
        for (const auto& m : monomial_basis(n_vars(), k - g.degree()))
          rows.push_back(coordinates(multiply(Poly::monomial(field(), m, field().one()), g), s.index));
      }
      s.quotient = QuotientSlice<Field>::build(field(), s.index.size(), rows);
      return s;
    });
  }

  PolySystem<Field> system_;
  std::vector<Poly> generators_;
  std::shared_ptr<WriteOnceCache<std::uint32_t, Slice>> cache_;
};

// Bigraded Jacobian ring of the Cayley form F = sum_i y_i F_i on
// k[x_0..x_N, y_1..y_r], with deg x_j = (1, 0) and deg y_i = (-d_i, 1).
// Elements of y-degree one and x-weight e are tuples (P_1..P_r) standing for
// sum_i y_i P_i with deg P_i = e + d_i. The ideal is generated by the F_i and
// by dF/dx_j = sum_i y_i dF_i/dx_j. For r = 1 the y-degree-one slice is
// y * (J_F + (F))_{e+d}, i.e. the ordinary Jacobian ideal.
template <class Field>
class CayleyJacobianModel {
 public:
  using Poly = HomogeneousPoly<Field>;

  explicit CayleyJacobianModel(PolySystem<Field> system)
      : system_(std::move(system)),
        y1_cache_(std::make_shared<WriteOnceCache<std::int64_t, TupleSlice>>()),
        y0_cache_(std::make_shared<WriteOnceCache<std::int64_t, std::size_t>>()) {
    check_characteristic(system_);
  }

  const PolySystem<Field>& system() const { return system_; }

  // dim of S_e / (F_1, ..., F_r)_e.
  std::size_t dimension_y0(std::int64_t e) const {
    if (e < 0) return 0;
    return y0_cache_->get(e, [&] {
      const Field& f = system_.field();
      MonomialIndex index(system_.n_vars(), static_cast<std::uint32_t>(e));
      std::vector<Vector<Field>> rows;
      for (const auto& form : system_.forms()) {
        if (form.degree() > e) continue;
        for (const auto& m : monomial_basis(system_.n_vars(), static_cast<std::uint32_t>(e) - form.degree()))
          rows.push_back(coordinates(multiply(Poly::monomial(f, m, f.one()), form), index));
      }
      return index.size() - rank(Matrix<Field>::from_rows(f, index.size(), rows));
    });
  }

  std::size_t dimension_y1(std::int64_t e) const { return y1_slice(e).quotient.quotient_dimension(); }

  // Coordinates of the class of sum_i y_i P_i in the y-degree-one quotient.
  Vector<Field> reduce_y1(std::int64_t e, const std::vector<Poly>& tuple) const {
    const TupleSlice& s = y1_slice(e);
    return s.quotient.reduce(s.flatten(tuple));
  }

  bool in_ideal_y1(std::int64_t e, const std::vector<Poly>& tuple) const {
    const TupleSlice& s = y1_slice(e);
    return s.quotient.contains(s.flatten(tuple));
  }

 private:
  struct TupleSlice {
    std::vector<MonomialIndex> blocks;
    std::vector<std::size_t> offsets;
    QuotientSlice<Field> quotient;

    std::size_t ambient() const { return offsets.back(); }

    Vector<Field> flatten(const std::vector<Poly>& tuple) const {
      if (tuple.size() != blocks.size()) throw ShapeError("tuple length does not match the number of forms");
      Vector<Field> v;
      v.reserve(ambient());
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        auto c = coordinates(tuple[i], blocks[i]);
        v.insert(v.end(), c.begin(), c.end());
      }
      return v;
    }
  };

  const TupleSlice& y1_slice(std::int64_t e) const {
    return y1_cache_->get(e, [&] {
      const Field& f = system_.field();
      const std::size_t n = system_.n_vars(), r = system_.size();
      const auto d = system_.degrees();
      TupleSlice s;
      s.offsets.push_back(0);
      for (std::size_t i = 0; i < r; ++i) {
        if (e + static_cast<std::int64_t>(d[i]) < 0) throw ShapeError("negative slot degree in Cayley slice");
        s.blocks.emplace_back(n, static_cast<std::uint32_t>(e + d[i]));
        s.offsets.push_back(s.offsets.back() + s.blocks.back().size());
      }
      auto zero_tuple = [&] {
        std::vector<Poly> t;
        for (std::size_t i = 0; i < r; ++i) t.emplace_back(f, n, static_cast<std::uint32_t>(e + d[i]));
        return t;
      };
      std::vector<Vector<Field>> rows;
      // y_k * m * F_i
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
          std::int64_t deg = e + static_cast<std::int64_t>(d[k]) - static_cast<std::int64_t>(d[i]);
          if (deg < 0) continue;
          for (const auto& m : monomial_basis(n, static_cast<std::uint32_t>(deg))) {
            auto t = zero_tuple();
            t[k] = multiply(Poly::monomial(f, m, f.one()), system_.form(i));
            rows.push_back(s.flatten(t));
          }
        }
      // m * sum_i y_i dF_i/dx_j
      if (e + 1 >= 0) {
        std::vector<std::vector<Poly>> partials(r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < n; ++j) partials[i].push_back(partial(system_.form(i), j));
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& m : monomial_basis(n, static_cast<std::uint32_t>(e + 1))) {
            auto mono = Poly::monomial(f, m, f.one());
            std::vector<Poly> t;
            for (std::size_t i = 0; i < r; ++i) {
              Poly p = multiply(mono, partials[i][j]);
              if (p.is_zero()) p = Poly(f, n, static_cast<std::uint32_t>(e + d[i]));
              t.push_back(std::move(p));
            }
            rows.push_back(s.flatten(t));
          }
      }
      s.quotient = QuotientSlice<Field>::build(f, s.ambient(), rows);
      return s;
    });
  }

  PolySystem<Field> system_;
  std::shared_ptr<WriteOnceCache<std::int64_t, TupleSlice>> y1_cache_;
  std::shared_ptr<WriteOnceCache<std::int64_t, std::size_t>> y0_cache_;
};

}  // namespace ivhs
