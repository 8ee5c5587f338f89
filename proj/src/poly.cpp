#include <algorithm>

#include "ivhs/poly.hpp"

namespace ivhs {

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(i);
    if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

void compositions(std::size_t var, std::uint32_t remaining, std::vector<std::uint32_t>& current,
                  std::vector<Monomial>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.emplace_back(current);
    return;
  }
  for (std::uint32_t e = 0; e <= remaining; ++e) {
    current[var] = e;
    compositions(var + 1, remaining - e, current, out);
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t n_vars, std::uint32_t k) {
  if (n_vars == 0) throw ShapeError("monomial basis needs at least one variable");
  std::vector<Monomial> out;
  std::vector<std::uint32_t> current(n_vars, 0);
  compositions(0, k, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MonomialIndex::MonomialIndex(std::size_t n_vars, std::uint32_t degree)
    : n_vars_(n_vars), degree_(degree), monomials_(monomial_basis(n_vars, degree)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) lookup_.emplace(monomials_[i], i);
}

std::size_t MonomialIndex::index_of(const Monomial& m) const {
  auto it = lookup_.find(m);
  if (it == lookup_.end()) throw ShapeError("monomial " + m.to_string() + " is not in this slice");
  return it->second;
}

}  // namespace ivhs
