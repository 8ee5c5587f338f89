#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "ivhs/errors.hpp"

namespace ivhs {

bool is_prime(std::uint64_t n);

enum class FieldKind { rationals, prime };

// Runtime description of a coefficient field. Prime fields are restricted to
// p < 2^31 so products of two residues fit in 64 bits.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);

  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Z/pZ with residues stored as canonical representatives in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  static constexpr std::uint32_t kDefaultModulus = 65537;

  PrimeField() : p_(kDefaultModulus) {}
  explicit PrimeField(std::uint64_t p);

  std::uint32_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const;
  // Throws CharacteristicConflict when p divides the denominator.
  value_type from_rational(const mpq_class& q) const;

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t{a} * b % p_);
  }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const;

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }

  // Symmetric lift to (-p/2, p/2].
  mpq_class lift(value_type a) const;
  std::string to_string(value_type a) const;
  value_type random(std::mt19937_64& rng) const { return static_cast<value_type>(rng() % p_); }
  value_type random_nonzero(std::mt19937_64& rng) const {
    return static_cast<value_type>(1 + rng() % (p_ - 1));
  }
  // Number of elements, saturated for display purposes.
  std::uint64_t size() const { return p_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

// The rationals, backed by GMP. Random draws are small integers so that
// randomized instances stay readable in golden reports.
class RationalField {
 public:
  using value_type = mpq_class;

  static constexpr std::int64_t kRandomBound = 16;

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }
  value_type from_rational(const mpq_class& q) const { return q; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  value_type pow(const value_type& a, std::uint64_t e) const;

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  mpq_class lift(const value_type& a) const { return a; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  value_type random(std::mt19937_64& rng) const {
    auto span = static_cast<std::uint64_t>(2 * kRandomBound + 1);
    return from_int(static_cast<std::int64_t>(rng() % span) - kRandomBound);
  }
  value_type random_nonzero(std::mt19937_64& rng) const {
    for (;;) {
      value_type v = random(rng);
      if (!is_zero(v)) return v;
    }
  }
  // Infinite; reported as zero.
  std::uint64_t size() const { return 0; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace ivhs
