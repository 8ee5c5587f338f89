#include "ivhs/field.hpp"

namespace ivhs {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31))
    throw ConfigError("prime field modulus must be below 2^31, got " + std::to_string(p));
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  return {FieldKind::prime, static_cast<std::uint32_t>(p)};
}

std::string FieldSpec::name() const {
  if (kind == FieldKind::rationals) return "QQ";
  return "GF(" + std::to_string(characteristic) + ")";
}

PrimeField::PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).characteristic) {}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_rational(const mpq_class& q) const {
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0)
    throw CharacteristicConflict("denominator of " + q.get_str() + " vanishes in " + spec().name());
  return div(static_cast<value_type>(num.get_ui()), static_cast<value_type>(den.get_ui()));
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const {
  value_type result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("division by zero in " + spec().name());
  return pow(a, p_ - 2);
}

mpq_class PrimeField::lift(value_type a) const {
  if (a > p_ / 2) return mpq_class(-static_cast<long>(p_ - a));
  return mpq_class(static_cast<unsigned long>(a));
}

std::string PrimeField::to_string(value_type a) const { return lift(a).get_str(); }

RationalField::value_type RationalField::inv(const value_type& a) const {
  if (sgn(a) == 0) throw std::domain_error("division by zero in QQ");
  return 1 / a;
}

RationalField::value_type RationalField::pow(const value_type& a, std::uint64_t e) const {
  value_type result = 1;
  for (std::uint64_t i = 0; i < e; ++i) result *= a;
  return result;
}

}  // namespace ivhs
