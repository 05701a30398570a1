#pragma once

// Internal representation of field contexts and raw element arithmetic on
// integer codes. Hot loops (elimination, monomial images) work directly on
// codes through FiniteDomain; the public Scalar wraps the same routines.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "nullcone/scalars.hpp"

namespace nullcone::detail {

struct FieldData {
  FieldKind kind = FieldKind::rational;
  std::uint32_t p = 0;
  std::uint32_t n = 1;
  std::uint32_t q = 0;  // cardinality for finite kinds
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> pow_p;  // p^i, i = 0..n

  // Extension-field tables (always present for extension kind).
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> add_table_;  // q*q, odd p with small q

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (kind == FieldKind::prime) {
      std::uint32_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q + b];
    return add_digits(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (kind == FieldKind::prime) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    return neg_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (kind == FieldKind::prime) {
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    }
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Caller guarantees a != 0.
  std::uint32_t inv(std::uint32_t a) const {
    if (kind == FieldKind::prime) return inv_mod(a);
    return exp_[(q - 1 - log_[a]) % (q - 1)];
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_mod(std::uint32_t a) const;
  std::vector<std::uint32_t> digits(std::uint32_t code) const;
  std::uint32_t encode(const std::vector<std::uint32_t>& digits) const;
};

/// Code-level arithmetic over a finite field.
struct FiniteDomain {
  using value_type = std::uint32_t;
  const FieldData* f;

  explicit FiniteDomain(const Field& field) : f(field.data()) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return f->add(a, b); }
  value_type sub(value_type a, value_type b) const { return f->sub(a, b); }
  value_type neg(value_type a) const { return f->neg(a); }
  value_type mul(value_type a, value_type b) const { return f->mul(a, b); }
  value_type inv(value_type a) const { return f->inv(a); }
  value_type unwrap(const Scalar& s) const { return s.code(); }
  Scalar wrap(const Field& field, value_type a) const { return Scalar::from_code(field, a); }
};

struct RationalDomain {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type unwrap(const Scalar& s) const { return s.rational_value(); }
  Scalar wrap(const Field&, const value_type& a) const { return Scalar::from_rational(a); }
};

/// Invokes fn with the code-level domain matching the field.
template <class Fn>
decltype(auto) visit_domain(const Field& field, Fn&& fn) {
  if (field.is_rational()) return fn(RationalDomain{});
  return fn(FiniteDomain{field});
}

}  // namespace nullcone::detail
