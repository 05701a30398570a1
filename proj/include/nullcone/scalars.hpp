#pragma once

// Exact coefficient domains: prime fields F_p, extension fields F_{p^n}
// given by an explicit irreducible modulus, and the rationals.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nullcone/error.hpp"

namespace nullcone {

enum class FieldKind { prime, extension, rational };

namespace detail {
struct FieldData;
}

/// Handle to an interned, immutable field context. Two handles compare equal
/// iff they denote the same field (same p, n and modulus). A default
/// constructed handle denotes the rationals.
class Field {
 public:
  Field();

  static Field rationals();

  FieldKind kind() const;
  bool is_finite() const { return kind() != FieldKind::rational; }
  bool is_rational() const { return kind() == FieldKind::rational; }
  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  /// p^n for finite fields, 0 for the rationals.
  std::uint64_t cardinality() const;
  /// Monic modulus, coefficients low to high (length n+1). Prime fields
  /// report z - 0 style modulus {0, 1}; rationals report an empty list.
  const std::vector<std::uint32_t>& modulus() const;
  std::string name() const;

  const detail::FieldData* data() const { return d_; }

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}
  friend Field ff_make(std::uint32_t, std::uint32_t, std::optional<std::vector<std::uint32_t>>);
  const detail::FieldData* d_;
};

/// Builds F_{p^n}. Without an explicit modulus the least monic irreducible
/// polynomial of degree n is used, where polynomials are ordered by the
/// integer code of their non-leading coefficients (c0 least significant).
Field ff_make(std::uint32_t p, std::uint32_t n = 1,
              std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

bool is_prime(std::uint64_t n);

/// Element of a Field. Finite field elements are stored as an integer code
/// sum c_i p^i of the coefficient vector (c_0 + c_1 z + ...); rationals are
/// kept in lowest terms by GMP.
class Scalar {
 public:
  Scalar();  // rational zero
  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar from_int(const Field& f, long long v);
  static Scalar from_code(const Field& f, std::uint32_t code);
  static Scalar from_coefficients(const Field& f, const std::vector<std::uint32_t>& coeffs);
  static Scalar from_rational(mpq_class q);
  static Scalar rational(long long num, long long den = 1);
  /// Text format: "3" (prime), "z+1" or "2*z^2+1" (extension), "-5/6" (Q).
  static Scalar parse(const Field& f, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint32_t code() const;
  const mpq_class& rational_value() const;
  /// Coefficient vector over F_p, length n (finite fields only).
  std::vector<std::uint32_t> coefficients() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inv() const;
  Scalar pow(long long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order used for deterministic sorting (code order / numeric order).
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::string str() const;
  std::size_t hash() const;

 private:
  Scalar(Field f, std::uint32_t code) : field_(f), value_(code) {}
  Scalar(Field f, mpq_class q) : field_(f), value_(std::move(q)) {}
  void require_same(const Scalar& o) const;

  Field field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

/// Operator bundle named after the contract (add, sub, mul, div, neg, inv,
/// pow, eq); thin wrappers over the member operators.
namespace scalar_ops {
inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar div(const Scalar& a, const Scalar& b) { return a / b; }
inline Scalar neg(const Scalar& a) { return -a; }
inline Scalar inv(const Scalar& a) { return a.inv(); }
inline Scalar pow(const Scalar& a, long long e) { return a.pow(e); }
inline bool eq(const Scalar& a, const Scalar& b) { return a == b; }
}  // namespace scalar_ops

/// a^p. Raises RationalContext over Q.
Scalar frobenius(const Scalar& a);

/// All p^n elements in code order: 0 first, then lexicographic on the
/// coefficient vector read from the top coefficient down.
std::vector<Scalar> ff_enumerate(const Field& f);

/// Ring embedding of a finite field into a finite extension of it (same
/// characteristic, degree dividing). The generator z of the source is sent
/// to the first root of its modulus in enumeration order of the target.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& from, const Field& to);
  const Field& source() const { return from_; }
  const Field& target() const { return to_; }
  Scalar operator()(const Scalar& a) const;

 private:
  Field from_;
  Field to_;
  std::vector<std::uint32_t> image_;  // image_[code] = target code
};

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

}  // namespace nullcone
