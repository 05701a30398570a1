#include "nullcone/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "detail/field_data.hpp"

namespace nullcone {

namespace {

using Coeffs = std::vector<std::uint32_t>;  // low to high over F_p

constexpr std::uint32_t kMaxExtensionSize = 1u << 20;
constexpr std::uint32_t kAddTableLimit = 1024;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_prime(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long long quotient = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quotient * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quotient * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

/// Remainder of a modulo the monic polynomial m, over F_p.
Coeffs poly_rem(Coeffs a, const Coeffs& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t t = static_cast<std::uint64_t>(lead) * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_rem(std::move(r), m, p);
}

Coeffs code_to_coeffs(std::uint32_t code, std::uint32_t p, std::uint32_t n) {
  Coeffs c(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

std::uint32_t coeffs_to_code(const Coeffs& c, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

bool is_irreducible(const Coeffs& modulus, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(modulus.size() - 1);
  for (std::uint32_t k = 1; k <= n / 2; ++k) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs divisor = code_to_coeffs(static_cast<std::uint32_t>(code), p, k);
      divisor.push_back(1);
      if (poly_rem(modulus, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void build_extension_tables(detail::FieldData& fd) {
  const std::uint32_t p = fd.p, n = fd.n, q = fd.q;
  auto mul = [&](std::uint32_t a, std::uint32_t b) {
    return coeffs_to_code(poly_mulmod(code_to_coeffs(a, p, n), code_to_coeffs(b, p, n), fd.modulus, p), p);
  };
  auto power = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto factors = prime_factors(q - 1);
  std::uint32_t generator = 0;
  for (std::uint32_t g = 1; g < q && generator == 0; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (power(g, (q - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) generator = g;
  }
  fd.exp_.assign(2 * (q - 1), 0);
  fd.log_.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    fd.exp_[i] = x;
    fd.exp_[i + q - 1] = x;
    fd.log_[x] = i;
    x = mul(x, generator);
  }
  fd.neg_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    Coeffs c = code_to_coeffs(a, p, n);
    for (auto& d : c) d = d == 0 ? 0 : p - d;
    fd.neg_[a] = coeffs_to_code(c, p);
  }
  if (p != 2 && q <= kAddTableLimit) {
    fd.add_table_.assign(static_cast<std::size_t>(q) * q, 0);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        fd.add_table_[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint16_t>(fd.add_digits(a, b));
      }
    }
  }
}

struct Registry {
  std::mutex mutex;
  std::map<std::tuple<int, std::uint32_t, std::uint32_t, Coeffs>, std::unique_ptr<detail::FieldData>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

const detail::FieldData* rational_data() {
  static const detail::FieldData data = [] {
    detail::FieldData d;
    d.kind = FieldKind::rational;
    d.p = 0;
    d.n = 1;
    d.q = 0;
    return d;
  }();
  return &data;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_integer(std::string_view text, long long& out) {
  text = strip(text);
  if (text.empty()) return false;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return false;
  long long v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    v = v * 10 + (text[i] - '0');
    if (v > (1LL << 60)) return false;
  }
  out = negative ? -v : v;
  return true;
}

}  // namespace

namespace detail {

std::uint32_t FieldData::add_digits(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t code = 0;
  for (std::uint32_t i = n; i-- > 0;) {
    const std::uint32_t da = a / pow_p[i] % p;
    const std::uint32_t db = b / pow_p[i] % p;
    code = code * p + (da + db) % p;
  }
  return code;
}

std::uint32_t FieldData::inv_mod(std::uint32_t a) const { return inv_prime(a, p); }

std::vector<std::uint32_t> FieldData::digits(std::uint32_t code) const { return code_to_coeffs(code, p, n); }

std::uint32_t FieldData::encode(const std::vector<std::uint32_t>& d) const { return coeffs_to_code(d, p); }

}  // namespace detail

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field() : d_(rational_data()) {}

Field Field::rationals() { return Field(); }

FieldKind Field::kind() const { return d_->kind; }
std::uint32_t Field::characteristic() const { return d_->p; }
std::uint32_t Field::degree() const { return d_->n; }
std::uint64_t Field::cardinality() const { return d_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return d_->modulus; }

std::string Field::name() const {
  switch (d_->kind) {
    case FieldKind::rational: return "Q";
    case FieldKind::prime: return "F_" + std::to_string(d_->p);
    case FieldKind::extension: break;
  }
  std::ostringstream os;
  os << "F_" << d_->q << "[z]/(";
  bool first = true;
  for (std::size_t k = d_->modulus.size(); k-- > 0;) {
    const std::uint32_t c = d_->modulus[k];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << (k == 1 ? "z" : "z^" + std::to_string(k));
    }
  }
  os << ")";
  return os.str();
}

Field ff_make(std::uint32_t p, std::uint32_t n, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) raise(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) raise(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > 0xFFFFFFFFull) raise(ErrorCode::BadParameter, "field too large");
  }
  if (n > 1 && q > kMaxExtensionSize) raise(ErrorCode::BadParameter, "extension fields are limited to 2^20 elements");

  Coeffs mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != n + 1 || mod.back() != 1) {
      raise(ErrorCode::DegreeMismatch, "modulus must be monic of degree " + std::to_string(n));
    }
    for (auto c : mod) {
      if (c >= p) raise(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
    }
    if (!is_irreducible(mod, p)) raise(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
    if (n == 1) mod = {0, 1};
  } else if (n == 1) {
    mod = {0, 1};
  } else {
    const std::uint32_t count = static_cast<std::uint32_t>(q);
    for (std::uint32_t code = 0; code < count; ++code) {
      Coeffs cand = code_to_coeffs(code, p, n);
      cand.push_back(1);
      if (is_irreducible(cand, p)) {
        mod = std::move(cand);
        break;
      }
    }
  }

  const int kind = n == 1 ? static_cast<int>(FieldKind::prime) : static_cast<int>(FieldKind::extension);
  auto key = std::make_tuple(kind, p, n, mod);
  Registry& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return Field(it->second.get());

  auto fd = std::make_unique<detail::FieldData>();
  fd->kind = static_cast<FieldKind>(kind);
  fd->p = p;
  fd->n = n;
  fd->q = static_cast<std::uint32_t>(q);
  fd->modulus = mod;
  fd->pow_p.resize(n + 1);
  fd->pow_p[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) fd->pow_p[i] = fd->pow_p[i - 1] * p;
  if (n > 1) build_extension_tables(*fd);
  const detail::FieldData* raw = fd.get();
  reg.fields.emplace(std::move(key), std::move(fd));
  return Field(raw);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : field_(), value_(mpq_class(0)) {}

Scalar Scalar::zero(const Field& f) {
  if (f.is_rational()) return Scalar(f, mpq_class(0));
  return Scalar(f, 0u);
}

Scalar Scalar::one(const Field& f) {
  if (f.is_rational()) return Scalar(f, mpq_class(1));
  return Scalar(f, 1u);
}

Scalar Scalar::from_int(const Field& f, long long v) {
  if (f.is_rational()) return Scalar(f, mpq_class(static_cast<long>(v)));
  return Scalar(f, f.data()->from_int(v));
}

Scalar Scalar::from_code(const Field& f, std::uint32_t code) {
  if (!f.is_finite()) raise(ErrorCode::RationalContext, "codes exist only for finite fields");
  if (code >= f.data()->q) raise(ErrorCode::BadParameter, "element code out of range");
  return Scalar(f, code);
}

Scalar Scalar::from_coefficients(const Field& f, const std::vector<std::uint32_t>& coeffs) {
  if (!f.is_finite()) raise(ErrorCode::RationalContext, "coefficient vectors exist only for finite fields");
  if (coeffs.size() > f.degree()) raise(ErrorCode::DimensionMismatch, "too many coefficients");
  Coeffs c(f.degree(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % f.characteristic();
  return Scalar(f, coeffs_to_code(c, f.characteristic()));
}

Scalar Scalar::from_rational(mpq_class q) {
  q.canonicalize();
  return Scalar(Field::rationals(), std::move(q));
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) raise(ErrorCode::DivisionByZero, "zero denominator");
  mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  return from_rational(std::move(q));
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
  text = strip(text);
  while (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = strip(text.substr(1, text.size() - 2));
  if (text.empty()) raise(ErrorCode::ParseError, "empty scalar");
  if (f.is_rational()) {
    mpq_class q;
    const std::string s(text);
    if (q.set_str(s, 10) != 0) raise(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0) raise(ErrorCode::DivisionByZero, "zero denominator");
    return from_rational(std::move(q));
  }
  if (f.kind() == FieldKind::prime) {
    long long v = 0;
    if (!parse_integer(text, v)) raise(ErrorCode::ParseError, "bad residue '" + std::string(text) + "'");
    return from_int(f, v);
  }
  // Extension: sum of terms c, c*z, z^k, c*z^k with optional signs.
  const std::uint32_t p = f.characteristic();
  Coeffs acc(f.degree(), 0);
  std::size_t pos = 0;
  const std::string s(text);
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-' || std::isspace(static_cast<unsigned char>(s[pos])))) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term = strip(std::string_view(s).substr(pos, end - pos));
    if (term.empty()) raise(ErrorCode::ParseError, "bad extension element '" + s + "'");
    long long coef = 1;
    std::uint32_t power = 0;
    const auto zpos = term.find('z');
    if (zpos == std::string_view::npos) {
      if (!parse_integer(term, coef)) raise(ErrorCode::ParseError, "bad term '" + std::string(term) + "'");
    } else {
      std::string_view head = strip(term.substr(0, zpos));
      if (!head.empty() && head.back() == '*') head = strip(head.substr(0, head.size() - 1));
      if (!head.empty() && !parse_integer(head, coef)) raise(ErrorCode::ParseError, "bad coefficient in '" + std::string(term) + "'");
      std::string_view tail = strip(term.substr(zpos + 1));
      power = 1;
      if (!tail.empty()) {
        long long e = 0;
        if (tail.front() != '^' || !parse_integer(tail.substr(1), e) || e < 0) {
          raise(ErrorCode::ParseError, "bad exponent in '" + std::string(term) + "'");
        }
        power = static_cast<std::uint32_t>(e);
      }
    }
    // z^power reduced modulo the modulus.
    Coeffs mono(power + 1, 0);
    mono[power] = 1;
    Coeffs reduced = poly_rem(mono, f.modulus(), p);
    const long long c = ((sign * coef) % static_cast<long long>(p) + p) % p;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      acc[i] = static_cast<std::uint32_t>((acc[i] + static_cast<std::uint64_t>(c) * reduced[i]) % p);
    }
    pos = end;
  }
  return Scalar(f, coeffs_to_code(acc, p));
}

bool Scalar::is_zero() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint32_t Scalar::code() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return *c;
  raise(ErrorCode::RationalContext, "rational scalars have no code");
}

const mpq_class& Scalar::rational_value() const {
  if (auto q = std::get_if<mpq_class>(&value_)) return *q;
  raise(ErrorCode::ContextMismatch, "not a rational scalar");
}

std::vector<std::uint32_t> Scalar::coefficients() const {
  return code_to_coeffs(code(), field_.characteristic(), field_.degree());
}

void Scalar::require_same(const Scalar& o) const {
  if (field_ != o.field_) raise(ErrorCode::ContextMismatch, field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  if (field_.is_rational()) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) + std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.data()->add(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(o.value_)));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same(o);
  if (field_.is_rational()) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) - std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.data()->sub(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(o.value_)));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  if (field_.is_rational()) return Scalar(field_, mpq_class(std::get<mpq_class>(value_) * std::get<mpq_class>(o.value_)));
  return Scalar(field_, field_.data()->mul(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(o.value_)));
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same(o);
  return *this * o.inv();
}

Scalar Scalar::operator-() const {
  if (field_.is_rational()) return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
  return Scalar(field_, field_.data()->neg(std::get<std::uint32_t>(value_)));
}

Scalar Scalar::inv() const {
  if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  if (field_.is_rational()) return Scalar(field_, mpq_class(1 / std::get<mpq_class>(value_)));
  return Scalar(field_, field_.data()->inv(std::get<std::uint32_t>(value_)));
}

Scalar Scalar::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  if (field_.is_rational()) {
    const mpq_class& b = std::get<mpq_class>(value_);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Scalar(field_, mpq_class(num, den));
  }
  return Scalar(field_, field_.data()->pow(std::get<std::uint32_t>(value_), static_cast<std::uint64_t>(e)));
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  a.require_same(b);
  if (a.field_.is_rational()) return std::get<mpq_class>(a.value_) < std::get<mpq_class>(b.value_);
  return std::get<std::uint32_t>(a.value_) < std::get<std::uint32_t>(b.value_);
}

std::string Scalar::str() const {
  if (field_.is_rational()) return std::get<mpq_class>(value_).get_str();
  const std::uint32_t c = std::get<std::uint32_t>(value_);
  if (field_.kind() == FieldKind::prime) return std::to_string(c);
  if (c == 0) return "0";
  const Coeffs d = coefficients();
  std::string out;
  for (std::size_t k = d.size(); k-- > 0;) {
    if (d[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(d[k]);
    } else {
      if (d[k] != 1) out += std::to_string(d[k]) + "*";
      out += k == 1 ? "z" : "z^" + std::to_string(k);
    }
  }
  return out;
}

std::size_t Scalar::hash() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return std::hash<std::uint32_t>{}(*c) * 0x9E3779B97F4A7C15ull;
  const mpq_class& q = std::get<mpq_class>(value_);
  const std::size_t hn = std::hash<std::string>{}(q.get_num().get_str(16));
  const std::size_t hd = std::hash<std::string>{}(q.get_den().get_str(16));
  return hn ^ (hd * 0x9E3779B97F4A7C15ull + 0x7F4A7C15);
}

Scalar frobenius(const Scalar& a) {
  if (!a.field().is_finite()) raise(ErrorCode::RationalContext, "frobenius needs a finite field");
  return a.pow(a.field().characteristic());
}

std::vector<Scalar> ff_enumerate(const Field& f) {
  if (!f.is_finite()) raise(ErrorCode::RationalContext, "cannot enumerate the rationals");
  std::vector<Scalar> out;
  out.reserve(f.cardinality());
  for (std::uint32_t c = 0; c < f.cardinality(); ++c) out.push_back(Scalar::from_code(f, c));
  return out;
}

FieldEmbedding::FieldEmbedding(const Field& from, const Field& to) : from_(from), to_(to) {
  if (!from.is_finite() || !to.is_finite()) {
    if (from == to) return;
    raise(ErrorCode::ContextMismatch, "embeddings involving Q must be the identity");
  }
  if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0) {
    raise(ErrorCode::ContextMismatch, from.name() + " does not embed into " + to.name());
  }
  const detail::FieldData& T = *to.data();
  const std::uint32_t qs = static_cast<std::uint32_t>(from.cardinality());
  image_.resize(qs);
  if (from == to) {
    for (std::uint32_t c = 0; c < qs; ++c) image_[c] = c;
    return;
  }
  std::uint32_t root = 0;
  if (from.degree() > 1) {
    const auto& m = from.modulus();
    bool found = false;
    for (std::uint32_t r = 0; r < T.q && !found; ++r) {
      std::uint32_t acc = 0;
      for (std::size_t k = m.size(); k-- > 0;) acc = T.add(T.mul(acc, r), m[k]);
      if (acc == 0) {
        root = r;
        found = true;
      }
    }
    if (!found) raise(ErrorCode::ContextMismatch, "modulus has no root in target field");
  }
  for (std::uint32_t c = 0; c < qs; ++c) {
    const Coeffs d = code_to_coeffs(c, from.characteristic(), from.degree());
    std::uint32_t acc = 0;
    for (std::size_t k = d.size(); k-- > 0;) acc = T.add(T.mul(acc, root), d[k]);
    image_[c] = acc;
  }
}

Scalar FieldEmbedding::operator()(const Scalar& a) const {
  if (a.field() != from_) raise(ErrorCode::ContextMismatch, "embedding applied to element of another field");
  if (from_.is_rational()) return a;
  return Scalar::from_code(to_, image_[a.code()]);
}

}  // namespace nullcone
