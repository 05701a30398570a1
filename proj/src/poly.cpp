#include "nullcone/poly.hpp"

#include <cctype>
#include <algorithm>

namespace nullcone {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Binomials C(a, b) for the monomial counts; a stays below a few hundred.
std::size_t binom(std::size_t a, std::size_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

Monomial::Monomial(std::vector<std::uint32_t> exponents) : e_(std::move(exponents)) {
  for (auto x : e_) deg_ += x;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(i) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (nvars() != o.nvars()) raise(ErrorCode::DimensionMismatch, "monomials in different rings");
  std::vector<std::uint32_t> e = e_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > o.e_[i]) return false;
  }
  return true;
}

std::string Monomial::str() const {
  std::string out;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i);
    if (e_[i] > 1) out += "^" + std::to_string(e_[i]);
  }
  return out.empty() ? "1" : out;
}

std::size_t mono_count(std::size_t nvars, std::uint32_t d) {
  if (nvars == 0) return d == 0 ? 1 : 0;
  return binom(nvars + d - 1, d);
}

std::vector<Monomial> mono_basis(std::size_t nvars, std::uint32_t d) {
  if (nvars == 0) raise(ErrorCode::DimensionMismatch, "need at least one variable");
  std::vector<Monomial> out;
  out.reserve(mono_count(nvars, d));
  std::vector<std::uint32_t> e(nvars, 0);
  // Depth-first with the largest exponent of the earliest variable first.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

std::size_t mono_rank(const Monomial& m) {
  const std::size_t n = m.nvars();
  std::size_t rank = 0;
  std::uint32_t left = m.degree();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Monomials with a larger exponent at position i come first.
    for (std::uint32_t k = m[i] + 1; k <= left; ++k) rank += mono_count(n - i - 1, left - k);
    left -= m[i];
  }
  return rank;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const Field& f, std::size_t nvars, const Scalar& c) {
  Polynomial p(f, nvars);
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Polynomial Polynomial::variable(const Field& f, std::size_t nvars, std::size_t i) {
  return monomial(f, Monomial::variable(nvars, i));
}

Polynomial Polynomial::monomial(const Field& f, const Monomial& m, const Scalar& c) {
  Polynomial p(f, m.nvars());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.field() != field_) raise(ErrorCode::ContextMismatch, "coefficient over another field");
  if (m.nvars() != nvars_) raise(ErrorCode::DimensionMismatch, "monomial has wrong number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_compatible(const Polynomial& o) const {
  if (field_ != o.field_) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  if (nvars_ != o.nvars_) raise(ErrorCode::DimensionMismatch, "polynomials in different numbers of variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(field_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_compatible(o);
  Polynomial r(field_, nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::scale(const Scalar& c) const {
  Polynomial r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(field_, nvars_, Scalar::one(field_));
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Scalar Polynomial::eval(const std::vector<Scalar>& point) const {
  if (point.size() != nvars_) raise(ErrorCode::DimensionMismatch, "point has wrong length");
  for (const auto& x : point) {
    if (x.field() != field_) raise(ErrorCode::ContextMismatch, "point coordinates over another field");
  }
  Scalar acc = Scalar::zero(field_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_ && !t.is_zero(); ++i) {
      if (m[i]) t *= point[i].pow(m[i]);
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) raise(ErrorCode::DimensionMismatch, "need one image per variable");
  const std::size_t target = images.empty() ? nvars_ : images[0].nvars();
  for (const auto& g : images) {
    if (g.field() != field_) raise(ErrorCode::ContextMismatch, "image over another field");
    if (g.nvars() != target) raise(ErrorCode::DimensionMismatch, "images in different rings");
  }
  // powers[i][k] = images[i]^k, filled lazily.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(constant(field_, target, Scalar::one(field_)));
    while (v.size() <= k) v.push_back(v.back() * images[i]);
    return v[k];
  };
  Polynomial r(field_, target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(field_, target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i]) t = t * power(i, m[i]);
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::substitute_linear(const Matrix& mat) const {
  if (mat.rows() != nvars_ || mat.cols() != nvars_) raise(ErrorCode::DimensionMismatch, "substitution matrix must be nvars x nvars");
  if (mat.field() != field_) raise(ErrorCode::ContextMismatch, "substitution matrix over another field");
  std::vector<Polynomial> images;
  images.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    Polynomial li(field_, nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) li.add_term(Monomial::variable(nvars_, j), mat(i, j));
    images.push_back(std::move(li));
  }
  return compose(images);
}

Polynomial Polynomial::homogeneous_component(std::uint32_t d) const {
  Polynomial r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d) r.terms_.emplace(m, c);
  }
  return r;
}

std::vector<Scalar> Polynomial::coefficient_vector(std::uint32_t d) const {
  std::vector<Scalar> v(mono_count(nvars_, d), Scalar::zero(field_));
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d) v[mono_rank(m)] = c;
  }
  return v;
}

Polynomial Polynomial::from_coefficient_vector(const Field& f, std::size_t nvars, std::uint32_t d,
                                               const std::vector<Scalar>& coeffs) {
  const auto basis = mono_basis(nvars, d);
  if (coeffs.size() != basis.size()) raise(ErrorCode::DimensionMismatch, "coefficient vector has wrong length");
  Polynomial p(f, nvars);
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeffs[i]);
  return p;
}

Polynomial Polynomial::map_coefficients(const FieldEmbedding& emb) const {
  if (emb.source() != field_) raise(ErrorCode::ContextMismatch, "embedding source differs from coefficient field");
  Polynomial r(emb.target(), nvars_);
  for (const auto& [m, c] : terms_) r.add_term(m, emb(c));
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    const bool is_const = m.degree() == 0;
    std::string cs = c.str();
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (is_const) {
      out += cs;
    } else if (c.is_one()) {
      out += m.str();
    } else if (field_.is_rational() && c.rational_value() == -1) {
      out += "-" + m.str();
    } else {
      out += cs + "*" + m.str();
    }
  }
  return out;
}

Polynomial Polynomial::parse(const Field& f, std::string_view text, std::size_t nvars) {
  struct Factor {
    long index = -1;
    std::uint32_t exp = 0;
    std::string scalar;
  };
  struct Term {
    bool negative = false;
    std::vector<Factor> factors;
  };
  const std::string s(text);
  std::vector<Term> terms;
  std::size_t max_index = 0;
  bool any_var = false;

  auto parse_factor = [&](std::string_view tok) {
    tok = strip(tok);
    if (tok.empty()) raise(ErrorCode::ParseError, "empty factor in '" + s + "'");
    Factor fac;
    if (tok.front() == 'x') {
      std::size_t i = 1;
      long idx = 0;
      if (i >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[i]))) raise(ErrorCode::ParseError, "bad variable '" + std::string(tok) + "'");
      while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) idx = idx * 10 + (tok[i++] - '0');
      std::uint32_t e = 1;
      std::string_view rest = strip(tok.substr(i));
      if (!rest.empty()) {
        if (rest.front() != '^') raise(ErrorCode::ParseError, "bad variable power '" + std::string(tok) + "'");
        rest = strip(rest.substr(1));
        if (rest.empty()) raise(ErrorCode::ParseError, "missing exponent in '" + std::string(tok) + "'");
        e = 0;
        for (char ch : rest) {
          if (!std::isdigit(static_cast<unsigned char>(ch))) raise(ErrorCode::ParseError, "bad exponent in '" + std::string(tok) + "'");
          e = e * 10 + static_cast<std::uint32_t>(ch - '0');
        }
      }
      fac.index = idx;
      fac.exp = e;
      any_var = true;
      max_index = std::max(max_index, static_cast<std::size_t>(idx));
    } else {
      fac.scalar = std::string(tok);
    }
    return fac;
  };

  // Split into signed terms at depth-0 '+'/'-'. A '-' directly after '/' or
  // '^' cannot occur in valid input, so no lookbehind is needed.
  std::size_t i = 0;
  const std::size_t n = s.size();
  if (strip(s).empty()) raise(ErrorCode::ParseError, "empty polynomial");
  while (i < n) {
    Term term;
    while (i < n && (s[i] == '+' || s[i] == '-' || std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '-') term.negative = !term.negative;
      ++i;
    }
    if (i >= n) raise(ErrorCode::ParseError, "dangling sign in '" + s + "'");
    int depth = 0;
    std::size_t start = i;
    std::vector<std::string_view> toks;
    std::string_view sv(s);
    for (; i < n; ++i) {
      const char ch = s[i];
      if (ch == '(') ++depth;
      else if (ch == ')') {
        if (--depth < 0) raise(ErrorCode::ParseError, "unbalanced ')' in '" + s + "'");
      } else if (depth == 0 && (ch == '+' || ch == '-')) {
        break;
      } else if (depth == 0 && ch == '*') {
        toks.push_back(sv.substr(start, i - start));
        start = i + 1;
      }
    }
    if (depth != 0) raise(ErrorCode::ParseError, "unbalanced '(' in '" + s + "'");
    toks.push_back(sv.substr(start, i - start));
    for (auto t : toks) term.factors.push_back(parse_factor(t));
    terms.push_back(std::move(term));
  }

  if (nvars == 0) nvars = any_var ? max_index + 1 : 1;
  if (any_var && max_index >= nvars) raise(ErrorCode::DimensionMismatch, "variable index exceeds ring size");
  Polynomial p(f, nvars);
  for (const auto& t : terms) {
    Scalar c = Scalar::one(f);
    std::vector<std::uint32_t> e(nvars, 0);
    for (const auto& fac : t.factors) {
      if (fac.index >= 0) e[static_cast<std::size_t>(fac.index)] += fac.exp;
      else c *= Scalar::parse(f, fac.scalar);
    }
    if (t.negative) c = -c;
    p.add_term(Monomial(std::move(e)), c);
  }
  return p;
}

Scalar poly_eval(const Polynomial& f, const std::vector<Scalar>& point) { return f.eval(point); }

Polynomial poly_substitute_linear(const Polynomial& f, const Matrix& m) { return f.substitute_linear(m); }

}  // namespace nullcone
