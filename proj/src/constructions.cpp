#include "nullcone/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nullcone {

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix poly_identity(const Field& f, std::size_t n, std::size_t nparams) {
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(f, nparams)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Polynomial::constant(f, nparams, Scalar::one(f));
  return m;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.size();
  PolyMatrix out(n, std::vector<Polynomial>(n, Polynomial(a[0][0].field(), a[0][0].nvars())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  return out;
}

Matrix evaluate(const Field& f, const PolyMatrix& m, const std::vector<Scalar>& params) {
  Matrix out(f, m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j].eval(params);
  return out;
}

// exp(A) for nilpotent A with A^n = 0; needs n! invertible.
PolyMatrix exp_nilpotent(const PolyMatrix& a) {
  const Field& f = a[0][0].field();
  const std::size_t n = a.size();
  PolyMatrix out = poly_identity(f, n, a[0][0].nvars());
  PolyMatrix term = out;
  for (std::size_t k = 1; k < n; ++k) {
    term = poly_mul(term, a);
    const Scalar c = Scalar::from_int(f, static_cast<long long>(k)).inv();
    for (auto& row : term)
      for (auto& x : row) x = x.scale(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += term[i][j];
  }
  return out;
}

std::vector<Matrix> additive_generators(const Field& f, auto&& make) {
  // u_t for t running over the F_p-basis 1, z, ..., z^{n-1}.
  std::vector<Matrix> gens;
  for (std::uint32_t i = 0; i < f.degree(); ++i) {
    std::vector<std::uint32_t> c(f.degree(), 0);
    c[i] = 1;
    gens.push_back(make(Scalar::from_coefficients(f, c)));
  }
  return gens;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) raise(ErrorCode::BadParameter, std::to_string(p) + " is not prime");
}

}  // namespace

Matrix ParametricAction::specialize(const std::vector<Scalar>& params) const {
  if (params.size() != nparams) raise(ErrorCode::DimensionMismatch, "wrong number of parameters");
  return evaluate(field, matrix, params);
}

Matrix ParametricAction::specialize_inverse(const std::vector<Scalar>& params) const {
  if (params.size() != nparams) raise(ErrorCode::DimensionMismatch, "wrong number of parameters");
  return evaluate(field, inverse, params);
}

void verify_parametric_inverse(const ParametricAction& a) {
  const PolyMatrix prod = poly_mul(a.matrix, a.inverse);
  if (prod != poly_identity(a.field, a.nvars, a.nparams)) throw std::logic_error("parametric inverse does not invert the matrix");
}

// ---------------------------------------------------------------------------

Matrix unipotent(const Field& f, const Scalar& t) {
  Matrix m = Matrix::identity(f, 2);
  m(0, 1) = t;
  return m;
}

GnModule gn_module(std::uint32_t p, std::uint32_t n) {
  require_prime(p);
  if (n < 1 || ipow(p, n) > kDefaultPointCap) raise(ErrorCode::BadParameter, "need n >= 1 and p^n <= point cap");
  GnModule g;
  g.p = p;
  g.n = n;
  g.field = ff_make(p, n);
  g.group = group_closure(additive_generators(g.field, [&](const Scalar& t) { return unipotent(g.field, t); }));
  g.rep = Representation::natural(g.group);
  g.t = ff_enumerate(g.field);
  for (const auto& t : g.t) g.element_of.push_back(*g.group->find(unipotent(g.field, t)));
  return g;
}

VandermondeReport vandermonde_regular_check(std::uint32_t p, std::uint32_t n) {
  require_prime(p);
  const std::uint64_t q = ipow(p, n);
  if (q > 25) raise(ErrorCode::BadParameter, "p^n must be at most 25");
  const GnModule g = gn_module(p, n);
  const std::uint32_t m = static_cast<std::uint32_t>(q - 1);
  const Representation s = sym_power_rep(g.rep, m);
  const auto& seed = *s.designated_seed();
  const Field& f = g.field;

  VandermondeReport rep;
  rep.p = p;
  rep.n = n;
  rep.orbit_matrix = Matrix(f, q, q);
  rep.expected_matrix = Matrix(f, q, q);
  std::vector<std::vector<Scalar>> cols(q);
  for (std::size_t i = 0; i < q; ++i) {
    cols[i] = s.matrix(g.element_of[i]) * seed;
    for (std::size_t k = 0; k < q; ++k) {
      rep.orbit_matrix(k, i) = cols[i][k];
      // Basis index k is X^{m-k} Y^k.
      rep.expected_matrix(k, i) = (-g.t[i]).pow(static_cast<long long>(m - k));
    }
  }
  rep.matches_expected = rep.orbit_matrix == rep.expected_matrix;
  rep.determinant = determinant(rep.orbit_matrix);
  rep.nonsingular = !rep.determinant.is_zero();

  auto index_of_t = [&](const Scalar& t) {
    return static_cast<std::size_t>(std::find(g.t.begin(), g.t.end(), t) - g.t.begin());
  };
  auto column_index = [&](const std::vector<Scalar>& v) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), v) - cols.begin());
  };
  rep.free = rep.transitive = rep.action_law = true;
  std::set<std::size_t> orbit_of_first;
  for (std::size_t a = 0; a < q; ++a) {
    const Matrix& ga = s.matrix(g.element_of[a]);
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t j = column_index(ga * cols[i]);
      if (j == q) {
        rep.action_law = false;
        continue;
      }
      if (a != 0 && j == i) rep.free = false;
      if (j != index_of_t(g.t[a] + g.t[i])) rep.action_law = false;
      if (i == 0) orbit_of_first.insert(j);
    }
  }
  rep.transitive = orbit_of_first.size() == q;

  const auto pb = permutation_basis(s);
  if (pb && pb->seeds.size() == 1) {
    rep.permutation_basis_regular = true;
    for (std::size_t e = 1; e < g.group->order(); ++e)
      for (std::size_t k = 0; k < q; ++k) rep.permutation_basis_regular = rep.permutation_basis_regular && pb->action[e][k] != k;
  }
  return rep;
}

std::uint32_t binomial_mod_p(std::uint32_t p, std::uint64_t big_n, std::uint64_t k) {
  require_prime(p);
  if (k > big_n) raise(ErrorCode::BadParameter, "need 0 <= k <= N");
  const std::uint64_t pp = p;
  std::uint64_t res = 1;
  while (big_n > 0 || k > 0) {
    const std::uint64_t ni = big_n % pp, ki = k % pp;
    if (ki > ni) return 0;
    // C(ni, ki) mod p with ni < p: falling product over ki!.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * ((ni - j) % pp) % pp;
      den = den * ((j + 1) % pp) % pp;
    }
    std::uint64_t inv = 1, b = den, e = pp - 2;
    while (e) {
      if (e & 1) inv = inv * b % pp;
      b = b * b % pp;
      e >>= 1;
    }
    res = res * (num * inv % pp) % pp;
    big_n /= pp;
    k /= pp;
  }
  return static_cast<std::uint32_t>(res);
}

// ---------------------------------------------------------------------------

VaModule va_module(std::uint32_t p, std::uint32_t n, std::uint32_t m) {
  require_prime(p);
  if (n < 1 || m < 1) raise(ErrorCode::BadParameter, "need n >= 1 and m >= 1");
  if (ipow(p, m) > kDefaultGroupCap) raise(ErrorCode::BadParameter, "p^m exceeds the group cap");
  const std::uint64_t pn = ipow(p, n);
  VaModule va;
  va.p = p;
  va.n = n;
  va.m = m;
  const Field f = ff_make(p, m);
  auto u = [&](const Scalar& t) {
    Matrix g = Matrix::identity(f, 3);
    g(1, 0) = -t;
    g(2, 0) = -t.pow(static_cast<long long>(pn));
    return g;
  };
  va.group = group_closure(additive_generators(f, u));
  va.rep = Representation::natural(va.group);

  const Field fp = ff_make(p);
  ParametricAction& a = va.action;
  a.field = fp;
  a.nvars = 3;
  a.nparams = 1;
  a.param_names = {"t"};
  const Polynomial t = Polynomial::variable(fp, 1, 0);
  const Polynomial tq = t.pow(static_cast<unsigned>(pn));
  a.matrix = poly_identity(fp, 3, 1);
  a.matrix[1][0] = -t;
  a.matrix[2][0] = -tq;
  a.inverse = poly_identity(fp, 3, 1);
  a.inverse[1][0] = t;
  a.inverse[2][0] = tq;
  verify_parametric_inverse(a);

  const Polynomial x0 = Polynomial::variable(f, 3, 0), x1 = Polynomial::variable(f, 3, 1), x2 = Polynomial::variable(f, 3, 2);
  va.candidates = {x0, x2 * x0.pow(static_cast<unsigned>(pn - 1)) - x1.pow(static_cast<unsigned>(pn))};
  return va;
}

Gl2Module gl2_test_module(std::uint32_t p, std::uint32_t n) {
  Gl2Module g;
  g.p = p;
  g.n = n;
  g.base = gn_module(p, n);
  const std::uint64_t q = ipow(p, n);
  g.sym = sym_power_rep(g.base.rep, static_cast<std::uint32_t>(q - 1));
  g.hom = hom_rep(g.sym, g.sym);
  g.group = image_group(g.hom);
  g.identity = vectorized_identity(g.base.field, q);
  return g;
}

TorusModule torus_module(std::uint64_t q, long long r, std::uint32_t m) {
  if (q < 3) raise(ErrorCode::BadParameter, "need q >= 3");
  if (r == 0 || m == 0) raise(ErrorCode::BadParameter, "need r != 0 and m >= 1");
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint32_t k = 0;
  for (std::uint64_t x = q; x > 1; x /= p, ++k) {
    if (x % p) raise(ErrorCode::BadParameter, std::to_string(q) + " is not a prime power");
  }
  const long long ar = r < 0 ? -r : r;
  const long long qm1 = static_cast<long long>(q - 1);
  if (ar * static_cast<long long>(m) * static_cast<long long>(m) >= qm1) {
    raise(ErrorCode::WeightCollision, "need |r| m^2 < q - 1");
  }
  TorusModule t;
  t.q = q;
  t.r = r;
  t.m = m;
  t.field = ff_make(static_cast<std::uint32_t>(p), k);
  const auto els = ff_enumerate(t.field);
  Scalar gen;
  for (std::size_t i = 1; i < els.size(); ++i) {
    bool primitive = true;
    for (long long d = 1; d < qm1 && primitive; ++d) {
      if (qm1 % d == 0 && els[i].pow(d).is_one()) primitive = false;
    }
    if (primitive) {
      gen = els[i];
      break;
    }
  }
  Matrix g(t.field, 2, 2);
  g(0, 0) = gen.pow(r);
  g(1, 1) = gen.pow(-r * static_cast<long long>(m));
  t.group = group_closure({g});
  t.rep = Representation::natural(t.group);
  t.weights = {-r, r * static_cast<long long>(m)};
  t.modulus = qm1;
  t.point = {Scalar::one(t.field), Scalar::one(t.field)};
  t.invariant = Polynomial::monomial(t.field, Monomial({m, 1}));
  return t;
}

Ga2Example ga2_example() {
  const Field q = Field::rationals();
  Ga2Example ex;
  ParametricAction& a = ex.action;
  a.field = q;
  a.nvars = 4;
  a.nparams = 2;
  a.param_names = {"s", "t"};
  const Polynomial s = Polynomial::variable(q, 2, 0), t = Polynomial::variable(q, 2, 1);
  // exp(-sN - tN^2) with N the lower shift; the inverse negates (s, t).
  auto gen = [&](const Polynomial& ss, const Polynomial& tt) {
    PolyMatrix l(4, std::vector<Polynomial>(4, Polynomial(q, ss.nvars())));
    for (std::size_t i = 1; i < 4; ++i) l[i][i - 1] = -ss;
    for (std::size_t i = 2; i < 4; ++i) l[i][i - 2] = -tt;
    return exp_nilpotent(l);
  };
  a.matrix = gen(s, t);
  a.inverse = gen(-s, -t);
  verify_parametric_inverse(a);

  ParametricAction& h = ex.h_action;
  h.field = q;
  h.nvars = 4;
  h.nparams = 1;
  h.param_names = {"t"};
  const Polynomial zero(q, 1), th = Polynomial::variable(q, 1, 0);
  h.matrix = gen(zero, th);
  h.inverse = gen(zero, -th);
  verify_parametric_inverse(h);
  ex.candidates = {Polynomial::parse(q, "x0", 4), Polynomial::parse(q, "x1^3 - 3*x0*x1*x2 + 3*x0^2*x3", 4)};
  ex.h_invariants = {Polynomial::parse(q, "x0", 4), Polynomial::parse(q, "x1", 4), Polynomial::parse(q, "x0*x3 - x2*x1", 4)};
  ex.point = {Scalar::rational(0), Scalar::rational(1), Scalar::rational(0), Scalar::rational(0)};
  return ex;
}

std::vector<std::vector<Scalar>> ga2_default_samples() {
  const std::vector<std::pair<long long, long long>> st = {{1, 0}, {0, 1}, {1, 1}, {2, 3}, {-1, 2}};
  std::vector<std::vector<Scalar>> out;
  for (auto [s, t] : st) out.push_back({Scalar::rational(s), Scalar::rational(t)});
  return out;
}

bool parametric_invariance_check(const ParametricAction& a, const Polynomial& f) {
  if (f.nvars() != a.nvars) raise(ErrorCode::DimensionMismatch, "polynomial ring does not match the action");
  const Field& k = f.field();
  const FieldEmbedding emb(a.field, k);
  const std::size_t total = a.nvars + a.nparams;
  // k[params] -> k[x, params]
  std::vector<Polynomial> param_vars;
  for (std::size_t j = 0; j < a.nparams; ++j) param_vars.push_back(Polynomial::variable(k, total, a.nvars + j));
  auto lift_param = [&](const Polynomial& p) {
    const Polynomial pk = p.map_coefficients(emb);
    return a.nparams == 0 ? Polynomial::constant(k, total, pk.coefficient(Monomial::one(0))) : pk.compose(param_vars);
  };
  std::vector<Polynomial> xs, images;
  for (std::size_t i = 0; i < a.nvars; ++i) xs.push_back(Polynomial::variable(k, total, i));
  for (std::size_t i = 0; i < a.nvars; ++i) {
    Polynomial img(k, total);
    for (std::size_t j = 0; j < a.nvars; ++j) {
      if (!a.inverse[i][j].is_zero()) img += lift_param(a.inverse[i][j]) * xs[j];
    }
    images.push_back(std::move(img));
  }
  return f.compose(images) == f.compose(xs);
}

std::vector<Polynomial> sampled_fixed_space(const ParametricAction& a, const std::vector<std::vector<Scalar>>& samples,
                                            std::uint32_t d) {
  std::vector<Matrix> subs;
  for (const auto& s : samples) {
    const Matrix m = a.specialize(s);
    if (determinant(m).is_zero()) raise(ErrorCode::SingularSpecialization, "specialized matrix is singular");
    const Matrix mi = a.specialize_inverse(s);
    if (!(m * mi).is_identity()) throw std::logic_error("specialized inverse is wrong");
    subs.push_back(mi);
  }
  return fixed_space(a.field, a.nvars, d, subs, subs);
}

}  // namespace nullcone
