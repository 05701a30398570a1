#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "nullcone/constructions.hpp"

using namespace nullcone;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadParameter;
}

Polynomial P(const Field& f, const char* s, std::size_t n) { return Polynomial::parse(f, s, n); }

Polynomial random_form(const Field& f, std::size_t n, std::uint32_t d, std::mt19937& rng) {
  Polynomial p(f, n);
  const auto els = ff_enumerate(f);
  for (const auto& m : mono_basis(n, d)) p.add_term(m, els[rng() % els.size()]);
  return p;
}

}  // namespace

TEST_CASE("gn_module") {
  CHECK(gn_module(2, 1).group->order() == 2);
  auto g4 = gn_module(2, 2);
  CHECK(g4.group->order() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(g4.group->element_order(i) == 2);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {3, 2}, {5, 1}, {2, 3}}) {
    auto g = gn_module(p, n);
    CHECK(g.group->order() == g.field.cardinality());
    for (std::size_t i = 1; i < g.group->order(); ++i) CHECK(g.group->element_order(i) == p);
    for (std::size_t i = 0; i < g.t.size(); ++i)
      for (std::size_t j = 0; j < g.t.size(); ++j) {
        CHECK(unipotent(g.field, g.t[i]) * unipotent(g.field, g.t[j]) == unipotent(g.field, g.t[i] + g.t[j]));
        CHECK(g.group->multiply(g.element_of[i], g.element_of[j]) == g.group->multiply(g.element_of[j], g.element_of[i]));
      }
  }
  CHECK(code_of([] { gn_module(4, 1); }) == ErrorCode::BadParameter);
}

TEST_CASE("vandermonde examples") {
  auto r2 = vandermonde_regular_check(2, 1);
  // (Y + tX)^1 = Y + tX in the basis X, Y; columns t = 0, 1.
  CHECK(r2.orbit_matrix == Matrix::parse(ff_make(2), "0,1;1,1"));
  CHECK(r2.determinant.is_one());
  CHECK(r2.ok());

  // p = 3: (Y + tX)^2 = t^2 X^2 + 2t XY + Y^2; nodes -t = 0, 2, 1.
  auto r3 = vandermonde_regular_check(3, 1);
  CHECK(r3.orbit_matrix == Matrix::parse(ff_make(3), "0,1,1;0,2,1;1,1,1"));
  CHECK(r3.ok());
}

TEST_CASE("vandermonde_regular_check for all p^n <= 25") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    CAPTURE(p);
    CAPTURE(n);
    auto r = vandermonde_regular_check(p, n);
    CHECK(r.ok());
    // Row reversal of a Vandermonde matrix in the nodes -t: the determinant
    // is +- the product of node differences.
    const auto t = ff_enumerate(r.orbit_matrix.field());
    Scalar prod = Scalar::one(r.orbit_matrix.field());
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) prod *= (-t[b]) - (-t[a]);
    CHECK((r.determinant == prod || r.determinant == -prod));
  }
  CHECK(code_of([] { vandermonde_regular_check(3, 3); }) == ErrorCode::BadParameter);
}

TEST_CASE("binomial_mod_p") {
  CHECK(binomial_mod_p(2, 1, 1) == 1);
  CHECK(binomial_mod_p(3, 2, 1) == 2);
  CHECK(binomial_mod_p(2, 7, 3) == 1);
  // Oracle: Pascal's triangle in big integers.
  std::vector<std::vector<mpz_class>> pascal(65);
  for (std::size_t n = 0; n <= 64; ++n) {
    pascal[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  CHECK(pascal[7][3] == 35);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::size_t n = 0; n <= 64; ++n)
      for (std::size_t k = 0; k <= n; ++k) {
        const mpz_class r = pascal[n][k] % p;
        CHECK(binomial_mod_p(p, n, k) == r.get_ui());
      }
  }
  CHECK(code_of([] { binomial_mod_p(4, 3, 1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { binomial_mod_p(2, 3, 4); }) == ErrorCode::BadParameter);
}

TEST_CASE("binomial lemma exhaustively") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint64_t q = p; q <= 125; q *= p) {
      for (std::uint64_t k = 0; k < q; ++k) CHECK(binomial_mod_p(p, q - 1, k) == (k % 2 ? p - 1 : 1));
    }
  }
}

TEST_CASE("va_module") {
  CHECK(va_module(2, 1, 2).group->order() == 4);
  auto va = va_module(2, 1, 3);
  CHECK(va.group->order() == 8);
  const auto& f = va.candidates[1];
  CHECK(f.str() == "x0*x2 + x1^2");
  for (std::size_t i = 0; i < va.group->order(); ++i) CHECK(act_on_poly(*va.group, i, f) == f);

  auto v3 = va_module(3, 1, 1);
  const Field f3 = ff_make(3);
  auto u = [&](long long t) {
    Matrix m = Matrix::identity(f3, 3);
    m(1, 0) = Scalar::from_int(f3, -t);
    m(2, 0) = Scalar::from_int(f3, -t * t * t);
    return m;
  };
  CHECK(v3.group->order() == 3);
  for (long long s = 0; s < 3; ++s)
    for (long long t = 0; t < 3; ++t) CHECK(u(s) * u(t) == u(s + t));

  // Coordinate action f(x0, x1 + t x0, x2 + t^{p^n} x0).
  std::mt19937 rng(3);
  auto v = va_module(2, 2, 2);
  const Field f4 = ff_make(2, 2);
  for (int rep = 0; rep < 4; ++rep) {
    const auto g = random_form(f4, 3, 3, rng);
    for (std::size_t i = 0; i < v.group->order(); ++i) {
      const Scalar t = -v.group->element(i)(1, 0);
      const std::vector<Polynomial> img = {P(f4, "x0", 3), P(f4, "x1", 3) + P(f4, "x0", 3).scale(t),
                                           P(f4, "x2", 3) + P(f4, "x0", 3).scale(t.pow(4))};
      CHECK(act_on_poly(*v.group, i, g) == g.compose(img));
    }
  }

  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto w = va_module(p, n, n + 1);
    for (const auto& c : w.candidates) CHECK(parametric_invariance_check(w.action, c));
    CHECK(!parametric_invariance_check(w.action, P(w.group->field(), "x1", 3)));
  }
}

TEST_CASE("gl2_test_module") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto g = gl2_test_module(p, n);
    const std::size_t q = g.base.field.cardinality();
    CHECK(g.hom.dimension() == q * q);
    CHECK(g.group->order() == q);
    for (const auto& m : g.group->elements()) CHECK(m * g.identity == g.identity);
    Matrix id(g.base.field, q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) id(i, j) = g.identity[i * q + j];
    CHECK(id.is_identity());
    CHECK(determinant(id).is_one());
  }
  auto g = gl2_test_module(2, 1);
  auto r = epsilon(g.group, g.identity, 3, EpsilonMethod::linear_algebra);
  CHECK(*r.value == 2);
}

TEST_CASE("torus_module") {
  auto t = torus_module(7, 1, 2);
  CHECK(t.group->order() == 6);
  CHECK(t.invariant.str() == "x0^2*x1");
  CHECK(t.invariant.eval(t.point).is_one());
  CHECK(is_invariant(*t.group, t.invariant));
  CHECK(t.weights == std::vector<long long>{-1, 2});
  CHECK(t.modulus == 6);
  // The weight of each coordinate matches act_on_poly.
  const std::size_t g0 = t.group->generator_indices()[0];
  const Scalar gen_r = t.group->element(g0)(0, 0);
  CHECK(act_on_poly(*t.group, g0, P(t.field, "x0", 2)) == P(t.field, "x0", 2).scale(gen_r.inv()));

  for (std::uint32_t d = 1; d <= 3; ++d) CHECK(weight_invariant_monomials({-2, 6}, d).empty());
  CHECK(code_of([] { torus_module(7, 1, 3); }) == ErrorCode::WeightCollision);
  CHECK(code_of([] { torus_module(2, 1, 1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { torus_module(12, 1, 1); }) == ErrorCode::BadParameter);
  auto t9 = torus_module(9, 1, 2);
  CHECK(t9.group->order() == 8);
}

TEST_CASE("torus: modular weights agree with exact weights through degree m") {
  for (auto [q, r, m] : std::vector<std::tuple<std::uint64_t, long long, std::uint32_t>>{{7, 1, 2}, {31, 1, 3}, {31, 2, 3}, {31, 1, 5}}) {
    auto t = torus_module(q, r, m);
    for (std::uint32_t d = 1; d <= m; ++d) {
      CHECK(weight_invariant_monomials(t.weights, d) == weight_invariant_monomials(t.weights, d, t.modulus));
      CHECK(weight_invariant_monomials(t.weights, d).empty());
    }
    const auto top = weight_invariant_monomials(t.weights, m + 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0] == t.invariant.leading_monomial());
    // Invariant monomials under the finite group are exactly the modular ones.
    for (std::uint32_t d = 1; d <= m + 1; ++d) {
      const auto modular = weight_invariant_monomials(t.weights, d, t.modulus);
      for (const auto& mono : mono_basis(2, d)) {
        const bool inv = is_invariant(*t.group, Polynomial::monomial(t.field, mono));
        CHECK(inv == (std::find(modular.begin(), modular.end(), mono) != modular.end()));
      }
    }
  }
}

TEST_CASE("ga2_example") {
  auto ex = ga2_example();
  const Field q = Field::rationals();
  CHECK(ex.action.specialize({Scalar::rational(0), Scalar::rational(0)}).is_identity());
  // The displayed matrix, entry by entry, at the default samples.
  for (const auto& st : ga2_default_samples()) {
    const Scalar s = st[0], t = st[1];
    const Scalar half = Scalar::rational(1, 2), sixth = Scalar::rational(1, 6);
    Matrix m = Matrix::identity(q, 4);
    m(1, 0) = m(2, 1) = m(3, 2) = -s;
    m(2, 0) = m(3, 1) = half * s * s - t;
    m(3, 0) = -sixth * s * s * s + s * t;
    CHECK(ex.action.specialize(st) == m);
    CHECK(ex.action.specialize_inverse(st) == inverse(m));
  }
  const auto& f = ex.candidates[1];
  CHECK(f.eval(ex.point).is_one());
  CHECK(parametric_invariance_check(ex.action, ex.candidates[0]));
  CHECK(parametric_invariance_check(ex.action, f));
  CHECK(!parametric_invariance_check(ex.action, P(q, "x1", 4)));
  CHECK(parametric_invariance_check(ex.action, P(q, "7/3", 4)));
  for (const auto& h : ex.h_invariants) CHECK(parametric_invariance_check(ex.h_action, h));
  CHECK(!parametric_invariance_check(ex.h_action, P(q, "x2", 4)));
  // One numeric specialization confirms x1 is moved: (s, t) = (1, 0).
  const Matrix mi = ex.action.specialize_inverse({Scalar::rational(1), Scalar::rational(0)});
  CHECK(P(q, "x1", 4).substitute_linear(mi) != P(q, "x1", 4));
}

TEST_CASE("sampled_fixed_space") {
  auto ex = ga2_example();
  const Field q = Field::rationals();
  const auto samples = ga2_default_samples();
  const auto d1 = sampled_fixed_space(ex.action, samples, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == P(q, "x0", 4));
  for (std::uint32_t d = 1; d <= 2; ++d)
    for (const auto& b : sampled_fixed_space(ex.action, samples, d)) CHECK(b.eval(ex.point).is_zero());
  CHECK(sampled_fixed_space(ex.action, {}, 2).size() == mono_count(4, 2));

  // Monotone in the sample set; every parametric invariant is contained.
  for (std::uint32_t d = 1; d <= 3; ++d) {
    std::size_t prev = mono_count(4, d);
    for (std::size_t k = 0; k <= samples.size(); ++k) {
      const std::vector<std::vector<Scalar>> sub(samples.begin(), samples.begin() + k);
      const auto sp = sampled_fixed_space(ex.action, sub, d);
      CHECK(sp.size() <= prev);
      prev = sp.size();
      for (const auto& c : ex.candidates) {
        for (std::uint32_t e = 1; e <= d; ++e) {
          if (static_cast<std::uint32_t>(c.degree()) * e != d) continue;
          const Polynomial pw = c.pow(e);
          Matrix rows(q, sp.size() + 1, mono_count(4, d));
          for (std::size_t i = 0; i < sp.size(); ++i) {
            const auto v = sp[i].coefficient_vector(d);
            for (std::size_t j = 0; j < v.size(); ++j) rows(i, j) = v[j];
          }
          const auto v = pw.coefficient_vector(d);
          for (std::size_t j = 0; j < v.size(); ++j) rows(sp.size(), j) = v[j];
          CHECK(rank(rows) == sp.size());
        }
      }
    }
  }
}
