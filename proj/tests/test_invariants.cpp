#include <set>

#include "doctest.h"
#include "nullcone/constructions.hpp"
#include "nullcone/invariants.hpp"

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

std::vector<Scalar> pt(const Field& f, std::initializer_list<long long> xs) {
  std::vector<Scalar> v;
  for (auto x : xs) v.push_back(Scalar::from_int(f, x));
  return v;
}

Matrix cyclic_perm(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m((i + 1) % n, i) = Scalar::one(f);
  return m;
}

// Span of a list of polynomials, compared through rank of coefficient rows.
std::size_t span_rank(const std::vector<Polynomial>& ps, std::size_t n, std::uint32_t d, const Field& f) {
  if (ps.empty()) return 0;
  Matrix m(f, ps.size(), mono_count(n, d));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto v = ps[i].coefficient_vector(d);
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
  }
  return rank(m);
}

}  // namespace

TEST_CASE("invariant_space examples") {
  const Field f2 = ff_make(2);
  auto triv = group_closure({Matrix::identity(f2, 2)});
  CHECK(invariant_space(triv, 2, 1).dimension() == 2);

  // Swap over F_2, degree 2. Oracle: every coefficient vector (a,b,c) of
  // a x0^2 + b x0x1 + c x1^2, invariant iff a = c.
  auto swap = group_closure({Matrix::parse(f2, "0,1;1,0")});
  const auto sp = invariant_space(swap, 2, 2);
  std::size_t count = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) count += a == c;
  CHECK((std::size_t{1} << sp.dimension()) == count);
  REQUIRE(sp.dimension() == 2);
  CHECK(sp.basis[0].str() == "x0^2 + x1^2");
  CHECK(sp.basis[1].str() == "x0*x1");

  // U_1, natural module: l(gv) = l(v) forces l(e0) = 0, so l = x1.
  auto u1 = group_closure({Matrix::parse(f2, "1,1;0,1")});
  const auto s1 = invariant_space(u1, 2, 1);
  REQUIRE(s1.dimension() == 1);
  CHECK(s1.basis[0].str() == "x1");

  // Degree 2: x1^2 and x0^2 + x0x1 (checked by hand: (x0+x1)^2 + (x0+x1)x1).
  const auto s2 = invariant_space(u1, 2, 2);
  REQUIRE(s2.dimension() == 2);
  CHECK(s2.basis[0].str() == "x0^2 + x0*x1");
  CHECK(s2.basis[1].str() == "x1^2");
  CHECK(code_of([&] { invariant_space(u1, 3, 1); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("invariant bases are invariant under every element and reduced") {
  const Field f3 = ff_make(3);
  auto g = group_closure({Matrix::parse(f3, "1,1,0;0,1,1;0,0,1")});
  for (std::uint32_t d = 1; d <= 4; ++d) {
    const auto sp = invariant_space(g, 3, d);
    std::set<std::size_t> leads;
    for (const auto& f : sp.basis) {
      for (std::size_t i = 0; i < g->order(); ++i) CHECK(act_on_poly(*g, i, f) == f);
      CHECK(f.coefficient(f.leading_monomial()).is_one());
      leads.insert(mono_rank(f.leading_monomial()));
      // Reduced: no other basis element has a term at this leading monomial.
      for (const auto& h : sp.basis) {
        if (&h != &f) CHECK(h.coefficient(f.leading_monomial()).is_zero());
      }
    }
    CHECK(leads.size() == sp.dimension());
  }
}

TEST_CASE("orbit sums") {
  const Field f2 = ff_make(2), f3 = ff_make(3);
  auto swap = group_closure({Matrix::parse(f2, "0,1;1,0")});
  auto o1 = orbit_sum(*swap, Monomial({1, 0}));
  CHECK(o1.sum.str() == "x0 + x1");
  CHECK(o1.orbit_size == 2);
  auto o2 = orbit_sum(*swap, Monomial({1, 1}));
  CHECK(o2.sum.str() == "x0*x1");
  CHECK(o2.orbit_size == 1);

  auto c3 = group_closure({cyclic_perm(f3, 3)});
  auto o3 = orbit_sum(*c3, Monomial({2, 1, 0}));
  CHECK(o3.orbit_size == 3);
  CHECK(o3.sum == P(f3, "x0^2*x1 + x1^2*x2 + x2^2*x0", 3));
  CHECK(is_invariant(*c3, o3.sum));

  auto u1 = group_closure({Matrix::parse(f2, "1,1;0,1")});
  CHECK(code_of([&] { orbit_sum(*u1, Monomial({1, 0})); }) == ErrorCode::NotPermutationAction);
}

TEST_CASE("reynolds") {
  const Field q = Field::rationals();
  auto swap = group_closure({Matrix::parse(q, "0,1;1,0")});
  CHECK(reynolds(*swap, P(q, "x0", 2)) == P(q, "1/2*x0 + 1/2*x1", 2));
  const auto inv = P(q, "x0*x1 + 3*x0^2 + 3*x1^2", 2);
  CHECK(reynolds(*swap, inv) == inv);
  const auto r = reynolds(*swap, P(q, "x0^3 - 2*x1", 2));
  CHECK(reynolds(*swap, r) == r);
  const Field f2 = ff_make(2);
  auto swap2 = group_closure({Matrix::parse(f2, "0,1;1,0")});
  CHECK(code_of([&] { reynolds(*swap2, P(f2, "x0", 2)); }) == ErrorCode::CharDividesOrder);
}

TEST_CASE("epsilon examples") {
  const Field f2 = ff_make(2);
  auto z2 = group_closure({Matrix::parse(f2, "1,1;0,1")});
  auto reg = regular_rep(z2);
  auto g = image_group(reg);
  auto r11 = epsilon(g, pt(f2, {1, 1}), 4);
  REQUIRE(r11.value);
  CHECK(*r11.value == 2);
  CHECK(r11.method == "orbit-sums");
  auto r11s = epsilon(g, pt(f2, {1, 1}), 4, EpsilonMethod::linear_algebra);
  CHECK(*r11s.value == 2);
  // (1,0) is not fixed: goes through linear algebra, witness x0 + x1.
  auto r10 = epsilon(g, pt(f2, {1, 0}), 4);
  REQUIRE(r10.value);
  CHECK(*r10.value == 1);
  CHECK(r10.witness->str() == "x0 + x1");
  CHECK(r10.method == "linear-algebra");
  CHECK(!epsilon(g, pt(f2, {0, 0}), 3).value);
  CHECK(code_of([&] { epsilon(g, pt(f2, {1, 0}), 2, EpsilonMethod::orbit_sums); }) == ErrorCode::NotFixedPoint);

  auto t = torus_module(7, 1, 2);
  auto rt = epsilon(t.group, t.point, 5);
  REQUIRE(rt.value);
  CHECK(*rt.value == 3);
  CHECK(rt.witness->degree() == 3);
  CHECK(!rt.witness->eval(t.point).is_zero());
}

TEST_CASE("epsilon at points over an extension field") {
  const Field f2 = ff_make(2), f4 = ff_make(2, 2);
  auto u1 = group_closure({Matrix::parse(f2, "1,1;0,1")});
  const std::vector<Scalar> v = {Scalar::parse(f4, "z"), Scalar::zero(f4)};
  // x1 vanishes at v, x0^2 + x0x1 = z^2 does not.
  auto r = epsilon(u1, v, 3);
  REQUIRE(r.value);
  CHECK(*r.value == 2);
  CHECK(r.field == f4);
}

TEST_CASE("delta and sigma examples") {
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = ff_make(p);
    auto zp = group_closure({Matrix::parse(f, "1,1;0,1")});
    auto g = image_group(regular_rep(zp));
    auto r = delta_bounded(g, p + 1, f);
    REQUIRE(r.value);
    CHECK(*r.value == p);
    CHECK(r.points_total == p);
    CHECK(r.undetermined.empty());
  }
  const Field f2 = ff_make(2), f3 = ff_make(3);
  auto t1 = group_closure({Matrix::identity(f2, 1)});
  CHECK(*delta_bounded(t1, 2, f2).value == 1);
  auto t3 = group_closure({Matrix::identity(f3, 1)});
  CHECK(*sigma_bounded(t3, 2, f3).value == 1);

  auto swap = group_closure({Matrix::parse(f2, "0,1;1,0")});
  // Four points by hand: (1,0), (0,1) are separated by x0 + x1; at (1,1)
  // x0 + x1 = 0 over F_2 and x0x1 = 1, so sigma = 2.
  auto s = sigma_bounded(swap, 3, f2);
  CHECK(*s.value == 2);
  CHECK(s.points_attaining == 1);
  CHECK(s.points[0] == pt(f2, {1, 1}));
  CHECK(s.epsilon_counts.at(1) == 2);
  CHECK(s.points_total == 4);
  CHECK(s.points_in_nullcone == 1);

  auto va = va_module(2, 1, 1);
  PointSearchOptions opts;
  opts.generators = std::vector<Polynomial>{P(f2, "x0", 3), P(f2, "x0*x2 - x1^2", 3)};
  const Field f4 = ff_make(2, 2);
  auto d = delta_bounded(va.group, 4, f4, opts);
  REQUIRE(d.value);
  CHECK(*d.value == 2);
  CHECK(d.certified);
  for (const auto& v : d.points) CHECK(v[0].is_zero());
  auto sg = sigma_bounded(va.group, 4, f4, opts);
  CHECK(*sg.value == 2);
  CHECK(sg.certified);
  CHECK(sg.points_total == 64);
  // With generators: the nullcone is {(0,0,a)}.
  CHECK(sg.points_in_nullcone == 4);

  auto uncert = delta_bounded(va.group, 1, f4);
  CHECK(!uncert.certified);
  // x1 + x2 is a degree-1 invariant of U_1 (the image of rho - I is
  // spanned by e1 + e2), so only (0, a, a) stays undetermined.
  CHECK(uncert.undetermined.size() == 3);
  CHECK(is_invariant(*va.group, P(f2, "x1 + x2", 3)));
  // The declared generators belong to the G_a action; for U_1 they miss x1 + x2.
  CHECK(d.declared_in_separated == 3);

  CHECK(code_of([&] { sigma_bounded(va.group, 2, ff_make(2, 8), {}); }) == ErrorCode::TooManyPoints);
  PointSearchOptions bad;
  bad.generators = std::vector<Polynomial>{P(f2, "x1", 3)};
  CHECK(code_of([&] { delta_bounded(va.group, 2, f4, bad); }) == ErrorCode::NotInvariantGenerator);
}

TEST_CASE("fixed points") {
  const Field f2 = ff_make(2), f4 = ff_make(2, 2);
  auto va = va_module(2, 1, 1);
  const auto pts = fixed_points(*va.group, f4);
  CHECK(pts.size() == 16);
  CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
    return false;
  }));
  CHECK(code_of([&] { fixed_points(*va.group, f4, 10); }) == ErrorCode::TooManyPoints);
  CHECK(code_of([&] { fixed_points(*va.group, Field::rationals()); }) == ErrorCode::RationalContext);
}

TEST_CASE("nullcone status") {
  const Field f2 = ff_make(2);
  auto va = va_module(2, 1, 1);
  const std::vector<Polynomial> gens = {P(f2, "x0", 3), P(f2, "x0*x2 - x1^2", 3)};
  auto in = nullcone_status(pt(f2, {0, 0, 1}), va.group, 4, gens);
  CHECK(in.verdict == NullconeVerdict::in);
  CHECK(in.generators.size() == 2);

  auto va2 = va_module(2, 1, 2);
  const Field f4 = ff_make(2, 2);
  auto out = nullcone_status(pt(f4, {0, 1, 0}), va2.group, 4, va2.candidates);
  CHECK(out.verdict == NullconeVerdict::out);
  CHECK(out.certificate->str() == "x0*x2 + x1^2");
  auto unk = nullcone_status(pt(f4, {0, 1, 0}), va2.group, 1);
  CHECK(unk.verdict == NullconeVerdict::unknown);
  CHECK(unk.degree_bound == 1);
  auto out2 = nullcone_status(pt(f4, {0, 1, 0}), va2.group, 2);
  CHECK(out2.verdict == NullconeVerdict::out);
  CHECK(out2.certificate->degree() == 2);

  CHECK(nullcone_status(pt(f4, {0, 0, 0}), va2.group, 1).verdict == NullconeVerdict::in);
  CHECK(code_of([&] { nullcone_status(pt(f2, {0, 0, 1}), va.group, 4, std::vector<Polynomial>{P(f2, "x2", 3)}); }) ==
        ErrorCode::NotInvariantGenerator);
}

TEST_CASE("degree reduction") {
  const Field q = Field::rationals();
  auto triv = group_closure({Matrix::identity(q, 2)});
  const std::vector<Scalar> v = {Scalar::rational(1), Scalar::rational(0)};
  // By hand: v = e0, f = y0^2 + y0 y1, c0 = 1, c1 = y1, so x0 + 1/2 x1.
  auto r = degree_reduce(P(q, "x0^2 + x0*x1", 2), v, *triv);
  CHECK(r == P(q, "x0 + 1/2*x1", 2));
  CHECK(r.eval(v).is_one());

  CHECK(degree_reduce(P(q, "3*x0 + x1", 2), v, *triv) == P(q, "x0 + 1/3*x1", 2));

  const Field f2 = ff_make(2);
  auto t2 = group_closure({Matrix::identity(f2, 2)});
  CHECK(code_of([&] { degree_reduce(P(f2, "x0^2", 2), pt(f2, {1, 0}), *t2); }) == ErrorCode::CharDividesDegree);
  CHECK(code_of([&] { degree_reduce(P(q, "x1^2", 2), v, *triv); }) == ErrorCode::VanishesAtPoint);
  auto swap = group_closure({Matrix::parse(q, "0,1;1,0")});
  CHECK(code_of([&] { degree_reduce(P(q, "x0^2 + x1^2", 2), v, *swap); }) == ErrorCode::NotFixedPoint);
  const std::vector<Scalar> diag = {Scalar::rational(1), Scalar::rational(1)};
  CHECK(code_of([&] { degree_reduce(P(q, "x0^2", 2), diag, *swap); }) == ErrorCode::NotInvariantCandidate);
  auto lin = degree_reduce(P(q, "x0^2 + x1^2", 2), diag, *swap);
  CHECK(lin == P(q, "1/2*x0 + 1/2*x1", 2));
}

TEST_CASE("generation checks") {
  const Field f2 = ff_make(2), f4 = ff_make(2, 2);
  auto va = va_module(2, 1, 2);
  auto c0 = check_generation({va.candidates[0]}, va.group, 2);
  CHECK(c0.degrees[1].subalgebra_dim == 1);
  CHECK(!c0.degrees[1].equal());
  CHECK(c0.parametric_invariant.empty());
  CHECK(!c0.sandwich());

  // At U_2 the extra invariant x0x1 + x2^2 (t + t^4 = 0 on F_4) makes
  // degree 2 strict; U_4 is equal through degree 4.
  auto c2 = check_generation(va.candidates, va.group, 4);
  CHECK(c2.degrees[1].invariant_dim == 3);
  CHECK(!c2.all_equal());
  CHECK(is_invariant(*va.group, P(f4, "x0*x1 + x2^2", 3)));
  auto va4 = va_module(2, 1, 4);
  auto c4 = check_generation(va4.candidates, va4.group, 4,
                             [&](const Polynomial& f) { return parametric_invariance_check(va4.action, f); });
  CHECK(c4.all_equal());
  CHECK(c4.sandwich());
  for (const auto& d : c4.degrees) CHECK(d.contained);

  auto triv = group_closure({Matrix::identity(f2, 2)});
  auto ce = check_generation({}, triv, 1);
  CHECK(ce.degrees[0].subalgebra_dim == 0);
  CHECK(ce.degrees[0].invariant_dim == 2);
  CHECK(!ce.degrees[0].equal());
  CHECK(code_of([&] { check_generation({P(f4, "x1", 3)}, va.group, 1); }) == ErrorCode::NotInvariantCandidate);
}

TEST_CASE("weight-invariant monomials") {
  auto w = weight_invariant_monomials({-1, 2}, 3);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == Monomial({2, 1}));
  for (std::uint32_t d = 1; d <= 2; ++d) CHECK(weight_invariant_monomials({-1, 2}, d).empty());
  CHECK(weight_invariant_monomials({0, 0, 0}, 2).size() == mono_count(3, 2));
  // Mod 3, x0^3 has weight -3 = 0.
  CHECK(weight_invariant_monomials({-1, 2}, 3, 3).size() == 4);
  CHECK(code_of([] { weight_invariant_monomials({1}, 1, 1); }) == ErrorCode::BadParameter);
}

TEST_CASE("fixed_space with explicit substitutions") {
  const Field f3 = ff_make(3);
  const auto full = fixed_space(f3, 2, 3, {});
  CHECK(full.size() == 4);
  const auto neg = fixed_space(f3, 2, 3, {Matrix::parse(f3, "2,0;0,2")});
  CHECK(neg.empty());
  const auto neg2 = fixed_space(f3, 2, 2, {Matrix::parse(f3, "2,0;0,2")});
  CHECK(neg2.size() == 3);
  CHECK(span_rank(neg2, 2, 2, f3) == 3);
}
