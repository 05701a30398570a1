// Acceptance run: one PASS/FAIL line per criterion. Time budgets are part
// of each criterion and are checked against wall clock.
//
// Criterion 5 contains one sub-claim that is false as stated (equality of
// the candidate subalgebra with the U_(n+1) and U_(n+2) invariants through
// degree p^n + 2). It is printed as FAIL. The exit status accepts that one
// failure only when the recomputed explanation holds: U_(n+1) gains
// x2^p - x1*x0^(p-1) in degree p, and equality first holds at the level
// predicted by p^(m-n) > p^n + 2.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nullcone/constructions.hpp"
#include "nullcone/suites.hpp"

using namespace nullcone;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Matrix perm_matrix(const Field& f, const std::vector<std::size_t>& img) {
  Matrix m(f, img.size(), img.size());
  for (std::size_t i = 0; i < img.size(); ++i) m(img[i], i) = Scalar::one(f);
  return m;
}

Matrix cycle(const Field& f, std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return perm_matrix(f, img);
}

GroupPtr regular_of(const std::vector<Matrix>& gens) { return image_group(regular_rep(group_closure(gens))); }

bool nonzero(const std::vector<Scalar>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return true;
  }
  return false;
}

std::size_t span_rank(const std::vector<Polynomial>& ps, std::size_t n, std::uint32_t d, const Field& f) {
  if (ps.empty()) return 0;
  Matrix m(f, ps.size(), mono_count(n, d));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto v = ps[i].coefficient_vector(d);
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
  }
  return rank(m);
}

std::string eps_str(const SeparationReport& r) {
  return r.value ? std::to_string(*r.value) : ">" + std::to_string(r.degree_bound);
}

// -- 1 ----------------------------------------------------------------------

Outcome binomial_lemma() {
  std::size_t checked = 0, bad = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t n = 1; ipow(p, n) <= 125; ++n) {
      const std::uint64_t q = ipow(p, n);
      for (std::uint64_t k = 0; k < q; ++k) {
        const std::uint32_t want = (k % 2 == 0) ? 1 % p : p - 1;
        mpz_class exact;
        mpz_bin_uiui(exact.get_mpz_t(), q - 1, k);
        const mpz_class r = exact % p;
        ++checked;
        if (binomial_mod_p(p, q - 1, k) != want || r.get_ui() != want) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " congruences checked against (-1)^k and exact binomials, " +
                        std::to_string(bad) + " mismatches"};
}

// -- 2 ----------------------------------------------------------------------

Outcome regular_representation() {
  std::size_t ok = 0, total = 0;
  std::string failed;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t n = 1; ipow(p, n) <= 25; ++n) {
      ++total;
      if (vandermonde_regular_check(p, n).ok()) ++ok;
      else failed += " (" + std::to_string(p) + "," + std::to_string(n) + ")";
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " of p^n <= 25 regular" +
                           (failed.empty() ? "" : ", failed:" + failed)};
}

// -- 3 ----------------------------------------------------------------------

Outcome epsilon_free() {
  const Field f2 = ff_make(2), f3 = ff_make(3), f5 = ff_make(5);
  const std::vector<std::pair<std::string, GroupPtr>> groups = {
      {"Z2", regular_of({cycle(f2, 2)})},
      {"Z3", regular_of({cycle(f3, 3)})},
      {"Z5", regular_of({cycle(f5, 5)})},
      {"Z2xZ2", regular_of({perm_matrix(f2, {1, 0, 3, 2}), perm_matrix(f2, {2, 3, 0, 1})})},
  };
  bool pass = true;
  std::ostringstream os;
  for (const auto& [name, g] : groups) {
    const auto order = static_cast<std::uint32_t>(g->order());
    std::size_t pts = 0, good = 0;
    for (const auto& v : fixed_points(*g, g->field())) {
      if (!nonzero(v)) continue;
      ++pts;
      const auto a = epsilon(g, v, order, EpsilonMethod::orbit_sums);
      const auto b = epsilon(g, v, order, EpsilonMethod::linear_algebra);
      if (a.value == std::optional<std::uint32_t>(order) && b.value == a.value) ++good;
    }
    pass = pass && pts > 0 && good == pts;
    os << name << " " << good << "/" << pts << " points at epsilon " << order << "; ";
  }
  return {pass, os.str() + "both routes"};
}

// -- 4 ----------------------------------------------------------------------

Outcome gl2_lower_bound(std::uint32_t p, std::uint32_t n) {
  const auto mod = gl2_test_module(p, n);
  const auto q = static_cast<std::uint32_t>(ipow(p, n));
  bool fixed = true;
  for (const auto& e : mod.group->elements()) fixed = fixed && e * mod.identity == mod.identity;
  // Kernel route: every degree < q is computed in full and must vanish at id.
  std::vector<std::size_t> dims;
  const auto la = epsilon(mod.group, mod.identity, q, EpsilonMethod::linear_algebra, std::nullopt,
                          [&](std::uint32_t, std::size_t dim) { dims.push_back(dim); });
  const auto fast = epsilon(mod.group, mod.identity, q, EpsilonMethod::orbit_sums);
  const bool witness_ok = la.witness && la.witness->degree() == static_cast<int>(q) && !la.witness->eval(mod.identity).is_zero();
  const bool pass = fixed && la.value == std::optional<std::uint32_t>(q) && fast.value == la.value && witness_ok;
  std::ostringstream os;
  os << "(" << p << "," << n << ") dim " << mod.group->dimension() << ": epsilon " << eps_str(la) << " (orbit sums "
     << eps_str(fast) << "), invariant dims by degree";
  for (auto d : dims) os << " " << d;
  return {pass, os.str()};
}

// -- 5 ----------------------------------------------------------------------

struct Va5 {
  bool parametric = true;
  bool generation = true;  // the sub-claim as stated
  bool separation = true;
  bool explanation = true;  // recomputed reason for the generation failure
  std::string detail;
};

Va5 va_claims() {
  Va5 out;
  std::ostringstream os;
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const auto q = static_cast<std::uint32_t>(ipow(p, n));
    const std::uint32_t dmax = q + 2;
    os << "(" << p << "," << n << "):";
    const auto base = va_module(p, n, n + 1);
    const bool par = parametric_invariance_check(base.action, base.candidates[0]) &&
                     parametric_invariance_check(base.action, base.candidates[1]);
    out.parametric = out.parametric && par;
    os << " parametric " << (par ? "yes" : "no");

    for (std::uint32_t m : {n + 1, n + 2}) {
      const auto mod = va_module(p, n, m);
      const auto c = check_generation(mod.candidates, mod.group, dmax,
                                      [&](const Polynomial& f) { return parametric_invariance_check(mod.action, f); });
      const bool eq = c.all_equal() && c.sandwich();
      out.generation = out.generation && eq;
      os << ", U_" << m << " " << (eq ? "equal" : "strict");
      if (!eq) {
        os << " [";
        for (const auto& d : c.degrees) os << (d.degree > 1 ? " " : "") << d.subalgebra_dim << "/" << d.invariant_dim;
        os << "]";
      }
    }

    // Why U_(n+1) is too small, and where equality does start.
    const Field fb = base.group->field();
    Polynomial extra = Polynomial::monomial(fb, Monomial({0, 0, p})) -
                       Polynomial::monomial(fb, Monomial({p - 1, 1, 0}));
    const bool extra_ok = is_invariant(*base.group, extra) && !parametric_invariance_check(base.action, extra);
    std::uint32_t level = n + 1;
    while (ipow(p, level - n) <= dmax) ++level;
    const auto top = va_module(p, n, level);
    const auto ct = check_generation(top.candidates, top.group, dmax,
                                     [&](const Polynomial& f) { return parametric_invariance_check(top.action, f); });
    const auto below = va_module(p, n, level - 1);
    const bool below_strict = !check_generation(below.candidates, below.group, dmax).all_equal();
    out.explanation = out.explanation && extra_ok && ct.all_equal() && ct.sandwich() && below_strict;
    os << "; sandwich first certifies at U_" << level << (ct.all_equal() && ct.sandwich() ? "" : " (NOT)");

    PointSearchOptions opts;
    opts.generators = base.candidates;
    const auto dl = delta_bounded(base.group, q + 1, fb, opts);
    const auto sg = sigma_bounded(base.group, q + 1, fb, opts);
    const bool sep = dl.value == std::optional<std::uint32_t>(q) && sg.value == dl.value && dl.certified && sg.certified;
    out.separation = out.separation && sep;
    os << "; delta " << eps_str(dl) << " sigma " << eps_str(sg) << (sep ? " certified" : " NOT certified") << ". ";
  }
  out.detail = os.str();
  return out;
}

// -- 6 ----------------------------------------------------------------------

Outcome torus_sigma() {
  bool pass = true;
  std::ostringstream os;
  for (auto [qq, r, m] : std::vector<std::tuple<std::uint64_t, long long, std::uint32_t>>{{7, 1, 2}, {31, 1, 3}, {31, 2, 3}, {31, 1, 5}}) {
    const auto t = torus_module(qq, r, m);
    const auto e = epsilon(t.group, t.point, m + 1);
    std::size_t exact = 0, modular = 0;
    for (std::uint32_t d = 1; d <= m; ++d) {
      exact += weight_invariant_monomials(t.weights, d).size();
      modular += weight_invariant_monomials(t.weights, d, t.modulus).size();
    }
    const bool ok = e.value == std::optional<std::uint32_t>(m + 1) && exact == 0 && modular == 0 &&
                    is_invariant(*t.group, t.invariant) && t.invariant.eval(t.point).is_one();
    pass = pass && ok;
    os << "(" << qq << "," << r << "," << m << ") epsilon " << eps_str(e) << "; ";
  }
  return {pass, os.str() + "no weight-zero monomial below m+1, exact or mod q-1"};
}

// -- 7 ----------------------------------------------------------------------

Outcome nagata_miyata() {
  std::mt19937 rng(2024);
  const Field q = Field::rationals(), f5 = ff_make(5), f7 = ff_make(7);
  Matrix sign(f5, 2, 2);
  sign(0, 0) = Scalar::one(f5);
  sign(1, 1) = Scalar::from_int(f5, -1);
  const std::vector<GroupPtr> groups = {
      group_closure({perm_matrix(q, {1, 0, 2})}),
      group_closure({cycle(q, 3)}),
      group_closure({sign}),
      group_closure({cycle(f7, 3)}),
  };
  std::size_t tried = 0, ok = 0;
  for (const auto& g : groups) {
    const Field& f = g->field();
    const std::size_t n = g->dimension();
    const auto pts = [&] {
      if (f.is_finite()) return fixed_points(*g, f);
      // Over Q: integer points of the fixed space of these permutation groups.
      std::vector<std::vector<Scalar>> v;
      for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
          std::vector<Scalar> x(n, Scalar::rational(a));
          x[n - 1] = Scalar::rational(b);
          bool fixed = true;
          for (auto gi : g->generator_indices()) fixed = fixed && g->element(gi) * x == x;
          if (fixed) v.push_back(x);
        }
      }
      return v;
    }();
    int found = 0;
    for (int attempt = 0; attempt < 200 && found < 3; ++attempt) {
      const std::uint32_t d = 1 + rng() % 4;
      if (f.characteristic() != 0 && d % f.characteristic() == 0) continue;
      Polynomial raw(f, n);
      for (const auto& m : mono_basis(n, d)) raw.add_term(m, Scalar::from_int(f, static_cast<long long>(rng() % 7) - 3));
      const Polynomial inv = reynolds(*g, raw);
      const auto& v = pts[rng() % pts.size()];
      if (inv.is_zero() || inv.eval(v).is_zero()) continue;
      ++found;
      ++tried;
      const auto lin = degree_reduce(inv, v, *g);
      if (lin.degree() == 1 && lin.is_homogeneous() && is_invariant(*g, lin) && !lin.eval(v).is_zero()) ++ok;
    }
  }
  // p | d must be refused.
  auto refused = [](const GroupPtr& g, const std::string& f, const std::vector<Scalar>& v) {
    try {
      degree_reduce(Polynomial::parse(g->field(), f, g->dimension()), v, *g);
    } catch (const Error& e) {
      return e.code() == ErrorCode::CharDividesDegree;
    }
    return false;
  };
  const Field f2 = ff_make(2), f3 = ff_make(3);
  const bool r1 = refused(group_closure({Matrix::parse(f3, "1,1;0,1")}), "x0^3 - x0*x1^2",
                          {Scalar::one(f3), Scalar::zero(f3)});
  const bool r2 = refused(group_closure({perm_matrix(f2, {1, 0})}), "x0*x1", {Scalar::one(f2), Scalar::one(f2)});
  const bool pass = tried >= 3 && ok == tried && r1 && r2;
  return {pass, std::to_string(ok) + "/" + std::to_string(tried) + " random instances over Q, F_5, F_7 reduced and verified; "
                    "CharDividesDegree raised for F_3 (d=3) and F_2 (d=2): " + (r1 && r2 ? "yes" : "no")};
}

// -- 8 ----------------------------------------------------------------------

Outcome ga2_example_check() {
  const auto ex = ga2_example();
  bool par = true;
  for (const auto& f : ex.candidates) par = par && parametric_invariance_check(ex.action, f);
  bool hpar = true;
  for (const auto& f : ex.h_invariants) hpar = hpar && parametric_invariance_check(ex.h_action, f);
  bool vanish = true;
  std::vector<std::size_t> dims;
  for (std::uint32_t d = 1; d <= 2; ++d) {
    const auto basis = sampled_fixed_space(ex.action, ga2_default_samples(), d);
    dims.push_back(basis.size());
    for (const auto& b : basis) vanish = vanish && b.eval(ex.point).is_zero();
  }
  const Polynomial& f = ex.candidates[1];
  const bool wit = f.degree() == 3 && f.eval(ex.point).is_one();
  std::ostringstream os;
  os << "x0, f invariant " << (par ? "yes" : "no") << "; H-invariants " << (hpar ? "yes" : "no")
     << "; sampled fixed dims " << dims[0] << ", " << dims[1] << " vanish at (0,1,0,0) " << (vanish ? "yes" : "no")
     << "; lower bound " << (vanish ? "3" : "?") << " with f(v) = " << f.eval(ex.point).str();
  return {par && hpar && vanish && wit, os.str()};
}

// -- 9 ----------------------------------------------------------------------

Outcome normal_subgroup() {
  const Field f2 = ff_make(2);
  const auto g = group_closure({cycle(f2, 4)});
  const std::size_t gen = g->generator_indices()[0];
  const auto n = group_closure({g->element(g->multiply(gen, gen))});
  const auto quot = regular_of({cycle(f2, 2)});
  const auto dg = delta_bounded(g, 5, f2), dn = delta_bounded(n, 5, f2), dq = delta_bounded(quot, 3, f2);
  const bool ok = dg.value == std::optional<std::uint32_t>(4) && dn.value == std::optional<std::uint32_t>(2) &&
                  dq.value == std::optional<std::uint32_t>(2) && *dg.value <= *dn.value * *dq.value;
  return {ok, "delta(Z_4) = " + eps_str(dg) + ", delta(Z_2|V) = " + eps_str(dn) + ", delta(Z_4/Z_2) = " + eps_str(dq) +
                  ", " + eps_str(dg) + " <= " + eps_str(dn) + "*" + eps_str(dq)};
}

// -- 10 ---------------------------------------------------------------------

Outcome property_suites() {
  std::mt19937 rng(99);
  std::ostringstream os;
  bool pass = true;

  // action laws
  bool laws = true;
  {
    auto gn = gn_module(2, 2);
    auto s = sym_power_rep(gn.rep, 3);
    const Field f2 = ff_make(2);
    for (const auto& r : {gn.rep, s, dual_rep(s), hom_rep(s, s), regular_rep(group_closure({perm_matrix(f2, {1, 0, 3, 2}),
                                                                                            perm_matrix(f2, {2, 3, 0, 1})}))}) {
      laws = laws && r.is_homomorphism();
    }
    auto va = va_module(2, 1, 2);
    const auto& G = *va.group;
    Polynomial f(G.field(), 3);
    for (const auto& m : mono_basis(3, 3)) f.add_term(m, Scalar::from_code(G.field(), rng() % 4));
    for (std::size_t i = 0; i < G.order(); ++i) {
      for (std::size_t j = 0; j < G.order(); ++j) {
        laws = laws && act_on_poly(G, i, act_on_poly(G, j, f)) == act_on_poly(G, G.multiply(i, j), f);
      }
    }
  }
  os << "action laws " << (laws ? "ok" : "FAIL");
  pass = pass && laws;

  // orbit sums span invariants of permutation modules
  bool spans = true;
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = ff_make(p);
    for (const auto& g : {group_closure({cycle(f, 3)}), group_closure({cycle(f, 4), perm_matrix(f, {3, 2, 1, 0})}),
                          regular_of({perm_matrix(f, {1, 0, 3, 2}), perm_matrix(f, {2, 3, 0, 1})})}) {
      const std::size_t n = g->dimension();
      for (std::uint32_t d = 1; d <= 3; ++d) {
        std::vector<Polynomial> sums;
        for (const auto& m : mono_basis(n, d)) sums.push_back(orbit_sum(*g, m).sum);
        auto basis = invariant_space(g, n, d).basis;
        const std::size_t r = span_rank(sums, n, d, f);
        sums.insert(sums.end(), basis.begin(), basis.end());
        spans = spans && r == basis.size() && span_rank(sums, n, d, f) == r;
      }
    }
  }
  os << "; orbit-sum spanning " << (spans ? "ok" : "FAIL");
  pass = pass && spans;

  // fast path against linear algebra
  std::size_t agree = 0, compared = 0;
  {
    std::vector<GroupPtr> gs;
    for (std::uint32_t p : {2u, 3u, 5u}) gs.push_back(regular_of({cycle(ff_make(p), p)}));
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
      auto gn = gn_module(p, n);
      gs.push_back(image_group(sym_power_rep(gn.rep, static_cast<std::uint32_t>(gn.field.cardinality() - 1))));
    }
    for (const auto& g : gs) {
      const auto dmax = static_cast<std::uint32_t>(g->order());
      for (const auto& v : fixed_points(*g, g->field())) {
        if (!nonzero(v)) continue;
        ++compared;
        const auto a = epsilon(g, v, dmax, EpsilonMethod::orbit_sums);
        const auto b = epsilon(g, v, dmax, EpsilonMethod::linear_algebra);
        if (a.value == b.value) ++agree;
      }
    }
  }
  os << "; fast/slow epsilon " << agree << "/" << compared;
  pass = pass && compared > 0 && agree == compared;

  // subgroup monotonicity
  std::size_t mono_ok = 0, mono_n = 0;
  {
    auto va = va_module(2, 1, 2);
    const Field f4 = va.group->field();
    Matrix u1 = Matrix::identity(f4, 3);
    u1(1, 0) = u1(2, 0) = Scalar::one(f4);
    auto h = group_closure({u1});
    const auto els = ff_enumerate(f4);
    for (int i = 0; i < 40; ++i) {
      std::vector<Scalar> v = {els[rng() % 4], els[rng() % 4], els[rng() % 4]};
      const auto eg = epsilon(va.group, v, 4), eh = epsilon(h, v, 4);
      if (!eg.value) continue;
      ++mono_n;
      if (eh.value && *eh.value <= *eg.value) ++mono_ok;
    }
  }
  os << "; monotonicity " << mono_ok << "/" << mono_n;
  pass = pass && mono_n > 0 && mono_ok == mono_n;

  // determinism
  bool same = true;
  for (const char* s : {"va-ring", "torus-sigma", "normal-subgroup", "ga2-example"}) {
    same = same && run_suite(s).to_json().dump() == run_suite(s).to_json().dump();
  }
  os << "; report determinism " << (same ? "ok" : "FAIL");
  pass = pass && same;
  return {pass, os.str()};
}

}  // namespace

int main() {
  Va5 va;
  std::vector<Criterion> crit = {
      {1, "binomial lemma", 1, binomial_lemma},
      {2, "regular representation", 10, regular_representation},
      {3, "epsilon on free modules", 30, epsilon_free},
      {4, "GL2 lower bound (2,1)", 30, [] { return gl2_lower_bound(2, 1); }},
      {4, "GL2 lower bound (3,1)", 30, [] { return gl2_lower_bound(3, 1); }},
      {4, "GL2 lower bound (2,2)", 600, [] { return gl2_lower_bound(2, 2); }},
      {5, "G_a-module invariant ring", 300,
       [&] {
         va = va_claims();
         return Outcome{va.parametric && va.generation && va.separation,
                        std::string("parametric invariance ") + (va.parametric ? "PASS" : "FAIL") +
                            ", generation vs U_(n+1) and U_(n+2) " + (va.generation ? "PASS" : "FAIL") +
                            ", delta = sigma = p^n " + (va.separation ? "PASS" : "FAIL") + ". " + va.detail};
       }},
      {6, "torus sigma construction", 10, torus_sigma},
      {7, "degree reduction", 1, nagata_miyata},
      {8, "G_a x G_a example", 10, ga2_example_check},
      {9, "normal-subgroup inequality", 30, normal_subgroup},
      {10, "property suites", 120, property_suites},
  };

  int failed = 0;
  bool known_ok = false;
  for (const auto& c : crit) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = s <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    std::printf("%s  [%d] %s: %s (%.2f s, budget %g s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), s, c.budget_seconds, in_time ? "" : ", OVER BUDGET");
    if (pass) continue;
    if (c.id == 5 && in_time && va.parametric && va.separation && !va.generation && va.explanation) {
      known_ok = true;
      std::printf("      known failure: the generation sub-claim is false as stated; U_(n+1) has the extra invariant "
                  "x2^p - x1*x0^(p-1) in degree p, and equality holds from the least m with p^(m-n) > p^n + 2 "
                  "(recomputed above). Every other part of [5] passes.\n");
      continue;
    }
    ++failed;
  }
  if (va.generation) {
    std::printf("NOTE  [5] the generation sub-claim passed; the recorded expected failure no longer applies\n");
    ++failed;
  }
  std::printf("acceptance: %s (%d unexpected failure%s%s)\n", failed == 0 ? "OK" : "NOT OK", failed, failed == 1 ? "" : "s",
              known_ok ? ", 1 documented failure in [5]" : "");
  return failed == 0 ? 0 : 1;
}
