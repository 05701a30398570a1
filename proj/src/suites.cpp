#include "nullcone/suites.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "nullcone/constructions.hpp"
#include "nullcone/parallel.hpp"

#ifndef NULLCONE_VERSION
#define NULLCONE_VERSION "0.0.0"
#endif

namespace nullcone {

namespace {

using Clock = std::chrono::steady_clock;

// Statement printed next to each claim kind. Failing claims show it so the
// reader sees which fact broke.
const std::map<std::string, std::string> kStatements = {
    {"binomial", "C(p^n - 1, k) is congruent to (-1)^k mod p for every 0 <= k < p^n"},
    {"regular-rep",
     "S^(p^n - 1) of the natural U_n-module is free of rank one: the orbit matrix of Y^(p^n - 1) is a "
     "nonsingular Vandermonde matrix and U_n permutes that orbit freely and transitively"},
    {"epsilon-free.orbit-sums", "on the regular module of G over F_p every nonzero fixed point has epsilon = |G| (orbit sums)"},
    {"epsilon-free.linear-algebra", "on the regular module of G over F_p every nonzero fixed point has epsilon = |G| (kernels)"},
    {"gl2-delta.fixed", "the vectorized identity of Hom(S, S), S = S^(p^n - 1), is fixed by U_n"},
    {"gl2-delta.epsilon", "epsilon(U_n, id) = p^n on Hom(S, S), by kernels in every degree up to p^n"},
    {"gl2-delta.low-degrees", "every invariant of degree below p^n vanishes at id"},
    {"gl2-delta.orbit-sums", "the orbit-sum route gives the same epsilon(U_n, id)"},
    {"va-ring.x0", "x0 is invariant under u_t identically in t over F_p[t]"},
    {"va-ring.f", "x2*x0^(p^n - 1) - x1^(p^n) is invariant under u_t identically in t over F_p[t]"},
    {"va-ring.extra",
     "x2^p - x1*x0^(p - 1) is invariant under the finite subgroup U_(n+1) but not under the whole family"},
    {"va-ring.first-strict", "against U_(n+1) the candidate subalgebra first falls short in degree p"},
    {"va-ring.level",
     "the first level m with subalgebra = U_m-invariants in all degrees <= p^n + 2 is the least m with "
     "p^(m - n) > p^n + 2"},
    {"va-ring.sandwich", "at that level every degree <= p^n + 2 is certified equal by the sandwich"},
    {"va-ring.at-level", "sandwich certification at the requested level holds iff p^(level - n) > p^n + 2"},
    {"va-ring.delta", "delta = p^n over F_(p^(n+1)) points with the two generators declared, certified"},
    {"va-ring.sigma", "sigma = p^n over F_(p^(n+1)) points with the two generators declared, certified"},
    {"torus-sigma.epsilon", "epsilon(T, v0 + y0^m) = m + 1"},
    {"torus-sigma.witness", "y0^m * Z is invariant and takes the value 1 at v0 + y0^m"},
    {"torus-sigma.exact-empty", "no monomial of degree <= m has exact weight zero"},
    {"torus-sigma.modular-empty", "no monomial of degree <= m has weight zero mod q - 1"},
    {"torus-sigma.collision-free",
     "the weight-zero monomials mod q - 1 are the exact ones in degrees <= m, and in degree m + 1 when |r| m (m + 1) < q - 1"},
    {"ga2-example.parametric", "x0 and f = x1^3 - 3*x0*x1*x2 + 3*x0^2*x3 are invariant identically in (s, t)"},
    {"ga2-example.h-invariants", "x0, x1 and x0*x3 - x2*x1 are invariant under the subgroup {(0, t)} identically in t"},
    {"ga2-example.x1-not-invariant", "x1 is not invariant under the whole group"},
    {"ga2-example.sampled", "every sampled fixed form of degree 1 or 2 vanishes at (0, 1, 0, 0)"},
    {"ga2-example.lower-bound", "epsilon at (0, 1, 0, 0) is at least 3 and f, of degree 3, takes the value 1 there"},
    {"normal-subgroup.G", "delta(Z_4) = 4 on its regular module over F_2"},
    {"normal-subgroup.N", "delta(Z_2) = 2 for the subgroup of order 2 acting on the same module"},
    {"normal-subgroup.quotient", "delta(Z_4 / Z_2) = 2, computed on the regular module of Z_2"},
    {"normal-subgroup.inequality", "delta(G) <= delta(N) * delta(G/N)"},
    {"nagata-miyata.reduce", "a homogeneous invariant f with f(v) != 0 and p not dividing deg f yields a linear invariant nonzero at v"},
    {"nagata-miyata.char-divides", "degree reduction is refused when p divides deg f"},
};

Claim make_claim(const std::string& id, const std::string& kind, Json expected, Json computed) {
  Claim c;
  c.id = id;
  c.statement = kStatements.at(kind);
  c.pass = expected == computed;
  c.expected = std::move(expected);
  c.computed = std::move(computed);
  return c;
}

Json eps_value(const SeparationReport& r) {
  if (r.value) return *r.value;
  return Json{{"undetermined_above", r.degree_bound}};
}

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

// Parameter access with unknown-key rejection.
class Params {
 public:
  Params(const std::string& suite, const SuiteParams& p, std::set<std::string> allowed) : suite_(suite), p_(p) {
    for (const auto& [k, v] : p_) {
      if (!allowed.count(k)) raise(ErrorCode::BadParameter, "suite " + suite + " takes no parameter '" + k + "'");
    }
  }
  bool has(const std::string& k) const { return p_.count(k) != 0; }
  const std::string& raw(const std::string& k) const { return p_.at(k); }
  std::uint64_t uint(const std::string& k, std::uint64_t lo, std::uint64_t hi) const {
    const std::string& s = p_.at(k);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-') raise(ErrorCode::BadParameter, k + " must be an integer, got '" + s + "'");
    if (v < lo || v > hi) {
      raise(ErrorCode::BadParameter, k + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }
  long long sint(const std::string& k) const {
    const std::string& s = p_.at(k);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != s.size()) raise(ErrorCode::BadParameter, k + " must be an integer, got '" + s + "'");
    return v;
  }
  std::uint32_t prime(const std::string& k) const {
    const auto v = uint(k, 2, 1u << 16);
    if (!is_prime(v)) raise(ErrorCode::BadParameter, k + " = " + std::to_string(v) + " is not prime");
    return static_cast<std::uint32_t>(v);
  }
  Json echo() const {
    Json j = Json::object();
    for (const auto& [k, v] : p_) j[k] = v;
    return j;
  }

 private:
  std::string suite_;
  const SuiteParams& p_;
};

SuiteReport start(const std::string& name, const Params& ps) {
  SuiteReport r;
  r.suite = name;
  r.parameters = ps.echo();
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport suite_binomial(const SuiteParams& raw) {
  Params ps("binomial", raw, {"p", "nmax"});
  auto rep = start("binomial", ps);
  std::vector<std::uint32_t> primes = {2, 3, 5};
  if (ps.has("p")) primes = {ps.prime("p")};
  Json cases = Json::array();
  for (auto p : primes) {
    std::uint32_t nmax = 0;
    if (ps.has("nmax")) {
      nmax = static_cast<std::uint32_t>(ps.uint("nmax", 1, 64));
      if (std::log2(static_cast<double>(p)) * nmax > 20) raise(ErrorCode::BadParameter, "p^nmax must be at most 2^20");
    } else {
      while (ipow(p, nmax + 1) <= 125) ++nmax;
    }
    for (std::uint32_t n = 1; n <= nmax; ++n) {
      const std::uint64_t q = ipow(p, n);
      std::uint64_t good = 0;
      for (std::uint64_t k = 0; k < q; ++k) {
        const std::uint32_t want = (k % 2 == 0) ? 1 % p : p - 1;
        if (binomial_mod_p(p, q - 1, k) == want) ++good;
      }
      rep.claims.push_back(make_claim("p=" + std::to_string(p) + ",n=" + std::to_string(n), "binomial", q, good));
    }
    cases.push_back(Json{{"p", p}, {"nmax", nmax}});
  }
  rep.data["cases"] = cases;
  return rep;
}

SuiteReport suite_regular(const SuiteParams& raw) {
  Params ps("regular-rep", raw, {"p", "n"});
  auto rep = start("regular-rep", ps);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cases;
  if (ps.has("n") && !ps.has("p")) raise(ErrorCode::BadParameter, "n needs p");
  std::vector<std::uint32_t> primes = {2, 3, 5};
  if (ps.has("p")) primes = {ps.prime("p")};
  for (auto p : primes) {
    if (ps.has("n")) {
      const auto n = static_cast<std::uint32_t>(ps.uint("n", 1, 32));
      if (ipow(p, n) > 25 || n > 5) raise(ErrorCode::BadParameter, "p^n must be at most 25");
      cases.emplace_back(p, n);
    } else {
      for (std::uint32_t n = 1; ipow(p, n) <= 25; ++n) cases.emplace_back(p, n);
    }
  }
  if (cases.empty()) raise(ErrorCode::BadParameter, "p^n must be at most 25");
  Json det = Json::array();
  for (auto [p, n] : cases) {
    const auto v = vandermonde_regular_check(p, n);
    const Json want = {{"matches_expected", true}, {"nonsingular", true}, {"free", true},
                       {"transitive", true},       {"action_law", true},  {"permutation_basis_regular", true}};
    const Json got = {{"matches_expected", v.matches_expected}, {"nonsingular", v.nonsingular},
                      {"free", v.free},
                      {"transitive", v.transitive},
                      {"action_law", v.action_law},
                      {"permutation_basis_regular", v.permutation_basis_regular}};
    const std::string id = "p=" + std::to_string(p) + ",n=" + std::to_string(n);
    rep.claims.push_back(make_claim(id, "regular-rep", want, got));
    const Field f = ff_make(p, n);
    det.push_back(Json{{"p", p}, {"n", n}, {"modulus", f.modulus()}, {"determinant", v.determinant.str()}});
  }
  rep.data["cases"] = det;
  return rep;
}

SuiteReport suite_epsilon_free(const SuiteParams& raw) {
  Params ps("epsilon-free", raw, {});
  auto rep = start("epsilon-free", ps);
  struct Case {
    std::string name;
    std::uint32_t p;
    std::vector<Matrix> gens;
  };
  const Field f2 = ff_make(2), f3 = ff_make(3), f5 = ff_make(5);
  const std::vector<Case> cases = {
      {"Z2", 2, {cycle(f2, 2)}},
      {"Z3", 3, {cycle(f3, 3)}},
      {"Z5", 5, {cycle(f5, 5)}},
      {"Z2xZ2", 2, {perm_matrix(f2, {1, 0, 3, 2}), perm_matrix(f2, {2, 3, 0, 1})}},
  };
  Json data = Json::array();
  for (const auto& c : cases) {
    const GroupPtr g = image_group(regular_rep(group_closure(c.gens)));
    const Field fp = g->field();
    const auto order = static_cast<std::uint32_t>(g->order());
    std::vector<std::vector<Scalar>> pts;
    for (auto& v : fixed_points(*g, fp)) {
      bool zero = true;
      for (const auto& x : v) zero = zero && x.is_zero();
      if (!zero) pts.push_back(v);
    }
    std::set<std::uint32_t> orbit_vals, la_vals;
    Json orbit_undet = false, la_undet = false;
    for (const auto& v : pts) {
      const auto a = epsilon(g, v, order, EpsilonMethod::orbit_sums);
      const auto b = epsilon(g, v, order, EpsilonMethod::linear_algebra);
      if (a.value) orbit_vals.insert(*a.value);
      else orbit_undet = true;
      if (b.value) la_vals.insert(*b.value);
      else la_undet = true;
    }
    const Json want = {{"points", fp.cardinality() - 1}, {"epsilon", Json::array({order})}, {"undetermined", false}};
    rep.claims.push_back(make_claim(c.name + ".orbit-sums", "epsilon-free.orbit-sums", want,
                                    Json{{"points", pts.size()}, {"epsilon", orbit_vals}, {"undetermined", orbit_undet}}));
    rep.claims.push_back(make_claim(c.name + ".linear-algebra", "epsilon-free.linear-algebra", want,
                                    Json{{"points", pts.size()}, {"epsilon", la_vals}, {"undetermined", la_undet}}));
    data.push_back(Json{{"group", c.name}, {"order", order}, {"field", field_json(fp)}});
  }
  rep.data["groups"] = data;
  return rep;
}

// gl2-delta runs in a worker so a budget can cut it short. On timeout the
// worker is left running and the report is marked partial.
struct Gl2Outcome {
  std::vector<Claim> claims;
  Json data;
};

Gl2Outcome gl2_instance(std::uint32_t p, std::uint32_t n, const DegreeProgress& progress) {
  Gl2Outcome out;
  const auto mod = gl2_test_module(p, n);
  const auto q = static_cast<std::uint32_t>(ipow(p, n));
  const std::string tag = "p=" + std::to_string(p) + ",n=" + std::to_string(n);
  bool fixed = true;
  for (const auto& e : mod.group->elements()) fixed = fixed && e * mod.identity == mod.identity;
  out.claims.push_back(make_claim(tag + ".fixed", "gl2-delta.fixed", true, fixed));

  const auto la = epsilon(mod.group, mod.identity, q, EpsilonMethod::linear_algebra, std::nullopt, progress);
  out.claims.push_back(make_claim(tag + ".epsilon", "gl2-delta.epsilon", q, eps_value(la)));
  // The kernel route has computed every degree below its answer in full.
  const bool low = !la.value || *la.value >= q;
  out.claims.push_back(make_claim(tag + ".low-degrees", "gl2-delta.low-degrees", true, low));
  const auto fast = epsilon(mod.group, mod.identity, q, EpsilonMethod::orbit_sums);
  out.claims.push_back(make_claim(tag + ".orbit-sums", "gl2-delta.orbit-sums", q, eps_value(fast)));

  out.data = Json{{"p", p},
                  {"n", n},
                  {"dimension", mod.group->dimension()},
                  {"group_order", mod.group->order()},
                  {"field", field_json(mod.group->field())},
                  {"witness", la.witness ? Json(la.witness->str()) : Json(nullptr)}};
  return out;
}

struct Gl2State {
  std::mutex mu;
  std::condition_variable cv;
  bool done = false;
  Gl2Outcome result;
  std::exception_ptr error;
  Json progress = Json::array();
};

SuiteReport suite_gl2(const SuiteParams& raw) {
  Params ps("gl2-delta", raw, {"p", "n", "budget"});
  auto rep = start("gl2-delta", ps);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cases = {{2, 1}, {3, 1}, {2, 2}};
  if (ps.has("p") || ps.has("n")) {
    if (!ps.has("p")) raise(ErrorCode::BadParameter, "n needs p");
    const auto p = ps.prime("p");
    const auto n = ps.has("n") ? static_cast<std::uint32_t>(ps.uint("n", 1, 8)) : 1u;
    if (ipow(p, 2 * n) > 25) raise(ErrorCode::BadParameter, "p^(2n) must be at most 25");
    cases = {{p, n}};
  }
  double budget = 10;
  if (ps.has("budget")) {
    try {
      std::size_t used = 0;
      budget = std::stod(ps.raw("budget"), &used);
      if (used != ps.raw("budget").size()) throw std::invalid_argument("trailing");
    } catch (...) {
      raise(ErrorCode::BadParameter, "budget must be a number of minutes");
    }
    if (!(budget > 0)) raise(ErrorCode::BadParameter, "budget must be positive");
  }
  Json data = Json::array();
  for (auto [p, n] : cases) {
    auto st = std::make_shared<Gl2State>();
    std::thread worker([st, p = p, n = n] {
      try {
        auto res = gl2_instance(p, n, [st](std::uint32_t d, std::size_t dim) {
          std::lock_guard<std::mutex> lk(st->mu);
          st->progress.push_back(Json{{"degree", d}, {"dimension", dim}});
        });
        std::lock_guard<std::mutex> lk(st->mu);
        st->result = std::move(res);
      } catch (...) {
        std::lock_guard<std::mutex> lk(st->mu);
        st->error = std::current_exception();
      }
      std::lock_guard<std::mutex> lk(st->mu);
      st->done = true;
      st->cv.notify_all();
    });
    std::unique_lock<std::mutex> lk(st->mu);
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget * 60));
    const bool finished = st->cv.wait_until(lk, deadline, [&] { return st->done; });
    if (!finished) {
      lk.unlock();
      worker.detach();
      lk.lock();
      rep.partial = true;
      const std::string tag = "p=" + std::to_string(p) + ",n=" + std::to_string(n);
      rep.claims.push_back(make_claim(tag + ".epsilon", "gl2-delta.epsilon", ipow(p, n),
                                      Json{{"budget_exhausted_minutes", budget}, {"degrees_done", st->progress}}));
      data.push_back(Json{{"p", p}, {"n", n}, {"partial", true}});
      continue;
    }
    lk.unlock();
    worker.join();
    if (st->error) std::rethrow_exception(st->error);
    for (auto& c : st->result.claims) rep.claims.push_back(std::move(c));
    st->result.data["kernel_dimensions"] = st->progress;
    data.push_back(st->result.data);
  }
  rep.data["instances"] = data;
  return rep;
}

Polynomial monomial_poly(const Field& f, std::vector<std::uint32_t> e, long long c = 1) {
  return Polynomial::monomial(f, Monomial(std::move(e)), Scalar::from_int(f, c));
}

SuiteReport suite_va(const SuiteParams& raw) {
  Params ps("va-ring", raw, {"p", "n", "level"});
  auto rep = start("va-ring", ps);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cases = {{2, 1}, {3, 1}, {2, 2}};
  std::optional<std::uint32_t> level;
  if (ps.has("p") || ps.has("n")) {
    if (!ps.has("p")) raise(ErrorCode::BadParameter, "n needs p");
    const auto p = ps.prime("p");
    const auto n = ps.has("n") ? static_cast<std::uint32_t>(ps.uint("n", 1, 8)) : 1u;
    if (ipow(p, n) > 9) raise(ErrorCode::BadParameter, "p^n must be at most 9");
    cases = {{p, n}};
  }
  if (ps.has("level") && ps.raw("level") != "auto") level = static_cast<std::uint32_t>(ps.uint("level", 1, 12));
  Json data = Json::array();
  for (auto [p, n] : cases) {
    const auto q = static_cast<std::uint32_t>(ipow(p, n));
    const std::uint32_t dmax = q + 2;
    const std::string tag = "p=" + std::to_string(p) + ",n=" + std::to_string(n);
    std::uint32_t formula = n + 1;
    while (ipow(p, formula - n) <= dmax) ++formula;
    if (level && ipow(p, *level) > 1u << 12) raise(ErrorCode::BadParameter, "p^level must be at most 4096");

    const auto base = va_module(p, n, n + 1);
    rep.claims.push_back(make_claim(tag + ".x0", "va-ring.x0", true, parametric_invariance_check(base.action, base.candidates[0])));
    rep.claims.push_back(make_claim(tag + ".f", "va-ring.f", true, parametric_invariance_check(base.action, base.candidates[1])));

    const Field fb = base.group->field();
    const Polynomial extra = monomial_poly(fb, {0, 0, p}) - monomial_poly(fb, {p - 1, 1, 0});
    rep.claims.push_back(make_claim(tag + ".extra", "va-ring.extra", Json{{"finite", true}, {"family", false}},
                                    Json{{"finite", is_invariant(*base.group, extra)},
                                         {"family", parametric_invariance_check(base.action, extra)}}));

    const auto c1 = check_generation(base.candidates, base.group, dmax);
    Json first_strict = nullptr;
    for (const auto& d : c1.degrees) {
      if (!d.equal()) {
        first_strict = d.degree;
        break;
      }
    }
    rep.claims.push_back(make_claim(tag + ".first-strict", "va-ring.first-strict", p, first_strict));

    Json levels = Json::array();
    auto certify = [&](std::uint32_t m) {
      const auto mod = va_module(p, n, m);
      auto c = check_generation(mod.candidates, mod.group, dmax,
                                [&](const Polynomial& f) { return parametric_invariance_check(mod.action, f); });
      Json dims = Json::array();
      for (const auto& d : c.degrees) dims.push_back(Json{{"degree", d.degree}, {"subalgebra", d.subalgebra_dim}, {"invariants", d.invariant_dim}});
      levels.push_back(Json{{"level", m}, {"group_order", mod.group->order()}, {"degrees", dims}, {"all_equal", c.all_equal()}});
      return c;
    };
    if (level) {
      const auto c = certify(*level);
      rep.claims.push_back(make_claim(tag + ".level=" + std::to_string(*level), "va-ring.at-level", *level >= formula,
                                      c.all_equal() && c.sandwich()));
    } else {
      Json found = nullptr;
      bool sandwich = false;
      for (std::uint32_t m = n + 1; m <= formula + 1; ++m) {
        const auto c = certify(m);
        if (c.all_equal()) {
          found = m;
          sandwich = c.sandwich();
          break;
        }
      }
      rep.claims.push_back(make_claim(tag + ".level", "va-ring.level", formula, found));
      rep.claims.push_back(make_claim(tag + ".sandwich", "va-ring.sandwich", true, sandwich));
    }

    PointSearchOptions opts;
    opts.generators = base.candidates;
    const auto dl = delta_bounded(base.group, q + 1, fb, opts);
    const auto sg = sigma_bounded(base.group, q + 1, fb, opts);
    rep.claims.push_back(make_claim(tag + ".delta", "va-ring.delta", Json{{"value", q}, {"certified", true}},
                                    Json{{"value", eps_value(dl)}, {"certified", dl.certified}}));
    rep.claims.push_back(make_claim(tag + ".sigma", "va-ring.sigma", Json{{"value", q}, {"certified", true}},
                                    Json{{"value", eps_value(sg)}, {"certified", sg.certified}}));

    data.push_back(Json{{"p", p},
                        {"n", n},
                        {"degree_bound", dmax},
                        {"point_field", field_json(fb)},
                        {"levels", levels},
                        {"delta", to_json(dl)},
                        {"sigma_points", sg.points_total},
                        {"sigma_in_nullcone", sg.points_in_nullcone}});
  }
  rep.data["instances"] = data;
  return rep;
}

SuiteReport suite_torus(const SuiteParams& raw) {
  Params ps("torus-sigma", raw, {"q", "r", "m"});
  auto rep = start("torus-sigma", ps);
  struct Case {
    std::uint64_t q;
    long long r;
    std::uint32_t m;
  };
  std::vector<Case> cases = {{7, 1, 2}, {31, 1, 3}, {31, 2, 3}, {31, 1, 5}};
  if (ps.has("q") || ps.has("r") || ps.has("m")) {
    if (!ps.has("q") || !ps.has("m")) raise(ErrorCode::BadParameter, "torus-sigma needs q and m (r defaults to 1)");
    const long long r = ps.has("r") ? ps.sint("r") : 1;
    cases = {{ps.uint("q", 2, 1u << 16), r, static_cast<std::uint32_t>(ps.uint("m", 1, 64))}};
  }
  Json data = Json::array();
  for (const auto& c : cases) {
    const auto t = torus_module(c.q, c.r, c.m);
    const std::string tag = "q=" + std::to_string(c.q) + ",r=" + std::to_string(c.r) + ",m=" + std::to_string(c.m);
    const auto e = epsilon(t.group, t.point, c.m + 1);
    rep.claims.push_back(make_claim(tag + ".epsilon", "torus-sigma.epsilon", c.m + 1, eps_value(e)));
    rep.claims.push_back(make_claim(tag + ".witness", "torus-sigma.witness", Json{{"invariant", true}, {"value", "1"}},
                                    Json{{"invariant", is_invariant(*t.group, t.invariant)},
                                         {"value", t.invariant.eval(t.point).str()}}));
    std::size_t exact = 0, modular = 0;
    bool agree = true;
    // Degree m + 1 is comparable only under the stronger bound; (7,1,2) has
    // Z^3 of weight 6 = 0 mod 6.
    const bool strong = static_cast<std::uint64_t>(std::llabs(c.r)) * c.m * (c.m + 1) < c.q - 1;
    const std::uint32_t through = strong ? c.m + 1 : c.m;
    for (std::uint32_t d = 1; d <= through; ++d) {
      const auto ex = weight_invariant_monomials(t.weights, d);
      const auto md = weight_invariant_monomials(t.weights, d, t.modulus);
      if (d <= c.m) {
        exact += ex.size();
        modular += md.size();
      }
      agree = agree && ex == md;
    }
    rep.claims.push_back(make_claim(tag + ".exact-empty", "torus-sigma.exact-empty", 0, exact));
    rep.claims.push_back(make_claim(tag + ".modular-empty", "torus-sigma.modular-empty", 0, modular));
    rep.claims.push_back(make_claim(tag + ".collision-free", "torus-sigma.collision-free", true, agree));
    data.push_back(Json{{"q", c.q},
                        {"r", c.r},
                        {"m", c.m},
                        {"weights", t.weights},
                        {"modulus", t.modulus},
                        {"weights_compared_through_degree", through},
                        {"point", point_json(t.point)},
                        {"invariant", t.invariant.str()},
                        {"group_order", t.group->order()}});
  }
  rep.data["instances"] = data;
  return rep;
}

SuiteReport suite_ga2(const SuiteParams& raw) {
  Params ps("ga2-example", raw, {});
  auto rep = start("ga2-example", ps);
  const auto ex = ga2_example();
  const Field q = ex.action.field;
  Json par = Json::array(), hpar = Json::array();
  for (const auto& f : ex.candidates) par.push_back(parametric_invariance_check(ex.action, f));
  for (const auto& f : ex.h_invariants) hpar.push_back(parametric_invariance_check(ex.h_action, f));
  rep.claims.push_back(make_claim("parametric", "ga2-example.parametric", Json::array({true, true}), par));
  rep.claims.push_back(make_claim("h-invariants", "ga2-example.h-invariants", Json::array({true, true, true}), hpar));
  rep.claims.push_back(make_claim("x1-not-invariant", "ga2-example.x1-not-invariant", false,
                                  parametric_invariance_check(ex.action, Polynomial::variable(q, 4, 1))));

  const auto samples = ga2_default_samples();
  Json dims = Json::array();
  bool vanish = true;
  Json first_nonzero = nullptr;
  for (std::uint32_t d = 1; d <= 3; ++d) {
    const auto basis = sampled_fixed_space(ex.action, samples, d);
    bool all_zero = true;
    for (const auto& b : basis) all_zero = all_zero && b.eval(ex.point).is_zero();
    if (d <= 2) vanish = vanish && all_zero;
    if (!all_zero && first_nonzero.is_null()) first_nonzero = d;
    dims.push_back(Json{{"degree", d}, {"dimension", basis.size()}});
  }
  rep.claims.push_back(make_claim("sampled", "ga2-example.sampled", true, vanish));
  const Polynomial& f = ex.candidates[1];
  rep.claims.push_back(make_claim("lower-bound", "ga2-example.lower-bound",
                                  Json{{"lower_bound", 3}, {"witness_degree", 3}, {"witness_value", "1"}},
                                  Json{{"lower_bound", vanish ? Json(3) : Json(nullptr)},
                                       {"witness_degree", f.degree()},
                                       {"witness_value", f.eval(ex.point).str()}}));
  Json smp = Json::array();
  for (const auto& s : samples) smp.push_back(point_json(s));
  rep.data["samples"] = smp;
  rep.data["point"] = point_json(ex.point);
  rep.data["sampled_dimensions"] = dims;
  rep.data["first_sampled_degree_nonzero_at_point"] = first_nonzero;
  rep.data["witness"] = f.str();
  return rep;
}

SuiteReport suite_normal(const SuiteParams& raw) {
  Params ps("normal-subgroup", raw, {});
  auto rep = start("normal-subgroup", ps);
  const Field f2 = ff_make(2);
  const auto g = group_closure({cycle(f2, 4)});
  const std::size_t gen = g->generator_indices()[0];
  const auto n = group_closure({g->element(g->multiply(gen, gen))});
  const auto quot = image_group(regular_rep(group_closure({cycle(f2, 2)})));
  const auto dg = delta_bounded(g, 5, f2);
  const auto dn = delta_bounded(n, 5, f2);
  const auto dq = delta_bounded(quot, 3, f2);
  rep.claims.push_back(make_claim("G", "normal-subgroup.G", 4, eps_value(dg)));
  rep.claims.push_back(make_claim("N", "normal-subgroup.N", 2, eps_value(dn)));
  rep.claims.push_back(make_claim("quotient", "normal-subgroup.quotient", 2, eps_value(dq)));
  const bool ineq = dg.value && dn.value && dq.value && *dg.value <= *dn.value * *dq.value;
  rep.claims.push_back(make_claim("inequality", "normal-subgroup.inequality", true, ineq));
  rep.data["G"] = to_json(dg);
  rep.data["N"] = to_json(dn);
  rep.data["quotient"] = to_json(dq);
  return rep;
}

SuiteReport suite_nagata(const SuiteParams& raw) {
  Params ps("nagata-miyata", raw, {});
  auto rep = start("nagata-miyata", ps);
  struct Case {
    std::string name;
    GroupPtr g;
    std::string f;
    std::vector<Scalar> v;
  };
  const Field q = Field::rationals(), f5 = ff_make(5), f7 = ff_make(7), f3 = ff_make(3);
  auto qs = [&](std::vector<long long> xs) {
    std::vector<Scalar> v;
    for (auto x : xs) v.push_back(Scalar::rational(x));
    return v;
  };
  auto fs = [](const Field& f, std::vector<long long> xs) {
    std::vector<Scalar> v;
    for (auto x : xs) v.push_back(Scalar::from_int(f, x));
    return v;
  };
  Matrix neg(f5, 2, 2);
  neg(0, 0) = Scalar::one(f5);
  neg(1, 1) = Scalar::from_int(f5, -1);
  const std::vector<Case> cases = {
      {"Q.swap", group_closure({perm_matrix(q, {1, 0, 2})}), "x0*x1 + x2^2", qs({2, 2, -1})},
      {"Q.cycle3", group_closure({cycle(q, 3)}), "x0*x1*x2", qs({1, 1, 1})},
      {"F5.sign", group_closure({neg}), "x0^2 + x1^2", fs(f5, {1, 0})},
      {"F7.cycle3", group_closure({cycle(f7, 3)}), "x0^2 + x1^2 + x2^2", fs(f7, {1, 1, 1})},
  };
  Json inst = Json::array();
  for (const auto& c : cases) {
    const auto f = Polynomial::parse(c.g->field(), c.f, c.g->dimension());
    const auto lin = degree_reduce(f, c.v, *c.g);
    const bool ok = lin.degree() == 1 && lin.is_homogeneous() && is_invariant(*c.g, lin) && !lin.eval(c.v).is_zero();
    rep.claims.push_back(make_claim(c.name, "nagata-miyata.reduce", true, ok));
    inst.push_back(Json{{"name", c.name},
                        {"field", field_json(c.g->field())},
                        {"f", f.str()},
                        {"point", point_json(c.v)},
                        {"linear_invariant", lin.str()}});
  }
  // U_1 over F_3: the norm has degree 3.
  const auto u = group_closure({Matrix::parse(f3, "1,1;0,1")});
  const auto norm = Polynomial::parse(f3, "x0^3 - x0*x1^2", 2);
  std::string code = "none";
  try {
    degree_reduce(norm, fs(f3, {1, 0}), *u);
  } catch (const Error& e) {
    code = std::string(to_string(e.code()));
  }
  rep.claims.push_back(make_claim("F3.norm", "nagata-miyata.char-divides", "CharDividesDegree", code));
  inst.push_back(Json{{"name", "F3.norm"}, {"field", field_json(f3)}, {"f", norm.str()}, {"point", point_json(fs(f3, {1, 0}))}});
  rep.data["instances"] = inst;
  return rep;
}

using SuiteFn = SuiteReport (*)(const SuiteParams&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"binomial", suite_binomial},        {"regular-rep", suite_regular}, {"epsilon-free", suite_epsilon_free},
      {"gl2-delta", suite_gl2},            {"va-ring", suite_va},          {"torus-sigma", suite_torus},
      {"ga2-example", suite_ga2},          {"normal-subgroup", suite_normal}, {"nagata-miyata", suite_nagata},
  };
  return r;
}

SuiteReport suite_all(const SuiteParams& raw) {
  Params ps("all", raw, {"budget"});
  auto rep = start("all", ps);
  const auto& reg = registry();
  std::vector<SuiteReport> parts(reg.size());
  parallel_for(reg.size(), [&](std::size_t i) {
    SuiteParams sp;
    if (reg[i].first == "gl2-delta" && ps.has("budget")) sp["budget"] = ps.raw("budget");
    const auto t0 = Clock::now();
    parts[i] = reg[i].second(sp);
    parts[i].seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  });
  Json summary = Json::array();
  for (auto& part : parts) {
    for (auto& c : part.claims) {
      c.id = part.suite + "/" + c.id;
      rep.claims.push_back(std::move(c));
    }
    rep.partial = rep.partial || part.partial;
    summary.push_back(Json{{"suite", part.suite}, {"pass", part.pass()}, {"data", part.data}});
  }
  rep.data["suites"] = summary;
  return rep;
}

std::string compact(const Json& j) { return j.dump(); }

}  // namespace

bool SuiteReport::pass() const {
  if (partial || claims.empty()) return false;
  for (const auto& c : claims) {
    if (!c.pass) return false;
  }
  return true;
}

Json SuiteReport::to_json() const {
  Json j;
  j["tool"] = "nullcone_lab";
  j["version"] = tool_version();
  j["suite"] = suite;
  j["parameters"] = parameters;
  j["pass"] = pass();
  j["partial"] = partial;
  Json cs = Json::array();
  for (const auto& c : claims) {
    cs.push_back(Json{{"id", c.id}, {"statement", c.statement}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  }
  j["claims"] = cs;
  j["data"] = data;
  return j;
}

std::string SuiteReport::table() const {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& c : claims) {
    ok += c.pass;
    os << (c.pass ? "PASS  " : "FAIL  ") << c.id << ": expected " << compact(c.expected) << ", computed "
       << compact(c.computed) << "\n";
    if (!c.pass) os << "      violated: " << c.statement << "\n";
  }
  os << suite << ": " << ok << "/" << claims.size() << " claims pass";
  if (partial) os << " (partial: budget exhausted)";
  os << ", " << std::fixed << std::setprecision(2) << seconds << " s\n";
  return os.str();
}

std::string tool_version() { return NULLCONE_VERSION; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  const auto t0 = Clock::now();
  SuiteReport r;
  if (name == "all") {
    r = suite_all(params);
  } else {
    SuiteFn fn = nullptr;
    for (const auto& [n, f] : registry()) {
      if (n == name) fn = f;
    }
    if (!fn) raise(ErrorCode::UnknownSuite, "no suite named '" + name + "'");
    r = fn(params);
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace nullcone
