#include "nullcone/invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "detail/echelon.hpp"
#include "detail/field_data.hpp"
#include "detail/monomial_table.hpp"
#include "nullcone/parallel.hpp"

namespace nullcone {

namespace {

constexpr std::size_t kListedPoints = 64;
constexpr std::size_t kLowerDegreeCheck = 2000;

[[noreturn]] void internal(const std::string& what) { throw std::logic_error("internal check failed: " + what); }

template <class D>
std::vector<typename D::value_type> unwrap_matrix(const D& dom, const Matrix& m) {
  std::vector<typename D::value_type> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(dom.unwrap(m(i, j)));
  return out;
}

Matrix embed_matrix(const FieldEmbedding& e, const Matrix& m) {
  Matrix out(e.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = e(m(i, j));
  return out;
}

const Field& point_field(const std::vector<Scalar>& v, const Field& fallback) {
  if (v.empty()) return fallback;
  for (const auto& x : v) {
    if (x.field() != v[0].field()) raise(ErrorCode::ContextMismatch, "point coordinates over different fields");
  }
  return v[0].field();
}

bool is_zero_vec(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool codes_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
  }
  return false;
}

std::vector<Scalar> group_times(const Matrix& m, const std::vector<Scalar>& v, const FieldEmbedding& emb) {
  return embed_matrix(emb, m) * v;
}

}  // namespace

std::string to_string(ReportKind k) {
  switch (k) {
    case ReportKind::epsilon: return "epsilon";
    case ReportKind::delta: return "delta";
    case ReportKind::sigma: return "sigma";
  }
  return "epsilon";
}

std::string to_string(NullconeVerdict v) {
  switch (v) {
    case NullconeVerdict::in: return "In";
    case NullconeVerdict::out: return "Out";
    case NullconeVerdict::unknown: return "UnknownUpToDegree";
  }
  return "UnknownUpToDegree";
}

// ---------------------------------------------------------------------------
// Fixed spaces

std::vector<Polynomial> fixed_space(const Field& f, std::size_t nvars, std::uint32_t d, const std::vector<Matrix>& subs,
                                    const std::vector<Matrix>& verify) {
  for (const auto& b : subs) {
    if (b.rows() != nvars || b.cols() != nvars) raise(ErrorCode::DimensionMismatch, "substitution matrix size differs from nvars");
    if (b.field() != f) raise(ErrorCode::ContextMismatch, "substitution matrix over another field");
  }
  const detail::MonomialTable tab(nvars, d);
  const std::size_t n = tab.count(d);
  return detail::with_engine(f, n, [&](auto dom, auto& eng) {
    using T = typename decltype(dom)::value_type;
    std::vector<T> row(n);
    for (const auto& b : subs) {
      if (eng.full()) break;
      const auto cols = detail::substitution_matrix(dom, tab, d, unwrap_matrix(dom, b));
      // Rows of T_B - I, streamed one at a time.
      for (std::size_t r = 0; r < n && !eng.full(); ++r) {
        for (std::size_t m = 0; m < n; ++m) row[m] = cols[m * n + r];
        row[r] = dom.sub(row[r], dom.one());
        eng.add_row(row);
      }
    }
    const auto kernel = eng.kernel();
    for (const auto& b : verify) {
      const auto cols = detail::substitution_matrix(dom, tab, d, unwrap_matrix(dom, b));
      for (const auto& a : kernel) {
        std::vector<T> acc(n, dom.zero());
        for (std::size_t m = 0; m < n; ++m) {
          if (dom.is_zero(a[m])) continue;
          for (std::size_t r = 0; r < n; ++r) {
            const T& c = cols[m * n + r];
            if (!dom.is_zero(c)) acc[r] = dom.add(acc[r], dom.mul(a[m], c));
          }
        }
        if (acc != a) internal("fixed-space vector not fixed by a verification element");
      }
    }
    const auto basis = mono_basis(nvars, d);
    std::vector<Polynomial> out;
    out.reserve(kernel.size());
    for (const auto& a : kernel) {
      Polynomial p(f, nvars);
      for (std::size_t m = 0; m < n; ++m) {
        if (!dom.is_zero(a[m])) p.add_term(basis[m], dom.wrap(f, a[m]));
      }
      out.push_back(std::move(p));
    }
    return out;
  });
}

InvariantSpace invariant_space(const GroupPtr& g, std::size_t nvars, std::uint32_t d) {
  if (nvars != g->dimension()) raise(ErrorCode::DimensionMismatch, "nvars must equal the module dimension");
  std::vector<Matrix> subs, verify;
  for (auto gi : g->generator_indices()) subs.push_back(g->element(g->inverse(gi)));
  for (std::size_t i = 1; i < g->order(); ++i) verify.push_back(g->element(i));
  return InvariantSpace{g, d, fixed_space(g->field(), nvars, d, subs, verify)};
}

std::vector<InvariantSpace> invariant_spaces(const GroupPtr& g, std::uint32_t dmax) {
  std::vector<InvariantSpace> out(dmax);
  parallel_for(dmax, [&](std::size_t i) { out[i] = invariant_space(g, g->dimension(), static_cast<std::uint32_t>(i + 1)); });
  return out;
}

bool is_invariant(const MatrixGroup& g, const Polynomial& f) {
  // Generators suffice: the stabilizer of f is a subgroup.
  for (auto gi : g.generator_indices()) {
    if (act_on_poly(g, gi, f) != f) return false;
  }
  return true;
}

OrbitSum orbit_sum(const MatrixGroup& g, const Monomial& m) {
  for (const auto& e : g.elements()) {
    if (!is_permutation_matrix(e)) raise(ErrorCode::NotPermutationAction, "element " + e.str() + " is not a permutation matrix");
  }
  if (m.nvars() != g.dimension()) raise(ErrorCode::DimensionMismatch, "monomial ring does not match the module");
  const Field& f = g.field();
  std::set<std::vector<std::uint32_t>> seen;
  Polynomial sum(f, m.nvars());
  const Polynomial mono = Polynomial::monomial(f, m);
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Polynomial img = act_on_poly(g, i, mono);
    const Monomial& lead = img.leading_monomial();
    if (seen.insert(lead.exponents()).second) sum.add_term(lead, Scalar::one(f));
  }
  return OrbitSum{sum, seen.size()};
}

Polynomial reynolds(const MatrixGroup& g, const Polynomial& f) {
  const Field& k = g.field();
  if (k.is_finite() && g.order() % k.characteristic() == 0) {
    raise(ErrorCode::CharDividesOrder, "characteristic divides the group order");
  }
  Polynomial acc(k, f.nvars());
  for (std::size_t i = 0; i < g.order(); ++i) acc += act_on_poly(g, i, f);
  return acc.scale(Scalar::from_int(k, static_cast<long long>(g.order())).inv());
}

// ---------------------------------------------------------------------------
// epsilon

namespace {

SeparationReport epsilon_orbit_sums(const GroupPtr& g, const std::vector<Scalar>& v, std::uint32_t dmax,
                                    const PermutationBasis& pb, const FieldEmbedding& emb) {
  const MatrixGroup& G = *g;
  const std::size_t n = G.dimension();
  const Field& K = G.field();
  const Field& L = emb.target();
  const Matrix pinv = inverse(pb.basis);
  const std::vector<Scalar> w = embed_matrix(emb, pinv) * v;

  SeparationReport rep;
  rep.kind = ReportKind::epsilon;
  rep.degree_bound = dmax;
  rep.field = L;
  rep.points = {v};
  rep.method = "orbit-sums";

  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < n; ++k) {
    if (!w[k].is_zero()) support.push_back(k);
  }
  if (support.empty()) return rep;
  const std::uint32_t p = K.characteristic();

  auto orbit_of = [&](const std::vector<std::uint32_t>& e) {
    std::set<std::vector<std::uint32_t>> orbit;
    for (std::size_t gi = 0; gi < G.order(); ++gi) {
      std::vector<std::uint32_t> img(n, 0);
      for (std::size_t k = 0; k < n; ++k) img[pb.action[gi][k]] = e[k];
      orbit.insert(std::move(img));
    }
    return orbit;
  };

  for (std::uint32_t d = 1; d <= dmax; ++d) {
    for (const auto& small : mono_basis(support.size(), d)) {
      std::vector<std::uint32_t> e(n, 0);
      for (std::size_t s = 0; s < support.size(); ++s) e[support[s]] = small[s];
      const auto orbit = orbit_of(e);
      if (p != 0 && orbit.size() % p == 0) continue;
      // Orbit sum in permutation coordinates y, then y = P^{-1} x.
      Polynomial in_y(K, n);
      for (const auto& ex : orbit) in_y.add_term(Monomial(ex), Scalar::one(K));
      Polynomial wit = in_y.substitute_linear(pinv);
      if (!is_invariant(G, wit)) internal("orbit-sum witness is not invariant");
      if (wit.map_coefficients(emb).eval(v).is_zero()) internal("orbit-sum witness vanishes at the point");
      // Lower degrees must vanish at v; re-checked by linear algebra when small.
      if (mono_count(n, d - 1) <= kLowerDegreeCheck) {
        for (std::uint32_t e = 1; e < d; ++e) {
          for (const auto& f : invariant_space(g, n, e).basis) {
            if (!f.map_coefficients(emb).eval(v).is_zero()) internal("orbit-sum degree is not minimal");
          }
        }
      }
      rep.value = d;
      rep.witness = std::move(wit);
      return rep;
    }
  }
  return rep;
}

SeparationReport epsilon_linear_algebra(const GroupPtr& g, const std::vector<Scalar>& v, std::uint32_t dmax,
                                        const FieldEmbedding& emb, const DegreeProgress& progress) {
  SeparationReport rep;
  rep.kind = ReportKind::epsilon;
  rep.degree_bound = dmax;
  rep.field = emb.target();
  rep.points = {v};
  rep.method = "linear-algebra";
  for (std::uint32_t d = 1; d <= dmax; ++d) {
    const InvariantSpace sp = invariant_space(g, g->dimension(), d);
    if (progress) progress(d, sp.dimension());
    for (const auto& f : sp.basis) {
      if (!f.map_coefficients(emb).eval(v).is_zero()) {
        rep.value = d;
        rep.witness = f;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

SeparationReport epsilon(const GroupPtr& g, const std::vector<Scalar>& v, std::uint32_t dmax, EpsilonMethod method,
                         const std::optional<PermutationBasis>& basis, const DegreeProgress& progress) {
  const MatrixGroup& G = *g;
  if (v.size() != G.dimension()) raise(ErrorCode::DimensionMismatch, "point has wrong length");
  const Field& L = point_field(v, G.field());
  const FieldEmbedding emb(G.field(), L);

  bool fixed = true;
  for (auto gi : G.generator_indices()) fixed = fixed && group_times(G.element(gi), v, emb) == v;

  if (method != EpsilonMethod::linear_algebra) {
    std::optional<PermutationBasis> pb = basis;
    if (!pb && fixed) pb = permutation_basis(Representation::natural(g));
    if (pb && fixed) return epsilon_orbit_sums(g, v, dmax, *pb, emb);
    if (method == EpsilonMethod::orbit_sums) {
      if (!fixed) raise(ErrorCode::NotFixedPoint, "orbit-sum path needs a fixed point");
      raise(ErrorCode::NotPermutationAction, "no permutation basis found");
    }
  }
  return epsilon_linear_algebra(g, v, dmax, emb, progress);
}

// ---------------------------------------------------------------------------
// delta / sigma

std::vector<std::vector<Scalar>> fixed_points(const MatrixGroup& g, const Field& pointfield, std::size_t cap) {
  if (!pointfield.is_finite()) raise(ErrorCode::RationalContext, "points must come from a finite field");
  const FieldEmbedding emb(g.field(), pointfield);
  const std::size_t n = g.dimension();
  Matrix stacked(g.field(), n * g.generator_indices().size(), n);
  std::size_t r = 0;
  for (auto gi : g.generator_indices()) {
    const Matrix diff = g.element(gi) - Matrix::identity(g.field(), n);
    for (std::size_t i = 0; i < n; ++i, ++r)
      for (std::size_t j = 0; j < n; ++j) stacked(r, j) = diff(i, j);
  }
  const Matrix ker = embed_matrix(emb, kernel(stacked));
  const std::size_t k = ker.cols();
  const std::uint64_t q = pointfield.cardinality();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= q;
    if (count > cap) raise(ErrorCode::TooManyPoints, "fixed space has more than " + std::to_string(cap) + " points");
  }
  const auto els = ff_enumerate(pointfield);
  std::vector<std::vector<Scalar>> pts;
  pts.reserve(count);
  std::vector<std::size_t> digit(k, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t j = k; j-- > 0;) {
      digit[j] = rest % q;
      rest /= q;
    }
    std::vector<Scalar> pt(n, Scalar::zero(pointfield));
    for (std::size_t j = 0; j < k; ++j) {
      if (digit[j] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) pt[i] += els[digit[j]] * ker(i, j);
    }
    pts.push_back(std::move(pt));
  }
  std::sort(pts.begin(), pts.end(), codes_less);
  return pts;
}

namespace {

std::vector<std::vector<Scalar>> all_points(std::size_t n, const Field& L, std::size_t cap) {
  const std::uint64_t q = L.cardinality();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= q;
    if (count > cap) raise(ErrorCode::TooManyPoints, "V has more than " + std::to_string(cap) + " points");
  }
  std::vector<std::vector<Scalar>> pts;
  pts.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Scalar> pt(n, Scalar::zero(L));
    std::uint64_t rest = idx;
    for (std::size_t j = n; j-- > 0;) {
      pt[j] = Scalar::from_code(L, static_cast<std::uint32_t>(rest % q));
      rest /= q;
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

SeparationReport point_search(ReportKind kind, const GroupPtr& g, std::uint32_t dmax, const Field& L,
                              const PointSearchOptions& opts) {
  const MatrixGroup& G = *g;
  if (!L.is_finite()) raise(ErrorCode::RationalContext, "points must come from a finite field");
  const std::size_t n = G.dimension();
  const FieldEmbedding emb(G.field(), L);
  const detail::FieldData& F = *L.data();

  std::vector<Polynomial> gens;
  if (opts.generators) {
    for (const auto& f : *opts.generators) {
      if (f.field() != G.field() || f.nvars() != n) raise(ErrorCode::NotInvariantGenerator, "generator " + f.str() + " lives in another ring");
      if (f.degree() < 1 || !is_invariant(G, f)) raise(ErrorCode::NotInvariantGenerator, f.str() + " is not a positive-degree invariant");
      gens.push_back(f.map_coefficients(emb));
    }
  }

  const auto pts = kind == ReportKind::delta ? fixed_points(G, L, opts.point_cap) : all_points(n, L, opts.point_cap);
  const auto spaces = invariant_spaces(g, dmax);

  // Embedded bases as code vectors over mono_basis(n, d).
  std::vector<std::vector<std::vector<std::uint32_t>>> codes(dmax + 1);
  for (std::uint32_t d = 1; d <= dmax; ++d) {
    for (const auto& f : spaces[d - 1].basis) {
      std::vector<std::uint32_t> c(mono_count(n, d), 0);
      for (const auto& [m, x] : f.terms()) c[mono_rank(m)] = emb(x).code();
      codes[d].push_back(std::move(c));
    }
  }
  const detail::MonomialTable tab(n, dmax);

  struct Outcome {
    bool in = false;
    std::uint32_t eps = 0;  // 0: undetermined
    std::size_t witness = 0;
  };
  std::vector<Outcome> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t idx) {
    const auto& pt = pts[idx];
    Outcome& o = out[idx];
    if (is_zero_vec(pt)) {
      o.in = true;
      return;
    }
    // Declared-In points still get an epsilon so conflicts can be counted.
    if (opts.generators && std::all_of(gens.begin(), gens.end(), [&](const Polynomial& f) { return f.eval(pt).is_zero(); })) {
      o.in = true;
    }
    std::vector<std::uint32_t> coords(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = pt[i].code();
    std::vector<std::uint32_t> prev = {1};
    for (std::uint32_t d = 1; d <= dmax; ++d) {
      std::vector<std::uint32_t> vals(tab.count(d));
      for (std::size_t m = 0; m < vals.size(); ++m) vals[m] = F.mul(prev[tab.quotient(d, m)], coords[tab.first_var(d, m)]);
      for (std::size_t b = 0; b < codes[d].size(); ++b) {
        std::uint32_t acc = 0;
        const auto& c = codes[d][b];
        for (std::size_t m = 0; m < vals.size(); ++m) {
          if (c[m]) acc = F.add(acc, F.mul(c[m], vals[m]));
        }
        if (acc != 0) {
          o.eps = d;
          o.witness = b;
          return;
        }
      }
      prev = std::move(vals);
    }
  });

  SeparationReport rep;
  rep.kind = kind;
  rep.degree_bound = dmax;
  rep.field = L;
  rep.method = "linear-algebra";
  rep.points_total = pts.size();
  rep.generators_declared = opts.generators.has_value();
  std::uint32_t best = 0;
  for (const auto& o : out) {
    if (o.in) {
      ++rep.points_in_nullcone;
      if (o.eps != 0) ++rep.declared_in_separated;
    }
    else if (o.eps == 0) continue;
    else {
      best = std::max(best, o.eps);
      ++rep.epsilon_counts[o.eps];
    }
  }
  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const Outcome& o = out[idx];
    if (o.in) continue;
    if (o.eps == 0) {
      rep.undetermined.push_back(pts[idx]);
      continue;
    }
    if (o.eps != best) continue;
    if (!rep.witness) rep.witness = spaces[best - 1].basis[o.witness];
    ++rep.points_attaining;
    if (rep.points.size() < kListedPoints) rep.points.push_back(pts[idx]);
  }
  if (!rep.undetermined.empty()) rep.epsilon_counts[0] = rep.undetermined.size();
  rep.value = best;
  rep.certified = rep.generators_declared && rep.undetermined.empty();
  if (kind == ReportKind::delta) {
    for (const auto& pt : rep.points) {
      for (auto gi : G.generator_indices()) {
        if (group_times(G.element(gi), pt, emb) != pt) internal("reported delta point is not fixed");
      }
    }
  }
  return rep;
}

}  // namespace

SeparationReport delta_bounded(const GroupPtr& g, std::uint32_t dmax, const Field& pointfield, const PointSearchOptions& opts) {
  return point_search(ReportKind::delta, g, dmax, pointfield, opts);
}

SeparationReport sigma_bounded(const GroupPtr& g, std::uint32_t dmax, const Field& pointfield, const PointSearchOptions& opts) {
  return point_search(ReportKind::sigma, g, dmax, pointfield, opts);
}

// ---------------------------------------------------------------------------

NullconeStatus nullcone_status(const std::vector<Scalar>& v, const GroupPtr& g, std::uint32_t dmax,
                               const std::optional<std::vector<Polynomial>>& generators) {
  const MatrixGroup& G = *g;
  if (v.size() != G.dimension()) raise(ErrorCode::DimensionMismatch, "point has wrong length");
  const Field& L = point_field(v, G.field());
  const FieldEmbedding emb(G.field(), L);
  NullconeStatus st;
  st.point = v;
  st.degree_bound = dmax;
  if (generators) {
    for (const auto& f : *generators) {
      if (f.field() != G.field() || f.nvars() != G.dimension()) raise(ErrorCode::NotInvariantGenerator, "generator " + f.str() + " lives in another ring");
      if (f.degree() < 1 || !is_invariant(G, f)) raise(ErrorCode::NotInvariantGenerator, f.str() + " is not a positive-degree invariant");
    }
  }
  if (is_zero_vec(v)) {
    st.verdict = NullconeVerdict::in;
    if (generators) st.generators = *generators;
    return st;
  }
  if (generators) {
    for (const auto& f : *generators) {
      if (!f.map_coefficients(emb).eval(v).is_zero()) {
        st.verdict = NullconeVerdict::out;
        st.certificate = f;
        return st;
      }
    }
    st.verdict = NullconeVerdict::in;
    st.generators = *generators;
    return st;
  }
  const auto rep = epsilon(g, v, dmax, EpsilonMethod::linear_algebra);
  if (rep.value) {
    st.verdict = NullconeVerdict::out;
    st.certificate = rep.witness;
  }
  return st;
}

Polynomial degree_reduce(const Polynomial& f, const std::vector<Scalar>& v, const MatrixGroup& g) {
  const Field& K = g.field();
  const std::size_t n = g.dimension();
  if (f.field() != K || v.size() != n || f.nvars() != n) raise(ErrorCode::ContextMismatch, "f, v and G must share field and dimension");
  for (const auto& x : v) {
    if (x.field() != K) raise(ErrorCode::ContextMismatch, "point over another field");
  }
  if (f.is_zero() || !f.is_homogeneous() || f.degree() < 1) raise(ErrorCode::NotInvariantCandidate, "need a homogeneous form of positive degree");
  const auto d = static_cast<std::uint32_t>(f.degree());
  if (K.is_finite() && d % K.characteristic() == 0) raise(ErrorCode::CharDividesDegree, "characteristic divides deg f = " + std::to_string(d));
  for (auto gi : g.generator_indices()) {
    if (g.element(gi) * v != v) raise(ErrorCode::NotFixedPoint, "v is moved by " + g.element(gi).str());
  }
  const Scalar c0 = f.eval(v);
  if (c0.is_zero()) raise(ErrorCode::VanishesAtPoint, "f(v) = 0");
  if (!is_invariant(g, f)) raise(ErrorCode::NotInvariantCandidate, f.str() + " is not invariant");

  // Basis v, e_j (j != first support index of v); in the new coordinates y,
  // v = (1, 0, ..., 0) and f = sum_i y0^{d-i} c_i.
  std::size_t i0 = 0;
  while (v[i0].is_zero()) ++i0;
  Matrix b(K, n, n);
  for (std::size_t i = 0; i < n; ++i) b(i, 0) = v[i];
  for (std::size_t j = 0, col = 1; j < n; ++j) {
    if (j == i0) continue;
    b(j, col++) = Scalar::one(K);
  }
  const Polynomial fy = f.substitute_linear(b).scale(c0.inv());
  Polynomial red = Polynomial::variable(K, n, 0);
  const Scalar dinv = Scalar::from_int(K, d).inv();
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::uint32_t> e(n, 0);
    e[0] = d - 1;
    e[j] = 1;
    red.add_term(Monomial::variable(n, j), fy.coefficient(Monomial(std::move(e))) * dinv);
  }
  Polynomial out = red.substitute_linear(inverse(b));
  if (out.degree() != 1 || !is_invariant(g, out) || out.eval(v).is_zero()) internal("degree reduction produced an invalid invariant");
  return out;
}

// ---------------------------------------------------------------------------

bool GenerationCertificate::sandwich() const {
  return !parametric_invariant.empty() &&
         std::all_of(parametric_invariant.begin(), parametric_invariant.end(), [](bool b) { return b; });
}

bool GenerationCertificate::all_equal() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const GenerationDegree& g) { return g.equal(); });
}

GenerationCertificate check_generation(const std::vector<Polynomial>& candidates, const GroupPtr& g, std::uint32_t dbound,
                                       const ParametricWitness& witness) {
  const MatrixGroup& G = *g;
  const std::size_t n = G.dimension();
  for (const auto& c : candidates) {
    if (c.field() != G.field() || c.nvars() != n) raise(ErrorCode::NotInvariantCandidate, c.str() + " lives in another ring");
    if (c.degree() < 1 || !c.is_homogeneous()) raise(ErrorCode::NotInvariantCandidate, c.str() + " is not a homogeneous form of positive degree");
    if (!is_invariant(G, c)) raise(ErrorCode::NotInvariantCandidate, c.str() + " is not invariant");
  }
  GenerationCertificate cert;
  cert.candidates = candidates;
  cert.degree_bound = dbound;
  if (witness) {
    for (const auto& c : candidates) cert.parametric_invariant.push_back(witness(c));
  }
  const auto spaces = invariant_spaces(g, dbound);
  for (std::uint32_t d = 1; d <= dbound; ++d) {
    // Products of candidates with total degree d, as multisets.
    std::vector<Polynomial> prods;
    auto rec = [&](auto&& self, std::size_t start, std::uint32_t left, const Polynomial& acc) -> void {
      if (left == 0) {
        prods.push_back(acc);
        return;
      }
      for (std::size_t i = start; i < candidates.size(); ++i) {
        const auto di = static_cast<std::uint32_t>(candidates[i].degree());
        if (di <= left) self(self, i, left - di, acc * candidates[i]);
      }
    };
    rec(rec, 0, d, Polynomial::constant(G.field(), n, Scalar::one(G.field())));
    const auto& inv = spaces[d - 1].basis;
    GenerationDegree gd;
    gd.degree = d;
    gd.invariant_dim = inv.size();
    detail::with_engine(G.field(), mono_count(n, d), [&](auto dom, auto& eng) {
      using T = typename decltype(dom)::value_type;
      auto vec = [&](const Polynomial& p) {
        std::vector<T> v(mono_count(n, d), dom.zero());
        for (const auto& [m, x] : p.terms()) v[mono_rank(m)] = dom.unwrap(x);
        return v;
      };
      for (const auto& p : prods) eng.add_row(vec(p));
      gd.subalgebra_dim = eng.rank();
      auto inv_eng = eng.fresh(mono_count(n, d));
      for (const auto& f : inv) inv_eng.add_row(vec(f));
      for (const auto& p : prods) gd.contained = gd.contained && inv_eng.in_span(vec(p));
    });
    cert.degrees.push_back(gd);
  }
  return cert;
}

std::vector<Monomial> weight_invariant_monomials(const std::vector<long long>& weights, std::uint32_t d,
                                                 std::optional<long long> modulus) {
  if (modulus && *modulus < 2) raise(ErrorCode::BadParameter, "modulus must be at least 2");
  if (weights.empty()) raise(ErrorCode::DimensionMismatch, "need at least one weight");
  std::vector<Monomial> out;
  for (const auto& m : mono_basis(weights.size(), d)) {
    long long w = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) w += weights[i] * static_cast<long long>(m[i]);
    if (modulus ? (w % *modulus == 0) : (w == 0)) out.push_back(m);
  }
  return out;
}

}  // namespace nullcone
