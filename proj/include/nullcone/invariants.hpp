#pragma once

// Invariant spaces by fixed-point linear algebra, orbit sums and averaging,
// the epsilon / delta / sigma engines, nullcone verdicts, generation checks
// and degree reduction at a fixed point.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nullcone/actions.hpp"
#include "nullcone/poly.hpp"

namespace nullcone {

inline constexpr std::size_t kDefaultPointCap = 1000000;

struct InvariantSpace {
  GroupPtr group;
  std::uint32_t degree = 0;
  std::vector<Polynomial> basis;  // reduced row-echelon in graded-lex coordinates
  std::size_t dimension() const { return basis.size(); }
};

/// Common fixed space of the substitutions f -> f(B x), B in subs, on forms
/// of degree d. Every basis element is re-checked against `verify`.
std::vector<Polynomial> fixed_space(const Field& f, std::size_t nvars, std::uint32_t d, const std::vector<Matrix>& subs,
                                    const std::vector<Matrix>& verify = {});

/// Degree-d invariants of G acting on k[x0..x_{nvars-1}], nvars = dim G.
InvariantSpace invariant_space(const GroupPtr& g, std::size_t nvars, std::uint32_t d);
/// Degrees 1..dmax, computed independently (in parallel when enabled).
std::vector<InvariantSpace> invariant_spaces(const GroupPtr& g, std::uint32_t dmax);

bool is_invariant(const MatrixGroup& g, const Polynomial& f);

struct OrbitSum {
  Polynomial sum;
  std::size_t orbit_size = 0;
};
/// Requires every element to be a permutation matrix (NotPermutationAction).
OrbitSum orbit_sum(const MatrixGroup& g, const Monomial& m);
/// (1/|G|) sum_g g.f; CharDividesOrder when p divides |G|.
Polynomial reynolds(const MatrixGroup& g, const Polynomial& f);

enum class ReportKind { epsilon, delta, sigma };
std::string to_string(ReportKind k);

struct SeparationReport {
  ReportKind kind = ReportKind::epsilon;
  std::optional<std::uint32_t> value;  // absent: undetermined up to degree_bound
  std::uint32_t degree_bound = 0;
  std::optional<Polynomial> witness;
  std::vector<std::vector<Scalar>> points;  // point(s) attaining the value
  Field field;                              // field of the points
  std::string method;                       // "linear-algebra" or "orbit-sums"

  // delta / sigma bookkeeping
  std::size_t points_total = 0;
  std::size_t points_in_nullcone = 0;
  std::size_t points_attaining = 0;
  std::vector<std::vector<Scalar>> undetermined;
  std::map<std::uint32_t, std::size_t> epsilon_counts;
  bool generators_declared = false;
  /// Points the declared generators put in the nullcone although some
  /// invariant of this group (degree <= bound) is nonzero there. Nonzero when
  /// the generators describe a larger group than the one computed with.
  std::size_t declared_in_separated = 0;
  /// True when the value is exact for the point set: generators were
  /// declared and no point was left undetermined.
  bool certified = false;
};

enum class EpsilonMethod { automatic, linear_algebra, orbit_sums };

/// Smallest d <= dmax with a degree-d invariant nonzero at v. The point may
/// live over an extension of the group's field.
/// `progress(d, dim)` is called after each degree of the linear-algebra path.
using DegreeProgress = std::function<void(std::uint32_t, std::size_t)>;
SeparationReport epsilon(const GroupPtr& g, const std::vector<Scalar>& v, std::uint32_t dmax,
                         EpsilonMethod method = EpsilonMethod::automatic,
                         const std::optional<PermutationBasis>& basis = std::nullopt,
                         const DegreeProgress& progress = nullptr);

struct PointSearchOptions {
  std::size_t point_cap = kDefaultPointCap;
  std::optional<std::vector<Polynomial>> generators;  // declared exhaustive
};

SeparationReport delta_bounded(const GroupPtr& g, std::uint32_t dmax, const Field& pointfield,
                               const PointSearchOptions& opts = {});
SeparationReport sigma_bounded(const GroupPtr& g, std::uint32_t dmax, const Field& pointfield,
                               const PointSearchOptions& opts = {});

/// F_q-points of V^G for q = |pointfield|, in lexicographic code order.
std::vector<std::vector<Scalar>> fixed_points(const MatrixGroup& g, const Field& pointfield, std::size_t cap = kDefaultPointCap);

enum class NullconeVerdict { in, out, unknown };
std::string to_string(NullconeVerdict v);

struct NullconeStatus {
  std::vector<Scalar> point;
  NullconeVerdict verdict = NullconeVerdict::unknown;
  std::optional<Polynomial> certificate;  // Out
  std::vector<Polynomial> generators;     // In
  std::uint32_t degree_bound = 0;         // Unknown
};

NullconeStatus nullcone_status(const std::vector<Scalar>& v, const GroupPtr& g, std::uint32_t dmax,
                               const std::optional<std::vector<Polynomial>>& generators = std::nullopt);

/// Degree-1 invariant nonzero at the fixed point v, built from the
/// homogeneous invariant f with f(v) != 0 and p not dividing deg f.
Polynomial degree_reduce(const Polynomial& f, const std::vector<Scalar>& v, const MatrixGroup& g);

struct GenerationDegree {
  std::uint32_t degree = 0;
  std::size_t subalgebra_dim = 0;
  std::size_t invariant_dim = 0;
  bool contained = true;  // subalgebra_d inside invariant_space_d
  bool equal() const { return subalgebra_dim == invariant_dim; }
};

struct GenerationCertificate {
  std::vector<Polynomial> candidates;
  std::uint32_t degree_bound = 0;
  std::vector<GenerationDegree> degrees;
  std::vector<bool> parametric_invariant;  // empty when no witness was supplied
  bool sandwich() const;                   // witness present and all flags set
  bool all_equal() const;
};

using ParametricWitness = std::function<bool(const Polynomial&)>;

GenerationCertificate check_generation(const std::vector<Polynomial>& candidates, const GroupPtr& g, std::uint32_t d,
                                       const ParametricWitness& witness = nullptr);

/// Degree-d monomials with weight inner product 0 (mod modulus when given).
std::vector<Monomial> weight_invariant_monomials(const std::vector<long long>& weights, std::uint32_t d,
                                                 std::optional<long long> modulus = std::nullopt);

}  // namespace nullcone
