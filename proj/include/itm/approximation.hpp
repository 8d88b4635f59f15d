#pragma once

// Relation-preserving rational approximation of interval translation maps
// and the weak-* limit pipeline built on it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "itm/functional.hpp"
#include "itm/itm_map.hpp"
#include "itm/measure.hpp"

namespace itm {

/// The one-sided orbit that exhibited a relation.
struct RelationWitness {
  Side side = Side::right;
  std::size_t depth = 0;
  std::vector<std::size_t> itinerary;
};

/// t_j - t_i = sum_k l_k c_k - w, an exact identity on the lifted parameters.
struct Relation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<long> l;
  long w = 0;
  std::optional<RelationWitness> witness;

  /// Exact residual t_j - t_i - sum l_k c_k + w for the given parameters.
  Rational residual(const std::vector<Rational>& breakpoints, const std::vector<Rational>& shifts) const;
  bool same_identity(const Relation& other) const { return i == other.i && j == other.j && l == other.l && w == other.w; }
};

struct RelationSystem {
  std::vector<Relation> relations;
  std::size_t source_depth = 0;
};

/// Runs every one-sided breakpoint orbit to `depth` and records each exact
/// landing on a breakpoint. Duplicated identities keep the shallowest witness.
RelationSystem detect_relations(const Itm& map, std::size_t depth);

/// Map parameters as exact rationals. Decimal targets are stored as the exact
/// rational of their digits together with the number of trusted digits.
struct ParameterVector {
  std::vector<Rational> breakpoints;
  std::vector<Rational> shifts;
  std::optional<std::size_t> precision;  // decimal digits; none = exact

  std::size_t size() const { return breakpoints.size(); }
};

struct ApproximantLevel {
  Integer denominator_bound;
  std::vector<Rational> breakpoints;  // raw solution of the relation system
  std::vector<Rational> shifts;       // raw, before reduction mod 1
  Itm map;
  Rational distance;  // max |parameter - target| over free coordinates
};

struct ApproximantSchedule {
  ParameterVector target;
  RelationSystem relations;
  std::vector<std::size_t> free_coordinates;       // indices into (t_0..t_{n-1}, c_0..c_{n-1})
  std::vector<std::size_t> dependent_coordinates;
  std::vector<ApproximantLevel> levels;
};

/// Last continued-fraction convergent of x with denominator <= bound.
Rational best_convergent(const Rational& x, const Integer& bound);

/// Fibonacci numbers 2, 3, 5, ... not exceeding `limit`.
std::vector<Integer> fibonacci_denominators(const Integer& limit);

/// Solves the relation system for the dependent coordinates (pivot order:
/// t_1..t_{n-1}, then t_0, then c_0..c_{n-1}), rounds free coordinates to
/// convergents and rebuilds every level exactly. Throws InconsistentRelations
/// or OrderViolation.
ApproximantSchedule generate_approximants(const ParameterVector& target, const RelationSystem& relations,
                                          const std::vector<Integer>& denominators);

struct CollisionLevelResult {
  std::size_t level = 0;  // 1-based
  std::vector<std::size_t> failed_relations;
};

struct CollisionReport {
  std::size_t depth = 0;
  std::size_t checked_relations = 0;
  std::vector<CollisionLevelResult> levels;
  std::optional<std::size_t> first_good_level;  // m_r, 1-based
};

/// Replays every witnessed relation of depth <= `depth` on each level: same
/// itinerary, exact landing on the image breakpoint.
CollisionReport orbit_collision_preservation(const ApproximantSchedule& schedule, const RelationSystem& relations,
                                             std::size_t depth);

struct LevelMeasure {
  std::size_t level = 0;  // 1-based
  std::optional<AttractorResult> attractor;
  std::optional<Measure> measure;
  std::string error;  // set when the level failed
  bool ok() const { return measure.has_value(); }
};

/// Attractor and invariant measure per level. Failures are recorded per level
/// and never abort the others. Results are ordered by level.
std::vector<LevelMeasure> measure_sequence(const ApproximantSchedule& schedule, const Budgets& budgets,
                                           bool parallel = false);

struct CauchyReport {
  std::vector<Rational> successive;           // cdf distance between consecutive measures
  std::optional<std::size_t> cauchy_from;     // first index after which all differences <= tol
  bool cauchy = false;
};

struct ConvergenceResult {
  Measure limit_candidate;
  CauchyReport report;
};

/// Cauchy when every difference in the second half of the sequence is <= tol.
ConvergenceResult detect_convergence(const std::vector<Measure>& measures, const Rational& tol);

struct NeighbourhoodMass {
  Rational delta;
  Rational mass;
};

struct LimitReport {
  std::vector<NeighbourhoodMass> masses;  // mu*(U_delta(H)) for shrinking delta
  bool mass_condition = false;            // smallest-delta mass < tolMass
  FunctionalResidual functional;
  bool invariance_condition = false;
  std::string failing;  // "", "mass", "invariance", "mass+invariance"
};

/// Checks mu*(H) = 0 through shrinking neighbourhoods (delta = 2^-1 .. 2^-levels)
/// and the functional invariance residual against `map`.
LimitReport verify_limit_measure(const PiecewiseMap& map, const Measure& mu_star, const std::vector<Rational>& h,
                                 const Rational& tol_mass, double tol_res, const TestFamily& family,
                                 std::size_t delta_levels = 20);

/// sup over levels of max_k mu_m((t_k - delta, t_k + delta)), for each delta.
std::vector<Rational> breakpoint_mass_trend(const ApproximantSchedule& schedule,
                                            const std::vector<LevelMeasure>& measures,
                                            const std::vector<Rational>& deltas);

}  // namespace itm
