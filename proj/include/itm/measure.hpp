#pragma once

// Measures on the circle (or the segment [0,1]) made of a piecewise-constant
// density plus finitely many atoms, all with exact rational data.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "itm/circle.hpp"
#include "itm/itm_map.hpp"

namespace itm {

struct DensityPiece {
  Segment segment;
  Rational weight;  // mass per unit length
  friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

struct Atom {
  Rational point;
  Rational mass;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Canonical form: density segments sorted, disjoint, positive weight, and
/// adjacent segments of equal weight merged; atoms sorted by point, distinct,
/// positive mass. Points live in [0,1] (1 only occurs for segment maps).
class Measure {
 public:
  Measure() = default;

  /// Sums overlapping parts. Throws std::invalid_argument on negative weights.
  static Measure from_parts(std::vector<DensityPiece> density, std::vector<Atom> atoms);
  static Measure lebesgue();
  /// Lebesgue restricted to `set`, normalized to a probability measure.
  static Measure uniform_on(const ArcSet& set);
  static Measure dirac(const Rational& point);

  const std::vector<DensityPiece>& density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rational& total_mass() const { return total_; }
  bool non_atomic() const { return atoms_.empty(); }
  bool is_probability() const { return total_ == 1; }

  /// Mass of a half-open set of the circle (density and atoms inside).
  Rational mass_of(const ArcSet& set) const;
  /// Mass of the open interval (lo, hi). On the circle the interval is taken
  /// mod 1 (hi - lo >= 1 means everything); otherwise it is clipped to [0,1].
  Rational mass_open(const Rational& lo, const Rational& hi, bool circle = true) const;

  /// Closure-free support of the density part, as an arc set.
  ArcSet density_support() const;

  Measure scaled(const Rational& factor) const;
  Measure operator+(const Measure& other) const;

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  std::vector<DensityPiece> density_;
  std::vector<Atom> atoms_;
  Rational total_ = 0;
};

/// Exact cumulative distribution F(x) = mu([0,x]).
class Cdf {
 public:
  explicit Cdf(const Measure& mu);

  Rational operator()(const Rational& x) const;
  /// mu([0,x)).
  Rational left_limit(const Rational& x) const;
  /// Endpoints of density segments and atom positions, sorted.
  std::vector<Rational> breaklist() const;
  const Rational& total() const { return total_; }
  bool has_atoms() const { return !atoms_.empty(); }

  /// max{x in [0,1] : F(x) = y}. Requires a non-atomic measure.
  Rational hbar(const Rational& y) const;
  /// True when F is constant on one side of x, i.e. x lies on a level set of
  /// positive length (plateau interiors and both plateau edges).
  bool flat_near(const Rational& x) const;

 private:
  std::vector<DensityPiece> density_;
  std::vector<Rational> cum_start_;  // mass of density before segment k
  std::vector<Atom> atoms_;
  std::vector<Rational> cum_atoms_;  // mass of atoms with index < k
  Rational total_ = 0;

  Rational density_upto(const Rational& x) const;
};

/// Exact pushforward S#mu under an interval translation map.
Measure pushforward(const Itm& map, const Measure& mu);

/// Total variation ||mu - nu|| = integral |density difference| + sum |atom difference|.
Rational total_variation(const Measure& mu, const Measure& nu);

/// ||S#mu - mu||; zero exactly when mu is S-invariant.
Rational invariance_residual_exact(const Itm& map, const Measure& mu);

/// sup_x |F_mu(x) - F_nu(x)|, evaluated at every breakpoint and left limit.
Rational cdf_distance(const Measure& mu, const Measure& nu);

/// mu((t_k - delta, t_k + delta)) for every breakpoint t_k of the map.
std::vector<Rational> mass_near_breakpoints(const Measure& mu, const Itm& map, const Rational& delta);

/// Normalized Lebesgue on the attractor, or the exact cycle average of its
/// pushforwards when that is not invariant. Throws NotFiniteType,
/// CycleNotFound.
Measure attractor_measure(const Itm& map, const AttractorResult& attr, std::size_t orbit_budget = std::size_t{1} << 16);

/// (1/p) sum_{k<p} S^k# mu over the eventual cycle of mu's pushforwards.
Measure cycle_average(const Itm& map, const Measure& mu, std::size_t orbit_budget);

struct RecurrenceSample {
  Rational point;
  std::optional<std::size_t> time;  // first m <= horizon with dist(S^m x, x) < eps
  Rational distance;                // distance at that time (or at the horizon)
};

/// Samples `samples` points of supp mu (density pieces chosen by mass, then a
/// 2^32-grid offset inside) with the caller's generator.
std::vector<Rational> sample_support(const Measure& mu, std::size_t samples, std::mt19937_64& rng);

std::vector<RecurrenceSample> find_recurrent_points(const Itm& map, const Measure& mu, const Rational& eps,
                                                    std::size_t horizon, std::size_t samples, std::mt19937_64& rng);

}  // namespace itm
