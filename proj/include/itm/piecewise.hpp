#pragma once

// General 1-D piecewise continuous maps and their Birkhoff empirical measures.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itm/itm_map.hpp"
#include "itm/measure.hpp"

namespace itm {

enum class Domain { circle, segment };

const char* to_string(Domain domain);

/// x -> a*x + b (reduced mod 1 on the circle).
struct AffinePiece {
  Rational a;
  Rational b;
};

/// Black-box continuous piece evaluated in floating point.
struct GeneralPiece {
  std::function<double(double)> fn;
  std::string label;
};

struct MapPiece {
  Segment interval;  // [lo, hi); on the segment the last piece also owns 1
  std::variant<AffinePiece, GeneralPiece> fn;
};

/// Pieces partition [0,1) (plus the point 1 on the segment). Point overrides
/// (`boundary values`) replace the piece value at isolated points, which is
/// how maps such as x -> x/2 with a special value at 0 are written.
class PiecewiseMap {
 public:
  PiecewiseMap(Domain domain, std::vector<MapPiece> pieces, std::vector<std::pair<Rational, Rational>> boundary_values = {});

  static PiecewiseMap from_itm(const Itm& map);

  Domain domain() const { return domain_; }
  bool is_circle() const { return domain_ == Domain::circle; }
  bool is_affine() const { return affine_; }
  const std::vector<MapPiece>& pieces() const { return pieces_; }
  const std::vector<std::pair<Rational, Rational>>& boundary_values() const { return boundary_values_; }

  std::size_t piece_of(const Rational& x) const;
  std::size_t piece_of(double x) const;

  /// Exact evaluation; affine maps only.
  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;

  /// Points where the map is genuinely discontinuous (differing one-sided
  /// values, or a point override that differs from the piece value). General
  /// pieces make every piece boundary count.
  const std::vector<Rational>& discontinuities() const { return discontinuities_; }

  /// The analysis set H. Defaults to discontinuities(); callers may replace it.
  const std::vector<Rational>& h_set() const { return h_set_; }
  void set_h_set(std::vector<Rational> h);

  /// Distance in the map's own geometry (circle or line).
  Rational distance(const Rational& x, const Rational& y) const;
  double distance(double x, double y) const;

 private:
  Domain domain_;
  std::vector<MapPiece> pieces_;
  std::vector<std::pair<Rational, Rational>> boundary_values_;
  std::vector<Rational> discontinuities_;
  std::vector<Rational> h_set_;
  bool affine_ = true;

  Rational apply(const AffinePiece& piece, const Rational& x) const;
};

/// Forward orbit x0, T x0, ..., T^{m-1} x0 (exact). Throws HitDiscontinuity
/// if some iterate is a discontinuity point.
std::vector<Rational> orbit(const PiecewiseMap& map, const Rational& x0, std::size_t length);
std::vector<double> orbit_float(const PiecewiseMap& map, double x0, std::size_t length);

struct VisitFrequencyRow {
  std::size_t m;
  Rational eps;
  Rational frequency;  // (1/m) #{1 <= k <= m : T^k x in H_eps}
};

enum class TrendVerdict { plausible, violated, inconclusive };

const char* to_string(TrendVerdict verdict);

struct VisitFrequencyTable {
  std::vector<VisitFrequencyRow> rows;
  TrendVerdict verdict = TrendVerdict::inconclusive;
};

/// Uses the map's h_set(). Exact for affine maps; general maps use the
/// floating kernel with rational eps rounded to double.
VisitFrequencyTable visit_frequency(const PiecewiseMap& map, const Rational& x0, const std::vector<std::size_t>& ms,
                                    const std::vector<Rational>& epsilons);

struct EmpiricalMeasure {
  Rational base;
  Rational end;  // T^m(base)
  std::size_t length = 0;
  Measure measure;  // (1/m) sum_{i<m} delta(T^i base)
};

EmpiricalMeasure empirical_measure(const PiecewiseMap& map, const Rational& x0, std::size_t length);

/// Moves every atom by the map; densities are not supported here.
Measure pushforward_atoms(const PiecewiseMap& map, const Measure& mu);

struct DefectReport {
  Rational norm;           // ||T# mu_m - mu_m||
  Rational expected_norm;  // 2/m or 0
  bool identity_holds = false;  // T# mu_m - mu_m == (1/m)(delta(T^m x) - delta(x)) exactly
};

DefectReport pushforward_defect(const PiecewiseMap& map, const EmpiricalMeasure& emp);

struct WanderingProbe {
  Rational point;
  Rational radius;
  std::optional<Rational> witness;     // p in U_r(h) that came back
  std::optional<std::size_t> return_time;
};

struct WanderingReport {
  std::vector<WanderingProbe> probes;  // one per (h, radius)
};

/// For each h in H and each radius, samples `samples_per_radius` points of
/// U_r(h) on an even grid and looks for T^k p in U_r(h), k <= horizon.
WanderingReport wandering_discontinuity_check(const PiecewiseMap& map, const std::vector<Rational>& radii,
                                              std::size_t horizon, std::size_t samples_per_radius = 64);

}  // namespace itm
