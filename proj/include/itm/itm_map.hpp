#pragma once

// Interval translation maps of the circle: S(t) = t + c_j mod 1 on [t_j, t_{j+1}).

#include <cstddef>
#include <optional>
#include <vector>

#include "itm/circle.hpp"

namespace itm {

enum class Side { left, right };

const char* to_string(Side side);

struct Budgets {
  std::size_t max_iter = 4096;
  std::size_t max_arcs = std::size_t{1} << 16;
  std::size_t orbit_budget = std::size_t{1} << 16;
  std::size_t max_points = std::size_t{1} << 16;
};

class Itm {
 public:
  /// Validates and builds a map. Breakpoints must be strictly increasing in
  /// [0,1); shifts are reduced mod 1. Throws InvalidMap naming the index.
  Itm(std::vector<Rational> breakpoints, std::vector<Rational> shifts);

  static Itm rotation(const Rational& shift) { return Itm({Rational(0)}, {shift}); }

  std::size_t size() const { return breaks_.size(); }
  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& shifts() const { return shifts_; }
  const Rational& breakpoint(std::size_t j) const { return breaks_[j]; }
  const Rational& shift(std::size_t j) const { return shifts_[j]; }

  /// Piece j = [t_j, t_{j+1}); the last piece ends at t_0 + 1 (lifted).
  Rational piece_end(std::size_t j) const { return j + 1 < size() ? breaks_[j + 1] : breaks_[0] + 1; }
  ArcSet piece_set(std::size_t j) const;

  /// Right-continuous piece lookup: t_j belongs to piece j.
  std::size_t piece_of(const Rational& x) const;
  /// Piece containing the left limit x - 0.
  std::size_t piece_of_left(const Rational& x) const;

  CirclePoint evaluate(const CirclePoint& x) const { return x + shifts_[piece_of(x.value())]; }

  /// Linear pieces of the partition in [0,1), tagged with their piece index,
  /// sorted by position.
  struct PieceSegment {
    Segment segment;
    std::size_t piece;
  };
  const std::vector<PieceSegment>& piece_segments() const { return piece_segments_; }

  bool is_breakpoint(const Rational& x) const;

  friend bool operator==(const Itm& a, const Itm& b) { return a.breaks_ == b.breaks_ && a.shifts_ == b.shifts_; }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> shifts_;
  std::vector<PieceSegment> piece_segments_;
};

/// Orbit of a one-sided limit t_j +- 0.
struct EndpointOrbit {
  std::size_t base = 0;
  Side side = Side::right;
  std::vector<Rational> points;       // points[0] = t_base
  std::vector<std::size_t> itinerary;  // piece used at each step
  std::vector<long> visit_counts;      // size n
  long winding = 0;
};

EndpointOrbit evaluate_one_sided(const Itm& map, std::size_t j, Side side, std::size_t steps);

ArcSet image(const Itm& map, const ArcSet& set);
ArcSet preimage(const Itm& map, const ArcSet& set);

enum class FiniteType { yes, no_within_budget, unknown };

const char* to_string(FiniteType value);

struct AttractorResult {
  std::vector<ArcSet> iterates;  // A_0 = circle, A_{k+1} = S(A_k)
  std::optional<std::size_t> stabilized_at;
  ArcSet attractor;
  FiniteType finite_type = FiniteType::unknown;
};

/// Iterates the full circle until two consecutive images coincide. Throws
/// BudgetExceeded when an iterate has more than max_arcs arcs.
AttractorResult attractor(const Itm& map, std::size_t max_iter = 4096, std::size_t max_arcs = std::size_t{1} << 16);

/// Points of U_{k<=K} S^{-k}({t_0..t_{n-1}}), sorted and distinct.
std::vector<Rational> omega_to_depth(const Itm& map, std::size_t depth, std::size_t max_points = std::size_t{1} << 16);

/// Exact preimages of a single point, one candidate per piece.
std::vector<Rational> point_preimages(const Itm& map, const Rational& y);

/// Open arc (start, start+length) on the circle, 0 < length <= 1.
struct OpenArc {
  Rational start;
  Rational length;
  friend bool operator==(const OpenArc&, const OpenArc&) = default;
};

struct Homterval {
  OpenArc arc;  // endpoints lie in Omega
  std::optional<std::size_t> preperiod;
  std::optional<std::size_t> period;
  bool resolved() const { return period.has_value(); }
};

struct HomtervalReport {
  std::size_t depth = 0;
  std::vector<Rational> omega;
  std::vector<Homterval> homtervals;
};

/// Tracks an open arc forward as a whole. Resolves to (preperiod, period)
/// when the arc orbit repeats exactly; gives up when the arc interior meets a
/// breakpoint or the budget runs out.
Homterval track_arc(const Itm& map, const OpenArc& arc, std::size_t orbit_budget);

HomtervalReport classify_homtervals(const Itm& map, std::size_t depth, std::size_t orbit_budget = std::size_t{1} << 16,
                                    std::size_t max_points = std::size_t{1} << 16);

enum class Genericity { not_generic, no_periodic_domain_found, unknown };

const char* to_string(Genericity value);

Genericity is_generic_within_depth(const Itm& map, std::size_t depth, std::size_t orbit_budget = std::size_t{1} << 16,
                                   std::size_t max_points = std::size_t{1} << 16);

}  // namespace itm
