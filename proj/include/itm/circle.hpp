#pragma once

// Exact points, half-open arcs and canonical arc unions on the circle R/Z.

#include <compare>
#include <span>
#include <vector>

#include "itm/rational.hpp"

namespace itm {

/// A point of R/Z, stored as its representative in [0,1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const Rational& x) : value_(frac(x)) {}

  const Rational& value() const { return value_; }

  CirclePoint operator+(const Rational& shift) const { return CirclePoint(value_ + shift); }
  CirclePoint operator-(const Rational& shift) const { return CirclePoint(value_ - shift); }

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.value_ == b.value_; }
  friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.value_ < b.value_; }

 private:
  Rational value_ = 0;
};

/// Shortest distance between two points of R/Z.
Rational circle_distance(const Rational& a, const Rational& b);

/// Linear half-open segment [lo, hi) with 0 <= lo < hi <= 1. This is the
/// working representation; a wrapping arc is two segments.
struct Segment {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Half-open arc [start, start+length) on the circle, possibly wrapping
/// through 0. length is in (0,1]; length 1 is the full circle.
struct Arc {
  CirclePoint start;
  Rational length;

  Arc() = default;
  Arc(const Rational& start_value, const Rational& len);

  /// Lifted end point start+length, in (0,2).
  Rational lifted_end() const { return start.value() + length; }
  bool wraps() const { return lifted_end() > 1; }
  bool contains(const Rational& x) const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Canonical finite union of half-open arcs.
///
/// Internally the set is kept as sorted, pairwise disjoint, non-adjacent
/// linear segments in [0,1]; that list is unique for a given point set, so
/// equality is representation equality. `arcs()` rebuilds the circle view,
/// joining [x,1) and [0,y) into one wrapping arc.
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet empty() { return {}; }
  static ArcSet full();
  static ArcSet normalize(std::span<const Arc> raw);
  static ArcSet from_segments(std::vector<Segment> raw);
  static ArcSet single(const Rational& start, const Rational& length);

  std::vector<Arc> arcs() const;
  const std::vector<Segment>& segments() const { return segments_; }
  const Rational& total_length() const { return total_; }

  bool is_empty() const { return segments_.empty(); }
  bool is_full() const { return total_ == 1; }
  bool contains(const Rational& x) const;

  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;
  ArcSet complement() const;
  ArcSet translate(const Rational& shift) const;
  bool subset_of(const ArcSet& other) const;

  friend bool operator==(const ArcSet& a, const ArcSet& b) { return a.segments_ == b.segments_; }

 private:
  std::vector<Segment> segments_;
  Rational total_ = 0;
};

/// Splits a lifted interval [lo, hi) with hi - lo <= 1 into at most two
/// segments of [0,1) after reduction mod 1.
void push_wrapped(std::vector<Segment>& out, const Rational& lo, const Rational& hi);

/// Sorts and merges overlapping or touching segments in place.
void merge_segments(std::vector<Segment>& segments);

}  // namespace itm
