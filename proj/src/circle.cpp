#include "itm/circle.hpp"

#include <algorithm>

#include "itm/errors.hpp"

namespace itm {

Rational circle_distance(const Rational& a, const Rational& b) {
  Rational d = frac(a - b);
  Rational other = 1 - d;
  return d < other ? d : other;
}

Arc::Arc(const Rational& start_value, const Rational& len) : start(start_value), length(len) {
  if (length <= 0 || length > 1) throw InvalidMap("Arc", "arc length must lie in (0,1], got " + to_string(len));
  if (length == 1) start = CirclePoint(Rational(0));
}

bool Arc::contains(const Rational& x) const {
  Rational offset = frac(x - start.value());
  return offset < length;
}

void push_wrapped(std::vector<Segment>& out, const Rational& lo, const Rational& hi) {
  if (hi <= lo) return;
  if (hi - lo >= 1) {
    out.push_back({Rational(0), Rational(1)});
    return;
  }
  Rational base = Rational(floor(lo));
  Rational a = lo - base;
  Rational b = hi - base;
  if (b <= 1) {
    out.push_back({a, b});
  } else {
    out.push_back({a, Rational(1)});
    out.push_back({Rational(0), b - 1});
  }
}

void merge_segments(std::vector<Segment>& segments) {
  if (segments.empty()) return;
  std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  std::size_t w = 0;
  for (std::size_t r = 1; r < segments.size(); ++r) {
    if (segments[r].lo <= segments[w].hi) {
      if (segments[r].hi > segments[w].hi) segments[w].hi = segments[r].hi;
    } else {
      segments[++w] = std::move(segments[r]);
    }
  }
  segments.resize(w + 1);
}

ArcSet ArcSet::full() {
  ArcSet out;
  out.segments_.push_back({Rational(0), Rational(1)});
  out.total_ = 1;
  return out;
}

ArcSet ArcSet::from_segments(std::vector<Segment> raw) {
  std::erase_if(raw, [](const Segment& s) { return s.hi <= s.lo; });
  merge_segments(raw);
  ArcSet out;
  out.segments_ = std::move(raw);
  for (const auto& s : out.segments_) out.total_ += s.length();
  return out;
}

ArcSet ArcSet::normalize(std::span<const Arc> raw) {
  std::vector<Segment> segs;
  segs.reserve(raw.size() + 1);
  for (const auto& a : raw) push_wrapped(segs, a.start.value(), a.lifted_end());
  return from_segments(std::move(segs));
}

ArcSet ArcSet::single(const Rational& start, const Rational& length) {
  Arc a(start, length);
  return normalize(std::span<const Arc>(&a, 1));
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  if (segments_.empty()) return out;
  if (is_full()) {
    out.emplace_back(Rational(0), Rational(1));
    return out;
  }
  bool join = segments_.size() > 1 && segments_.front().lo == 0 && segments_.back().hi == 1;
  std::size_t first = join ? 1 : 0;
  std::size_t last = join ? segments_.size() - 1 : segments_.size();
  for (std::size_t i = first; i < last; ++i) out.emplace_back(segments_[i].lo, segments_[i].length());
  if (join) {
    const auto& tail = segments_.back();
    out.emplace_back(tail.lo, tail.length() + segments_.front().hi);
  }
  return out;
}

bool ArcSet::contains(const Rational& x) const {
  Rational p = frac(x);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), p,
                             [](const Rational& v, const Segment& s) { return v < s.lo; });
  if (it == segments_.begin()) return false;
  return std::prev(it)->contains(p);
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  std::vector<Segment> segs = segments_;
  segs.insert(segs.end(), other.segments_.begin(), other.segments_.end());
  return from_segments(std::move(segs));
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<Segment> out;
  std::size_t i = 0, j = 0;
  const auto& a = segments_;
  const auto& b = other.segments_;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = a[i].lo < b[j].lo ? b[j].lo : a[i].lo;
    const Rational& hi = a[i].hi < b[j].hi ? a[i].hi : b[j].hi;
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return from_segments(std::move(out));
}

ArcSet ArcSet::complement() const {
  std::vector<Segment> out;
  Rational cursor = 0;
  for (const auto& s : segments_) {
    if (cursor < s.lo) out.push_back({cursor, s.lo});
    cursor = s.hi;
  }
  if (cursor < 1) out.push_back({cursor, Rational(1)});
  return from_segments(std::move(out));
}

ArcSet ArcSet::translate(const Rational& shift) const {
  Rational c = frac(shift);
  if (c == 0) return *this;
  std::vector<Segment> out;
  out.reserve(segments_.size() + 1);
  for (const auto& s : segments_) push_wrapped(out, s.lo + c, s.hi + c);
  return from_segments(std::move(out));
}

bool ArcSet::subset_of(const ArcSet& other) const { return intersect(other) == *this; }

}  // namespace itm
