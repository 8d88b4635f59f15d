#include "itm/conjugacy.hpp"

#include <algorithm>

#include "itm/errors.hpp"

namespace itm {

Iem::Iem(std::vector<IemPiece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(), [](const IemPiece& a, const IemPiece& b) { return a.lo < b.lo; });
}

Iem Iem::identity() { return Iem({{Rational(0), Rational(1), Rational(0), Rational(1)}}); }

Iem Iem::rotation(const Rational& c) {
  Rational s = frac(c);
  if (s == 0) return identity();
  return Iem({{Rational(0), 1 - s, s, 1 - s}, {1 - s, Rational(1), s - 1, s}});
}

std::vector<Rational> Iem::breakpoints() const {
  std::vector<Rational> out;
  for (const auto& p : pieces_) out.push_back(p.lo);
  return out;
}

std::vector<Rational> Iem::shifts() const {
  std::vector<Rational> out;
  for (const auto& p : pieces_) out.push_back(p.shift);
  return out;
}

Rational Iem::evaluate(const Rational& y) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), y,
                             [](const Rational& v, const IemPiece& p) { return v < p.lo; });
  if (it == pieces_.begin()) throw std::out_of_range("Iem::evaluate: point below the first piece");
  const auto& p = *std::prev(it);
  return y + p.shift;
}

bool Iem::same_map(const Iem& other) const {
  if (pieces_.size() != other.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& a = pieces_[i];
    const auto& b = other.pieces_[i];
    if (a.lo != b.lo || a.hi != b.hi || a.shift != b.shift) return false;
  }
  return true;
}

Cdf build_h(const Measure& mu) {
  if (!mu.non_atomic()) throw AtomicMeasure("build_h", "measure has " + std::to_string(mu.atoms().size()) + " atoms");
  return Cdf(mu);
}

ConjugacyData induce_iem(const Itm& map, const Measure& mu, std::size_t grid_points) {
  if (!mu.non_atomic()) throw AtomicMeasure("induce_iem", "measure must be non-atomic");
  if (!mu.is_probability()) throw NotInvariant("induce_iem", "measure is not a probability measure");
  if (invariance_residual_exact(map, mu) != 0) throw NotInvariant("induce_iem", "measure is not S-invariant");

  ConjugacyData data{map, mu, Cdf(mu), {}, {}, {}};
  const Cdf& h = data.h;
  for (const auto& t : map.breakpoints()) data.tau.push_back(h(t));
  data.tau.emplace_back(1);

  std::vector<IemPiece> raw;
  const auto& pieces = map.piece_segments();
  const auto& dens = mu.density();
  std::size_t i = 0, p = 0;
  auto emit = [&](const Rational& a, const Rational& b, const Rational& c) {
    Rational u = a + c, v = b + c;
    if (u >= 1) {
      u -= 1;
      v -= 1;
    }
    Rational ya = h(a), yb = h(b);
    Rational image_lo = h(u), image_hi = h(v);
    raw.push_back({ya, yb, image_lo - ya, image_hi - image_lo});
  };
  while (i < dens.size() && p < pieces.size()) {
    const Segment& s = dens[i].segment;
    const Segment& ps = pieces[p].segment;
    const Rational& lo = s.lo < ps.lo ? ps.lo : s.lo;
    const Rational& hi = s.hi < ps.hi ? s.hi : ps.hi;
    if (lo < hi) {
      const Rational& c = map.shift(pieces[p].piece);
      Rational cut = 1 - c;  // x + c crosses 1 here
      if (c != 0 && lo < cut && cut < hi) {
        emit(lo, cut, c);
        emit(cut, hi, c);
      } else {
        emit(lo, hi, c);
      }
    }
    if (s.hi < ps.hi)
      ++i;
    else
      ++p;
  }
  std::sort(raw.begin(), raw.end(), [](const IemPiece& a, const IemPiece& b) { return a.lo < b.lo; });
  std::vector<IemPiece> merged;
  for (auto& piece : raw) {
    if (!merged.empty() && merged.back().hi == piece.lo && merged.back().shift == piece.shift &&
        merged.back().image_length == merged.back().hi - merged.back().lo &&
        piece.image_length == piece.hi - piece.lo) {
      merged.back().hi = piece.hi;
      merged.back().image_length += piece.image_length;
    } else {
      merged.push_back(std::move(piece));
    }
  }
  data.induced = Iem(std::move(merged));

  // Sampled semi-conjugacy h(S(x)) = T(h(x)) on a midpoint grid.
  auto& sc = data.semiconjugacy;
  Rational step(1, static_cast<unsigned long>(grid_points));
  step.canonicalize();
  for (std::size_t g = 0; g < grid_points; ++g) {
    Rational x = step * static_cast<long>(g) + step / 2;
    bool flat = h.flat_near(x);
    Rational lhs = h(map.evaluate(CirclePoint(x)).value());
    Rational hx = h(x);
    Rational rhs;
    bool mismatch;
    if (hx >= 1) {
      mismatch = lhs != 1 && lhs != 0;
    } else {
      rhs = data.induced.evaluate(hx);
      mismatch = lhs != rhs && !(lhs == 1 && rhs == 0) && !(lhs == 0 && rhs == 1);
    }
    ++sc.checked;
    if (flat) ++sc.exceptional;
    if (mismatch) ++(flat ? sc.exceptional_failures : sc.failures);
  }
  return data;
}

IemReport verify_iem(const Iem& iem) {
  IemReport report;
  const auto& pieces = iem.pieces();
  if (pieces.empty()) return report;

  report.partition = pieces.front().lo == 0 && pieces.back().hi == 1;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].hi <= pieces[k].lo) report.partition = false;
    if (k > 0 && pieces[k - 1].hi != pieces[k].lo) report.partition = false;
  }

  report.lengths_preserved = std::all_of(pieces.begin(), pieces.end(),
                                         [](const IemPiece& p) { return p.image_length == p.hi - p.lo; });

  struct Image {
    Rational lo, hi;
  };
  std::vector<Image> images;
  bool inside = true;
  for (const auto& p : pieces) {
    images.push_back({p.lo + p.shift, p.hi + p.shift});
    if (images.back().lo < 0 || images.back().hi > 1) inside = false;
  }
  std::sort(images.begin(), images.end(), [](const Image& a, const Image& b) { return a.lo < b.lo; });
  report.injective = inside;
  for (std::size_t k = 1; k < images.size(); ++k)
    if (images[k].lo < images[k - 1].hi) report.injective = false;

  // Leb(T^{-1}[a,b)) = b - a on the refinement by all endpoints.
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& p : pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
    cuts.push_back(p.lo + p.shift);
    cuts.push_back(p.hi + p.shift);
  }
  std::erase_if(cuts, [](const Rational& x) { return x < 0 || x > 1; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  report.lebesgue_invariant = true;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& a = cuts[k];
    const Rational& b = cuts[k + 1];
    Rational pre = 0;
    for (const auto& p : pieces) {
      Rational lo = a - p.shift, hi = b - p.shift;
      if (lo < p.lo) lo = p.lo;
      if (hi > p.hi) hi = p.hi;
      if (lo < hi) pre += hi - lo;
    }
    if (pre != b - a) {
      report.lebesgue_invariant = false;
      break;
    }
  }
  return report;
}

}  // namespace itm
