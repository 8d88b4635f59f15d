#pragma once

// Metric conjugacy of an ITM with an invariant non-atomic measure to an
// interval exchange of [0,1] with Lebesgue measure:
//   h(x) = mu([0,x]),  hbar(y) = max h^{-1}(y),  T = h o S o hbar.

#include <cstddef>
#include <optional>
#include <vector>

#include "itm/itm_map.hpp"
#include "itm/measure.hpp"

namespace itm {

struct IemPiece {
  Rational lo;
  Rational hi;
  Rational shift;         // T(y) = y + shift on [lo, hi)
  Rational image_length;  // exact length of h(S(hbar([lo,hi))))
  friend bool operator==(const IemPiece&, const IemPiece&) = default;
};

/// Piecewise translation of the segment [0,1].
class Iem {
 public:
  Iem() = default;
  explicit Iem(std::vector<IemPiece> pieces);

  static Iem identity();
  static Iem rotation(const Rational& c);

  const std::vector<IemPiece>& pieces() const { return pieces_; }
  std::vector<Rational> breakpoints() const;
  std::vector<Rational> shifts() const;
  Rational evaluate(const Rational& y) const;

  /// Same pieces and shifts (image lengths are not compared).
  bool same_map(const Iem& other) const;

 private:
  std::vector<IemPiece> pieces_;
};

/// h as an exact CDF. Throws AtomicMeasure when mu has atoms.
Cdf build_h(const Measure& mu);

struct SemiConjugacySample {
  std::size_t checked = 0;
  std::size_t exceptional = 0;           // points where h is locally constant
  std::size_t failures = 0;              // mismatches outside the exceptional set
  std::size_t exceptional_failures = 0;  // mismatches inside it
};

struct ConjugacyData {
  Itm source;
  Measure mu;
  Cdf h;
  std::vector<Rational> tau;  // tau_j = mu([0, t_j]), then 1
  Iem induced;
  SemiConjugacySample semiconjugacy;
};

/// Builds T = h o S o hbar. Pieces come from the density segments of mu cut at
/// the breakpoints of S and at the preimage of 0, so a support gap inside one
/// ITM piece yields separate IEM pieces; consecutive pieces with equal shift
/// are merged. Throws NotInvariant or AtomicMeasure.
ConjugacyData induce_iem(const Itm& map, const Measure& mu, std::size_t grid_points = 10000);

struct IemReport {
  bool lengths_preserved = false;   // (a)
  bool lebesgue_invariant = false;  // (b)
  bool injective = false;           // (c)
  bool partition = false;           // pieces tile [0,1)
  bool ok() const { return lengths_preserved && lebesgue_invariant && injective && partition; }
};

IemReport verify_iem(const Iem& iem);

}  // namespace itm
