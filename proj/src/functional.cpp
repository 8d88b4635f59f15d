#include "itm/functional.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "itm/kernels.hpp"

namespace itm {

namespace {

constexpr std::size_t kQuadSubdivisions = 32;

// 8-point Gauss-Legendre on [-1,1].
constexpr std::array<double, 8> kGlNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

/// Calls fn(node, weight) for a composite Gauss-Legendre rule on [a,b].
template <typename F>
void quadrature(double a, double b, F&& fn) {
  double h = (b - a) / static_cast<double>(kQuadSubdivisions);
  for (std::size_t s = 0; s < kQuadSubdivisions; ++s) {
    double lo = a + h * static_cast<double>(s);
    double mid = lo + 0.5 * h;
    for (std::size_t q = 0; q < kGlNodes.size(); ++q) fn(mid + 0.5 * h * kGlNodes[q], 0.5 * h * kGlWeights[q]);
  }
}

/// Visits the parts of each density piece lying in one map piece.
template <typename F>
void for_each_split(const PiecewiseMap& map, const Measure& mu, F&& fn) {
  const auto& dens = mu.density();
  const auto& pieces = map.pieces();
  std::size_t i = 0, p = 0;
  while (i < dens.size() && p < pieces.size()) {
    const Segment& s = dens[i].segment;
    const Segment& ps = pieces[p].interval;
    const Rational& lo = s.lo < ps.lo ? ps.lo : s.lo;
    const Rational& hi = s.hi < ps.hi ? s.hi : ps.hi;
    if (lo < hi) fn(dens[i].weight, lo, hi, pieces[p]);
    if (s.hi < ps.hi)
      ++i;
    else
      ++p;
  }
}

double reduced(const Rational& x) { return to_double(frac(x)); }

FunctionalResidual trig_residual(const PiecewiseMap& map, const Measure& mu, std::size_t degree) {
  // "anti" points enter through the antiderivative (divided by 2 pi k later);
  // "mass" points are evaluated directly. Coefficients carry mu minus T#mu.
  std::vector<double> anti_x, anti_c, mass_x, mass_c;
  for (const auto& d : mu.density()) {
    double w = to_double(d.weight);
    anti_x.push_back(reduced(d.segment.hi));
    anti_c.push_back(w);
    anti_x.push_back(reduced(d.segment.lo));
    anti_c.push_back(-w);
  }
  for (const auto& a : mu.atoms()) {
    mass_x.push_back(reduced(a.point));
    mass_c.push_back(to_double(a.mass));
  }
  for_each_split(map, mu, [&](const Rational& w, const Rational& lo, const Rational& hi, const MapPiece& piece) {
    if (const auto* aff = std::get_if<AffinePiece>(&piece.fn)) {
      if (aff->a != 0) {
        double coef = to_double(w / aff->a);
        anti_x.push_back(reduced(aff->a * hi + aff->b));
        anti_c.push_back(-coef);
        anti_x.push_back(reduced(aff->a * lo + aff->b));
        anti_c.push_back(coef);
      } else {
        mass_x.push_back(reduced(aff->b));
        mass_c.push_back(-to_double(w * (hi - lo)));
      }
    } else {
      const auto& fn = std::get<GeneralPiece>(piece.fn).fn;
      double wd = to_double(w);
      quadrature(to_double(lo), to_double(hi), [&](double x, double gw) {
        double v = fn(x);
        mass_x.push_back(v - std::floor(v));
        mass_c.push_back(-wd * gw);
      });
    }
  });
  for (const auto& a : mu.atoms()) {
    double image = map.is_affine() ? reduced(map.evaluate(a.point)) : map.evaluate(to_double(a.point));
    mass_x.push_back(image - std::floor(image));
    mass_c.push_back(-to_double(a.mass));
  }

  std::vector<double> ca(degree), sa(degree), cm(degree), sm(degree);
  kernels::trig_sums(anti_x, anti_c, degree, ca, sa);
  kernels::trig_sums(mass_x, mass_c, degree, cm, sm);

  FunctionalResidual out;
  for (std::size_t k = 1; k <= degree; ++k) {
    double scale = 2.0 * std::numbers::pi * static_cast<double>(k);
    double cos_res = std::fabs(sa[k - 1] / scale + cm[k - 1]);
    double sin_res = std::fabs(-ca[k - 1] / scale + sm[k - 1]);
    out.per_function.push_back(cos_res);
    out.per_function.push_back(sin_res);
    out.residual = std::max({out.residual, cos_res, sin_res});
  }
  return out;
}

Rational power(const Rational& x, std::size_t k) {
  Rational out = 1;
  for (std::size_t i = 0; i < k; ++i) out *= x;
  return out;
}

// Exact integral over [lo,hi) of w * rep(a x + b)^k where rep is the mod-1
// representative on the circle and the identity on the segment.
Rational affine_monomial_integral(const Rational& w, const Rational& lo, const Rational& hi, const AffinePiece& aff,
                                  std::size_t k, bool circle) {
  if (aff.a == 0) {
    Rational v = circle ? frac(aff.b) : aff.b;
    return w * (hi - lo) * power(v, k);
  }
  std::vector<Rational> cuts{lo};
  if (circle) {
    Rational ua = aff.a * lo + aff.b, ub = aff.a * hi + aff.b;
    Rational umin = ua < ub ? ua : ub, umax = ua < ub ? ub : ua;
    for (Integer n = floor(umin) + 1; Rational(n) < umax; ++n) cuts.push_back((Rational(n) - aff.b) / aff.a);
    std::sort(cuts.begin() + 1, cuts.end());
  }
  cuts.push_back(hi);
  Rational total = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational& x0 = cuts[c];
    const Rational& x1 = cuts[c + 1];
    Rational shift = 0;
    if (circle) shift = Rational(floor(aff.a * ((x0 + x1) / 2) + aff.b));
    Rational u0 = aff.a * x0 + aff.b - shift;
    Rational u1 = aff.a * x1 + aff.b - shift;
    total += w / aff.a * (power(u1, k + 1) - power(u0, k + 1)) / static_cast<long>(k + 1);
  }
  return total;
}

FunctionalResidual monomial_residual(const PiecewiseMap& map, const Measure& mu, std::size_t degree) {
  FunctionalResidual out;
  const bool circle = map.is_circle();
  for (std::size_t k = 1; k <= degree; ++k) {
    Rational exact = 0;
    double approx = 0.0;
    for (const auto& d : mu.density())
      exact += d.weight * (power(d.segment.hi, k + 1) - power(d.segment.lo, k + 1)) / static_cast<long>(k + 1);
    for (const auto& a : mu.atoms()) exact += a.mass * power(a.point, k);
    for_each_split(map, mu, [&](const Rational& w, const Rational& lo, const Rational& hi, const MapPiece& piece) {
      if (const auto* aff = std::get_if<AffinePiece>(&piece.fn)) {
        exact -= affine_monomial_integral(w, lo, hi, *aff, k, circle);
      } else {
        const auto& fn = std::get<GeneralPiece>(piece.fn).fn;
        double wd = to_double(w);
        quadrature(to_double(lo), to_double(hi), [&](double x, double gw) {
          double v = fn(x);
          if (circle) v -= std::floor(v);
          approx -= wd * gw * std::pow(v, static_cast<double>(k));
        });
      }
    });
    for (const auto& a : mu.atoms()) {
      if (map.is_affine()) {
        exact -= a.mass * power(map.evaluate(a.point), k);
      } else {
        approx -= to_double(a.mass) * std::pow(map.evaluate(to_double(a.point)), static_cast<double>(k));
      }
    }
    double res = std::fabs(to_double(exact) + approx);
    out.per_function.push_back(res);
    out.residual = std::max(out.residual, res);
  }
  return out;
}

}  // namespace

FunctionalResidual invariance_residual_functional(const PiecewiseMap& map, const Measure& mu,
                                                  const TestFamily& family) {
  if (family.kind == TestFamily::Kind::trigonometric) return trig_residual(map, mu, family.degree);
  return monomial_residual(map, mu, family.degree);
}

FunctionalResidual invariance_residual_functional(const Itm& map, const Measure& mu, const TestFamily& family) {
  return invariance_residual_functional(PiecewiseMap::from_itm(map), mu, family);
}

}  // namespace itm
