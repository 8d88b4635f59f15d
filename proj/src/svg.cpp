#include "itm/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace itm::svg {

namespace {

constexpr double kWidth = 640, kHeight = 360, kMargin = 40;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string header(const std::string& title, double height = kHeight) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         "<text x=\"" + num(kMargin) + "\" y=\"20\">" + title + "</text>\n";
}

std::string axes(double height = kHeight) {
  double y0 = height - kMargin;
  return "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(kWidth - kMargin) + "\" y2=\"" +
         num(y0) + "\" stroke=\"black\"/>\n<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" +
         num(kMargin) + "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n<text x=\"" + num(kMargin) + "\" y=\"" +
         num(y0 + 16) + "\">0</text>\n<text x=\"" + num(kWidth - kMargin - 4) + "\" y=\"" + num(y0 + 16) +
         "\">1</text>\n";
}

double sx(double x) { return kMargin + x * (kWidth - 2 * kMargin); }
double sy(double y, double height = kHeight) { return height - kMargin - y * (height - 2 * kMargin); }

}  // namespace

std::string density_histogram(const Measure& mu, const std::string& title) {
  std::string out = header(title) + axes();
  double top = 0;
  for (const auto& d : mu.density()) top = std::max(top, to_double(d.weight));
  for (const auto& a : mu.atoms()) top = std::max(top, to_double(a.mass));
  if (top <= 0) top = 1;
  for (const auto& d : mu.density()) {
    double x0 = sx(to_double(d.segment.lo)), x1 = sx(to_double(d.segment.hi));
    double y = sy(to_double(d.weight) / top);
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
           num(sy(0) - y) + "\" fill=\"steelblue\"/>\n";
  }
  for (const auto& a : mu.atoms()) {
    double x = sx(to_double(a.point));
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(sy(to_double(a.mass) / top)) + "\" stroke=\"firebrick\" stroke-width=\"2\"/>\n";
  }
  out += "<text x=\"4\" y=\"" + num(kMargin) + "\">" + num(top) + "</text>\n</svg>\n";
  return out;
}

std::string cdf_curve(const Measure& mu, const std::string& title) {
  Cdf cdf(mu);
  std::vector<Rational> xs{Rational(0), Rational(1)};
  for (const auto& x : cdf.breaklist()) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double total = to_double(cdf.total());
  if (total <= 0) total = 1;
  std::string path;
  for (const auto& x : xs) {
    double px = sx(to_double(x));
    path += (path.empty() ? "M" : " L") + num(px) + " " + num(sy(to_double(cdf.left_limit(x)) / total));
    path += " L" + num(px) + " " + num(sy(to_double(cdf(x)) / total));
  }
  return header(title) + axes() + "<path d=\"" + path + "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n</svg>\n";
}

std::string arcs_bars(const std::vector<ArcSet>& rows, const std::string& title) {
  const double bar = 14, gap = 4;
  double height = 2 * kMargin + static_cast<double>(rows.size()) * (bar + gap);
  std::string out = header(title, height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double y = kMargin + static_cast<double>(r) * (bar + gap);
    out += "<text x=\"4\" y=\"" + num(y + bar - 2) + "\">" + std::to_string(r) + "</text>\n";
    out += "<rect x=\"" + num(sx(0)) + "\" y=\"" + num(y) + "\" width=\"" + num(sx(1) - sx(0)) + "\" height=\"" +
           num(bar) + "\" fill=\"#eee\"/>\n";
    for (const auto& s : rows[r].segments()) {
      double x0 = sx(to_double(s.lo)), x1 = sx(to_double(s.hi));
      out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y) + "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(bar) +
             "\" fill=\"steelblue\"/>\n";
    }
  }
  return out + "</svg>\n";
}

}  // namespace itm::svg
