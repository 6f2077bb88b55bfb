#include "linebot/line_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "linebot/errors.hpp"

namespace linebot::line {
namespace {

constexpr double kResidualTolerance = 1e-9;
constexpr double kStraightSagRatio = 1e-9;

// a * (cosh(u) - 1) written as 2a sinh^2(u/2) to avoid cancellation for
// large a.
double drop(double a, double dx) {
  const double h = std::sinh(dx / (2.0 * a));
  return 2.0 * a * h * h;
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

LineProfile solve_catenary(double span, double sag, double support_height) {
  if (!finite(span) || !finite(sag) || !finite(support_height)) {
    throw InvalidGeometry("line geometry must be finite");
  }
  if (span <= 0.0) throw InvalidGeometry("span must be > 0");
  if (sag < 0.0) throw InvalidGeometry("sag must be >= 0");
  if (sag >= support_height) {
    throw InvalidGeometry("sag must be below support height (cable would touch ground)");
  }

  LineProfile p;
  p.span = span;
  p.sag = sag;
  p.support_height = support_height;

  if (sag < kStraightSagRatio * span) {
    p.sag = 0.0;
    p.straight = true;
    p.catenary_param = std::numeric_limits<double>::infinity();
    p.total_arclength = span;
    return p;
  }

  // f(a) = drop(a, span/2) - sag is strictly decreasing in a.
  const double half = 0.5 * span;
  auto f = [&](double a) { return drop(a, half) - sag; };
  double lo = span / 1000.0;
  double hi = 1e6 * span;
  while (f(hi) > 0.0) hi *= 2.0;
  if (f(lo) < 0.0) {
    throw InvalidGeometry("sag " + std::to_string(sag) + " too large to bracket");
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double a = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
  if (std::abs(f(a)) >= kResidualTolerance) {
    throw InvalidGeometry("catenary solve did not converge");
  }
  p.catenary_param = a;
  p.total_arclength = arclength(p);
  return p;
}

double height_at(const LineProfile& p, double x) {
  if (!(x >= 0.0 && x <= p.span)) {
    throw OutOfDomain("x = " + std::to_string(x) + " outside [0, span]");
  }
  if (p.straight || x == 0.0 || x == p.span) return p.support_height;
  return p.support_height - p.sag + drop(p.catenary_param, x - 0.5 * p.span);
}

double x_at_arclength(const LineProfile& p, double s) {
  if (!(s >= 0.0 && s <= p.total_arclength)) {
    throw OutOfDomain("s = " + std::to_string(s) + " outside [0, total_arclength]");
  }
  if (p.straight) return s;
  const double a = p.catenary_param;
  // Inverse of s(x) = a sinh((x - span/2)/a) + L/2.
  const double x = 0.5 * p.span + a * std::asinh((s - 0.5 * p.total_arclength) / a);
  return std::clamp(x, 0.0, p.span);
}

double height_at_arclength(const LineProfile& p, double s) {
  return height_at(p, x_at_arclength(p, s));
}

double slope_at(const LineProfile& p, double s) {
  if (!(s >= 0.0 && s <= p.total_arclength)) {
    throw OutOfDomain("s = " + std::to_string(s) + " outside [0, total_arclength]");
  }
  if (p.straight) return 0.0;
  // sinh((x(s) - span/2)/a) reduces to (s - L/2)/a.
  return std::atan((s - 0.5 * p.total_arclength) / p.catenary_param);
}

double arclength(const LineProfile& p) {
  if (p.straight) return p.span;
  const double a = p.catenary_param;
  return 2.0 * a * std::sinh(p.span / (2.0 * a));
}

}  // namespace linebot::line
