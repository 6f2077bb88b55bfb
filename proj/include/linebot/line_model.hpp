#pragma once

// Geometry of the sagged test cable. The cable hangs between two supports of
// equal height as a catenary
//
//   y(x) = support_height - sag + a * (cosh((x - span/2) / a) - 1)
//
// with x the horizontal coordinate from the first support and a the
// catenary parameter. The robot moves in arclength s measured from the first
// support, so most queries used by the simulator are in terms of s.

namespace linebot::line {

struct LineProfile {
  double span = 0.0;            // m, horizontal distance between supports
  double sag = 0.0;             // m, drop from support line to lowest point
  double catenary_param = 0.0;  // m, a; +inf for a straight line
  double support_height = 0.0;  // m
  double total_arclength = 0.0; // m
  bool straight = false;        // sag treated as zero
};

// Solves a * (cosh(span / 2a) - 1) = sag by bisection.
// Throws InvalidGeometry unless span > 0 and 0 <= sag < support_height.
LineProfile solve_catenary(double span, double sag, double support_height);

// Height above ground at horizontal position x in [0, span].
double height_at(const LineProfile& profile, double x);

// Horizontal position of the point at arclength s in [0, total_arclength].
double x_at_arclength(const LineProfile& profile, double s);

// Height above ground at arclength s.
double height_at_arclength(const LineProfile& profile, double s);

// Inclination (radians) of the cable at arclength s, positive when the cable
// rises in the +s direction.
double slope_at(const LineProfile& profile, double s);

// Closed-form cable length 2a sinh(span / 2a).
double arclength(const LineProfile& profile);

}  // namespace linebot::line
