#pragma once
#include <string>
#include <utility>
#include <vector>

#include "plateau/curve.hpp"

namespace plateau::corpus {

// Bundled test curves, all constant-speed.

ClosedCurve unit_circle(int m = 360, double radius = 1.0);
ClosedCurve ellipse(int m = 360, double a = 2.0, double b = 1.0);

// Unit circle traversed twice: m points covering the 4*pi parameter range.
ClosedCurve double_circle(int m = 360);

// Two unit circles tangent at the origin, total length 4*pi.
ClosedCurve figure_eight(int m = 360);

// Planar trefoil shadow with three crossings.
ClosedCurve trefoil_projection(int m = 480);

// Non-planar closed curve in R^3 (trefoil knot embedding).
ClosedCurve space_curve(int m = 360);

std::vector<std::pair<std::string, ClosedCurve>> all();

} // namespace plateau::corpus
