#pragma once

#include <string>

#include "orbithull/hull.hpp"

namespace orbithull {

/// Q_X and recession-ray arrows in intrinsic coordinates of t^R (d <= 3; d = 3 drawn isometrically).
std::string hull_svg(const OrbitHull& h);

}  // namespace orbithull
