#pragma once

#include <string>

#include "monodromy/sector_layout.hpp"

namespace monodromy {

// Ray diagram of a regular diagonal leading coefficient: all rays drawn and
// labelled d_1..d_{2l} counterclockwise, the initial sector shaded, and the
// branch cut (along d_1) dashed. Throws DegenerateA0 via the layout
// computation.
std::string render_rays(const Mat& A0, double base_direction);

// Renders and writes to `out_path`.
void plot_rays(const Mat& A0, double base_direction, const std::string& out_path);

}  // namespace monodromy
