#ifndef HMBEC_SVG_HPP
#define HMBEC_SVG_HPP

#include <string>

#include "hmbec/sweep.hpp"

namespace hmbec {

// Render a sweep result to a standalone SVG file: polyline plot for a single
// axis, heat map for two axes. Axis labels come from the column names. The
// plotted quantity is the first output column that parses as a number.
// Throws on empty results or results with more than two axes.
void render_svg(const SweepResult& result, std::size_t n_axes, const std::string& path);

}  // namespace hmbec

#endif
