#ifndef SEI_SVG_HPP
#define SEI_SVG_HPP

#include "sei/types.hpp"

#include <string>
#include <vector>

namespace sei {

struct SvgSeries {
    std::string name;
    ArrayX y;
};

/// Writes a self-contained SVG line chart (shared x axis, linear scales).
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const ArrayX& x,
                      const std::vector<SvgSeries>& series);

} // namespace sei

#endif
