#include "sei/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace sei {

namespace {
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
}

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const ArrayX& x,
                      const std::vector<SvgSeries>& series) {
    const int W = 860, H = 480;
    const int ml = 70, mr = 140, mt = 40, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = x.minCoeff(), xmax = x.maxCoeff();
    double ymin = 0.0, ymax = -1e300;
    for (const auto& s : series) {
        ymin = std::min(ymin, s.y.minCoeff());
        ymax = std::max(ymax, s.y.maxCoeff());
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    auto px = [&](double v) { return ml + pw * (v - xmin) / (xmax - xmin); };
    auto py = [&](double v) { return mt + ph * (1.0 - (v - ymin) / (ymax - ymin)); };

    std::ofstream out(path);
    if (!out) throw ConfigError("svg: cannot open " + path);
    out << std::setprecision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" << title << "</text>\n";

    // axes and ticks
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5;
        const double yv = ymin + (ymax - ymin) * i / 5;
        out << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << xv
            << "</text>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << yv
            << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const int n = static_cast<int>(x.size());
        const int stride = std::max(1, n / 2000);
        for (int i = 0; i < n; i += stride)
            out << px(x[i]) << "," << py(s.y[i]) << " ";
        out << px(x[n - 1]) << "," << py(s.y[n - 1]);
        out << "\"/>\n";
        out << "<text x=\"" << ml + pw + 12 << "\" y=\"" << mt + 16 + 18 * ci
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" << color << "\">" << s.name
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

} // namespace sei
