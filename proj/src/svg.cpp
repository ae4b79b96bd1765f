#include "travesty/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace travesty {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double plot_x(double x) { return kMarginLeft + x * (kWidth - kMarginLeft - kMarginRight); }
double plot_y(double y) { return kHeight - kMarginBottom - y * (kHeight - kMarginTop - kMarginBottom); }

std::string coord(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

void open_canvas(std::ostringstream& svg) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_axes(std::ostringstream& svg, const std::string& x_label, const std::string& y_label) {
    svg << "<line x1=\"" << coord(plot_x(0)) << "\" y1=\"" << coord(plot_y(0)) << "\" x2=\"" << coord(plot_x(1))
        << "\" y2=\"" << coord(plot_y(0)) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << coord(plot_x(0)) << "\" y1=\"" << coord(plot_y(0)) << "\" x2=\"" << coord(plot_x(0))
        << "\" y2=\"" << coord(plot_y(1)) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        svg << "<text x=\"" << coord(plot_x(v)) << "\" y=\"" << coord(plot_y(0) + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << coord(v) << "</text>\n"
            << "<text x=\"" << coord(plot_x(0) - 8) << "\" y=\"" << coord(plot_y(v) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << coord(v) << "</text>\n";
    }
    svg << "<text x=\"" << coord(plot_x(0.5)) << "\" y=\"" << kHeight - 14
        << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"18\" y=\"" << coord(plot_y(0.5)) << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << coord(plot_y(0.5)) << ")\">" << y_label << "</text>\n";
}

void draw_polyline(std::ostringstream& svg, const std::vector<std::pair<double, double>>& xy, const char* color) {
    if (xy.empty()) return;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : xy) svg << coord(plot_x(x)) << ',' << coord(plot_y(y)) << ' ';
    svg << "\"/>\n";
}

void draw_legend_entry(std::ostringstream& svg, int slot, const char* color, const std::string& label) {
    const double y = kMarginTop + 16.0 * slot;
    svg << "<line x1=\"" << kMarginLeft + 12 << "\" y1=\"" << coord(y) << "\" x2=\"" << kMarginLeft + 40 << "\" y2=\""
        << coord(y) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << kMarginLeft + 46 << "\" y=\"" << coord(y + 4) << "\" font-size=\"11\">" << label
        << "</text>\n";
}

}  // namespace

std::string roc_svg(const std::vector<RatePoint>& points) {
    std::map<double, std::vector<std::pair<double, double>>> curves;
    for (const auto& point : points) curves[point.zeta].push_back({point.PFbar, point.PD});
    for (auto& [zeta, curve] : curves) std::sort(curve.begin(), curve.end());

    std::ostringstream svg;
    open_canvas(svg);
    draw_axes(svg, "P_F (classical)", "P_D (quantum)");
    int slot = 0;
    for (const auto& [zeta, curve] : curves) {
        const char* color = kPalette[slot % 8];
        draw_polyline(svg, curve, color);
        char label[48];
        std::snprintf(label, sizeof(label), "zeta = %g", zeta);
        draw_legend_entry(svg, slot, color, label);
        ++slot;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string trace_svg(const GameTrace& trace, const SignalModel& model) {
    const auto stages = static_cast<double>(trace.stages.size());
    std::ostringstream svg;
    open_canvas(svg);
    draw_axes(svg, "stage", "u1 / u0 / pH1");

    const double denom = stages > 1 ? stages - 1 : 1.0;
    int slot = 0;
    for (Eigen::Index s = 0; s < model.size(); ++s) {
        std::vector<std::pair<double, double>> u1_curve, u0_curve;
        for (std::size_t j = 0; j < trace.stages.size(); ++j) {
            const double x = static_cast<double>(j) / denom;
            u1_curve.push_back({x, trace.stages[j].u1(s)});
            u0_curve.push_back({x, trace.stages[j].u0(s)});
        }
        const char* color_u1 = kPalette[slot % 8];
        draw_polyline(svg, u1_curve, color_u1);
        draw_legend_entry(svg, slot, color_u1, "u1(" + model.signals[static_cast<std::size_t>(s)] + ")");
        ++slot;
        const char* color_u0 = kPalette[slot % 8];
        draw_polyline(svg, u0_curve, color_u0);
        draw_legend_entry(svg, slot, color_u0, "u0(" + model.signals[static_cast<std::size_t>(s)] + ")");
        ++slot;
    }
    std::vector<std::pair<double, double>> belief_curve;
    for (std::size_t j = 0; j < trace.stages.size(); ++j)
        belief_curve.push_back({static_cast<double>(j) / denom, trace.stages[j].belief_after.pH1});
    const char* belief_color = "#000000";
    draw_polyline(svg, belief_curve, belief_color);
    draw_legend_entry(svg, slot, belief_color, "pH1 after stage");

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace travesty
