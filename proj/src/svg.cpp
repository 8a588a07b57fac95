#include "ridgelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

// blue (-1) -> white (0) -> red (+1)
std::string diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    int r, g, b;
    if (t < 0.0) {
        const double u = 1.0 + t;  // 0 at full blue, 1 at white
        r = static_cast<int>(std::lround(255.0 * (0.23 + 0.77 * u)));
        g = static_cast<int>(std::lround(255.0 * (0.30 + 0.70 * u)));
        b = 255;
    } else {
        const double u = 1.0 - t;
        r = 255;
        g = static_cast<int>(std::lround(255.0 * (0.09 + 0.91 * u)));
        b = static_cast<int>(std::lround(255.0 * (0.11 + 0.89 * u)));
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << body;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

struct HeatmapLayout {
    int width, height, margin, cell;
    long na, nb;
    double a_lo, a_hi, b_lo, b_hi;

    // b is the horizontal axis, a the vertical one (larger a at the top)
    double px(double b) const {
        return margin + (b - b_lo) / (b_hi - b_lo) * (nb * cell);
    }
    double py(double a) const {
        return margin + (a_hi - a) / (a_hi - a_lo) * (na * cell);
    }
};

HeatmapLayout layout_for(const Spectrum& spec, const SvgOptions& opts) {
    HeatmapLayout L;
    L.na = spec.a_grid.size();
    L.nb = spec.b_grid.size();
    L.margin = opts.margin_px;
    L.cell = opts.cell_px;
    L.width = static_cast<int>(L.nb * L.cell) + 2 * L.margin;
    L.height = static_cast<int>(L.na * L.cell) + 2 * L.margin;
    // nodes sit at cell centers; extend half a step on each side
    const double da = L.na > 1 ? spec.a_grid(1) - spec.a_grid(0) : 1.0;
    const double db = L.nb > 1 ? spec.b_grid(1) - spec.b_grid(0) : 1.0;
    L.a_lo = spec.a_grid(0) - 0.5 * da;
    L.a_hi = spec.a_grid(L.na - 1) + 0.5 * da;
    L.b_lo = spec.b_grid(0) - 0.5 * db;
    L.b_hi = spec.b_grid(L.nb - 1) + 0.5 * db;
    return L;
}

void append_header(std::ostringstream& svg, int width, int height) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
}

void append_heatmap_cells(std::ostringstream& svg, const Spectrum& spec, const HeatmapLayout& L) {
    const double peak = std::max(spec.values.cwiseAbs().maxCoeff(), 1e-300);
    for (long ia = 0; ia < L.na; ++ia) {
        for (long ib = 0; ib < L.nb; ++ib) {
            const double t = spec.values(ia, ib) / peak;
            svg << "<rect x=\"" << L.margin + ib * L.cell << "\" y=\""
                << L.margin + (L.na - 1 - ia) * L.cell << "\" width=\"" << L.cell
                << "\" height=\"" << L.cell << "\" fill=\"" << diverging_color(t) << "\"/>\n";
        }
    }
}

void append_axes(std::ostringstream& svg, const HeatmapLayout& L) {
    const int x0 = L.margin, y0 = L.margin;
    const int x1 = L.margin + static_cast<int>(L.nb * L.cell);
    const int y1 = L.margin + static_cast<int>(L.na * L.cell);
    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\""
        << y1 - y0 << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y1 + 24
        << "\" text-anchor=\"middle\" font-size=\"12\">b</text>\n";
    svg << "<text x=\"" << x0 - 24 << "\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\">a</text>\n";
    svg << "<text x=\"" << x0 << "\" y=\"" << y1 + 12 << "\" text-anchor=\"middle\" font-size=\"9\">"
        << num(L.b_lo) << "</text>\n";
    svg << "<text x=\"" << x1 << "\" y=\"" << y1 + 12 << "\" text-anchor=\"middle\" font-size=\"9\">"
        << num(L.b_hi) << "</text>\n";
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 << "\" text-anchor=\"end\" font-size=\"9\">"
        << num(L.a_lo) << "</text>\n";
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 + 8 << "\" text-anchor=\"end\" font-size=\"9\">"
        << num(L.a_hi) << "</text>\n";
}

}  // namespace

void write_heatmap_svg(const std::filesystem::path& path, const Spectrum& spec,
                       const SvgOptions& opts) {
    const HeatmapLayout L = layout_for(spec, opts);
    std::ostringstream svg;
    append_header(svg, L.width, L.height);
    append_heatmap_cells(svg, spec, L);
    if (opts.draw_axes) append_axes(svg, L);
    svg << "</svg>\n";
    write_file(path, svg.str());
}

void write_heatmap_scatter_svg(const std::filesystem::path& path, const Spectrum& spec,
                               const Eigen::MatrixXd& units, const SvgOptions& opts) {
    const HeatmapLayout L = layout_for(spec, opts);
    std::ostringstream svg;
    append_header(svg, L.width, L.height);
    append_heatmap_cells(svg, spec, L);
    double c_peak = 1e-300;
    for (long u = 0; u < units.rows(); ++u)
        c_peak = std::max(c_peak, std::abs(units(u, units.cols() - 1)));
    for (long u = 0; u < units.rows(); ++u) {
        const double a = units(u, 0);
        const double b = units(u, 1);
        if (a < L.a_lo || a > L.a_hi || b < L.b_lo || b > L.b_hi) continue;
        const double c = units(u, units.cols() - 1) / c_peak;
        svg << "<circle cx=\"" << num(L.px(b)) << "\" cy=\"" << num(L.py(a)) << "\" r=\""
            << opts.point_radius << "\" fill=\"" << diverging_color(c)
            << "\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
    }
    if (opts.draw_axes) append_axes(svg, L);
    svg << "</svg>\n";
    write_file(path, svg.str());
}

void write_fit_svg(const std::filesystem::path& path, const Dataset& ds,
                   const Eigen::VectorXd& xs_eval, const Eigen::VectorXd& fit,
                   const SvgOptions& opts) {
    if (ds.dim() != 1) throw std::invalid_argument("write_fit_svg: only 1-D datasets");
    if (xs_eval.size() != fit.size()) throw std::invalid_argument("write_fit_svg: eval/fit size mismatch");
    const int W = 640, H = 400, M = opts.margin_px;
    double x_lo = ds.x.col(0).minCoeff(), x_hi = ds.x.col(0).maxCoeff();
    double y_lo = ds.y.minCoeff(), y_hi = ds.y.maxCoeff();
    if (xs_eval.size() > 0) {
        x_lo = std::min(x_lo, xs_eval.minCoeff());
        x_hi = std::max(x_hi, xs_eval.maxCoeff());
        y_lo = std::min(y_lo, fit.minCoeff());
        y_hi = std::max(y_hi, fit.maxCoeff());
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;
    auto px = [&](double x) { return M + (x - x_lo) / (x_hi - x_lo) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y_lo) / (y_hi - y_lo) * (H - 2 * M); };
    std::ostringstream svg;
    append_header(svg, W, H);
    svg << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\""
        << H - 2 * M << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (long i = 0; i < ds.size(); ++i)
        svg << "<circle cx=\"" << num(px(ds.x(i, 0))) << "\" cy=\"" << num(py(ds.y(i)))
            << "\" r=\"1.5\" fill=\"#9090c0\"/>\n";
    if (xs_eval.size() > 0) {
        svg << "<polyline fill=\"none\" stroke=\"#d03020\" stroke-width=\"1.5\" points=\"";
        for (long i = 0; i < xs_eval.size(); ++i)
            svg << num(px(xs_eval(i))) << "," << num(py(fit(i))) << " ";
        svg << "\"/>\n";
    }
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - M + 24
        << "\" text-anchor=\"middle\" font-size=\"12\">x</text>\n";
    svg << "</svg>\n";
    write_file(path, svg.str());
}

}  // namespace ridgelab
