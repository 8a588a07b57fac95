#pragma once

#include <Eigen/Core>
#include <filesystem>

#include "ridgelab/data.hpp"
#include "ridgelab/experiments.hpp"

namespace ridgelab {

struct SvgOptions {
    int cell_px = 4;          // heatmap pixels per grid cell
    int margin_px = 40;       // axis margin
    double point_radius = 2.0;
    bool draw_axes = true;
};

// Diverging heatmap of a spectrum, blue-white-red centered at zero.
void write_heatmap_svg(const std::filesystem::path& path, const Spectrum& spec,
                       const SvgOptions& opts = {});

// Heatmap with trained units scattered on top; each point is colored by its
// c value on the same diverging scale.
void write_heatmap_scatter_svg(const std::filesystem::path& path, const Spectrum& spec,
                               const Eigen::MatrixXd& units, const SvgOptions& opts = {});

// 1-D dataset scatter with a fitted curve overlay.
void write_fit_svg(const std::filesystem::path& path, const Dataset& ds,
                   const Eigen::VectorXd& xs_eval, const Eigen::VectorXd& fit,
                   const SvgOptions& opts = {});

}  // namespace ridgelab
