#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "ridgelab/data.hpp"
#include "ridgelab/special.hpp"

namespace ridgelab {

enum class DatasetKind {
    Sinusoidal,       // sin(2 pi x) + optional Gaussian noise
    GaussianNoise,    // y ~ N(0, 1)
    HighFreqSin,      // sin(10 pi x)
    TopologistSin,    // sin(1/x), |x| >= 1e-6
    GaussianKernel,   // exp(-|x - mu|^2 / 2)
    SquareWave        // sgn(sin(2 pi x)), sgn(0) = 0
};

DatasetKind dataset_kind_from_name(const std::string& name);
std::string dataset_name(DatasetKind kind);

// 10,000 for the topologist's curve, 1,000 otherwise.
long default_sample_count(DatasetKind kind);

// Hidden-unit count convention per dataset: 100 for the high-frequency,
// topologist's and square-wave problems, 10 otherwise.
int default_hidden_units(DatasetKind kind);

// 1-D samples with x ~ U(-1, 1), deterministic per seed. noise_std only
// affects Sinusoidal; mu only affects GaussianKernel.
Dataset gen_dataset(DatasetKind kind, long s, double noise_std, double mu, std::uint64_t seed);

enum class SpectrumNormalization { RawSum, MaxAbsOne };

// Transform values on a 2-D (a, b) grid.
struct Spectrum {
    Eigen::VectorXd a_grid;  // node coordinates, ascending
    Eigen::VectorXd b_grid;
    Eigen::MatrixXd values;  // a_grid.size() x b_grid.size()
    SpectrumNormalization normalization = SpectrumNormalization::MaxAbsOne;
};

// Monte Carlo estimate of the classic ridgelet transform on every grid node:
// value(a, b) = (1/s) sum_i y_i rho(a x_i - b), then optional rescale so
// max |value| = 1. Only defined for 1-D datasets.
Spectrum classic_spectrum(const Dataset& ds, const RidgeletFn& rf, const Eigen::VectorXd& a_grid,
                          const Eigen::VectorXd& b_grid,
                          SpectrumNormalization normalization = SpectrumNormalization::MaxAbsOne);

Eigen::VectorXd linspace_nodes(double lo, double hi, int count);

struct ConcentrationReport {
    double score = 0.0;       // mean |spectrum| at units / mean |spectrum| on grid
    long used = 0;            // units inside the grid hull
    long out_of_bounds = 0;   // dropped units
};

// Bilinear interpolation of |values| at the (a_j, b_j) of each unit row
// (a, b, c). Scores > 1 mean the units sit in high-intensity regions.
// Throws NumericError when every unit falls outside the grid.
ConcentrationReport concentration_score(const Spectrum& spec, const Eigen::MatrixXd& units);

// Lays a coefficient on its grid measure out as a Spectrum (atom order is
// a-major, matching ParamMeasure::make_grid).
Spectrum spectrum_from_coefficient(const ParamMeasure& meas, const Coefficient& coeff,
                                   SpectrumNormalization normalization = SpectrumNormalization::RawSum);

// Pearson correlation of two equally sized value sets; used to compare
// |classic spectrum| against |gamma*|.
double pearson_correlation(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace ridgelab
