#include "ridgelab/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "ridgelab/errors.hpp"
#include "ridgelab/parallel.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTopsinCutoff = 1e-6;  // excluded neighborhood of x = 0
}

DatasetKind dataset_kind_from_name(const std::string& name) {
    if (name == "sin") return DatasetKind::Sinusoidal;
    if (name == "gaussnoise") return DatasetKind::GaussianNoise;
    if (name == "hfsin") return DatasetKind::HighFreqSin;
    if (name == "topsin") return DatasetKind::TopologistSin;
    if (name == "gausskernel") return DatasetKind::GaussianKernel;
    if (name == "squarewave") return DatasetKind::SquareWave;
    throw std::invalid_argument("unknown dataset '" + name +
                                "' (expected sin, gaussnoise, hfsin, topsin, gausskernel or squarewave)");
}

std::string dataset_name(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::Sinusoidal: return "sin";
        case DatasetKind::GaussianNoise: return "gaussnoise";
        case DatasetKind::HighFreqSin: return "hfsin";
        case DatasetKind::TopologistSin: return "topsin";
        case DatasetKind::GaussianKernel: return "gausskernel";
        case DatasetKind::SquareWave: return "squarewave";
    }
    return "?";
}

long default_sample_count(DatasetKind kind) {
    return kind == DatasetKind::TopologistSin ? 10000 : 1000;
}

int default_hidden_units(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::HighFreqSin:
        case DatasetKind::TopologistSin:
        case DatasetKind::SquareWave: return 100;
        default: return 10;
    }
}

Dataset gen_dataset(DatasetKind kind, long s, double noise_std, double mu, std::uint64_t seed) {
    if (s < 1) throw std::invalid_argument("gen_dataset: sample count must be >= 1");
    if (noise_std < 0.0) throw std::invalid_argument("gen_dataset: noise std must be >= 0");
    Rng rng(seed);
    Dataset ds;
    ds.x.resize(s, 1);
    ds.y.resize(s);
    for (long i = 0; i < s; ++i) {
        double x = rng.uniform(-1.0, 1.0);
        if (kind == DatasetKind::TopologistSin) {
            while (std::abs(x) < kTopsinCutoff) x = rng.uniform(-1.0, 1.0);
        }
        ds.x(i, 0) = x;
        switch (kind) {
            case DatasetKind::Sinusoidal:
                ds.y(i) = std::sin(2.0 * kPi * x);
                if (noise_std > 0.0) ds.y(i) += rng.gaussian(0.0, noise_std);
                break;
            case DatasetKind::GaussianNoise:
                ds.y(i) = rng.gaussian(0.0, 1.0);
                break;
            case DatasetKind::HighFreqSin:
                ds.y(i) = std::sin(10.0 * kPi * x);
                break;
            case DatasetKind::TopologistSin:
                ds.y(i) = std::sin(1.0 / x);
                break;
            case DatasetKind::GaussianKernel:
                // decaying bump; the sign in the exponent encodes location
                ds.y(i) = std::exp(-0.5 * (x - mu) * (x - mu));
                break;
            case DatasetKind::SquareWave: {
                const double v = std::sin(2.0 * kPi * x);
                ds.y(i) = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
                break;
            }
        }
    }
    return ds;
}

Eigen::VectorXd linspace_nodes(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace_nodes: count must be >= 1");
    Eigen::VectorXd v(count);
    if (count == 1) {
        v(0) = 0.5 * (lo + hi);
        return v;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) v(i) = lo + i * step;
    return v;
}

Spectrum classic_spectrum(const Dataset& ds, const RidgeletFn& rf, const Eigen::VectorXd& a_grid,
                          const Eigen::VectorXd& b_grid, SpectrumNormalization normalization) {
    ds.validate();
    if (ds.dim() != 1)
        throw std::invalid_argument("classic_spectrum: only 1-D datasets (use the operator path for m > 1)");
    Spectrum spec;
    spec.a_grid = a_grid;
    spec.b_grid = b_grid;
    spec.values.resize(a_grid.size(), b_grid.size());
    spec.normalization = normalization;
    const double s = static_cast<double>(ds.size());
    parallel_for(a_grid.size(), [&](std::int64_t ia) {
        const double a = a_grid(ia);
        for (long ib = 0; ib < b_grid.size(); ++ib) {
            const double b = b_grid(ib);
            double acc = 0.0;
            for (long i = 0; i < ds.size(); ++i)
                acc += ds.y(i) * eval_ridgelet(rf, a * ds.x(i, 0) - b);
            spec.values(ia, ib) = acc / s;
        }
    });
    if (normalization == SpectrumNormalization::MaxAbsOne) {
        const double peak = spec.values.cwiseAbs().maxCoeff();
        if (peak > 0.0) spec.values /= peak;
    }
    return spec;
}

ConcentrationReport concentration_score(const Spectrum& spec, const Eigen::MatrixXd& units) {
    if (units.rows() == 0) throw std::invalid_argument("concentration_score: empty unit list");
    if (units.cols() < 2) throw std::invalid_argument("concentration_score: unit rows need (a, b) columns");
    const Eigen::VectorXd& ag = spec.a_grid;
    const Eigen::VectorXd& bg = spec.b_grid;
    if (ag.size() < 2 || bg.size() < 2)
        throw std::invalid_argument("concentration_score: grid needs at least 2 nodes per axis");
    const Eigen::MatrixXd mag = spec.values.cwiseAbs();
    const double grid_mean = mag.mean();
    if (grid_mean == 0.0) throw NumericError("concentration_score: spectrum is identically zero");

    auto cell = [](const Eigen::VectorXd& grid, double v, long& idx, double& frac) -> bool {
        if (v < grid(0) || v > grid(grid.size() - 1)) return false;
        // grids are ascending and uniform in practice, but search stays general
        long lo = 0, hi = grid.size() - 1;
        while (hi - lo > 1) {
            const long mid = (lo + hi) / 2;
            (grid(mid) <= v ? lo : hi) = mid;
        }
        idx = lo;
        const double span = grid(lo + 1) - grid(lo);
        frac = span > 0.0 ? (v - grid(lo)) / span : 0.0;
        return true;
    };

    double acc = 0.0;
    long used = 0, dropped = 0;
    for (long u = 0; u < units.rows(); ++u) {
        long ia, ib;
        double fa, fb;
        if (!cell(ag, units(u, 0), ia, fa) || !cell(bg, units(u, 1), ib, fb)) {
            ++dropped;
            continue;
        }
        const double v00 = mag(ia, ib), v10 = mag(ia + 1, ib);
        const double v01 = mag(ia, ib + 1), v11 = mag(ia + 1, ib + 1);
        acc += (1 - fa) * (1 - fb) * v00 + fa * (1 - fb) * v10 + (1 - fa) * fb * v01 + fa * fb * v11;
        ++used;
    }
    if (used == 0) throw NumericError("concentration_score: every unit lies outside the grid");
    ConcentrationReport report;
    report.used = used;
    report.out_of_bounds = dropped;
    report.score = (acc / static_cast<double>(used)) / grid_mean;
    return report;
}

Spectrum spectrum_from_coefficient(const ParamMeasure& meas, const Coefficient& coeff,
                                   SpectrumNormalization normalization) {
    if (meas.kind != MeasureKind::Grid || !meas.grid)
        throw std::invalid_argument("spectrum_from_coefficient: measure must be a grid");
    coeff.validate(meas);
    const Eigen::VectorXd values = coeff.real_values();
    const GridSpec& g = *meas.grid;
    Spectrum spec;
    spec.a_grid.resize(g.a_steps);
    spec.b_grid.resize(g.b_steps);
    for (int ia = 0; ia < g.a_steps; ++ia) spec.a_grid(ia) = g.a_node(ia);
    for (int ib = 0; ib < g.b_steps; ++ib) spec.b_grid(ib) = g.b_node(ib);
    spec.values.resize(g.a_steps, g.b_steps);
    for (int ia = 0; ia < g.a_steps; ++ia)
        for (int ib = 0; ib < g.b_steps; ++ib)
            spec.values(ia, ib) = values(static_cast<long>(ia) * g.b_steps + ib);
    spec.normalization = normalization;
    if (normalization == SpectrumNormalization::MaxAbsOne) {
        const double peak = spec.values.cwiseAbs().maxCoeff();
        if (peak > 0.0) spec.values /= peak;
    }
    return spec;
}

double pearson_correlation(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != v.size() || u.size() < 2)
        throw std::invalid_argument("pearson_correlation: need two equally sized sets of >= 2 values");
    const Eigen::VectorXd du = u.array() - u.mean();
    const Eigen::VectorXd dv = v.array() - v.mean();
    const double denom = std::sqrt(du.squaredNorm() * dv.squaredNorm());
    if (denom == 0.0) throw NumericError("pearson_correlation: zero variance input");
    return du.dot(dv) / denom;
}

}  // namespace ridgelab
