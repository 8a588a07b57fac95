#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "ridgelab/data.hpp"
#include "ridgelab/special.hpp"

namespace ridgelab {

enum class OptimizerKind { Adam, Lbfgs };

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct LbfgsConfig {
    int memory = 10;
    int line_search_max_steps = 20;
};

enum class InitKind { UniformSymmetric, Gaussian };

// (a, b) start uniform on [-scale, scale] or N(0, scale^2); c starts
// N(0, c_std^2).
struct InitConfig {
    InitKind kind = InitKind::UniformSymmetric;
    double scale = 1.0;
    double c_std = 0.1;
};

struct TrainConfig {
    int p = 10;
    OptimizerKind optimizer = OptimizerKind::Adam;
    AdamConfig adam;
    LbfgsConfig lbfgs;
    int epochs = 1000;
    int batch_size = 0;  // 0 = full batch
    std::uint64_t seed = 0;
    InitConfig init;

    void validate() const;
};

// dL/d(theta), same shapes as NetworkParams.
struct ParamGradient {
    Eigen::MatrixXd a;  // p x m
    Eigen::VectorXd b;  // p
    Eigen::VectorXd c;  // p
};

double forward(const NetworkParams& theta, const Activation& act, const Eigen::VectorXd& x);
Eigen::VectorXd forward_batch(const NetworkParams& theta, const Activation& act,
                              const Eigen::MatrixXd& xs);

// Empirical mean squared error, no regularizer.
double mse_loss(const NetworkParams& theta, const Activation& act, const Dataset& ds);

ParamGradient grad(const NetworkParams& theta, const Activation& act, const Dataset& ds);

struct TrainResult {
    NetworkParams params;
    std::vector<double> loss_trace;  // one entry per epoch
    double final_loss = 0.0;
};

// Deterministic given cfg.seed. Throws NumericError when the loss turns
// non-finite.
TrainResult train_one(const Dataset& ds, const Activation& act, const TrainConfig& cfg);

struct EnsembleResult {
    std::vector<TrainResult> runs;     // completed runs, ordered by run id
    std::vector<long> run_ids;         // original index of each completed run
    std::vector<long> failed_runs;     // run ids that diverged
    std::vector<double> final_losses;  // aligned with runs

    // Flattened (a..., b, c) unit rows over all completed runs.
    Eigen::MatrixXd units(int dim) const;
};

// n independent runs with seeds cfg.seed + 0 .. n-1, executed in parallel.
// Individual divergences are recorded; throws NumericError when more than
// 10% of the runs fail.
EnsembleResult train_ensemble(const Dataset& ds, const Activation& act, const TrainConfig& cfg,
                              long n);

// Keeps unit rows whose |c| lies within the [low, high] empirical quantiles
// (linear interpolation convention). Rows are (a..., b, c); c is the last
// column. Throws std::invalid_argument on empty input or a bad range.
Eigen::MatrixXd filter_units(const Eigen::MatrixXd& units, double low_quantile,
                             double high_quantile);

}  // namespace ridgelab
