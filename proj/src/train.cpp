#include "ridgelab/train.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ridgelab/errors.hpp"
#include "ridgelab/parallel.hpp"
#include "ridgelab/rng.hpp"

namespace ridgelab {

void TrainConfig::validate() const {
    if (p < 1) throw std::invalid_argument("train: p must be >= 1");
    if (epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (batch_size < 0) throw std::invalid_argument("train: batch size must be >= 0");
    if (optimizer == OptimizerKind::Adam && !(adam.lr > 0.0))
        throw std::invalid_argument("train: learning rate must be positive");
    if (optimizer == OptimizerKind::Lbfgs && lbfgs.memory < 1)
        throw std::invalid_argument("train: lbfgs memory must be >= 1");
}

double forward(const NetworkParams& theta, const Activation& act, const Eigen::VectorXd& x) {
    if (x.size() != theta.dim()) throw std::invalid_argument("forward: input dimension mismatch");
    double out = 0.0;
    for (long j = 0; j < theta.unit_count(); ++j)
        out += theta.c(j) * eval_activation(act, theta.a.row(j).dot(x) - theta.b(j));
    return out;
}

Eigen::VectorXd forward_batch(const NetworkParams& theta, const Activation& act,
                              const Eigen::MatrixXd& xs) {
    if (xs.cols() != theta.dim())
        throw std::invalid_argument("forward_batch: input dimension mismatch");
    Eigen::MatrixXd z = xs * theta.a.transpose();  // s x p
    z.rowwise() -= theta.b.transpose();
    return z.unaryExpr([&act](double v) { return eval_activation(act, v); }) * theta.c;
}

double mse_loss(const NetworkParams& theta, const Activation& act, const Dataset& ds) {
    const Eigen::VectorXd r = forward_batch(theta, act, ds.x) - ds.y;
    return r.squaredNorm() / static_cast<double>(ds.size());
}

namespace {

// residuals r_i = g(x_i) - y_i over the given sample rows
ParamGradient grad_on(const NetworkParams& theta, const Activation& act, const Eigen::MatrixXd& xs,
                      const Eigen::VectorXd& ys) {
    const long s = xs.rows();
    const long p = theta.unit_count();
    Eigen::MatrixXd z = xs * theta.a.transpose();  // s x p
    z.rowwise() -= theta.b.transpose();
    Eigen::MatrixXd sig(s, p), dsig(s, p);
    for (long j = 0; j < p; ++j) {
        for (long i = 0; i < s; ++i) {
            eval_activation_pair(act, z(i, j), sig(i, j), dsig(i, j));
        }
    }
    const Eigen::VectorXd r = sig * theta.c - ys;
    const double scale = 2.0 / static_cast<double>(s);
    ParamGradient g;
    g.c = scale * (sig.transpose() * r);
    const Eigen::MatrixXd rd = (dsig.array().colwise() * r.array()).matrix();  // (i,j) = r_i dsig_ij
    const Eigen::VectorXd col_sums = rd.colwise().sum().transpose();
    g.b = -scale * theta.c.cwiseProduct(col_sums);
    g.a = scale * (theta.c.asDiagonal() * (rd.transpose() * xs));
    return g;
}

long param_count(const NetworkParams& theta) {
    return theta.unit_count() * (theta.dim() + 2);
}

Eigen::VectorXd pack(const NetworkParams& theta) {
    const long p = theta.unit_count();
    const long m = theta.dim();
    Eigen::VectorXd v(param_count(theta));
    for (long j = 0; j < p; ++j) v.segment(j * m, m) = theta.a.row(j);
    v.segment(p * m, p) = theta.b;
    v.segment(p * m + p, p) = theta.c;
    return v;
}

Eigen::VectorXd pack(const ParamGradient& g) {
    const long p = g.b.size();
    const long m = g.a.cols();
    Eigen::VectorXd v(p * (m + 2));
    for (long j = 0; j < p; ++j) v.segment(j * m, m) = g.a.row(j);
    v.segment(p * m, p) = g.b;
    v.segment(p * m + p, p) = g.c;
    return v;
}

NetworkParams unpack(const Eigen::VectorXd& v, long p, long m) {
    NetworkParams theta;
    theta.a.resize(p, m);
    for (long j = 0; j < p; ++j) theta.a.row(j) = v.segment(j * m, m);
    theta.b = v.segment(p * m, p);
    theta.c = v.segment(p * m + p, p);
    return theta;
}

NetworkParams init_params(const Dataset& ds, const TrainConfig& cfg, Rng& rng) {
    NetworkParams theta;
    const int m = ds.dim();
    theta.a.resize(cfg.p, m);
    theta.b.resize(cfg.p);
    theta.c.resize(cfg.p);
    for (int j = 0; j < cfg.p; ++j) {
        for (int d = 0; d < m; ++d)
            theta.a(j, d) = cfg.init.kind == InitKind::UniformSymmetric
                                ? rng.uniform(-cfg.init.scale, cfg.init.scale)
                                : rng.gaussian(0.0, cfg.init.scale);
        theta.b(j) = cfg.init.kind == InitKind::UniformSymmetric
                         ? rng.uniform(-cfg.init.scale, cfg.init.scale)
                         : rng.gaussian(0.0, cfg.init.scale);
        theta.c(j) = rng.gaussian(0.0, cfg.init.c_std);
    }
    return theta;
}

void check_finite_loss(double loss, int epoch) {
    if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "training diverged: non-finite loss at epoch " << epoch;
        throw NumericError(msg.str());
    }
}

TrainResult train_adam(const Dataset& ds, const Activation& act, const TrainConfig& cfg, Rng& rng,
                       NetworkParams theta) {
    const long s = ds.size();
    const long batch = cfg.batch_size > 0 ? std::min<long>(cfg.batch_size, s) : s;
    Eigen::VectorXd v = pack(theta);
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(v.size());
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(v.size());
    std::vector<long> order(s);
    std::iota(order.begin(), order.end(), 0);
    TrainResult result;
    result.loss_trace.reserve(cfg.epochs);
    long step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (batch < s) {  // Fisher-Yates with the run RNG
            for (long i = s - 1; i > 0; --i)
                std::swap(order[i], order[rng.index(static_cast<std::uint64_t>(i + 1))]);
        }
        for (long start = 0; start < s; start += batch) {
            const long count = std::min(batch, s - start);
            theta = unpack(v, cfg.p, ds.dim());
            Eigen::VectorXd g;
            if (count == s) {
                g = pack(grad_on(theta, act, ds.x, ds.y));
            } else {
                Eigen::MatrixXd xs(count, ds.dim());
                Eigen::VectorXd ys(count);
                for (long i = 0; i < count; ++i) {
                    xs.row(i) = ds.x.row(order[start + i]);
                    ys(i) = ds.y(order[start + i]);
                }
                g = pack(grad_on(theta, act, xs, ys));
            }
            ++step;
            m1 = cfg.adam.beta1 * m1 + (1.0 - cfg.adam.beta1) * g;
            m2 = cfg.adam.beta2 * m2 + (1.0 - cfg.adam.beta2) * g.cwiseAbs2();
            const double bc1 = 1.0 - std::pow(cfg.adam.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.adam.beta2, static_cast<double>(step));
            const Eigen::VectorXd mhat = m1 / bc1;
            const Eigen::VectorXd vhat = m2 / bc2;
            v -= cfg.adam.lr * (mhat.array() / (vhat.array().sqrt() + cfg.adam.eps)).matrix();
        }
        theta = unpack(v, cfg.p, ds.dim());
        const double loss = mse_loss(theta, act, ds);
        check_finite_loss(loss, epoch);
        result.loss_trace.push_back(loss);
    }
    result.params = unpack(v, cfg.p, ds.dim());
    result.final_loss = result.loss_trace.back();
    return result;
}

TrainResult train_lbfgs(const Dataset& ds, const Activation& act, const TrainConfig& cfg,
                        NetworkParams theta0) {
    const long p = cfg.p;
    const long m = ds.dim();
    auto eval = [&](const Eigen::VectorXd& v, Eigen::VectorXd& g) {
        const NetworkParams theta = unpack(v, p, m);
        g = pack(grad_on(theta, act, ds.x, ds.y));
        return mse_loss(theta, act, ds);
    };

    Eigen::VectorXd v = pack(theta0);
    Eigen::VectorXd g;
    double loss = eval(v, g);
    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    TrainResult result;
    result.loss_trace.reserve(cfg.epochs);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // two-loop recursion
        Eigen::VectorXd q = g;
        const int k = static_cast<int>(s_hist.size());
        std::vector<double> alpha(k);
        for (int i = k - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (k > 0) {
            const double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
            q *= gamma;
        }
        for (int i = 0; i < k; ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd dir = -q;
        double slope = g.dot(dir);
        if (slope >= 0.0) {  // not a descent direction, fall back to steepest descent
            dir = -g;
            slope = -g.squaredNorm();
        }
        // backtracking Armijo line search
        double t = 1.0;
        const double c1 = 1e-4;
        Eigen::VectorXd v_next;
        Eigen::VectorXd g_next;
        double loss_next = loss;
        bool accepted = false;
        for (int ls = 0; ls < cfg.lbfgs.line_search_max_steps; ++ls) {
            v_next = v + t * dir;
            loss_next = eval(v_next, g_next);
            if (std::isfinite(loss_next) && loss_next <= loss + c1 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {  // converged to line-search precision; hold position
            result.loss_trace.push_back(loss);
            continue;
        }
        const Eigen::VectorXd sk = v_next - v;
        const Eigen::VectorXd yk = g_next - g;
        const double sy = sk.dot(yk);
        if (sy > 1e-12) {  // curvature condition
            s_hist.push_back(sk);
            y_hist.push_back(yk);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > cfg.lbfgs.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        v = v_next;
        g = g_next;
        loss = loss_next;
        check_finite_loss(loss, epoch);
        result.loss_trace.push_back(loss);
    }
    result.params = unpack(v, p, m);
    result.final_loss = result.loss_trace.back();
    return result;
}

}  // namespace

ParamGradient grad(const NetworkParams& theta, const Activation& act, const Dataset& ds) {
    theta.validate();
    ds.validate();
    if (theta.dim() != ds.dim()) throw std::invalid_argument("grad: dimension mismatch");
    return grad_on(theta, act, ds.x, ds.y);
}

TrainResult train_one(const Dataset& ds, const Activation& act, const TrainConfig& cfg) {
    cfg.validate();
    ds.validate();
    Rng rng(cfg.seed);
    NetworkParams theta = init_params(ds, cfg, rng);
    if (cfg.optimizer == OptimizerKind::Adam) return train_adam(ds, act, cfg, rng, std::move(theta));
    return train_lbfgs(ds, act, cfg, std::move(theta));
}

Eigen::MatrixXd EnsembleResult::units(int dim) const {
    long total = 0;
    for (const auto& r : runs) total += r.params.unit_count();
    Eigen::MatrixXd out(total, dim + 2);
    long row = 0;
    for (const auto& r : runs) {
        for (long j = 0; j < r.params.unit_count(); ++j, ++row) {
            out.block(row, 0, 1, dim) = r.params.a.row(j);
            out(row, dim) = r.params.b(j);
            out(row, dim + 1) = r.params.c(j);
        }
    }
    return out;
}

EnsembleResult train_ensemble(const Dataset& ds, const Activation& act, const TrainConfig& cfg,
                              long n) {
    if (n < 1) throw std::invalid_argument("train_ensemble: n must be >= 1");
    cfg.validate();
    ds.validate();
    std::vector<std::optional<TrainResult>> slots(n);
    std::vector<std::string> errors(n);
    parallel_for(n, [&](std::int64_t i) {
        TrainConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(i);
        try {
            slots[i] = train_one(ds, act, run_cfg);
        } catch (const NumericError& e) {
            errors[i] = e.what();
        }
    });
    EnsembleResult result;
    for (long i = 0; i < n; ++i) {
        if (slots[i]) {
            result.run_ids.push_back(i);
            result.final_losses.push_back(slots[i]->final_loss);
            result.runs.push_back(std::move(*slots[i]));
        } else {
            result.failed_runs.push_back(i);
        }
    }
    if (result.failed_runs.size() * 10 > static_cast<std::size_t>(n)) {
        std::ostringstream msg;
        msg << "train_ensemble: " << result.failed_runs.size() << "/" << n
            << " runs diverged (first: " << errors[result.failed_runs.front()] << ")";
        throw NumericError(msg.str());
    }
    return result;
}

Eigen::MatrixXd filter_units(const Eigen::MatrixXd& units, double low_quantile,
                             double high_quantile) {
    if (units.rows() == 0) throw std::invalid_argument("filter_units: empty unit list");
    if (!(low_quantile >= 0.0 && low_quantile < high_quantile && high_quantile <= 1.0))
        throw std::invalid_argument("filter_units: need 0 <= low < high <= 1");
    const long n = units.rows();
    const long c_col = units.cols() - 1;
    std::vector<double> mag(n);
    for (long i = 0; i < n; ++i) mag[i] = std::abs(units(i, c_col));
    std::sort(mag.begin(), mag.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const long lo = static_cast<long>(std::floor(pos));
        const long hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return mag[lo] + frac * (mag[hi] - mag[lo]);
    };
    const double lo_cut = quantile(low_quantile);
    const double hi_cut = quantile(high_quantile);
    std::vector<long> keep;
    keep.reserve(n);
    for (long i = 0; i < n; ++i) {
        const double m = std::abs(units(i, c_col));
        if (m >= lo_cut && m <= hi_cut) keep.push_back(i);
    }
    Eigen::MatrixXd out(static_cast<long>(keep.size()), units.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) out.row(static_cast<long>(i)) = units.row(keep[i]);
    return out;
}

}  // namespace ridgelab
