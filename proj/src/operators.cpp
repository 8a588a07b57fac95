#include "ridgelab/operators.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

void check_dims(const ParamMeasure& meas, const Eigen::MatrixXd& xs) {
    if (xs.cols() != meas.dim())
        throw std::invalid_argument("operator: input dimension does not match measure atoms");
}

// beta I + D^(1/2) K D^(1/2), the symmetrized dense system matrix. T = K D is
// similar to it via D^(1/2), so SPD factorization applies for beta > 0.
Eigen::MatrixXd symmetrized_system(const GramOperator& gram, double beta) {
    const Eigen::VectorXd& w = gram.measure.weights;
    const Eigen::VectorXd sqrt_w = w.cwiseSqrt();
    Eigen::MatrixXd B = gram.matrix;  // T = K D
    for (long l = 0; l < B.cols(); ++l) B.col(l) /= sqrt_w(l);  // K D^(1/2)
    for (long k = 0; k < B.rows(); ++k) B.row(k) *= sqrt_w(k);  // D^(1/2) K D^(1/2)
    B.diagonal().array() += beta;
    return B;
}

}  // namespace

Eigen::MatrixXd feature_matrix(const ParamMeasure& meas, const Activation& act,
                               const Eigen::MatrixXd& xs) {
    check_dims(meas, xs);
    Eigen::MatrixXd z = xs * meas.atom_a.transpose();  // s x M
    z.rowwise() -= meas.atom_b.transpose();
    return z.unaryExpr([&act](double v) { return eval_activation(act, v); });
}

Eigen::VectorXd synthesis(const ParamMeasure& meas, const Activation& act,
                          const Eigen::VectorXd& gamma, const Eigen::MatrixXd& xs) {
    if (gamma.size() != meas.atom_count())
        throw std::invalid_argument("synthesis: coefficient length does not match measure");
    return feature_matrix(meas, act, xs) * meas.weights.cwiseProduct(gamma);
}

Eigen::VectorXd synthesis(const ParamMeasure& meas, const Activation& act,
                          const Coefficient& gamma, const Eigen::MatrixXd& xs) {
    gamma.validate(meas);
    return synthesis(meas, act, gamma.real_values(), xs);
}

Coefficient analysis(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                     const Eigen::VectorXd& fvals) {
    if (fvals.size() != ds.size()) throw std::invalid_argument("analysis: value length mismatch");
    const Eigen::MatrixXd phi = feature_matrix(meas, act, ds.x);
    return Coefficient::from_real(phi.transpose() * fvals / static_cast<double>(ds.size()));
}

double param_kernel(const Activation& act, const Dataset& ds, const Eigen::VectorXd& a1, double b1,
                    const Eigen::VectorXd& a2, double b2) {
    if (a1.size() != ds.dim() || a2.size() != ds.dim())
        throw std::invalid_argument("param_kernel: atom dimension mismatch");
    double acc = 0.0;
    for (long i = 0; i < ds.size(); ++i) {
        const double z1 = ds.x.row(i).dot(a1) - b1;
        const double z2 = ds.x.row(i).dot(a2) - b2;
        acc += eval_activation(act, z1) * eval_activation(act, z2);
    }
    return acc / static_cast<double>(ds.size());
}

double input_kernel(const ParamMeasure& meas, const Activation& act, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
    if (x.size() != meas.dim() || y.size() != meas.dim())
        throw std::invalid_argument("input_kernel: point dimension mismatch");
    double acc = 0.0;
    for (long k = 0; k < meas.atom_count(); ++k) {
        const double zx = meas.atom_a.row(k).dot(x) - meas.atom_b(k);
        const double zy = meas.atom_a.row(k).dot(y) - meas.atom_b(k);
        acc += meas.weights(k) * eval_activation(act, zx) * eval_activation(act, zy);
    }
    return acc;
}

GramOperator build_gram(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                        long atom_cap) {
    meas.validate();
    ds.validate();
    const long M = meas.atom_count();
    if (M > atom_cap) {
        std::ostringstream msg;
        msg << "build_gram: " << M << " atoms exceed the dense cap of " << atom_cap
            << "; use the matrix-free conjugate-gradient path (tikhonov_solve_cg)";
        throw std::length_error(msg.str());
    }
    const Eigen::MatrixXd phi = feature_matrix(meas, act, ds.x);
    GramOperator gram{phi.transpose() * phi / static_cast<double>(ds.size()), meas, act};
    for (long l = 0; l < M; ++l) gram.matrix.col(l) *= meas.weights(l);  // (k,l) = w_l K_kl
    return gram;
}

Eigen::VectorXd apply_gram(const GramOperator& gram, const Eigen::VectorXd& gamma) {
    if (gamma.size() != gram.matrix.rows())
        throw std::invalid_argument("apply_gram: coefficient length mismatch");
    return gram.matrix * gamma;
}

Coefficient tikhonov_solve(const GramOperator& gram, const Dataset& ds, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("tikhonov_solve: beta must be positive");
    const Eigen::VectorXd g = analysis(gram.measure, gram.activation, ds, ds.y).real_values();
    const Eigen::VectorXd sqrt_w = gram.measure.weights.cwiseSqrt();
    const Eigen::MatrixXd B = symmetrized_system(gram, beta);
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success)
        throw NumericError("tikhonov_solve: Cholesky factorization failed");
    const Eigen::VectorXd u = llt.solve(sqrt_w.cwiseProduct(g));
    return Coefficient::from_real(u.cwiseQuotient(sqrt_w));
}

Coefficient tikhonov_solve_cg(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                              double beta, const CgOptions& opts, CgInfo* info) {
    if (!(beta > 0.0)) throw std::invalid_argument("tikhonov_solve_cg: beta must be positive");
    meas.validate();
    ds.validate();
    const long M = meas.atom_count();
    const double s = static_cast<double>(ds.size());
    const Eigen::MatrixXd phi = feature_matrix(meas, act, ds.x);
    const Eigen::VectorXd sqrt_w = meas.weights.cwiseSqrt();

    // symmetrized operator: u -> beta u + D^(1/2) Phi^T Phi D^(1/2) u / s
    auto apply = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        const Eigen::VectorXd t = phi * sqrt_w.cwiseProduct(u);
        return beta * u + sqrt_w.cwiseProduct(phi.transpose() * t) / s;
    };
    // Jacobi diagonal: beta + w_k (1/s) sum_i phi_ik^2
    Eigen::VectorXd diag = meas.weights.cwiseProduct(phi.colwise().squaredNorm().transpose()) / s;
    diag.array() += beta;

    const Eigen::VectorXd rhs = sqrt_w.cwiseProduct(phi.transpose() * ds.y) / s;
    const double rhs_norm = rhs.norm();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(M);
    if (rhs_norm == 0.0) {
        if (info) *info = {0, 0.0};
        return Coefficient::zeros(M);
    }

    Eigen::VectorXd r = rhs;
    Eigen::VectorXd z = r.cwiseQuotient(diag);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    const long max_iters = opts.max_iters > 0 ? opts.max_iters : 10 * M;
    long it = 0;
    double rel = r.norm() / rhs_norm;
    for (; it < max_iters && rel > opts.tol; ++it) {
        const Eigen::VectorXd Ap = apply(p);
        const double alpha = rz / p.dot(Ap);
        u += alpha * p;
        r -= alpha * Ap;
        rel = r.norm() / rhs_norm;
        z = r.cwiseQuotient(diag);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    if (info) *info = {it, rel};
    if (rel > opts.tol) {
        std::ostringstream msg;
        msg << "tikhonov_solve_cg: no convergence after " << it
            << " iterations, relative residual " << rel;
        throw NumericError(msg.str());
    }
    return Coefficient::from_real(u.cwiseQuotient(sqrt_w));
}

RidgeletKernel solve_ridgelet_kernel(const GramOperator& gram, const Dataset& ds, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("solve_ridgelet_kernel: beta must be positive");
    const Eigen::MatrixXd sigma_x = feature_matrix(gram.measure, gram.activation, ds.x);  // s x M
    const Eigen::VectorXd sqrt_w = gram.measure.weights.cwiseSqrt();
    const Eigen::MatrixXd B = symmetrized_system(gram, beta);
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success)
        throw NumericError("solve_ridgelet_kernel: Cholesky factorization failed");
    // one shared factorization, one RHS per sample
    Eigen::MatrixXd rhs = sqrt_w.asDiagonal() * sigma_x.transpose();  // M x s
    const Eigen::MatrixXd sol = llt.solve(rhs);
    RidgeletKernel kernel;
    kernel.values = (sqrt_w.cwiseInverse().asDiagonal() * sol).transpose();
    return kernel;
}

Coefficient apply_ridgelet_kernel(const RidgeletKernel& kernel, const Dataset& ds,
                                  const Eigen::VectorXd& fvals) {
    if (kernel.values.rows() != ds.size() || fvals.size() != ds.size())
        throw std::invalid_argument("apply_ridgelet_kernel: sample count mismatch");
    return Coefficient::from_real(kernel.values.transpose() * fvals /
                                  static_cast<double>(ds.size()));
}

double loss_functional(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                       const Coefficient& gamma, double beta) {
    if (beta < 0.0) throw std::invalid_argument("loss_functional: beta must be >= 0");
    const Eigen::VectorXd g = gamma.real_values();
    const Eigen::VectorXd residual = synthesis(meas, act, g, ds.x) - ds.y;
    const double mse = residual.squaredNorm() / static_cast<double>(ds.size());
    const double reg = meas.weights.dot(g.cwiseAbs2());
    return mse + beta * reg;
}

Reconstruction reconstruct(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                           double beta, const Eigen::MatrixXd& xs_eval, long atom_cap) {
    Coefficient gamma;
    if (meas.atom_count() <= atom_cap) {
        const GramOperator gram = build_gram(meas, act, ds, atom_cap);
        gamma = tikhonov_solve(gram, ds, beta);
    } else {
        gamma = tikhonov_solve_cg(meas, act, ds, beta);
    }
    Reconstruction rec;
    rec.fitted = synthesis(meas, act, gamma, xs_eval);
    rec.fitted_data = synthesis(meas, act, gamma, ds.x);
    const double y_norm = std::sqrt(ds.y.squaredNorm() / static_cast<double>(ds.size()));
    const double err_norm =
        std::sqrt((rec.fitted_data - ds.y).squaredNorm() / static_cast<double>(ds.size()));
    rec.relative_l2_error = y_norm > 0.0 ? err_norm / y_norm : err_norm;
    rec.gamma = std::move(gamma);
    return rec;
}

}  // namespace ridgelab
