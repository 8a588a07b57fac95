#pragma once

#include <Eigen/Core>

#include "ridgelab/data.hpp"
#include "ridgelab/special.hpp"

namespace ridgelab {

// Largest atom count for which the dense Gram matrix is assembled; beyond it
// the matrix-free conjugate-gradient path must be used.
inline constexpr long kDefaultAtomCap = 4096;

// Dense realization of T = S*S on the atom basis of a measure:
// matrix(k, l) = w_l * K(atom_k, atom_l) with
// K(p, p') = (1/s) sum_i sigma(a.x_i - b) sigma(a'.x_i - b').
struct GramOperator {
    Eigen::MatrixXd matrix;  // M x M
    ParamMeasure measure;
    Activation activation;
};

// A generalized ridgelet function sampled on sample x atom pairs:
// values(i, k) = rho(x_i, atom_k).
struct RidgeletKernel {
    Eigen::MatrixXd values;  // s x M
};

// Feature matrix Phi(i, k) = sigma(a_k . x_i - b_k) for rows of xs.
Eigen::MatrixXd feature_matrix(const ParamMeasure& meas, const Activation& act,
                               const Eigen::MatrixXd& xs);

// Network synthesis S[gamma](x) = sum_k w_k gamma_k sigma(a_k . x - b_k),
// evaluated at every row of xs.
Eigen::VectorXd synthesis(const ParamMeasure& meas, const Activation& act,
                          const Eigen::VectorXd& gamma, const Eigen::MatrixXd& xs);
Eigen::VectorXd synthesis(const ParamMeasure& meas, const Activation& act,
                          const Coefficient& gamma, const Eigen::MatrixXd& xs);

// Adjoint S* under empirical mu: gamma_k = (1/s) sum_i f_i sigma(a_k . x_i - b_k).
// This is the ridgelet transform of f with rho(x, (a,b)) = sigma(a.x - b).
Coefficient analysis(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                     const Eigen::VectorXd& fvals);

// Kernel on hidden-parameter pairs under empirical mu.
double param_kernel(const Activation& act, const Dataset& ds, const Eigen::VectorXd& a1, double b1,
                    const Eigen::VectorXd& a2, double b2);

// Kernel on inputs, k(x, y) = sum_k w_k sigma(a_k . x - b_k) sigma(a_k . y - b_k).
double input_kernel(const ParamMeasure& meas, const Activation& act, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y);

// Assembles the dense Gram operator; throws std::length_error above atom_cap.
GramOperator build_gram(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                        long atom_cap = kDefaultAtomCap);

// T[gamma] on the atom basis.
Eigen::VectorXd apply_gram(const GramOperator& gram, const Eigen::VectorXd& gamma);

// Direct SPD path for (beta I + T) gamma = S*f; beta > 0.
Coefficient tikhonov_solve(const GramOperator& gram, const Dataset& ds, double beta);

struct CgOptions {
    double tol = 1e-10;  // relative residual
    long max_iters = 0;  // 0 -> 10 * M
};
struct CgInfo {
    long iterations = 0;
    double relative_residual = 0.0;
};

// Matrix-free Jacobi-preconditioned conjugate gradients for the same system.
Coefficient tikhonov_solve_cg(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                              double beta, const CgOptions& opts = {}, CgInfo* info = nullptr);

// Solves (beta I + T) rho_i = sigma_{x_i} for every sample, sharing one
// factorization; row i of the result is rho*(x_i, .) on the atom basis.
RidgeletKernel solve_ridgelet_kernel(const GramOperator& gram, const Dataset& ds, double beta);

// R_rho[f] for a sampled kernel: gamma_k = (1/s) sum_i f_i rho(x_i, atom_k).
Coefficient apply_ridgelet_kernel(const RidgeletKernel& kernel, const Dataset& ds,
                                  const Eigen::VectorXd& fvals);

// ||S[gamma] - y||^2_mu + beta ||gamma||^2_lambda.
double loss_functional(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                       const Coefficient& gamma, double beta);

struct Reconstruction {
    Coefficient gamma;
    Eigen::VectorXd fitted;       // S[gamma] on xs_eval
    Eigen::VectorXd fitted_data;  // S[gamma] on the dataset inputs
    double relative_l2_error;     // ||S[gamma] - y||_mu / ||y||_mu
};

// End-to-end learning of f from data: Tikhonov solve plus evaluation.
// Falls back to conjugate gradients when the measure exceeds atom_cap.
Reconstruction reconstruct(const ParamMeasure& meas, const Activation& act, const Dataset& ds,
                           double beta, const Eigen::MatrixXd& xs_eval,
                           long atom_cap = kDefaultAtomCap);

}  // namespace ridgelab
