#include "ridgelab/selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <ostream>

#include "ridgelab/data.hpp"
#include "ridgelab/operators.hpp"
#include "ridgelab/rng.hpp"
#include "ridgelab/special.hpp"

namespace ridgelab {

namespace {

Dataset random_dataset(Rng& rng, int m, long s) {
    Dataset ds;
    ds.x.resize(s, m);
    ds.y.resize(s);
    for (long i = 0; i < s; ++i) {
        for (int d = 0; d < m; ++d) ds.x(i, d) = rng.uniform(-1.0, 1.0);
        ds.y(i) = rng.gaussian(0.0, 1.0);
    }
    return ds;
}

ParamMeasure random_measure(Rng& rng, int m, long M) {
    Eigen::MatrixXd a(M, m);
    Eigen::VectorXd b(M), w(M);
    for (long k = 0; k < M; ++k) {
        for (int d = 0; d < m; ++d) a(k, d) = rng.gaussian(0.0, 2.0);
        b(k) = rng.gaussian(0.0, 2.0);
        w(k) = rng.uniform(0.1, 2.0);
    }
    return ParamMeasure::dirac_sum(std::move(a), std::move(b), std::move(w));
}

Eigen::VectorXd random_vector(Rng& rng, long n) {
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i) v(i) = rng.gaussian(0.0, 1.0);
    return v;
}

bool report(std::ostream& out, const char* name, bool ok, double worst) {
    out << (ok ? "[ok]   " : "[FAIL] ") << name << " (worst " << worst << ")\n";
    return ok;
}

}  // namespace

int run_selftest(std::ostream& out) {
    int failures = 0;
    Rng rng(20240117);
    const Activation act = Activation::tanh_act();

    {  // F oddness and ODE residual
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = rng.uniform(-10.0, 10.0);
            worst = std::max(worst, std::abs(dawson(z) + dawson(-z)));
        }
        if (!report(out, "dawson oddness", worst <= 1e-12, worst)) ++failures;
        double worst_ode = 0.0;
        for (double z = -5.0; z <= 5.0; z += 0.05) {
            const double h = 1e-5;
            const double d = (dawson(z + h) - dawson(z - h)) / (2.0 * h);
            worst_ode = std::max(worst_ode, std::abs(d - (1.0 - 2.0 * z * dawson(z))));
        }
        if (!report(out, "dawson ODE F' = 1 - 2zF", worst_ode <= 1e-6, worst_ode)) ++failures;
    }

    {  // adjoint identity <S gamma, f>_mu = <gamma, S* f>_lambda
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int m = 1 + static_cast<int>(rng.index(3));
            const Dataset ds = random_dataset(rng, m, 8 + static_cast<long>(rng.index(40)));
            const ParamMeasure meas = random_measure(rng, m, 4 + static_cast<long>(rng.index(30)));
            const Eigen::VectorXd gamma = random_vector(rng, meas.atom_count());
            const Eigen::VectorXd f = random_vector(rng, ds.size());
            const double lhs = empirical_inner(ds, synthesis(meas, act, gamma, ds.x), f);
            const std::complex<double> rhs =
                l2_inner(meas, Coefficient::from_real(gamma), analysis(meas, act, ds, f));
            const double err = std::abs(lhs - rhs.real()) / (1.0 + std::abs(lhs));
            worst = std::max(worst, err);
        }
        if (!report(out, "adjoint identity", worst <= 1e-10, worst)) ++failures;
    }

    {  // factorization: T gamma = S*(S gamma)
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int m = 1 + static_cast<int>(rng.index(3));
            const Dataset ds = random_dataset(rng, m, 8 + static_cast<long>(rng.index(24)));
            const ParamMeasure meas = random_measure(rng, m, 4 + static_cast<long>(rng.index(24)));
            const GramOperator gram = build_gram(meas, act, ds);
            const Eigen::VectorXd gamma = random_vector(rng, meas.atom_count());
            const Eigen::VectorXd via_gram = apply_gram(gram, gamma);
            const Eigen::VectorXd via_ops =
                analysis(meas, act, ds, synthesis(meas, act, gamma, ds.x)).real_values();
            const double err = (via_gram - via_ops).norm() / (1.0 + via_ops.norm());
            worst = std::max(worst, err);
        }
        if (!report(out, "gram factorization T = S*S", worst <= 1e-10, worst)) ++failures;
    }

    {  // solver path agreement: direct SPD vs conjugate gradients
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Dataset ds = random_dataset(rng, 1, 32);
            const ParamMeasure meas = random_measure(rng, 1, 24);
            const double beta = rng.uniform(1e-3, 1.0);
            const GramOperator gram = build_gram(meas, act, ds);
            const Eigen::VectorXd direct = tikhonov_solve(gram, ds, beta).real_values();
            const Eigen::VectorXd cg = tikhonov_solve_cg(meas, act, ds, beta).real_values();
            const double err = (direct - cg).norm() / (1.0 + direct.norm());
            worst = std::max(worst, err);
        }
        if (!report(out, "solver paths agree (SPD vs CG)", worst <= 1e-7, worst)) ++failures;
    }

    {  // stationarity: (beta I + T) gamma* = S* y
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Dataset ds = random_dataset(rng, 1, 40);
            const ParamMeasure meas = random_measure(rng, 1, 30);
            const double beta = rng.uniform(1e-3, 1.0);
            const GramOperator gram = build_gram(meas, act, ds);
            const Eigen::VectorXd gamma = tikhonov_solve(gram, ds, beta).real_values();
            const Eigen::VectorXd resid = beta * gamma + apply_gram(gram, gamma) -
                                          analysis(meas, act, ds, ds.y).real_values();
            worst = std::max(worst, resid.norm());
        }
        if (!report(out, "tikhonov stationarity residual", worst <= 1e-8, worst)) ++failures;
    }

    return failures;
}

}  // namespace ridgelab
