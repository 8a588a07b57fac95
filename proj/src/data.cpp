#include "ridgelab/data.hpp"

#include <stdexcept>

namespace ridgelab {

void Dataset::validate() const {
    if (y.size() < 1) throw std::invalid_argument("dataset: needs at least one sample");
    if (x.rows() != y.size()) throw std::invalid_argument("dataset: x/y length mismatch");
    if (x.cols() < 1) throw std::invalid_argument("dataset: input dimension must be >= 1");
    if (!x.allFinite() || !y.allFinite()) throw std::invalid_argument("dataset: non-finite entry");
}

void ParamMeasure::validate() const {
    const long M = atom_count();
    if (M < 1) throw std::invalid_argument("measure: needs at least one atom");
    if (atom_a.rows() != M || weights.size() != M)
        throw std::invalid_argument("measure: atoms/weights length mismatch");
    if (!atom_a.allFinite() || !atom_b.allFinite() || !weights.allFinite())
        throw std::invalid_argument("measure: non-finite entry");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("measure: weights must be strictly positive");
    if (kind == MeasureKind::Grid && !grid)
        throw std::invalid_argument("measure: grid kind without grid spec");
}

ParamMeasure ParamMeasure::make_grid(const GridSpec& spec) {
    if (spec.a_steps < 1 || spec.b_steps < 1)
        throw std::invalid_argument("grid: step counts must be >= 1");
    if (!(spec.a_max > spec.a_min) || !(spec.b_max > spec.b_min))
        throw std::invalid_argument("grid: empty extent");
    const long M = static_cast<long>(spec.a_steps) * spec.b_steps;
    ParamMeasure meas;
    meas.atom_a.resize(M, 1);
    meas.atom_b.resize(M);
    meas.weights = Eigen::VectorXd::Constant(M, spec.da() * spec.db());
    meas.kind = MeasureKind::Grid;
    meas.grid = spec;
    for (int ia = 0; ia < spec.a_steps; ++ia) {
        for (int ib = 0; ib < spec.b_steps; ++ib) {
            const long k = static_cast<long>(ia) * spec.b_steps + ib;
            meas.atom_a(k, 0) = spec.a_node(ia);
            meas.atom_b(k) = spec.b_node(ib);
        }
    }
    return meas;
}

ParamMeasure ParamMeasure::dirac_sum(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd w) {
    ParamMeasure meas;
    meas.atom_a = std::move(a);
    meas.atom_b = std::move(b);
    meas.weights = std::move(w);
    meas.kind = MeasureKind::DiracSum;
    meas.validate();
    return meas;
}

bool Coefficient::is_real(double tol) const {
    return (values.imag().array().abs() <= tol).all();
}

Eigen::VectorXd Coefficient::real_values() const {
    if (!is_real()) throw std::invalid_argument("coefficient: expected real values");
    return values.real();
}

Coefficient Coefficient::from_real(const Eigen::VectorXd& v) {
    Coefficient g;
    g.values = v.cast<std::complex<double>>();
    return g;
}

Coefficient Coefficient::zeros(long n) {
    Coefficient g;
    g.values = Eigen::VectorXcd::Zero(n);
    return g;
}

void Coefficient::validate(const ParamMeasure& meas) const {
    if (size() != meas.atom_count())
        throw std::invalid_argument("coefficient: length does not match measure atom count");
    if (!values.allFinite()) throw std::invalid_argument("coefficient: non-finite entry");
}

std::complex<double> l2_inner(const ParamMeasure& meas, const Coefficient& g1, const Coefficient& g2) {
    g1.validate(meas);
    g2.validate(meas);
    std::complex<double> acc(0.0, 0.0);
    for (long k = 0; k < meas.atom_count(); ++k)
        acc += meas.weights(k) * g1.values(k) * std::conj(g2.values(k));
    return acc;
}

double empirical_inner(const Dataset& ds, const Eigen::VectorXd& f1, const Eigen::VectorXd& f2) {
    if (f1.size() != ds.size() || f2.size() != ds.size())
        throw std::invalid_argument("empirical_inner: length mismatch with dataset");
    return f1.dot(f2) / static_cast<double>(ds.size());
}

void NetworkParams::validate() const {
    const long p = unit_count();
    if (p < 1) throw std::invalid_argument("network: needs at least one unit");
    if (a.rows() != p || c.size() != p) throw std::invalid_argument("network: a/b/c length mismatch");
    if (!a.allFinite() || !b.allFinite() || !c.allFinite())
        throw std::invalid_argument("network: non-finite parameter");
}

std::pair<ParamMeasure, Coefficient> dirac_measure_from_params(const NetworkParams& theta) {
    theta.validate();
    ParamMeasure meas = ParamMeasure::dirac_sum(theta.a, theta.b, Eigen::VectorXd::Ones(theta.unit_count()));
    return {std::move(meas), Coefficient::from_real(theta.c)};
}

}  // namespace ridgelab
