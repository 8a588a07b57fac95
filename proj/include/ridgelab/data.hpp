#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <utility>

namespace ridgelab {

// Samples (x_i, y_i); rows of x are inputs of dimension m >= 1.
struct Dataset {
    Eigen::MatrixXd x;  // s x m
    Eigen::VectorXd y;  // s

    long size() const { return static_cast<long>(y.size()); }
    int dim() const { return static_cast<int>(x.cols()); }
    void validate() const;  // throws std::invalid_argument
};

enum class MeasureKind { Grid, DiracSum };

// Cell counts and extents of a 2-D (a, b) quadrature grid; atoms sit at cell
// midpoints, one weight = da*db per cell. Atom order is a-major:
// k = ia * b_steps + ib.
struct GridSpec {
    double a_min = -25.0, a_max = 25.0;
    double b_min = -25.0, b_max = 25.0;
    int a_steps = 128, b_steps = 128;

    double da() const { return (a_max - a_min) / a_steps; }
    double db() const { return (b_max - b_min) / b_steps; }
    double a_node(int ia) const { return a_min + (ia + 0.5) * da(); }
    double b_node(int ib) const { return b_min + (ib + 0.5) * db(); }
};

// Base measure over hidden parameters (a, b): a weighted finite atom set.
// Grid kind carries its GridSpec; DiracSum allows arbitrary positive weights.
struct ParamMeasure {
    Eigen::MatrixXd atom_a;   // M x m
    Eigen::VectorXd atom_b;   // M
    Eigen::VectorXd weights;  // M, strictly positive
    MeasureKind kind = MeasureKind::DiracSum;
    std::optional<GridSpec> grid;

    long atom_count() const { return static_cast<long>(atom_b.size()); }
    int dim() const { return static_cast<int>(atom_a.cols()); }
    double total_mass() const { return weights.sum(); }
    void validate() const;

    static ParamMeasure make_grid(const GridSpec& spec);
    static ParamMeasure dirac_sum(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd w);
};

// gamma in L2(lambda): one value per atom of an associated measure. Values
// may be complex; the solver pipeline only ever produces real ones.
struct Coefficient {
    Eigen::VectorXcd values;

    long size() const { return static_cast<long>(values.size()); }
    bool is_real(double tol = 0.0) const;
    Eigen::VectorXd real_values() const;  // throws if any imaginary part is nonzero

    static Coefficient from_real(const Eigen::VectorXd& v);
    static Coefficient zeros(long n);

    void validate(const ParamMeasure& meas) const;
};

// L2(lambda) inner product: sum_k w_k g1_k conj(g2_k).
std::complex<double> l2_inner(const ParamMeasure& meas, const Coefficient& g1, const Coefficient& g2);

// L2(mu) inner product for the empirical measure: (1/s) sum_i f1_i f2_i.
double empirical_inner(const Dataset& ds, const Eigen::VectorXd& f1, const Eigen::VectorXd& f2);

// Hidden/output parameters of a finite shallow network, one row per unit.
struct NetworkParams {
    Eigen::MatrixXd a;  // p x m
    Eigen::VectorXd b;  // p
    Eigen::VectorXd c;  // p

    long unit_count() const { return static_cast<long>(b.size()); }
    int dim() const { return static_cast<int>(a.cols()); }
    void validate() const;
};

// Reparameterizes a finite network as a Dirac-sum measure (unit weight per
// atom, coefficient c_j). Duplicate (a_j, b_j) stay separate atoms.
std::pair<ParamMeasure, Coefficient> dirac_measure_from_params(const NetworkParams& theta);

}  // namespace ridgelab
