#include "ridgelab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ridgelab {

std::string Activation::name() const {
    switch (kind) {
        case ActKind::Tanh: return "tanh";
        case ActKind::ReLU: return "relu";
        case ActKind::Gaussian: return "gaussian";
        case ActKind::PeriodizedTanh: return "periodized-tanh";
        case ActKind::PeriodizedReLU: return "periodized-relu";
    }
    return "?";
}

Activation activation_from_name(const std::string& name) {
    if (name == "tanh") return Activation::tanh_act();
    if (name == "relu") return Activation::relu();
    if (name == "gaussian") return Activation::gaussian();
    throw std::invalid_argument("unknown activation '" + name + "' (expected tanh, relu or gaussian)");
}

std::string RidgeletFn::name() const {
    return kind == RidgeletKind::TanhDual ? "tanh-dual" : "relu-dual";
}

RidgeletFn ridgelet_for_activation(const Activation& act) {
    switch (act.kind) {
        case ActKind::Tanh: return {RidgeletKind::TanhDual};
        case ActKind::ReLU: return {RidgeletKind::ReLUDual};
        default:
            throw std::invalid_argument("no paired ridgelet function for activation '" + act.name() +
                                        "' (supported pairs: tanh, relu)");
    }
}

namespace {

// F = exp(-z^2) * G(z) with the all-positive Taylor series
// G(z) = sum_n z^(2n+1) / (n! (2n+1)). No cancellation, so both factors
// carry full relative precision.
double dawson_series(double x) {
    const double z2 = x * x;
    double power = x;  // z^(2n+1) / n!
    double sum = x;
    for (int n = 1; n < 400; ++n) {
        power *= z2 / n;
        const double term = power / (2 * n + 1);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return std::exp(-z2) * sum;
}

// J-fraction of the Gaussian Stieltjes transform, evaluated with the
// modified Lentz scheme:
//   F(x) = (1/2) * 1/(x - (1/2)/(x - (2/2)/(x - (3/2)/(x - ...))))
double dawson_contfrac(double x) {
    const double tiny = 1e-300;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int j = 1; j <= 300; ++j) {
        const double a = j == 1 ? 1.0 : -0.5 * (j - 1);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 0.5 * f;
}

}  // namespace

double dawson(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("dawson: non-finite argument");
    const double x = std::abs(z);
    // The fraction only reaches machine precision for |z| >= ~6; below that
    // its convergents stall around 1e-12, so the series window extends to 6.5.
    const double f = x <= 6.5 ? dawson_series(x) : dawson_contfrac(x);
    return z < 0.0 ? -f : f;
}

namespace {

// z reduced into [-A, A]; exact 2A-periodicity up to fp rounding of z/(2A)
double range_reduce(double z, double A) {
    return z - 2.0 * A * std::round(z / (2.0 * A));
}

double eval_base(ActKind kind, double z) {
    switch (kind) {
        case ActKind::Tanh: return std::tanh(z);
        case ActKind::ReLU: return z > 0.0 ? z : 0.0;
        case ActKind::Gaussian: return std::exp(-0.5 * z * z);
        default: return 0.0;
    }
}

double eval_base_deriv(ActKind kind, double z) {
    switch (kind) {
        case ActKind::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case ActKind::ReLU: return z > 0.0 ? 1.0 : 0.0;
        case ActKind::Gaussian: return -z * std::exp(-0.5 * z * z);
        default: return 0.0;
    }
}

}  // namespace

double eval_activation(const Activation& act, double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("eval_activation: non-finite argument");
    switch (act.kind) {
        case ActKind::PeriodizedTanh: return eval_base(ActKind::Tanh, range_reduce(z, act.half_period));
        case ActKind::PeriodizedReLU: return eval_base(ActKind::ReLU, range_reduce(z, act.half_period));
        default: return eval_base(act.kind, z);
    }
}

double activation_deriv(const Activation& act, double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("activation_deriv: non-finite argument");
    switch (act.kind) {
        case ActKind::PeriodizedTanh: return eval_base_deriv(ActKind::Tanh, range_reduce(z, act.half_period));
        case ActKind::PeriodizedReLU: return eval_base_deriv(ActKind::ReLU, range_reduce(z, act.half_period));
        default: return eval_base_deriv(act.kind, z);
    }
}

void eval_activation_pair(const Activation& act, double z, double& value, double& deriv) {
    if (!std::isfinite(z)) throw std::invalid_argument("eval_activation_pair: non-finite argument");
    ActKind kind = act.kind;
    if (kind == ActKind::PeriodizedTanh) {
        kind = ActKind::Tanh;
        z = range_reduce(z, act.half_period);
    } else if (kind == ActKind::PeriodizedReLU) {
        kind = ActKind::ReLU;
        z = range_reduce(z, act.half_period);
    }
    switch (kind) {
        case ActKind::Tanh: {
            const double t = std::tanh(z);
            value = t;
            deriv = 1.0 - t * t;
            return;
        }
        case ActKind::ReLU:
            value = z > 0.0 ? z : 0.0;
            deriv = z > 0.0 ? 1.0 : 0.0;
            return;
        case ActKind::Gaussian: {
            const double e = std::exp(-0.5 * z * z);
            value = e;
            deriv = -z * e;
            return;
        }
        default:
            value = 0.0;
            deriv = 0.0;
            return;
    }
}

double eval_ridgelet(const RidgeletFn& rf, double z) {
    if (!std::isfinite(z)) throw std::invalid_argument("eval_ridgelet: non-finite argument");
    const double F = dawson(z);
    if (rf.kind == RidgeletKind::TanhDual) return (4.0 * z * z - 2.0) * F - 2.0 * z;
    return (12.0 * z - 8.0 * z * z * z) * F + 4.0 * z * z - 4.0;
}

}  // namespace ridgelab
