#pragma once

#include <string>

namespace ridgelab {

enum class ActKind { Tanh, ReLU, Gaussian, PeriodizedTanh, PeriodizedReLU };

// Scalar activation. Periodized kinds repeat the base function with period
// 2*half_period; evaluation range-reduces the argument into [-A, A].
struct Activation {
    ActKind kind = ActKind::Tanh;
    double half_period = 0.0;  // A, only meaningful for the periodized kinds

    static Activation tanh_act() { return {ActKind::Tanh, 0.0}; }
    static Activation relu() { return {ActKind::ReLU, 0.0}; }
    static Activation gaussian() { return {ActKind::Gaussian, 0.0}; }
    static Activation periodized_tanh(double A) { return {ActKind::PeriodizedTanh, A}; }
    static Activation periodized_relu(double A) { return {ActKind::PeriodizedReLU, A}; }

    bool periodic() const {
        return kind == ActKind::PeriodizedTanh || kind == ActKind::PeriodizedReLU;
    }
    std::string name() const;
};

// Parses "tanh", "relu", "gaussian"; throws std::invalid_argument otherwise.
Activation activation_from_name(const std::string& name);

// Dawson function F(z) = exp(-z^2) * integral_0^z exp(w^2) dw.
// Absolute error <= 1e-12 on |z| <= 10; throws on non-finite input.
double dawson(double z);

double eval_activation(const Activation& act, double z);

// Almost-everywhere derivative; ReLU'(0) := 0.
double activation_deriv(const Activation& act, double z);

// Value and derivative in one evaluation (shares the transcendental).
void eval_activation_pair(const Activation& act, double z, double& value, double& deriv);

enum class RidgeletKind { TanhDual, ReLUDual };

// Dawson-based functions admissible for tanh resp. ReLU. TanhDual is odd,
// ReLUDual is even.
struct RidgeletFn {
    RidgeletKind kind = RidgeletKind::TanhDual;

    ActKind paired_activation() const {
        return kind == RidgeletKind::TanhDual ? ActKind::Tanh : ActKind::ReLU;
    }
    std::string name() const;
};

// The ridgelet function paired with an activation; throws
// std::invalid_argument when no pairing exists (gaussian, periodized).
RidgeletFn ridgelet_for_activation(const Activation& act);

double eval_ridgelet(const RidgeletFn& rf, double z);

}  // namespace ridgelab
