#pragma once

#include <Eigen/Dense>

#include "amylin/model.hpp"

namespace amylin {

using StateMatrix = Eigen::Matrix<double, 10, 10>;
using InputMatrix = Eigen::Matrix<double, 10, 2>;  // insulin, pramlintide
using StateVector = Eigen::Matrix<double, 10, 1>;

enum class LinMode { Foh, Zoh };

/// Local linear model  xdot = a*x + b*u + g*um + d  around xstar.
///
/// Foh uses the full Jacobian (including the pramlintide sensitivity terms
/// with squared denominators). Zoh freezes the bilinear factors at their
/// current values: X* stays inside the Q1 row and the gastric slowdown
/// factors become constant gains, so no cross-sensitivity entries appear.
/// Both are exact at xstar by construction.
struct LinearModel {
    StateMatrix a = StateMatrix::Zero();
    InputMatrix b = InputMatrix::Zero();
    StateVector g = StateVector::Zero();
    StateVector d = StateVector::Zero();
    StateVector xstar = StateVector::Zero();
    LinMode mode = LinMode::Foh;

    /// a*x + b*u + g*um + d, as a convenience for exactness checks.
    StateVector eval(const StateVector& x, double u_insulin, double u_pram,
                     double u_carbs) const;
};

/// Exact zero-order-hold discretization of a LinearModel at sampling time ts.
struct DiscreteModel {
    StateMatrix ad = StateMatrix::Zero();
    InputMatrix bd = InputMatrix::Zero();
    StateVector gd = StateVector::Zero();
    StateVector dd = StateVector::Zero();
    double ts = 0.0;
};

StateVector to_vector(const ModelState& s);
ModelState to_state(const StateVector& v);

/// Jacobian of the state derivative with respect to the state.
StateMatrix jacobian(const ModelState& state, const ModelParams& params);

LinearModel linearize_foh(const ModelState& state, const ModelParams& params);
LinearModel linearize_zoh(const ModelState& state, const ModelParams& params);

/// Discretize via the augmented matrix exponential over [a, [b g d]; 0, 0].
DiscreteModel discretize(const LinearModel& lm, double ts);

/// Output row: selects glucose and converts to mg/dL (y = q1 / vd_g).
Eigen::Matrix<double, 1, 10> output_row(const ModelParams& params);

}  // namespace amylin
