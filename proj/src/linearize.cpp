#include "amylin/linearize.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace amylin {

StateVector to_vector(const ModelState& s) {
    const auto a = s.to_array();
    StateVector v;
    for (int j = 0; j < 10; ++j) v(j) = a[j];
    return v;
}

ModelState to_state(const StateVector& v) {
    std::array<double, kNumStates> a;
    for (int j = 0; j < 10; ++j) a[j] = v(j);
    return ModelState::from_array(a);
}

StateVector LinearModel::eval(const StateVector& x, double u_insulin,
                              double u_pram, double u_carbs) const {
    return a * x + b * Eigen::Vector2d(u_insulin, u_pram) + g * u_carbs + d;
}

StateMatrix jacobian(const ModelState& s, const ModelParams& p) {
    if (!s.finite()) throw std::domain_error("jacobian: non-finite state");
    const double eff1 = pram_effect(s.qp2, s.qp3, p.sfp1, p.vp);
    const double eff2 = pram_effect(s.qp2, s.qp3, p.sfp2, p.vp);
    const double k = carb_gain(p.a_g, p.tmax_g, p.weight);

    StateMatrix a = StateMatrix::Zero();

    // Plasma glucose row: the (X, Q1) product contributes both -X* on the
    // Q1 column and -Q1* on the X column; meal appearance depends on M2 and
    // on plasma pramlintide through the squared-denominator sensitivity.
    a(kQ1, kQ1) = -(s.x + p.p1 + p.k21);
    a(kQ1, kQ2) = p.k12;
    a(kQ1, kX) = -s.q1;
    a(kQ1, kM2) = k * eff2;
    const double dq1_dqp = -k * p.sfp2 * s.m2 * eff2 * eff2 / p.vp;
    a(kQ1, kQp2) = dq1_dqp;
    a(kQ1, kQp3) = dq1_dqp;

    a(kQ2, kQ1) = p.k21;
    a(kQ2, kQ2) = -p.k12;

    a(kXi, kXi) = -p.ka;

    a(kI, kXi) = p.ka / p.vd_i;
    a(kI, kI) = -p.ke;

    a(kX, kI) = p.p3;
    a(kX, kX) = -p.p2;

    a(kM1, kM1) = -eff1 / p.tmax_g;
    const double dm1_dqp = p.sfp1 * s.m1 * eff1 * eff1 / (p.vp * p.tmax_g);
    a(kM1, kQp2) = dm1_dqp;
    a(kM1, kQp3) = dm1_dqp;

    a(kM2, kM1) = eff1 / p.tmax_g;
    a(kM2, kM2) = -eff2 / p.tmax_g;
    const double dm2_dqp = p.sfp2 * s.m2 * eff2 * eff2 / (p.vp * p.tmax_g) -
                           p.sfp1 * s.m1 * eff1 * eff1 / (p.vp * p.tmax_g);
    a(kM2, kQp2) = dm2_dqp;
    a(kM2, kQp3) = dm2_dqp;

    a(kQp1, kQp1) = -p.kp2p1;
    a(kQp2, kQp1) = p.kp2p1;
    a(kQp2, kQp2) = -(p.ke2p2 + p.kp3p2);
    a(kQp3, kQp2) = p.kp3p2;
    a(kQp3, kQp3) = -p.ke3p3;
    return a;
}

namespace {

InputMatrix input_matrix() {
    InputMatrix b = InputMatrix::Zero();
    b(kXi, 0) = 1.0;   // insulin infusion enters the subcutaneous depot
    b(kQp1, 1) = 1.0;  // pramlintide infusion enters its depot
    return b;
}

StateVector meal_column() {
    StateVector g = StateVector::Zero();
    g(kM1) = 1.0;
    return g;
}

LinearModel assemble(const ModelState& s, const ModelParams& p, StateMatrix a,
                     LinMode mode) {
    LinearModel lm;
    lm.a = std::move(a);
    lm.b = input_matrix();
    lm.g = meal_column();
    lm.xstar = to_vector(s);
    lm.mode = mode;
    // Constant term: whatever of F(X*) the zero-input linear part misses.
    lm.d = to_vector(model_rhs(s, ModelInputs{}, p)) - lm.a * lm.xstar;
    return lm;
}

}  // namespace

LinearModel linearize_foh(const ModelState& s, const ModelParams& p) {
    return assemble(s, p, jacobian(s, p), LinMode::Foh);
}

LinearModel linearize_zoh(const ModelState& s, const ModelParams& p) {
    if (!s.finite()) throw std::domain_error("linearize_zoh: non-finite state");
    const double eff1 = pram_effect(s.qp2, s.qp3, p.sfp1, p.vp);
    const double eff2 = pram_effect(s.qp2, s.qp3, p.sfp2, p.vp);
    const double k = carb_gain(p.a_g, p.tmax_g, p.weight);

    StateMatrix a = StateMatrix::Zero();
    a(kQ1, kQ1) = -(s.x + p.p1 + p.k21);  // X frozen at its current value
    a(kQ1, kQ2) = p.k12;
    a(kQ1, kM2) = k * eff2;               // slowdown frozen as a gain

    a(kQ2, kQ1) = p.k21;
    a(kQ2, kQ2) = -p.k12;

    a(kXi, kXi) = -p.ka;
    a(kI, kXi) = p.ka / p.vd_i;
    a(kI, kI) = -p.ke;
    a(kX, kI) = p.p3;
    a(kX, kX) = -p.p2;

    a(kM1, kM1) = -eff1 / p.tmax_g;
    a(kM2, kM1) = eff1 / p.tmax_g;
    a(kM2, kM2) = -eff2 / p.tmax_g;

    a(kQp1, kQp1) = -p.kp2p1;
    a(kQp2, kQp1) = p.kp2p1;
    a(kQp2, kQp2) = -(p.ke2p2 + p.kp3p2);
    a(kQp3, kQp2) = p.kp3p2;
    a(kQp3, kQp3) = -p.ke3p3;

    return assemble(s, p, std::move(a), LinMode::Zoh);
}

DiscreteModel discretize(const LinearModel& lm, double ts) {
    if (!(ts > 0.0)) throw std::invalid_argument("discretize: ts must be > 0");
    // Augment with the input, meal, and constant columns; the exponential of
    // the block matrix yields their exact zero-order-hold integrals.
    Eigen::Matrix<double, 14, 14> m = Eigen::Matrix<double, 14, 14>::Zero();
    m.topLeftCorner<10, 10>() = lm.a;
    m.block<10, 2>(0, 10) = lm.b;
    m.block<10, 1>(0, 12) = lm.g;
    m.block<10, 1>(0, 13) = lm.d;
    const Eigen::Matrix<double, 14, 14> e = (m * ts).exp();
    if (!e.allFinite()) throw std::runtime_error("discretize: exponential overflow");

    DiscreteModel dm;
    dm.ad = e.topLeftCorner<10, 10>();
    dm.bd = e.block<10, 2>(0, 10);
    dm.gd = e.block<10, 1>(0, 12);
    dm.dd = e.block<10, 1>(0, 13);
    dm.ts = ts;
    return dm;
}

Eigen::Matrix<double, 1, 10> output_row(const ModelParams& p) {
    Eigen::Matrix<double, 1, 10> c = Eigen::Matrix<double, 1, 10>::Zero();
    c(0, kQ1) = 1.0 / p.vd_g;
    return c;
}

}  // namespace amylin
