#include "amylin/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace amylin {

namespace {

bool all_finite(const std::array<double, kNumStates>& a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be > 0");
    }
}

}  // namespace

bool ModelState::finite() const { return all_finite(to_array()); }

void ModelParams::validate() const {
    require_positive(p1, "p1");
    require_positive(p2, "p2");
    require_positive(p3, "p3");
    require_positive(k21, "k21");
    require_positive(k12, "k12");
    require_positive(ka, "ka");
    require_positive(ke, "ke");
    require_positive(tmax_g, "tmax_g");
    require_positive(kp2p1, "kp2p1");
    require_positive(kp3p2, "kp3p2");
    require_positive(ke2p2, "ke2p2");
    require_positive(ke3p3, "ke3p3");
    require_positive(vd_i, "vd_i");
    require_positive(vd_g, "vd_g");
    require_positive(vp, "vp");
    require_positive(ts, "ts");
    require_positive(weight, "weight");
    require_positive(q1b, "q1b");
    if (!(a_g > 0.0 && a_g <= 1.0)) {
        throw std::invalid_argument("a_g must be in (0, 1]");
    }
    if (sfp1 < 0.0 || sfp2 < 0.0) {
        throw std::invalid_argument("sfp1/sfp2 must be >= 0");
    }
}

double pram_effect(double qp2, double qp3, double sf, double vp) {
    if (!std::isfinite(qp2) || !std::isfinite(qp3) || !std::isfinite(sf)) {
        throw std::domain_error("pram_effect: non-finite input");
    }
    if (!(vp > 0.0)) throw std::domain_error("pram_effect: vp must be > 0");
    return 1.0 / (1.0 + sf * (qp2 + qp3) / vp);
}

double carb_gain(double a_g, double tmax_g, double weight) {
    if (!(tmax_g > 0.0) || !(weight > 0.0)) {
        throw std::domain_error("carb_gain: tmax_g and weight must be > 0");
    }
    return 5.556 * a_g * 180.0 / (tmax_g * weight);
}

ModelState model_rhs(const ModelState& s, const ModelInputs& u,
                     const ModelParams& p) {
    if (!s.finite()) throw std::domain_error("model_rhs: non-finite state");

    const double eff1 = pram_effect(s.qp2, s.qp3, p.sfp1, p.vp);
    const double eff2 = pram_effect(s.qp2, s.qp3, p.sfp2, p.vp);
    const double k = carb_gain(p.a_g, p.tmax_g, p.weight);
    const double gut_out = s.m1 / p.tmax_g * eff1;   // M1 -> M2, g/min
    const double meal_in = s.m2 / p.tmax_g * eff2;   // M2 -> plasma, g/min

    ModelState d;
    d.q1 = -(s.x + p.p1 + p.k21) * s.q1 + p.k12 * s.q2 + p.p1 * p.q1b +
           k * s.m2 * eff2;
    d.q2 = p.k21 * s.q1 - p.k12 * s.q2;
    d.x_i = u.u_insulin - p.ka * s.x_i;
    d.i = p.ka * s.x_i / p.vd_i - p.ke * s.i;
    d.x = p.p3 * s.i - p.p2 * s.x;
    d.m1 = u.u_carbs - gut_out;
    d.m2 = gut_out - meal_in;
    d.qp1 = u.u_pram - p.kp2p1 * s.qp1;
    d.qp2 = p.kp2p1 * s.qp1 - (p.ke2p2 + p.kp3p2) * s.qp2;
    d.qp3 = p.kp3p2 * s.qp2 - p.ke3p3 * s.qp3;
    return d;
}

namespace {

// The mass-like states that are clamped at zero after each step. Plasma
// insulin and insulin action stay non-negative on their own under
// non-negative inputs.
constexpr std::size_t kClamped[] = {kQ1, kQ2, kXi, kM1, kM2, kQp1, kQp2, kQp3};

std::array<double, kNumStates> rhs_array(
    const std::array<double, kNumStates>& x, const ModelInputs& u,
    const ModelParams& p) {
    return model_rhs(ModelState::from_array(x), u, p).to_array();
}

}  // namespace

ModelState integrate_step(const ModelState& state, const ModelInputs& inputs,
                          const ModelParams& params, double dt) {
    if (!(dt > 0.0) || dt > params.ts) {
        throw std::invalid_argument("integrate_step: need 0 < dt <= ts");
    }
    const auto x = state.to_array();
    const auto k1 = rhs_array(x, inputs, params);
    std::array<double, kNumStates> tmp;
    for (std::size_t j = 0; j < kNumStates; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
    const auto k2 = rhs_array(tmp, inputs, params);
    for (std::size_t j = 0; j < kNumStates; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
    const auto k3 = rhs_array(tmp, inputs, params);
    for (std::size_t j = 0; j < kNumStates; ++j) tmp[j] = x[j] + dt * k3[j];
    const auto k4 = rhs_array(tmp, inputs, params);

    std::array<double, kNumStates> y;
    for (std::size_t j = 0; j < kNumStates; ++j) {
        y[j] = x[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    for (std::size_t j : kClamped) {
        if (y[j] < 0.0) y[j] = 0.0;
    }
    if (!all_finite(y)) throw std::runtime_error("integrate_step: non-finite result");
    return ModelState::from_array(y);
}

ModelState integrate(const ModelState& state, const ModelInputs& inputs,
                     const ModelParams& params, double duration, double dt) {
    const double n_real = duration / dt;
    const long n = std::lround(n_real);
    if (n < 1 || std::abs(n_real - static_cast<double>(n)) > 1e-9) {
        throw std::invalid_argument("integrate: duration must be a multiple of dt");
    }
    ModelState s = state;
    for (long k = 0; k < n; ++k) s = integrate_step(s, inputs, params, dt);
    return s;
}

ModelState zero_input_equilibrium(const ModelParams& p) {
    ModelState s;
    s.q1 = p.q1b;
    s.q2 = p.k21 / p.k12 * p.q1b;
    return s;
}

double basal_for_target(const ModelParams& p, double target_conc) {
    const double open_loop = p.q1b / p.vd_g;
    if (!(target_conc > 0.0) || !(target_conc < open_loop)) {
        throw std::domain_error(
            "basal_for_target: target must be in (0, " +
            std::to_string(open_loop) + ") mg/dL");
    }
    const double q1_ss = target_conc * p.vd_g;
    const double x_ss = p.p1 * (p.q1b / q1_ss - 1.0);
    const double i_ss = p.p2 * x_ss / p.p3;
    return p.vd_i * p.ke * i_ss;  // = ka * x_i_ss
}

ModelState steady_state_for_basal(const ModelParams& p, double u_insulin) {
    if (u_insulin < 0.0) {
        throw std::domain_error("steady_state_for_basal: negative insulin rate");
    }
    ModelState s;
    s.x_i = u_insulin / p.ka;
    s.i = u_insulin / (p.vd_i * p.ke);
    s.x = p.p3 * s.i / p.p2;
    s.q1 = p.p1 * p.q1b / (p.p1 + s.x);
    s.q2 = p.k21 / p.k12 * s.q1;
    return s;
}

}  // namespace amylin
