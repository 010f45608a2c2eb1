#pragma once

#include <array>
#include <cstddef>

namespace amylin {

/// Number of state variables in the glucoregulatory + pramlintide model.
inline constexpr std::size_t kNumStates = 10;

/// State indices, in the canonical ordering used everywhere (vectors,
/// Jacobians, discrete-time models, trace files).
enum StateIndex : std::size_t {
    kQ1 = 0,   // plasma glucose, mg/kg
    kQ2 = 1,   // inaccessible-compartment glucose, mg/kg
    kXi = 2,   // subcutaneous insulin, mU/kg
    kI = 3,    // plasma insulin concentration, mU/L
    kX = 4,    // insulin action, 1/min
    kM1 = 5,   // gut carbohydrate, g
    kM2 = 6,   // second meal compartment, g
    kQp1 = 7,  // subcutaneous pramlintide, pg/kg
    kQp2 = 8,  // plasma intact pramlintide, pg/kg
    kQp3 = 9,  // plasma pramlintide metabolite, pg/kg
};

/// Model state. Plain value type; convertible to/from a flat array in the
/// canonical ordering.
struct ModelState {
    double q1 = 0.0;
    double q2 = 0.0;
    double x_i = 0.0;
    double i = 0.0;
    double x = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double qp1 = 0.0;
    double qp2 = 0.0;
    double qp3 = 0.0;

    std::array<double, kNumStates> to_array() const {
        return {q1, q2, x_i, i, x, m1, m2, qp1, qp2, qp3};
    }
    static ModelState from_array(const std::array<double, kNumStates>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
    }
    bool finite() const;
};

/// Model parameters. Defaults are the identified population values; p3 is
/// the insulin-action gain calibrated so that the steady-state basal rate
/// for a 120 mg/dL target is 1 U/hr at 70 kg.
struct ModelParams {
    double p1 = 0.0122;        // glucose effectiveness, 1/min
    double q1b = 260.0;        // basal plasma glucose, mg/kg
    double p2 = 0.035;         // insulin action decay, 1/min
    double p3 = 2.0224e-5;     // insulin action gain, L/(mU*min^2)
    double k21 = 0.058;        // 1/min
    double k12 = 0.0885;       // 1/min
    double ka = 0.026;         // subcutaneous insulin absorption, 1/min
    double ke = 0.013;         // plasma insulin elimination, 1/min
    double tmax_g = 40.0;      // gastric emptying time constant, min
    double a_g = 0.8;          // carb utilization fraction
    double vd_i = 1.274;       // insulin distribution volume, L/kg
    double vd_g = 1.289;       // glucose distribution volume, dL/kg
    double kp2p1 = 0.036103;   // pramlintide absorption, 1/min
    double kp3p2 = 0.02693735; // intact -> metabolite, 1/min
    double ke2p2 = 0.504307;   // intact elimination, 1/min
    double ke3p3 = 0.02199495; // metabolite elimination, 1/min
    double vp = 104.478;       // pramlintide distribution volume, mL/kg
    double sfp1 = 0.02831485;  // gastric-emptying sensitivity 1, mL/pg
    double sfp2 = 0.0189834;   // gastric-emptying sensitivity 2, mL/pg
    double ts = 5.0;           // control/sensing period, min
    double weight = 70.0;      // body weight, kg

    void validate() const;  // throws std::invalid_argument on violation
};

/// Exogenous inputs, all in internal per-kg units and held constant over an
/// integration step.
struct ModelInputs {
    double u_insulin = 0.0;  // mU/kg/min
    double u_pram = 0.0;     // pg/kg/min
    double u_carbs = 0.0;    // g/min
};

// Unit conversions between pump-facing rates and internal per-kg rates.
inline double insulin_rate_to_internal(double u_per_hr, double weight_kg) {
    return u_per_hr * 1000.0 / (60.0 * weight_kg);
}
inline double insulin_rate_from_internal(double mu_kg_min, double weight_kg) {
    return mu_kg_min * 60.0 * weight_kg / 1000.0;
}
inline double pram_rate_to_internal(double mcg_per_hr, double weight_kg) {
    return mcg_per_hr * 1.0e6 / (60.0 * weight_kg);
}
inline double pram_rate_from_internal(double pg_kg_min, double weight_kg) {
    return pg_kg_min * 60.0 * weight_kg / 1.0e6;
}

/// Multiplicative slowdown of gastric transfer, 1/(1 + sf*(qp2+qp3)/vp).
/// Equals 1 with no pramlintide on board and decreases toward 0 as plasma
/// pramlintide rises.
double pram_effect(double qp2, double qp3, double sf, double vp);

/// Carbohydrate-to-glucose gain K in mg/(g*kg*min): 5.556 * a_g * 180 /
/// (tmax_g * weight).
double carb_gain(double a_g, double tmax_g, double weight);

/// Time derivative of the full state.
ModelState model_rhs(const ModelState& state, const ModelInputs& inputs,
                     const ModelParams& params);

/// One fixed-step RK4 step of size dt (minutes). Inputs are held constant
/// over the step; the mass-like states are clamped at zero afterwards.
ModelState integrate_step(const ModelState& state, const ModelInputs& inputs,
                          const ModelParams& params, double dt);

/// Integrate over `duration` minutes with internal steps of `dt`, holding
/// inputs constant. duration must be a whole multiple of dt.
ModelState integrate(const ModelState& state, const ModelInputs& inputs,
                     const ModelParams& params, double duration, double dt);

/// The open-loop fixed point with zero inputs: q1 = q1b, q2 = (k21/k12)*q1b,
/// everything else zero.
ModelState zero_input_equilibrium(const ModelParams& params);

/// Constant insulin rate (mU/kg/min) whose steady state puts glucose at
/// target_conc mg/dL. Closed form; throws std::domain_error if the target is
/// not below the zero-insulin fixed point.
double basal_for_target(const ModelParams& params, double target_conc);

/// Full steady state under a constant insulin rate (mU/kg/min), no meals,
/// no pramlintide.
ModelState steady_state_for_basal(const ModelParams& params, double u_insulin);

/// CGM reading for a state: q1 / vd_g, mg/dL.
inline double glucose_conc(const ModelState& s, const ModelParams& p) {
    return s.q1 / p.vd_g;
}

}  // namespace amylin
