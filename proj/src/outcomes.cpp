#include "amylin/outcomes.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace amylin {

RangePercents range_percents(std::span<const double> trace) {
    if (trace.empty()) throw std::invalid_argument("range_percents: empty trace");
    std::size_t n_vlow = 0, n_low = 0, n_tir = 0, n_high = 0, n_vhigh = 0;
    for (double g : trace) {
        if (g < 54.0) ++n_vlow;
        if (g < 70.0) {
            ++n_low;
        } else if (g <= 180.0) {
            ++n_tir;
        } else {
            ++n_high;
        }
        if (g > 250.0) ++n_vhigh;
    }
    const double scale = 100.0 / static_cast<double>(trace.size());
    return {n_vlow * scale, n_low * scale, n_tir * scale, n_high * scale,
            n_vhigh * scale};
}

Bgi bgi(std::span<const double> trace) {
    if (trace.empty()) throw std::invalid_argument("bgi: empty trace");
    double rl = 0.0, rh = 0.0;
    for (double g : trace) {
        if (!(g > 0.0)) throw std::domain_error("bgi: non-positive glucose sample");
        const double f = 1.509 * (std::pow(std::log(g), 1.084) - 5.381);
        const double risk = 10.0 * f * f;
        if (f < 0.0) {
            rl += risk;
        } else if (f > 0.0) {
            rh += risk;
        }
    }
    const double n = static_cast<double>(trace.size());
    return {rl / n, rh / n};
}

double low_events_per_day(std::span<const double> trace, double sample_minutes) {
    if (trace.empty()) throw std::invalid_argument("low_events: empty trace");
    if (!(sample_minutes > 0.0)) {
        throw std::invalid_argument("low_events: sample period must be > 0");
    }
    const long min_low = std::lround(std::ceil(15.0 / sample_minutes));
    const long merge_gap = std::lround(std::ceil(30.0 / sample_minutes));

    long events = 0;
    long run = 0;                  // consecutive low samples in the current dip
    long recovery = merge_gap;     // recovered samples since the last event
    bool qualified = false;        // current dip already reached event length
    for (double g : trace) {
        if (g < 70.0) {
            ++run;
            if (run == min_low) {
                // A recovery shorter than the merge gap folds this episode
                // into the previous event.
                if (recovery >= merge_gap) ++events;
                qualified = true;
            }
        } else {
            if (qualified) {
                recovery = 0;
                qualified = false;
            }
            run = 0;
            if (recovery < merge_gap) ++recovery;
        }
    }
    const double days =
        static_cast<double>(trace.size()) * sample_minutes / 1440.0;
    return static_cast<double>(events) / days;
}

std::string OutcomeSummary::to_json() const {
    nlohmann::ordered_json j;
    j["pct_very_low"] = pct_very_low;
    j["pct_low"] = pct_low;
    j["pct_tir"] = pct_tir;
    j["pct_high"] = pct_high;
    j["pct_very_high"] = pct_very_high;
    j["lbgi"] = lbgi;
    j["hbgi"] = hbgi;
    j["mean_cgm"] = mean_cgm;
    j["low_events_per_day"] = low_events_per_day;
    j["total_daily_insulin"] = total_daily_insulin;
    j["total_daily_pram"] = total_daily_pram;
    j["mdd_sensitivity"] = mdd_sensitivity;
    j["mdd_fp_per_day"] = mdd_fp_per_day;
    j["mdd_units_per_day"] = mdd_units_per_day;
    return j.dump(2) + "\n";
}

}  // namespace amylin
