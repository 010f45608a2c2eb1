#pragma once

#include <span>
#include <string>
#include <vector>

namespace amylin {

/// Aggregate glucose and dosing outcomes for one simulated run.
struct OutcomeSummary {
    double pct_very_low = 0.0;   // % samples < 54 mg/dL
    double pct_low = 0.0;        // % samples < 70
    double pct_tir = 0.0;        // % samples in [70, 180]
    double pct_high = 0.0;       // % samples > 180
    double pct_very_high = 0.0;  // % samples > 250
    double lbgi = 0.0;
    double hbgi = 0.0;
    double mean_cgm = 0.0;
    double low_events_per_day = 0.0;
    double total_daily_insulin = 0.0;  // U/day
    double total_daily_pram = 0.0;     // mcg/day
    double mdd_sensitivity = 0.0;
    double mdd_fp_per_day = 0.0;
    double mdd_units_per_day = 0.0;

    std::string to_json() const;
};

struct RangePercents {
    double pct_very_low = 0.0;
    double pct_low = 0.0;
    double pct_tir = 0.0;
    double pct_high = 0.0;
    double pct_very_high = 0.0;
};

struct Bgi {
    double lbgi = 0.0;
    double hbgi = 0.0;
};

/// Sample-count range fractions. In-range is the closed band [70, 180];
/// low/high are strict; very-low (<54) nests inside low and very-high
/// (>250) inside high.
RangePercents range_percents(std::span<const double> trace);

/// Low/high blood-glucose risk indices over the symmetrized risk function
/// f(g) = 1.509*((ln g)^1.084 - 5.381), r = 10*f^2 split by sign.
Bgi bgi(std::span<const double> trace);

/// Hypoglycemic episodes per day: glucose < 70 mg/dL sustained for at least
/// 15 minutes counts as an event; episodes separated by under 30 minutes of
/// recovery merge into one. sample_minutes is the trace sampling period.
double low_events_per_day(std::span<const double> trace, double sample_minutes);

}  // namespace amylin
