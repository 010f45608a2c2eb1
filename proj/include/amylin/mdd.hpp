#pragma once

#include <optional>
#include <span>
#include <vector>

namespace amylin {

struct MealDetection {
    double time = 0.0;            // min
    double estimated_carbs = 0.0; // g
    double confidence = 0.0;      // [0, 1]
};

struct MddConfig {
    bool enabled = true;
    double slope_threshold = 2.0;     // mg/dL per 5-min sample
    double window = 15.0;             // min of sustained rise required
    double refractory = 90.0;         // min between detections
    double carb_ratio = 10.0;         // g covered per U
    double carb_gain = 2.86;          // estimated g per mg/dL of rise
    double detection_window_tp = 45.0; // min; a detection this long after a
                                       // meal counts as a true positive
    double sample_minutes = 5.0;

    void validate() const;  // throws std::invalid_argument
};

/// Slope-rule meal detector. Fires when the backward-difference slope stays
/// above slope_threshold for a full window of consecutive samples and the
/// cumulative rise across that window clears 2x the per-sample threshold;
/// at most one detection per refractory period. Stateful and deterministic.
class MealDetector {
public:
    explicit MealDetector(const MddConfig& cfg);

    /// Feed the next CGM sample (mg/dL) taken at `time` minutes. Returns a
    /// detection when the rule fires at this sample.
    std::optional<MealDetection> push(double time, double cgm);

    void reset();

private:
    MddConfig cfg_;
    std::vector<double> recent_;  // last window+1 samples
    std::size_t window_samples_;
    double last_detection_ = -1.0e18;
};

/// Candidate prandial bolus for a detection: estimated carbs over the carb
/// ratio, then safety-limited against the current glucose.
double dose_for_meal(const MealDetection& det, double current_glucose,
                     const MddConfig& cfg);

/// Cap a bolus so it cannot drive glucose below 70 mg/dL at the configured
/// correction factor (mg/dL of drop per U): min(candidate, (g - 70)/cf),
/// floored at zero.
double safety_limit(double candidate, double current_glucose,
                    double carb_ratio, double correction_factor);

/// Correction factor paired with a carb ratio (declared heuristic).
inline double correction_factor_for(double carb_ratio) {
    return carb_ratio * 5.0;
}

struct MddStats {
    double sensitivity = 0.0;
    double fp_per_day = 0.0;
    double units_per_day = 0.0;
};

/// True-positive / false-positive accounting. A meal counts as detected when
/// some detection falls within detection_window_tp minutes after it; any
/// detection that is not within that window of any meal is a false positive.
MddStats mdd_stats(std::span<const double> detection_times,
                   std::span<const double> meal_times, double total_days,
                   double mdd_insulin_total, const MddConfig& cfg);

}  // namespace amylin
