#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fuzzy/incubator.hpp"

namespace incubator {

/// First-order linear plant, explicit Euler. Defaults are tuned so that the
/// default controller regulates temperature to 38 C (heat = 5 balances the
/// loss at 38 C) and humidity into the 50-55% / 60-65% phase bands. They are
/// tunable knobs, not physical measurements.
struct PlantParams {
    double ambient_temp = 25.0;      // C
    double ambient_rh = 0.0;         // %
    double heater_gain = 0.0052;     // C/s per heat unit
    double temp_loss_rate = 0.002;   // 1/s
    double humidifier_gain = 5.8e-4; // %/s per fan unit
    double rh_loss_rate = 5.0e-5;    // 1/s
    double dt = 60.0;                // s, explicit-Euler step

    /// Rates nonnegative, dt > 0, dt * max loss rate < 1.
    bool valid() const;
};

struct PlantState {
    double temp = 25.0; // C
    double rh = 0.0;    // %, clamped to [0,100]
    double t = 0.0;     // s
};

/// DHT22-like reading model: uniform noise within the bounds, then
/// quantization to the resolution. Deterministic for a fixed seed.
struct SensorModel {
    double temp_resolution = 0.1;  // C
    double temp_noise_bound = 0.5; // +- C
    double rh_resolution = 0.1;    // %
    double rh_noise_bound = 2.0;   // +- %
    std::uint64_t seed = 0;
};

struct SensorReading {
    double temp = 0.0;
    double rh = 0.0;
};

/// Owns the advancing noise stream of one sensor. Two draws per read
/// (temperature first, then humidity), splitmix64 underneath so replays are
/// identical across platforms.
class SensorStream {
public:
    explicit SensorStream(const SensorModel& model);
    SensorReading read(const PlantState& state);

private:
    double next_symmetric(double bound);
    SensorModel model_;
    std::uint64_t state_;
};

/// One explicit-Euler step:
///   temp' = temp + dt * (heater_gain * heat - temp_loss_rate * (temp - ambient))
///   rh'   = clamp(rh + dt * (humidifier_gain * fan - rh_loss_rate * (rh - ambient)), 0, 100)
PlantState step_plant(const PlantState& state, double heat_cmd, double fan_cmd,
                      const PlantParams& params);

struct TraceRecord {
    double t = 0.0;
    double true_temp = 0.0;
    double true_rh = 0.0;
    double sensed_temp = 0.0;
    double sensed_rh = 0.0;
    double heat_cmd = 0.0;
    double fan_cmd = 0.0;
    int day = 1;
    Phase phase = Phase::Days1To17;
};

struct LoopTrace {
    std::vector<TraceRecord> records;
};

/// Prebuilt phase-1/phase-2 profiles keyed by day.
struct IncubationSchedule {
    explicit IncubationSchedule(RuleMode mode = RuleMode::All15);
    const IncubatorProfile& for_day(int day) const;

    IncubatorProfile phase1;
    IncubatorProfile phase2;
};

/// Runs sense -> select phase -> control -> step for duration_days. When no
/// rule fires the previous commands are held (initially heat = fan = 5).
/// duration_days must lie in [1, 21]; the plant starts at ambient.
LoopTrace run_closed_loop(const PlantParams& params, const SensorModel& sensor,
                          const std::function<const IncubatorProfile&(int)>& profile_for_day,
                          int duration_days, int steps_per_day = 1440);

/// CSV with header t_s,true_temp_c,true_rh_pct,sensed_temp_c,sensed_rh_pct,
/// heat_cmd,fan_cmd,day,phase; 6 significant digits, LF line endings.
std::string trace_to_csv(const LoopTrace& trace);

/// Fractions of steps inside the paper's bands: temperature 37-39 C after
/// day 1, RH 50-55% over days 2-17 and 60-65% over days 19-21.
struct BandStats {
    double temp_after_day1 = 0.0;
    double rh_days2_to_17 = 0.0;
    double rh_days19_to_21 = 0.0;
};
BandStats band_stats(const LoopTrace& trace);

} // namespace incubator
