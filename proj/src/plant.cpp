#include "fuzzy/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzzy/dsl.hpp"

namespace incubator {

bool PlantParams::valid() const {
    const bool rates_ok = heater_gain >= 0.0 && temp_loss_rate >= 0.0 &&
                          humidifier_gain >= 0.0 && rh_loss_rate >= 0.0;
    const bool dt_ok = dt > 0.0 && dt * std::max(temp_loss_rate, rh_loss_rate) < 1.0;
    return rates_ok && dt_ok && std::isfinite(ambient_temp) && std::isfinite(ambient_rh);
}

namespace {

// splitmix64; fixed so traces replay bit-identically on any platform
std::uint64_t next_u64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double quantize(double value, double resolution) {
    if (resolution <= 0.0) return value;
    return std::round(value / resolution) * resolution;
}

} // namespace

SensorStream::SensorStream(const SensorModel& model) : model_(model), state_(model.seed) {}

double SensorStream::next_symmetric(double bound) {
    const double u = (next_u64(state_) >> 11) * 0x1.0p-53; // [0,1)
    return (2.0 * u - 1.0) * bound;
}

SensorReading SensorStream::read(const PlantState& state) {
    SensorReading reading;
    reading.temp = quantize(state.temp + next_symmetric(model_.temp_noise_bound),
                            model_.temp_resolution);
    reading.rh =
        quantize(state.rh + next_symmetric(model_.rh_noise_bound), model_.rh_resolution);
    return reading;
}

PlantState step_plant(const PlantState& state, double heat_cmd, double fan_cmd,
                      const PlantParams& params) {
    PlantState next;
    next.temp = state.temp + params.dt * (params.heater_gain * heat_cmd -
                                          params.temp_loss_rate *
                                              (state.temp - params.ambient_temp));
    next.rh = std::clamp(state.rh + params.dt * (params.humidifier_gain * fan_cmd -
                                                 params.rh_loss_rate *
                                                     (state.rh - params.ambient_rh)),
                         0.0, 100.0);
    next.t = state.t + params.dt;
    return next;
}

IncubationSchedule::IncubationSchedule(RuleMode mode)
    : phase1(build_incubator_fis(Phase::Days1To17, mode)),
      phase2(build_incubator_fis(Phase::Days18To21, mode)) {}

const IncubatorProfile& IncubationSchedule::for_day(int day) const {
    return select_phase(day) == Phase::Days1To17 ? phase1 : phase2;
}

LoopTrace run_closed_loop(const PlantParams& params, const SensorModel& sensor,
                          const std::function<const IncubatorProfile&(int)>& profile_for_day,
                          int duration_days, int steps_per_day) {
    if (!params.valid()) {
        throw std::invalid_argument("plant parameters violate their invariants");
    }
    if (duration_days < 1 || duration_days > 21) {
        throw std::invalid_argument("duration must lie in [1, 21] days");
    }
    if (steps_per_day < 1) {
        throw std::invalid_argument("steps_per_day must be >= 1");
    }

    SensorStream stream(sensor);
    PlantState state{params.ambient_temp, std::clamp(params.ambient_rh, 0.0, 100.0), 0.0};
    double heat_cmd = 5.0;
    double fan_cmd = 5.0;

    LoopTrace trace;
    trace.records.reserve(static_cast<std::size_t>(duration_days) * steps_per_day);
    for (int step = 0; step < duration_days * steps_per_day; ++step) {
        const int day = step / steps_per_day + 1;
        const Phase phase = select_phase(day);
        const IncubatorProfile& profile = profile_for_day(day);

        const SensorReading reading = stream.read(state);
        if (const auto cmd = control(profile, reading.temp, reading.rh)) {
            heat_cmd = cmd->heat;
            fan_cmd = cmd->fan;
        } // otherwise hold the previous commands

        trace.records.push_back({state.t, state.temp, state.rh, reading.temp, reading.rh,
                                 heat_cmd, fan_cmd, day, phase});
        state = step_plant(state, heat_cmd, fan_cmd, params);
    }
    return trace;
}

std::string trace_to_csv(const LoopTrace& trace) {
    using fuzzy::dsl::format_sig6;
    std::string out =
        "t_s,true_temp_c,true_rh_pct,sensed_temp_c,sensed_rh_pct,heat_cmd,fan_cmd,day,phase\n";
    for (const auto& r : trace.records) {
        out += format_sig6(r.t) + "," + format_sig6(r.true_temp) + "," +
               format_sig6(r.true_rh) + "," + format_sig6(r.sensed_temp) + "," +
               format_sig6(r.sensed_rh) + "," + format_sig6(r.heat_cmd) + "," +
               format_sig6(r.fan_cmd) + "," + std::to_string(r.day) + "," +
               (r.phase == Phase::Days1To17 ? "1" : "2") + "\n";
    }
    return out;
}

BandStats band_stats(const LoopTrace& trace) {
    BandStats stats;
    long temp_n = 0, temp_in = 0;
    long rh1_n = 0, rh1_in = 0;
    long rh2_n = 0, rh2_in = 0;
    for (const auto& r : trace.records) {
        if (r.day >= 2) {
            ++temp_n;
            if (r.true_temp >= 37.0 && r.true_temp <= 39.0) ++temp_in;
        }
        if (r.day >= 2 && r.day <= 17) {
            ++rh1_n;
            if (r.true_rh >= 50.0 && r.true_rh <= 55.0) ++rh1_in;
        }
        if (r.day >= 19 && r.day <= 21) {
            ++rh2_n;
            if (r.true_rh >= 60.0 && r.true_rh <= 65.0) ++rh2_in;
        }
    }
    stats.temp_after_day1 = temp_n > 0 ? static_cast<double>(temp_in) / temp_n : 0.0;
    stats.rh_days2_to_17 = rh1_n > 0 ? static_cast<double>(rh1_in) / rh1_n : 0.0;
    stats.rh_days19_to_21 = rh2_n > 0 ? static_cast<double>(rh2_in) / rh2_n : 0.0;
    return stats;
}

} // namespace incubator
