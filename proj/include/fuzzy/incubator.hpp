#pragma once

#include <optional>

#include "fuzzy/model.hpp"

namespace incubator {

/// Chicken incubation runs 21 days; relative humidity targets 50-55% for the
/// first 17 days and 60-65% afterwards.
enum class Phase { Days1To17, Days18To21 };

/// All15 loads the full rule table (rows 1-6 are single-antecedent rules that
/// overlap the 9 pair rules); PairsOnly9 loads only the pair rules.
enum class RuleMode { All15, PairsOnly9 };

struct IncubatorProfile {
    Phase phase = Phase::Days1To17;
    RuleMode rule_mode = RuleMode::All15;
    fuzzy::FisModel model;
};

/// Phase by day number; day must lie in [1, 21].
Phase select_phase(int day);

/// Controller with the default membership parameters:
///   temperature [0,80] C: cold tri(0,0,38), optimal tri(37,38,39), hot tri(38,80,80)
///   humidity [0,100] %:   dry/optimal/wet around 52.5 (phase 1) or 62.5 (phase 2)
///   heat [0,10]: gauss at 2 / 5 / 8, k = 1.2
///   fan  [0,10]: tri(0,2,4), tri(3,5,7), tri(6,8,10)
IncubatorProfile build_incubator_fis(Phase phase, RuleMode rule_mode = RuleMode::All15);

struct ControlCommand {
    double heat = 0.0; // 0-10
    double fan = 0.0;  // 0-10
};

/// Crisp heat and fan-speed commands for one sensor reading. Returns nullopt
/// when no rule fires, so the caller can hold its previous command.
std::optional<ControlCommand> control(const IncubatorProfile& profile,
                                      double temperature_c, double humidity_pct);

} // namespace incubator
