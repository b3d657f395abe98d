#include "fuzzy/incubator.hpp"

#include <stdexcept>

#include "fuzzy/inference.hpp"

namespace incubator {

using fuzzy::Clause;
using fuzzy::Gaussian;
using fuzzy::LinguisticVariable;
using fuzzy::Rule;
using fuzzy::Triangular;

Phase select_phase(int day) {
    if (day < 1 || day > 21) {
        throw std::invalid_argument("incubation day must lie in [1, 21], got " +
                                    std::to_string(day));
    }
    return day <= 17 ? Phase::Days1To17 : Phase::Days18To21;
}

namespace {

LinguisticVariable temperature_variable() {
    LinguisticVariable var;
    var.name = "temperature";
    var.lo = 0.0;
    var.hi = 80.0;
    var.terms = {{"cold", Triangular{0.0, 0.0, 38.0}},
                 {"optimal", Triangular{37.0, 38.0, 39.0}},
                 {"hot", Triangular{38.0, 80.0, 80.0}}};
    return var;
}

LinguisticVariable humidity_variable(Phase phase) {
    LinguisticVariable var;
    var.name = "humidity";
    var.lo = 0.0;
    var.hi = 100.0;
    if (phase == Phase::Days1To17) {
        var.terms = {{"dry", Triangular{0.0, 0.0, 52.5}},
                     {"optimal", Triangular{50.0, 52.5, 55.0}},
                     {"wet", Triangular{52.5, 100.0, 100.0}}};
    } else {
        var.terms = {{"dry", Triangular{0.0, 0.0, 62.5}},
                     {"optimal", Triangular{60.0, 62.5, 65.0}},
                     {"wet", Triangular{62.5, 100.0, 100.0}}};
    }
    return var;
}

LinguisticVariable heat_variable() {
    LinguisticVariable var;
    var.name = "heat";
    var.lo = 0.0;
    var.hi = 10.0;
    var.terms = {{"low", Gaussian{2.0, 1.2}},
                 {"optimal", Gaussian{5.0, 1.2}},
                 {"high", Gaussian{8.0, 1.2}}};
    return var;
}

LinguisticVariable fan_variable() {
    LinguisticVariable var;
    var.name = "fan";
    var.lo = 0.0;
    var.hi = 10.0;
    var.terms = {{"low", Triangular{0.0, 2.0, 4.0}},
                 {"medium", Triangular{3.0, 5.0, 7.0}},
                 {"high", Triangular{6.0, 8.0, 10.0}}};
    return var;
}

Rule make_rule(const char* temp_term, const char* hum_term, const char* heat_term,
               const char* fan_term) {
    Rule rule;
    if (temp_term != nullptr) rule.antecedents.push_back({"temperature", temp_term});
    if (hum_term != nullptr) rule.antecedents.push_back({"humidity", hum_term});
    rule.consequents.push_back({"heat", heat_term});
    rule.consequents.push_back({"fan", fan_term});
    return rule;
}

// Rule table rows 1-15; "None" cells become absent antecedents.
std::vector<Rule> rule_table(RuleMode mode) {
    std::vector<Rule> all = {
        make_rule("cold", nullptr, "high", "medium"),       // 1
        make_rule("optimal", nullptr, "optimal", "medium"), // 2
        make_rule("hot", nullptr, "low", "medium"),         // 3
        make_rule(nullptr, "dry", "optimal", "high"),       // 4
        make_rule(nullptr, "optimal", "optimal", "medium"), // 5
        make_rule(nullptr, "wet", "optimal", "low"),        // 6
        make_rule("cold", "dry", "high", "high"),           // 7
        make_rule("cold", "optimal", "high", "medium"),     // 8
        make_rule("cold", "wet", "high", "low"),            // 9
        make_rule("optimal", "dry", "optimal", "high"),     // 10
        make_rule("optimal", "optimal", "optimal", "medium"), // 11
        make_rule("optimal", "wet", "optimal", "low"),      // 12
        make_rule("hot", "dry", "low", "high"),             // 13
        make_rule("hot", "optimal", "low", "medium"),       // 14
        make_rule("hot", "wet", "low", "low"),              // 15
    };
    if (mode == RuleMode::PairsOnly9) {
        return {all.begin() + 6, all.end()};
    }
    return all;
}

} // namespace

IncubatorProfile build_incubator_fis(Phase phase, RuleMode rule_mode) {
    IncubatorProfile profile;
    profile.phase = phase;
    profile.rule_mode = rule_mode;

    fuzzy::FisModel& model = profile.model;
    model.name =
        phase == Phase::Days1To17 ? "incubator_phase1" : "incubator_phase2";
    model.inputs = {temperature_variable(), humidity_variable(phase)};
    model.outputs = {heat_variable(), fan_variable()};
    model.rules = rule_table(rule_mode);
    return profile;
}

std::optional<ControlCommand> control(const IncubatorProfile& profile,
                                      double temperature_c, double humidity_pct) {
    try {
        const auto out = fuzzy::infer(
            profile.model, {{"temperature", temperature_c}, {"humidity", humidity_pct}});
        return ControlCommand{out.at("heat"), out.at("fan")};
    } catch (const fuzzy::NoRuleFired&) {
        return std::nullopt;
    }
}

} // namespace incubator
