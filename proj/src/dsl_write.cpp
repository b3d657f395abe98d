#include "fuzzy/dsl.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "fuzzy/inference.hpp"

namespace fuzzy::dsl {

std::string format_sig6(double value) {
    if (value == 0.0) return "0"; // normalizes -0 as well
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    std::string s = buf;
    if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) return s;

    // %.6g switched to scientific notation; re-render as plain decimal
    const double av = std::fabs(value);
    if (av >= 1e6) {
        const int digits = static_cast<int>(std::floor(std::log10(av))) + 1;
        const double scale = std::pow(10.0, digits - 6);
        std::snprintf(buf, sizeof buf, "%.0f", std::round(value / scale) * scale);
        return buf;
    }
    const int lead = -static_cast<int>(std::floor(std::log10(av)));
    std::snprintf(buf, sizeof buf, "%.*f", lead + 5, value);
    s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

namespace {

void write_mf(std::string& out, const MembershipFunction& mf) {
    if (const auto* t = std::get_if<Triangular>(&mf)) {
        out += "tri(" + format_sig6(t->a) + "," + format_sig6(t->m) + "," + format_sig6(t->b) +
               ")";
    } else {
        const auto& g = std::get<Gaussian>(mf);
        out += "gauss(" + format_sig6(g.m) + "," + format_sig6(g.k) + ")";
    }
}

void write_variable(std::string& out, const LinguisticVariable& var, bool is_input) {
    out += is_input ? "input " : "output ";
    out += var.name + " range " + format_sig6(var.lo) + " " + format_sig6(var.hi) + " {";
    for (const auto& term : var.terms) {
        out += " " + term.name + ": ";
        write_mf(out, term.mf);
    }
    out += " }\n";
}

void write_rule(std::string& out, const Rule& rule) {
    out += "if ";
    for (std::size_t i = 0; i < rule.antecedents.size(); ++i) {
        if (i > 0) out += " and ";
        out += rule.antecedents[i].variable + " is " + rule.antecedents[i].term;
    }
    out += " then ";
    for (std::size_t i = 0; i < rule.consequents.size(); ++i) {
        if (i > 0) out += ", ";
        out += rule.consequents[i].variable + " is " + rule.consequents[i].term;
    }
    out += "\n";
}

} // namespace

std::string serialize_model(const FisModel& model) {
    std::string out;
    out += "fis " + (model.name.empty() ? std::string("model") : model.name) + "\n";
    if (model.defuzz != Defuzzifier::PaperCoa) out += "defuzz centroid\n";
    if (model.sample_count != kDefaultSampleCount) {
        out += "samples " + std::to_string(model.sample_count) + "\n";
    }
    for (const auto& var : model.inputs) write_variable(out, var, /*is_input=*/true);
    for (const auto& var : model.outputs) write_variable(out, var, /*is_input=*/false);
    for (const auto& rule : model.rules) write_rule(out, rule);
    return out;
}

namespace {

void check_variable(const LinguisticVariable& var, std::vector<Diagnostic>& diags) {
    const SourceSpan none{1, 1, 0};
    if (!(var.lo < var.hi)) {
        diags.push_back({Severity::Error, none, "bad-range",
                         "variable '" + var.name + "' has an empty range"});
    }
    if (var.terms.empty()) {
        diags.push_back({Severity::Error, none, "empty-variable",
                         "variable '" + var.name + "' has no terms"});
    } else if (var.terms.size() < 2) {
        diags.push_back({Severity::Warning, none, "too-few-terms",
                         "variable '" + var.name + "' has fewer than 2 terms"});
    }
    std::set<std::string> names;
    for (const auto& term : var.terms) {
        if (!names.insert(term.name).second) {
            diags.push_back({Severity::Error, none, "duplicate-term",
                             "term '" + term.name + "' is already defined in '" + var.name +
                                 "'"});
        }
        if (!mf_params_valid(term.mf)) {
            diags.push_back({Severity::Error, none, "bad-term-params",
                             "term '" + term.name + "' of '" + var.name +
                                 "' has invalid parameters"});
        } else if (!mf_support_intersects(term.mf, var.lo, var.hi)) {
            diags.push_back({Severity::Error, none, "term-outside-universe",
                             "term '" + term.name + "' has no support inside the range of '" +
                                 var.name + "'"});
        }
    }
}

void check_rule(const FisModel& model, const Rule& rule, std::size_t index,
                std::vector<Diagnostic>& diags) {
    const SourceSpan none{1, 1, 0};
    const std::string where = "rule " + std::to_string(index + 1);
    if (rule.antecedents.empty()) {
        diags.push_back(
            {Severity::Error, none, "empty-rule", where + " has no conditions"});
    }
    if (rule.consequents.empty()) {
        diags.push_back(
            {Severity::Error, none, "empty-rule", where + " has no consequents"});
    }
    std::set<std::string> seen;
    for (const auto& clause : rule.antecedents) {
        const LinguisticVariable* var = model.find_input(clause.variable);
        if (var == nullptr) {
            diags.push_back({Severity::Error, none,
                             model.find_output(clause.variable) ? "not-an-input"
                                                                : "unknown-variable",
                             where + ": condition variable '" + clause.variable +
                                 "' does not resolve to an input"});
            continue;
        }
        if (var->find_term(clause.term) == nullptr) {
            diags.push_back({Severity::Error, none, "unknown-term",
                             where + ": term '" + clause.term + "' is not defined for '" +
                                 clause.variable + "'"});
        }
        if (!seen.insert(clause.variable).second) {
            diags.push_back({Severity::Error, none, "duplicate-antecedent",
                             where + ": variable '" + clause.variable +
                                 "' appears in more than one condition"});
        }
    }
    seen.clear();
    for (const auto& clause : rule.consequents) {
        const LinguisticVariable* var = model.find_output(clause.variable);
        if (var == nullptr) {
            diags.push_back({Severity::Error, none,
                             model.find_input(clause.variable) ? "not-an-output"
                                                               : "unknown-variable",
                             where + ": consequent variable '" + clause.variable +
                                 "' does not resolve to an output"});
            continue;
        }
        if (var->find_term(clause.term) == nullptr) {
            diags.push_back({Severity::Error, none, "unknown-term",
                             where + ": term '" + clause.term + "' is not defined for '" +
                                 clause.variable + "'"});
        }
        if (!seen.insert(clause.variable).second) {
            diags.push_back({Severity::Error, none, "duplicate-consequent",
                             where + ": variable '" + clause.variable +
                                 "' appears in more than one consequent"});
        }
    }
}

void warn_unused_terms(const FisModel& model, std::vector<Diagnostic>& diags) {
    const SourceSpan none{1, 1, 0};
    std::set<std::pair<std::string, std::string>> used;
    for (const auto& rule : model.rules) {
        for (const auto& c : rule.antecedents) used.emplace(c.variable, c.term);
        for (const auto& c : rule.consequents) used.emplace(c.variable, c.term);
    }
    const auto scan = [&](const std::vector<LinguisticVariable>& vars) {
        for (const auto& var : vars) {
            for (const auto& term : var.terms) {
                if (used.count({var.name, term.name}) == 0) {
                    diags.push_back({Severity::Warning, none, "unused-term",
                                     "term '" + term.name + "' of '" + var.name +
                                         "' never appears in a rule"});
                }
            }
        }
    };
    scan(model.inputs);
    scan(model.outputs);
}

void warn_uncovered_regions(const FisModel& model, std::vector<Diagnostic>& diags) {
    const SourceSpan none{1, 1, 0};
    constexpr int kGrid = 101;
    for (const auto& var : model.inputs) {
        // membership of the rule antecedents that test this variable
        std::vector<const MembershipFunction*> tested;
        for (const auto& rule : model.rules) {
            for (const auto& clause : rule.antecedents) {
                if (clause.variable != var.name) continue;
                if (const Term* term = var.find_term(clause.term)) tested.push_back(&term->mf);
            }
        }
        if (tested.empty()) continue; // no rule conditions on it at all

        int uncovered = 0;
        double first_x = 0.0;
        for (int i = 0; i < kGrid; ++i) {
            const double x = var.lo + i * (var.hi - var.lo) / (kGrid - 1);
            double agg = 0.0;
            for (const auto* mf : tested) agg = std::max(agg, eval_membership(*mf, x));
            if (agg <= 0.0) {
                if (uncovered == 0) first_x = x;
                ++uncovered;
            }
        }
        if (uncovered > 0) {
            diags.push_back({Severity::Warning, none, "uncovered-region",
                             "no rule covers " + std::to_string(uncovered) + "/101 sampled " +
                                 "points of '" + var.name + "' (first at " +
                                 format_sig6(first_x) + ")"});
        }
    }
}

} // namespace

std::vector<Diagnostic> validate_model(const FisModel& model) {
    std::vector<Diagnostic> diags;
    const SourceSpan none{1, 1, 0};

    std::set<std::string> names;
    for (const auto& var : model.inputs) {
        if (!names.insert(var.name).second) {
            diags.push_back({Severity::Error, none, "duplicate-variable",
                             "variable '" + var.name + "' is already defined"});
        }
        check_variable(var, diags);
    }
    for (const auto& var : model.outputs) {
        if (!names.insert(var.name).second) {
            diags.push_back({Severity::Error, none, "duplicate-variable",
                             "variable '" + var.name + "' is already defined"});
        }
        check_variable(var, diags);
    }

    if (model.rules.empty()) {
        diags.push_back({Severity::Error, none, "no-rules", "model defines no rules"});
    }
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        check_rule(model, model.rules[i], i, diags);
    }
    if (model.sample_count < 2) {
        diags.push_back({Severity::Error, none, "bad-sample-count",
                         "sample count must be an integer >= 2"});
    }

    bool has_error = false;
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) has_error = true;
    }
    if (!has_error) {
        warn_unused_terms(model, diags);
        warn_uncovered_regions(model, diags);
    }
    return diags;
}

} // namespace fuzzy::dsl
