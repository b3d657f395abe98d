#include "fuzzy/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fuzzy {

NoRuleFired::NoRuleFired(std::string output_name)
    : std::runtime_error("no rule fired for output '" + output_name + "'"),
      output_(std::move(output_name)) {}

const Term* LinguisticVariable::find_term(std::string_view term_name) const {
    for (const auto& t : terms) {
        if (t.name == term_name) return &t;
    }
    return nullptr;
}

namespace {

const LinguisticVariable* find_var(const std::vector<LinguisticVariable>& vars,
                                   std::string_view name) {
    for (const auto& v : vars) {
        if (v.name == name) return &v;
    }
    return nullptr;
}

} // namespace

const LinguisticVariable* FisModel::find_input(std::string_view var_name) const {
    return find_var(inputs, var_name);
}

const LinguisticVariable* FisModel::find_output(std::string_view var_name) const {
    return find_var(outputs, var_name);
}

TermMemberships fuzzify(const LinguisticVariable& var, double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("non-finite input for variable '" + var.name + "'");
    }
    const double clamped = std::clamp(x, var.lo, var.hi);
    TermMemberships out;
    for (const auto& term : var.terms) {
        out[term.name] = eval_membership(term.mf, clamped);
    }
    return out;
}

double firing_strength(const Rule& rule, const Fuzzified& fuzzified) {
    double alpha = 1.0;
    for (const auto& clause : rule.antecedents) {
        const auto var_it = fuzzified.find(clause.variable);
        if (var_it == fuzzified.end()) {
            throw ModelError("unresolved antecedent variable '" + clause.variable + "'");
        }
        const auto term_it = var_it->second.find(clause.term);
        if (term_it == var_it->second.end()) {
            throw ModelError("unresolved antecedent term '" + clause.variable + " is " +
                             clause.term + "'");
        }
        alpha = std::min(alpha, term_it->second);
    }
    return alpha;
}

ClippedMass clipped_area_and_centroid(const MembershipFunction& mf, double alpha,
                                      double lo, double hi, int sample_count) {
    ClippedMass mass;
    mass.centroid = std::numeric_limits<double>::quiet_NaN();
    if (alpha <= 0.0 || sample_count < 2) return mass;

    const double h = (hi - lo) / (sample_count - 1);
    double area = 0.0;
    double moment = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        const double x = lo + i * h;
        const double mu = std::min(eval_membership(mf, x), alpha);
        const double w = (i == 0 || i == sample_count - 1) ? 0.5 : 1.0;
        area += w * mu;
        moment += w * mu * x;
    }
    area *= h;
    moment *= h;
    if (area <= 0.0) return mass;
    mass.area = area;
    mass.centroid = moment / area;
    return mass;
}

std::vector<FiringRecord> fire_rules(const FisModel& model, const Fuzzified& fuzzified) {
    std::vector<FiringRecord> records;
    records.reserve(model.rules.size());
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        const Rule& rule = model.rules[i];
        FiringRecord rec;
        rec.rule_index = i;
        rec.strength = firing_strength(rule, fuzzified);
        for (const auto& clause : rule.consequents) {
            const LinguisticVariable* out = model.find_output(clause.variable);
            if (out == nullptr) {
                throw ModelError("unresolved consequent variable '" + clause.variable + "'");
            }
            const Term* term = out->find_term(clause.term);
            if (term == nullptr) {
                throw ModelError("unresolved consequent term '" + clause.variable + " is " +
                                 clause.term + "'");
            }
            if (rec.strength > 0.0) {
                rec.outputs[clause.variable] = clipped_area_and_centroid(
                    term->mf, rec.strength, out->lo, out->hi, model.sample_count);
            } else {
                ClippedMass zero;
                zero.centroid = std::numeric_limits<double>::quiet_NaN();
                rec.outputs[clause.variable] = zero;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

double defuzzify_paper_coa(const std::vector<FiringRecord>& firings,
                           const std::string& output) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& rec : firings) {
        const auto it = rec.outputs.find(output);
        if (it == rec.outputs.end() || it->second.area <= 0.0) continue;
        num += it->second.area * it->second.centroid;
        den += it->second.area;
    }
    if (den <= 0.0) throw NoRuleFired(output);
    return num / den;
}

double defuzzify_sampled_centroid(const FisModel& model,
                                  const std::vector<FiringRecord>& firings,
                                  const std::string& output, int sample_count) {
    const LinguisticVariable* out = model.find_output(output);
    if (out == nullptr) throw ModelError("unknown output variable '" + output + "'");
    if (sample_count < 2) throw std::invalid_argument("sample_count must be >= 2");

    // collect (mf, alpha) pairs of the rules that fired for this output
    std::vector<std::pair<const MembershipFunction*, double>> clips;
    for (const auto& rec : firings) {
        if (rec.strength <= 0.0) continue;
        const Rule& rule = model.rules.at(rec.rule_index);
        for (const auto& clause : rule.consequents) {
            if (clause.variable != output) continue;
            const Term* term = out->find_term(clause.term);
            if (term == nullptr) {
                throw ModelError("unresolved consequent term '" + clause.variable + " is " +
                                 clause.term + "'");
            }
            clips.emplace_back(&term->mf, rec.strength);
        }
    }

    // same quadrature weights as clipped_area_and_centroid, so single-rule
    // instances differ from the per-rule route only by aggregation
    const double h = (out->hi - out->lo) / (sample_count - 1);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        const double x = out->lo + i * h;
        double agg = 0.0;
        for (const auto& [mf, alpha] : clips) {
            agg = std::max(agg, std::min(eval_membership(*mf, x), alpha));
        }
        const double w = (i == 0 || i == sample_count - 1) ? 0.5 : 1.0;
        num += w * x * agg;
        den += w * agg;
    }
    if (den <= 0.0) throw NoRuleFired(output);
    return num / den;
}

std::map<std::string, double> infer(const FisModel& model,
                                    const std::map<std::string, double>& inputs) {
    Fuzzified fuzzified;
    for (const auto& var : model.inputs) {
        const auto it = inputs.find(var.name);
        if (it == inputs.end()) {
            throw std::invalid_argument("missing input '" + var.name + "'");
        }
        fuzzified[var.name] = fuzzify(var, it->second);
    }

    const std::vector<FiringRecord> firings = fire_rules(model, fuzzified);

    std::map<std::string, double> crisp;
    for (const auto& out : model.outputs) {
        if (model.defuzz == Defuzzifier::PaperCoa) {
            crisp[out.name] = defuzzify_paper_coa(firings, out.name);
        } else {
            crisp[out.name] =
                defuzzify_sampled_centroid(model, firings, out.name, model.sample_count);
        }
    }
    return crisp;
}

} // namespace fuzzy
