#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzy/model.hpp"

namespace fuzzy {

/// No rule produced any output mass for the named output variable.
class NoRuleFired : public std::runtime_error {
public:
    explicit NoRuleFired(std::string output_name);
    const std::string& output() const { return output_; }

private:
    std::string output_;
};

/// A rule referenced a variable or term that does not resolve.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// term name -> membership degree
using TermMemberships = std::map<std::string, double>;
/// variable name -> (term name -> membership degree)
using Fuzzified = std::map<std::string, TermMemberships>;

/// Evaluates every term of the variable at x. x is clamped to the universe
/// first; non-finite x throws std::invalid_argument.
TermMemberships fuzzify(const LinguisticVariable& var, double x);

/// Min-conjunction of the rule's antecedent memberships.
double firing_strength(const Rule& rule, const Fuzzified& fuzzified);

/// Area and centroid of min(mu, alpha) over [lo, hi], trapezoidal quadrature
/// on sample_count uniform points. Zero area yields a NaN centroid.
struct ClippedMass {
    double area = 0.0;
    double centroid = 0.0; // NaN when area == 0
};
ClippedMass clipped_area_and_centroid(const MembershipFunction& mf, double alpha,
                                      double lo, double hi,
                                      int sample_count = kDefaultSampleCount);

/// Per-rule firing result: strength plus the clipped mass each consequent
/// contributes to its output. strength == 0 implies all areas are 0.
struct FiringRecord {
    std::size_t rule_index = 0;
    double strength = 0.0;
    std::map<std::string, ClippedMass> outputs;
};

/// Fuzzifies nothing; computes strengths and clipped consequent masses for
/// every rule of the model against already-fuzzified inputs.
std::vector<FiringRecord> fire_rules(const FisModel& model, const Fuzzified& fuzzified);

/// x* = sum(A_i * c_i) / sum(A_i) over rules with positive area for `output`.
/// Throws NoRuleFired when no rule contributes.
double defuzzify_paper_coa(const std::vector<FiringRecord>& firings,
                           const std::string& output);

/// Discrete centroid of the max-aggregated clipped consequents of `output`,
/// sampled on sample_count uniform points. Throws NoRuleFired on an all-zero
/// aggregate.
double defuzzify_sampled_centroid(const FisModel& model,
                                  const std::vector<FiringRecord>& firings,
                                  const std::string& output,
                                  int sample_count);

/// Full Mamdani pipeline for one crisp input per input variable.
/// Missing or non-finite inputs throw std::invalid_argument.
std::map<std::string, double> infer(const FisModel& model,
                                    const std::map<std::string, double>& inputs);

} // namespace fuzzy
