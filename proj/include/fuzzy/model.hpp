#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fuzzy/membership.hpp"

namespace fuzzy {

struct Term {
    std::string name;
    MembershipFunction mf;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Named universe of discourse [lo, hi] partitioned into named terms.
struct LinguisticVariable {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<Term> terms; // declaration order is preserved

    const Term* find_term(std::string_view term_name) const;
    friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;
};

/// One "<variable> is <term>" clause of a rule.
struct Clause {
    std::string variable;
    std::string term;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Conjunction of antecedents implying one consequent term per output.
struct Rule {
    std::vector<Clause> antecedents; // at most one per input variable
    std::vector<Clause> consequents; // at most one per output variable
    friend bool operator==(const Rule&, const Rule&) = default;
};

enum class TNorm { Min };
enum class Implication { MinClip };
enum class Aggregation { Max };

/// PaperCoa sums per-rule clipped areas and centroids independently;
/// SampledCentroid max-aggregates the clipped consequents first.
enum class Defuzzifier { PaperCoa, SampledCentroid };

inline constexpr int kDefaultSampleCount = 1001;

struct FisModel {
    std::string name;
    std::vector<LinguisticVariable> inputs;
    std::vector<LinguisticVariable> outputs;
    std::vector<Rule> rules;
    TNorm tnorm = TNorm::Min;
    Implication implication = Implication::MinClip;
    Aggregation aggregation = Aggregation::Max;
    Defuzzifier defuzz = Defuzzifier::PaperCoa;
    int sample_count = kDefaultSampleCount;

    const LinguisticVariable* find_input(std::string_view var_name) const;
    const LinguisticVariable* find_output(std::string_view var_name) const;

    friend bool operator==(const FisModel&, const FisModel&) = default;
};

} // namespace fuzzy
