#pragma once

// Seeded helpers shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fuzzy/model.hpp"

namespace testsup {

// splitmix64; keeps every generated case reproducible across platforms
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; } // [0,1)

    double range(double lo, double hi) { return lo + uniform() * (hi - lo); }

    int int_range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

// a value that survives the 6-significant-digit canonical form exactly
inline double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

inline fuzzy::MembershipFunction random_mf(Rng& rng, double lo, double hi) {
    if (rng.chance(0.5)) {
        double a = 0.0, m = 0.0, b = 0.0;
        do {
            a = round3(rng.range(lo, hi));
            m = round3(rng.range(lo, hi));
            b = round3(rng.range(lo, hi));
            if (a > m) std::swap(a, m);
            if (m > b) std::swap(m, b);
            if (a > m) std::swap(a, m);
        } while (!(a < b));
        return fuzzy::Triangular{a, m, b};
    }
    const double m = round3(rng.range(lo, hi));
    const double k = round3(rng.range(0.1, 50.0));
    return fuzzy::Gaussian{m, k};
}

inline fuzzy::LinguisticVariable random_variable(Rng& rng, std::string name) {
    fuzzy::LinguisticVariable var;
    var.name = std::move(name);
    var.lo = round3(rng.range(-99.0, 99.0));
    var.hi = var.lo + round3(rng.range(1.0, 100.0));
    const int n_terms = rng.int_range(2, 4);
    for (int t = 0; t < n_terms; ++t) {
        var.terms.push_back({"t" + std::to_string(t), random_mf(rng, var.lo, var.hi)});
    }
    return var;
}

// structurally valid model (validate_model reports no errors) whose numbers
// all round-trip through the canonical serialization
inline fuzzy::FisModel random_model(Rng& rng) {
    fuzzy::FisModel model;
    model.name = "m" + std::to_string(rng.int_range(0, 999));
    const int n_in = rng.int_range(1, 3);
    const int n_out = rng.int_range(1, 2);
    for (int i = 0; i < n_in; ++i) {
        model.inputs.push_back(random_variable(rng, "in" + std::to_string(i)));
    }
    for (int i = 0; i < n_out; ++i) {
        model.outputs.push_back(random_variable(rng, "out" + std::to_string(i)));
    }
    if (rng.chance(0.3)) model.defuzz = fuzzy::Defuzzifier::SampledCentroid;
    if (rng.chance(0.3)) model.sample_count = rng.int_range(2, 4999);

    const int n_rules = rng.int_range(1, 6);
    for (int r = 0; r < n_rules; ++r) {
        fuzzy::Rule rule;
        for (const auto& var : model.inputs) {
            if (!rule.antecedents.empty() && !rng.chance(0.7)) continue;
            const int t = rng.int_range(0, static_cast<int>(var.terms.size()) - 1);
            rule.antecedents.push_back({var.name, var.terms[t].name});
        }
        for (const auto& var : model.outputs) {
            if (!rule.consequents.empty() && !rng.chance(0.8)) continue;
            const int t = rng.int_range(0, static_cast<int>(var.terms.size()) - 1);
            rule.consequents.push_back({var.name, var.terms[t].name});
        }
        model.rules.push_back(std::move(rule));
    }
    return model;
}

// random bytes for parser fuzzing; biased toward DSL-ish text half the time
inline std::string random_bytes(Rng& rng) {
    static const char* words[] = {"fis",   "input", "output", "range", "if",    "then",
                                  "and",   "is",    "tri",    "gauss", "{",     "}",
                                  "(",     ")",     ",",      ":",     "1.5",   "-3",
                                  "x",     "#c",    "\n",     " ",     "99999", "."};
    std::string out;
    const int len = rng.int_range(0, 200);
    const bool texty = rng.chance(0.5);
    for (int i = 0; i < len; ++i) {
        if (texty) {
            out += words[rng.next_u64() % (sizeof(words) / sizeof(words[0]))];
        } else {
            out += static_cast<char>(rng.next_u64() & 0xFF);
        }
    }
    return out;
}

} // namespace testsup
