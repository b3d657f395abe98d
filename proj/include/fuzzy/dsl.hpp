#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzy/model.hpp"

namespace fuzzy::dsl {

/// Location of a token in the source text, 1-based.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string code;    // stable machine identifier, e.g. "unknown-term"
    std::string message; // human-readable detail
};

struct ParseResult {
    std::optional<FisModel> model; // present iff no Error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

/// Parses the `.fis` text format:
///
///   model    := header option* (variable | rule)*
///   header   := "fis" IDENT
///   option   := "defuzz" ("coa" | "centroid") | "samples" INT
///   variable := ("input" | "output") IDENT "range" NUMBER NUMBER "{" term+ "}"
///   term     := IDENT ":" ("tri" "(" NUMBER "," NUMBER "," NUMBER ")"
///                         | "gauss" "(" NUMBER "," NUMBER ")")
///   rule     := "if" cond ("and" cond)* "then" assign ("," assign)*
///   cond     := IDENT "is" IDENT
///   assign   := IDENT "is" IDENT
///
/// "#" starts a comment running to end of line. Numbers are plain decimals
/// with optional sign and fraction, no exponents. Options may appear anywhere
/// between statements; the canonical form places them after the header.
/// The parser never throws on malformed input; it recovers to the next
/// statement and reports every problem it finds.
ParseResult parse_model(std::string_view text);

/// Canonical text form: LF line endings, single-space token separation,
/// numbers at 6 significant digits, declarations in model order.
/// parse_model(serialize_model(m)) reconstructs a structurally equal model.
std::string serialize_model(const FisModel& model);

/// Model-level invariant checks plus lint warnings (terms never used by a
/// rule, input regions no rule covers). Diagnostics carry a zero span since
/// there is no source text.
std::vector<Diagnostic> validate_model(const FisModel& model);

/// 6-significant-digit decimal rendering without exponents; shared by the
/// serializer and the CSV writers.
std::string format_sig6(double value);

} // namespace fuzzy::dsl
