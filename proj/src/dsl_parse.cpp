#include "fuzzy/dsl.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <utility>

namespace fuzzy::dsl {

namespace {

enum class Tok {
    Ident,
    Number,
    KwFis,
    KwInput,
    KwOutput,
    KwRange,
    KwIf,
    KwThen,
    KwAnd,
    KwIs,
    KwTri,
    KwGauss,
    KwDefuzz,
    KwSamples,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    End,
    Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
    double number = 0.0;
};

const std::map<std::string, Tok, std::less<>>& keywords() {
    static const std::map<std::string, Tok, std::less<>> kw = {
        {"fis", Tok::KwFis},     {"input", Tok::KwInput},     {"output", Tok::KwOutput},
        {"range", Tok::KwRange}, {"if", Tok::KwIf},           {"then", Tok::KwThen},
        {"and", Tok::KwAnd},     {"is", Tok::KwIs},           {"tri", Tok::KwTri},
        {"gauss", Tok::KwGauss}, {"defuzz", Tok::KwDefuzz},   {"samples", Tok::KwSamples},
    };
    return kw;
}

const char* token_name(Tok kind) {
    switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::KwFis: return "'fis'";
    case Tok::KwInput: return "'input'";
    case Tok::KwOutput: return "'output'";
    case Tok::KwRange: return "'range'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwAnd: return "'and'";
    case Tok::KwIs: return "'is'";
    case Tok::KwTri: return "'tri'";
    case Tok::KwGauss: return "'gauss'";
    case Tok::KwDefuzz: return "'defuzz'";
    case Tok::KwSamples: return "'samples'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid character";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws_and_comments();
            Token tok = next();
            const bool end = tok.kind == Tok::End;
            out.push_back(std::move(tok));
            if (end) break;
        }
        return out;
    }

private:
    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        Token tok;
        tok.span = {line_, col_, 0};
        if (pos_ >= text_.size()) {
            tok.kind = Tok::End;
            return tok;
        }
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                advance();
            }
            tok.text = std::string(text_.substr(start, pos_ - start));
            const auto it = keywords().find(tok.text);
            tok.kind = it == keywords().end() ? Tok::Ident : it->second;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
                   c == '.') {
            tok.kind = lex_number() ? Tok::Number : Tok::Bad;
            tok.text = std::string(text_.substr(start, pos_ - start));
            if (tok.kind == Tok::Number) tok.number = std::strtod(tok.text.c_str(), nullptr);
        } else {
            switch (c) {
            case '{': tok.kind = Tok::LBrace; break;
            case '}': tok.kind = Tok::RBrace; break;
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case ',': tok.kind = Tok::Comma; break;
            case ':': tok.kind = Tok::Colon; break;
            default: tok.kind = Tok::Bad; break;
            }
            advance();
            tok.text = std::string(text_.substr(start, pos_ - start));
        }
        tok.span.length = static_cast<int>(pos_ - start);
        return tok;
    }

    // sign? (digits ('.' digits*)? | '.' digits); no exponents
    bool lex_number() {
        std::size_t p = pos_;
        if (text_[p] == '-' || text_[p] == '+') ++p;
        std::size_t digits = 0;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
            ++p;
            ++digits;
        }
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            std::size_t frac = 0;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                ++p;
                ++frac;
            }
            if (digits == 0 && frac == 0) {
                advance(); // lone sign or dot
                return false;
            }
        } else if (digits == 0) {
            advance();
            return false;
        }
        while (pos_ < p) advance();
        return true;
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct ParseBail {};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    ParseResult run() {
        parse_header();
        while (!at(Tok::End)) {
            try {
                parse_statement();
            } catch (const ParseBail&) {
                recover();
            }
        }
        resolve_rules();
        finish_checks();

        ParseResult result;
        result.diagnostics = std::move(diags_);
        bool has_error = false;
        for (const auto& d : result.diagnostics) {
            if (d.severity == Severity::Error) has_error = true;
        }
        if (!has_error) result.model = std::move(model_);
        return result;
    }

private:
    // --- token plumbing -------------------------------------------------
    const Token& peek() const { return tokens_[pos_]; }
    bool at(Tok kind) const { return peek().kind == kind; }

    const Token& consume() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    const Token& expect(Tok kind, const char* what) {
        if (at(kind)) return consume();
        error(peek().span, "unexpected-token",
              std::string("expected ") + what + ", found " + token_name(peek().kind) +
                  (peek().text.empty() ? "" : " '" + peek().text + "'"));
        throw ParseBail{};
    }

    void error(SourceSpan span, std::string code, std::string message) {
        diags_.push_back({Severity::Error, span, std::move(code), std::move(message)});
    }

    bool at_statement_start() const {
        switch (peek().kind) {
        case Tok::KwInput:
        case Tok::KwOutput:
        case Tok::KwIf:
        case Tok::KwDefuzz:
        case Tok::KwSamples:
        case Tok::KwFis:
            return true;
        default:
            return false;
        }
    }

    void recover() {
        while (!at(Tok::End) && !at_statement_start()) consume();
    }

    // --- grammar --------------------------------------------------------
    void parse_header() {
        if (at(Tok::KwFis)) {
            consume();
            try {
                model_.name = expect(Tok::Ident, "model name").text;
            } catch (const ParseBail&) {
                recover();
            }
            return;
        }
        error(peek().span, "missing-header", "model must start with 'fis <name>'");
    }

    void parse_statement() {
        switch (peek().kind) {
        case Tok::KwInput:
        case Tok::KwOutput:
            parse_variable();
            break;
        case Tok::KwIf:
            parse_rule();
            break;
        case Tok::KwDefuzz:
            parse_defuzz();
            break;
        case Tok::KwSamples:
            parse_samples();
            break;
        case Tok::KwFis:
            error(peek().span, "duplicate-header", "'fis' header may appear only once");
            consume();
            if (at(Tok::Ident)) consume();
            break;
        default:
            error(peek().span, "unexpected-token",
                  std::string("expected a statement, found ") + token_name(peek().kind) +
                      (peek().text.empty() ? "" : " '" + peek().text + "'"));
            throw ParseBail{};
        }
    }

    void parse_defuzz() {
        consume();
        const Token& value = expect(Tok::Ident, "'coa' or 'centroid'");
        if (value.text == "coa") {
            model_.defuzz = Defuzzifier::PaperCoa;
        } else if (value.text == "centroid") {
            model_.defuzz = Defuzzifier::SampledCentroid;
        } else {
            error(value.span, "bad-defuzz", "defuzzifier must be 'coa' or 'centroid'");
        }
    }

    void parse_samples() {
        consume();
        const Token& value = expect(Tok::Number, "sample count");
        const double n = value.number;
        if (n < 2.0 || n != static_cast<double>(static_cast<long long>(n)) ||
            value.text.find('.') != std::string::npos) {
            error(value.span, "bad-sample-count", "sample count must be an integer >= 2");
            return;
        }
        model_.sample_count = static_cast<int>(n);
    }

    void parse_variable() {
        const bool is_input = peek().kind == Tok::KwInput;
        consume();
        const Token name = expect(Tok::Ident, "variable name");

        if (declared_vars_.count(name.text) != 0) {
            error(name.span, "duplicate-variable",
                  "variable '" + name.text + "' is already defined");
        }

        expect(Tok::KwRange, "'range'");
        const Token lo = expect(Tok::Number, "range lower bound");
        const Token hi = expect(Tok::Number, "range upper bound");
        if (!(lo.number < hi.number)) {
            error(hi.span, "bad-range", "range lower bound must be less than upper bound");
        }

        LinguisticVariable var;
        var.name = name.text;
        var.lo = lo.number;
        var.hi = hi.number;

        expect(Tok::LBrace, "'{'");
        std::set<std::string> term_names;
        while (!at(Tok::RBrace)) {
            if (at(Tok::End) || at_statement_start()) {
                error(peek().span, "unexpected-token", "expected a term or '}'");
                throw ParseBail{};
            }
            parse_term(var, term_names);
        }
        consume(); // '}'

        if (var.terms.size() < 2) {
            diags_.push_back({Severity::Warning, name.span, "too-few-terms",
                              "variable '" + var.name + "' has fewer than 2 terms"});
        }

        declared_vars_.emplace(var.name, is_input);
        if (is_input) {
            model_.inputs.push_back(std::move(var));
        } else {
            model_.outputs.push_back(std::move(var));
        }
    }

    void parse_term(LinguisticVariable& var, std::set<std::string>& term_names) {
        const Token name = expect(Tok::Ident, "term name");
        if (!term_names.insert(name.text).second) {
            error(name.span, "duplicate-term",
                  "term '" + name.text + "' is already defined in '" + var.name + "'");
        }
        expect(Tok::Colon, "':'");

        Term term;
        term.name = name.text;
        if (at(Tok::KwTri)) {
            consume();
            expect(Tok::LParen, "'('");
            const Token a = expect(Tok::Number, "number");
            expect(Tok::Comma, "','");
            const Token m = expect(Tok::Number, "number");
            expect(Tok::Comma, "','");
            const Token b = expect(Tok::Number, "number");
            expect(Tok::RParen, "')'");
            term.mf = Triangular{a.number, m.number, b.number};
            if (!mf_params_valid(term.mf)) {
                error(name.span, "bad-term-params",
                      "tri parameters must satisfy a <= m <= b and a < b");
            }
        } else if (at(Tok::KwGauss)) {
            consume();
            expect(Tok::LParen, "'('");
            const Token m = expect(Tok::Number, "number");
            expect(Tok::Comma, "','");
            const Token k = expect(Tok::Number, "number");
            expect(Tok::RParen, "')'");
            term.mf = Gaussian{m.number, k.number};
            if (!mf_params_valid(term.mf)) {
                error(name.span, "bad-term-params", "gauss standard deviation must be > 0");
            }
        } else {
            error(peek().span, "unexpected-token", "expected 'tri' or 'gauss'");
            throw ParseBail{};
        }

        if (mf_params_valid(term.mf) && !mf_support_intersects(term.mf, var.lo, var.hi)) {
            error(name.span, "term-outside-universe",
                  "term '" + term.name + "' has no support inside the range of '" + var.name +
                      "'");
        }
        var.terms.push_back(std::move(term));
    }

    struct RawClause {
        std::string var;
        std::string term;
        SourceSpan var_span;
        SourceSpan term_span;
    };
    struct RawRule {
        std::vector<RawClause> conditions;
        std::vector<RawClause> assignments;
    };

    RawClause parse_clause() {
        const Token var = expect(Tok::Ident, "variable name");
        expect(Tok::KwIs, "'is'");
        const Token term = expect(Tok::Ident, "term name");
        return {var.text, term.text, var.span, term.span};
    }

    void parse_rule() {
        consume(); // 'if'
        RawRule rule;
        rule.conditions.push_back(parse_clause());
        while (at(Tok::KwAnd)) {
            consume();
            rule.conditions.push_back(parse_clause());
        }
        expect(Tok::KwThen, "'then'");
        rule.assignments.push_back(parse_clause());
        while (at(Tok::Comma)) {
            consume();
            rule.assignments.push_back(parse_clause());
        }
        raw_rules_.push_back(std::move(rule));
    }

    // --- resolution and model checks -------------------------------------
    void resolve_clause(const RawClause& clause, bool antecedent,
                        std::set<std::string>& seen_vars, std::vector<Clause>& out) {
        const LinguisticVariable* var =
            antecedent ? model_.find_input(clause.var) : model_.find_output(clause.var);
        if (var == nullptr) {
            const bool other_side = antecedent ? model_.find_output(clause.var) != nullptr
                                               : model_.find_input(clause.var) != nullptr;
            if (other_side) {
                error(clause.var_span, antecedent ? "not-an-input" : "not-an-output",
                      "variable '" + clause.var + "' is " +
                          (antecedent ? "an output; conditions may only test inputs"
                                      : "an input; 'then' may only assign outputs"));
            } else {
                error(clause.var_span, "unknown-variable",
                      "variable '" + clause.var + "' is not defined");
            }
            return;
        }
        if (var->find_term(clause.term) == nullptr) {
            error(clause.term_span, "unknown-term",
                  "term '" + clause.term + "' is not defined for variable '" + clause.var +
                      "'");
            return;
        }
        if (!seen_vars.insert(clause.var).second) {
            error(clause.var_span,
                  antecedent ? "duplicate-antecedent" : "duplicate-consequent",
                  "variable '" + clause.var + "' appears more than once");
            return;
        }
        out.push_back({clause.var, clause.term});
    }

    void resolve_rules() {
        for (const auto& raw : raw_rules_) {
            Rule rule;
            std::set<std::string> seen_conds;
            std::set<std::string> seen_assigns;
            for (const auto& c : raw.conditions) {
                resolve_clause(c, /*antecedent=*/true, seen_conds, rule.antecedents);
            }
            for (const auto& a : raw.assignments) {
                resolve_clause(a, /*antecedent=*/false, seen_assigns, rule.consequents);
            }
            model_.rules.push_back(std::move(rule));
        }
    }

    void finish_checks() {
        if (raw_rules_.empty()) {
            error(tokens_.front().span, "no-rules", "model defines no rules");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;
    FisModel model_;
    std::map<std::string, bool> declared_vars_; // name -> is_input
    std::vector<RawRule> raw_rules_;
};

} // namespace

ParseResult parse_model(std::string_view text) { return Parser(text).run(); }

} // namespace fuzzy::dsl
