#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revccs {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct Name {
    std::string text;

    Name() = default;
    explicit Name(std::string t);
    auto operator<=>(const Name &) const = default;
};

bool is_valid_name(const std::string &text);

enum class Polarity : std::uint8_t { Input, Output, Tau };

struct ActionLabel {
    Polarity polarity = Polarity::Tau;
    Name name;

    static ActionLabel input(const std::string &n) { return {Polarity::Input, Name(n)}; }
    static ActionLabel output(const std::string &n) { return {Polarity::Output, Name(n)}; }
    static ActionLabel tau() { return {Polarity::Tau, Name()}; }

    bool is_tau() const { return polarity == Polarity::Tau; }
    ActionLabel complement() const;
    // "a", "~a" or "tau"
    std::string str() const;
    auto operator<=>(const ActionLabel &) const = default;
};

ActionLabel parse_action_label(const std::string &text);

/*
  Recursion-free CCS term. Sum with no summands is the inactive process.
  Choice is an unguarded sum of arbitrary processes; it only has a
  denotation and is accepted by the parser on request.
*/
class CcsProcess {
public:
    enum class Kind : std::uint8_t { Sum, Par, Restrict, Choice };

    CcsProcess();
    static CcsProcess nil();
    static CcsProcess prefix(const ActionLabel &label, const CcsProcess &continuation);
    static CcsProcess sum(std::vector<std::pair<ActionLabel, CcsProcess>> summands);
    static CcsProcess par(const CcsProcess &left, const CcsProcess &right);
    static CcsProcess restrict(const CcsProcess &body, const Name &name);
    static CcsProcess choice(std::vector<CcsProcess> branches);

    Kind kind() const { return kind_; }
    bool is_nil() const { return kind_ == Kind::Sum && labels_.empty(); }

    std::size_t summand_count() const { return labels_.size(); }
    const ActionLabel &summand_label(std::size_t k) const { return labels_[k]; }
    const CcsProcess &summand_continuation(std::size_t k) const { return children_[k]; }
    // the sum with summand k removed
    CcsProcess sum_without(std::size_t k) const;

    const CcsProcess &left() const { return children_[0]; }
    const CcsProcess &right() const { return children_[1]; }
    const CcsProcess &body() const { return children_[0]; }
    const Name &restricted_name() const { return name_; }
    const std::vector<CcsProcess> &branches() const { return children_; }

    bool has_choice() const;
    std::size_t prefix_count() const;
    std::vector<Name> free_names() const;

    friend int compare(const CcsProcess &a, const CcsProcess &b);
    friend bool operator==(const CcsProcess &a, const CcsProcess &b) { return compare(a, b) == 0; }
    friend bool operator<(const CcsProcess &a, const CcsProcess &b) { return compare(a, b) < 0; }

private:
    Kind kind_ = Kind::Sum;
    std::vector<ActionLabel> labels_;
    std::vector<CcsProcess> children_;
    Name name_;
};

struct ParseOptions {
    bool allow_unguarded_choice = false;
};

CcsProcess parse_ccs(const std::string &text, const ParseOptions &options = {});
std::string pretty_ccs(const CcsProcess &p);

// Renames free names through env; bound names are renamed "%k" by binder depth.
CcsProcess rename_bound(const CcsProcess &p, const std::map<Name, Name> &env,
                        int depth, const std::string &bound_prefix = "%");
// AC normal form (flattened and sorted | and +, no 0 components, canonical bound names)
CcsProcess normal_form(const CcsProcess &p);
CcsProcess normal_form(const CcsProcess &p, const std::map<Name, Name> &env,
                       int depth, const std::string &bound_prefix);

bool alpha_eq(const CcsProcess &p, const CcsProcess &q);
bool ccs_congruent(const CcsProcess &p, const CcsProcess &q);

namespace detail {
// Shared tokenizer/parser state, also used by the RCCS state parser.
class Lexer {
public:
    explicit Lexer(const std::string &text);

    enum class Tok { End, Name, Number, Tilde, Dot, Plus, Bar, LParen, RParen,
                     Backslash, Less, Greater, Comma, LBrace, RBrace, Triangle, Semicolon, Colon,
                     Minus };
    struct Token {
        Tok kind = Tok::End;
        std::string text;
        int line = 1;
        int column = 1;
    };

    const Token &peek(std::size_t ahead = 0) const;
    Token next();
    [[noreturn]] void fail(const std::string &message) const;
    [[noreturn]] void fail_at(const Token &tok, const std::string &message) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

class CcsParser {
public:
    CcsParser(Lexer &lexer, const ParseOptions &options) : lex_(lexer), options_(options) {}
    CcsProcess parse_proc();
    CcsProcess parse_sum();
    CcsProcess parse_unit();
    ActionLabel parse_label();
    Name parse_name();

private:
    CcsProcess parse_atom();
    Lexer &lex_;
    ParseOptions options_;
};
}  // namespace detail

}  // namespace revccs
