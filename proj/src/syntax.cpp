#include "revccs/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

using namespace std;

namespace revccs {

ParseError::ParseError(const string &message, int line, int column)
    : runtime_error(to_string(line) + ":" + to_string(column) + ": " + message),
      line_(line), column_(column) {
}

Name::Name(string t) : text(move(t)) {
}

bool is_valid_name(const string &text) {
    if (text.empty() || !islower(static_cast<unsigned char>(text[0])))
        return false;
    for (char c : text)
        if (!isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

ActionLabel ActionLabel::complement() const {
    switch (polarity) {
    case Polarity::Input:
        return {Polarity::Output, name};
    case Polarity::Output:
        return {Polarity::Input, name};
    case Polarity::Tau:
        break;
    }
    return *this;
}

string ActionLabel::str() const {
    switch (polarity) {
    case Polarity::Input:
        return name.text;
    case Polarity::Output:
        return "~" + name.text;
    case Polarity::Tau:
        break;
    }
    return "tau";
}

ActionLabel parse_action_label(const string &text) {
    if (text == "tau")
        return ActionLabel::tau();
    if (!text.empty() && text[0] == '~' && is_valid_name(text.substr(1)))
        return ActionLabel::output(text.substr(1));
    if (is_valid_name(text))
        return ActionLabel::input(text);
    throw ParseError("invalid action label '" + text + "'", 1, 1);
}

CcsProcess::CcsProcess() = default;

CcsProcess CcsProcess::nil() {
    return CcsProcess();
}

CcsProcess CcsProcess::prefix(const ActionLabel &label, const CcsProcess &continuation) {
    return sum({{label, continuation}});
}

CcsProcess CcsProcess::sum(vector<pair<ActionLabel, CcsProcess>> summands) {
    CcsProcess p;
    p.kind_ = Kind::Sum;
    for (auto &[label, cont] : summands) {
        if (label.is_tau())
            throw invalid_argument("tau cannot be used as a prefix");
        p.labels_.push_back(label);
        p.children_.push_back(move(cont));
    }
    return p;
}

CcsProcess CcsProcess::par(const CcsProcess &left, const CcsProcess &right) {
    CcsProcess p;
    p.kind_ = Kind::Par;
    p.children_ = {left, right};
    return p;
}

CcsProcess CcsProcess::restrict(const CcsProcess &body, const Name &name) {
    CcsProcess p;
    p.kind_ = Kind::Restrict;
    p.children_ = {body};
    p.name_ = name;
    return p;
}

CcsProcess CcsProcess::choice(vector<CcsProcess> branches) {
    vector<CcsProcess> flat;
    for (auto &b : branches) {
        if (b.kind_ == Kind::Choice)
            flat.insert(flat.end(), b.children_.begin(), b.children_.end());
        else
            flat.push_back(move(b));
    }
    bool all_sums = all_of(flat.begin(), flat.end(),
                           [](const CcsProcess &b) { return b.kind_ == Kind::Sum; });
    if (all_sums) {
        CcsProcess p;
        for (auto &b : flat) {
            p.labels_.insert(p.labels_.end(), b.labels_.begin(), b.labels_.end());
            p.children_.insert(p.children_.end(), b.children_.begin(), b.children_.end());
        }
        return p;
    }
    if (flat.size() == 1)
        return flat[0];
    CcsProcess p;
    p.kind_ = Kind::Choice;
    p.children_ = move(flat);
    return p;
}

CcsProcess CcsProcess::sum_without(size_t k) const {
    CcsProcess p;
    for (size_t j = 0; j < labels_.size(); ++j) {
        if (j == k)
            continue;
        p.labels_.push_back(labels_[j]);
        p.children_.push_back(children_[j]);
    }
    return p;
}

bool CcsProcess::has_choice() const {
    if (kind_ == Kind::Choice)
        return true;
    return any_of(children_.begin(), children_.end(),
                  [](const CcsProcess &c) { return c.has_choice(); });
}

size_t CcsProcess::prefix_count() const {
    size_t n = labels_.size();
    for (const auto &c : children_)
        n += c.prefix_count();
    return n;
}

static void collect_free(const CcsProcess &p, set<Name> &bound, set<Name> &out) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum:
        for (size_t k = 0; k < p.summand_count(); ++k) {
            const auto &l = p.summand_label(k);
            if (!l.is_tau() && !bound.count(l.name))
                out.insert(l.name);
            collect_free(p.summand_continuation(k), bound, out);
        }
        break;
    case CcsProcess::Kind::Restrict: {
        bool fresh = bound.insert(p.restricted_name()).second;
        collect_free(p.body(), bound, out);
        if (fresh)
            bound.erase(p.restricted_name());
        break;
    }
    default:
        for (const auto &c : p.branches())
            collect_free(c, bound, out);
    }
}

vector<Name> CcsProcess::free_names() const {
    set<Name> bound, out;
    collect_free(*this, bound, out);
    return {out.begin(), out.end()};
}

int compare(const CcsProcess &a, const CcsProcess &b) {
    if (a.kind_ != b.kind_)
        return a.kind_ < b.kind_ ? -1 : 1;
    if (a.labels_.size() != b.labels_.size())
        return a.labels_.size() < b.labels_.size() ? -1 : 1;
    if (a.children_.size() != b.children_.size())
        return a.children_.size() < b.children_.size() ? -1 : 1;
    for (size_t k = 0; k < a.labels_.size(); ++k) {
        auto c = a.labels_[k] <=> b.labels_[k];
        if (c != 0)
            return c < 0 ? -1 : 1;
    }
    for (size_t k = 0; k < a.children_.size(); ++k) {
        int c = compare(a.children_[k], b.children_[k]);
        if (c != 0)
            return c;
    }
    if (a.name_ != b.name_)
        return a.name_ < b.name_ ? -1 : 1;
    return 0;
}

namespace detail {

Lexer::Lexer(const string &text) {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;
        if (isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '%') {
            size_t j = i + 1;
            while (j < text.size() &&
                   (isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tok.kind = Tok::Name;
            tok.text = text.substr(i, j - i);
            advance(j - i);
        } else if (isdigit(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            while (j < text.size() && isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            tok.kind = Tok::Number;
            tok.text = text.substr(i, j - i);
            advance(j - i);
        } else if (c == '|' && i + 1 < text.size() && text[i + 1] == '>') {
            tok.kind = Tok::Triangle;
            tok.text = "|>";
            advance(2);
        } else {
            static const string singles = "~.+|()\\<>,{};:-";
            static const Tok kinds[] = {Tok::Tilde, Tok::Dot, Tok::Plus, Tok::Bar, Tok::LParen,
                                        Tok::RParen, Tok::Backslash, Tok::Less, Tok::Greater,
                                        Tok::Comma, Tok::LBrace, Tok::RBrace, Tok::Semicolon,
                                        Tok::Colon, Tok::Minus};
            auto pos = singles.find(c);
            if (pos == string::npos)
                throw ParseError(string("unexpected character '") + c + "'", line, col);
            tok.kind = kinds[pos];
            tok.text = string(1, c);
            advance(1);
        }
        tokens_.push_back(tok);
    }
    Token end;
    end.line = line;
    end.column = col;
    tokens_.push_back(end);
}

const Lexer::Token &Lexer::peek(size_t ahead) const {
    return tokens_[min(pos_ + ahead, tokens_.size() - 1)];
}

Lexer::Token Lexer::next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1)
        ++pos_;
    return t;
}

void Lexer::fail(const string &message) const {
    fail_at(peek(), message);
}

void Lexer::fail_at(const Token &tok, const string &message) const {
    throw ParseError(message, tok.line, tok.column);
}

static string describe(const Lexer::Token &t) {
    return t.kind == Lexer::Tok::End ? "end of input" : "'" + t.text + "'";
}

CcsProcess CcsParser::parse_proc() {
    CcsProcess left = parse_sum();
    if (lex_.peek().kind == Lexer::Tok::Bar) {
        lex_.next();
        return CcsProcess::par(left, parse_proc());
    }
    return left;
}

CcsProcess CcsParser::parse_sum() {
    vector<CcsProcess> units;
    vector<Lexer::Token> starts;
    starts.push_back(lex_.peek());
    units.push_back(parse_unit());
    while (lex_.peek().kind == Lexer::Tok::Plus) {
        lex_.next();
        starts.push_back(lex_.peek());
        units.push_back(parse_unit());
    }
    if (units.size() == 1)
        return units[0];
    for (size_t k = 0; k < units.size(); ++k) {
        if (units[k].kind() != CcsProcess::Kind::Sum && !options_.allow_unguarded_choice)
            lex_.fail_at(starts[k], "operands of '+' must be prefixed processes");
    }
    return CcsProcess::choice(move(units));
}

CcsProcess CcsParser::parse_unit() {
    auto k = lex_.peek().kind;
    if (k == Lexer::Tok::Name || k == Lexer::Tok::Tilde) {
        ActionLabel label = parse_label();
        CcsProcess cont;
        if (lex_.peek().kind == Lexer::Tok::Dot) {
            lex_.next();
            cont = parse_unit();
        }
        return CcsProcess::prefix(label, cont);
    }
    return parse_atom();
}

CcsProcess CcsParser::parse_atom() {
    CcsProcess p;
    const auto &t = lex_.peek();
    if (t.kind == Lexer::Tok::Number && t.text == "0") {
        lex_.next();
    } else if (t.kind == Lexer::Tok::LParen) {
        lex_.next();
        p = parse_proc();
        if (lex_.peek().kind != Lexer::Tok::RParen)
            lex_.fail("expected ')' but found " + describe(lex_.peek()));
        lex_.next();
    } else {
        lex_.fail("expected a process but found " + describe(t));
    }
    while (lex_.peek().kind == Lexer::Tok::Backslash) {
        lex_.next();
        if (lex_.peek().kind != Lexer::Tok::Name)
            lex_.fail("restriction expects a name but found " + describe(lex_.peek()));
        p = CcsProcess::restrict(p, parse_name());
    }
    return p;
}

ActionLabel CcsParser::parse_label() {
    bool output = false;
    if (lex_.peek().kind == Lexer::Tok::Tilde) {
        lex_.next();
        output = true;
    }
    auto t = lex_.peek();
    if (t.kind == Lexer::Tok::Name && t.text == "tau")
        lex_.fail("tau cannot be used as a prefix");
    Name n = parse_name();
    return output ? ActionLabel{Polarity::Output, n} : ActionLabel{Polarity::Input, n};
}

Name CcsParser::parse_name() {
    auto t = lex_.peek();
    if (t.kind != Lexer::Tok::Name)
        lex_.fail("expected a name but found " + describe(t));
    if (!is_valid_name(t.text) || t.text == "tau")
        lex_.fail("invalid name '" + t.text + "'");
    lex_.next();
    return Name(t.text);
}

}  // namespace detail

CcsProcess parse_ccs(const string &text, const ParseOptions &options) {
    detail::Lexer lex(text);
    detail::CcsParser parser(lex, options);
    CcsProcess p = parser.parse_proc();
    if (lex.peek().kind != detail::Lexer::Tok::End)
        lex.fail("unexpected " + detail::describe(lex.peek()));
    return p;
}

static string print_proc(const CcsProcess &p);

static string print_atom(const CcsProcess &p) {
    if (p.kind() == CcsProcess::Kind::Restrict) {
        const CcsProcess &b = p.body();
        string inner;
        if (b.kind() == CcsProcess::Kind::Restrict)
            inner = print_atom(b);
        else if (b.is_nil())
            inner = "0";
        else
            inner = "(" + print_proc(b) + ")";
        return inner + " \\ " + p.restricted_name().text;
    }
    if (p.is_nil())
        return "0";
    return "(" + print_proc(p) + ")";
}

static string print_summand(const CcsProcess &p, size_t k);

static string print_unit(const CcsProcess &p) {
    if (p.kind() == CcsProcess::Kind::Sum && p.summand_count() == 1)
        return print_summand(p, 0);
    return print_atom(p);
}

static string print_summand(const CcsProcess &p, size_t k) {
    string s = p.summand_label(k).str();
    const CcsProcess &cont = p.summand_continuation(k);
    if (!cont.is_nil())
        s += "." + print_unit(cont);
    return s;
}

static string print_sum_level(const CcsProcess &p) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum: {
        if (p.is_nil())
            return "0";
        string s;
        for (size_t k = 0; k < p.summand_count(); ++k) {
            if (k)
                s += " + ";
            s += print_summand(p, k);
        }
        return s;
    }
    case CcsProcess::Kind::Choice: {
        string s;
        for (size_t k = 0; k < p.branches().size(); ++k) {
            if (k)
                s += " + ";
            s += print_unit(p.branches()[k]);
        }
        return s;
    }
    default:
        return print_atom(p);
    }
}

static string print_proc(const CcsProcess &p) {
    if (p.kind() == CcsProcess::Kind::Par) {
        string left = p.left().kind() == CcsProcess::Kind::Par ? "(" + print_proc(p.left()) + ")"
                                                               : print_sum_level(p.left());
        return left + " | " + print_proc(p.right());
    }
    return print_sum_level(p);
}

string pretty_ccs(const CcsProcess &p) {
    return print_proc(p);
}

static ActionLabel rename_label(const ActionLabel &l, const map<Name, Name> &env) {
    if (l.is_tau())
        return l;
    auto it = env.find(l.name);
    return it == env.end() ? l : ActionLabel{l.polarity, it->second};
}

CcsProcess rename_bound(const CcsProcess &p, const map<Name, Name> &env, int depth,
                        const string &bound_prefix) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum: {
        vector<pair<ActionLabel, CcsProcess>> s;
        for (size_t k = 0; k < p.summand_count(); ++k)
            s.emplace_back(rename_label(p.summand_label(k), env),
                           rename_bound(p.summand_continuation(k), env, depth, bound_prefix));
        return CcsProcess::sum(move(s));
    }
    case CcsProcess::Kind::Par:
        return CcsProcess::par(rename_bound(p.left(), env, depth, bound_prefix),
                               rename_bound(p.right(), env, depth, bound_prefix));
    case CcsProcess::Kind::Restrict: {
        Name fresh(bound_prefix + to_string(depth));
        map<Name, Name> inner = env;
        inner[p.restricted_name()] = fresh;
        return CcsProcess::restrict(rename_bound(p.body(), inner, depth + 1, bound_prefix), fresh);
    }
    case CcsProcess::Kind::Choice: {
        vector<CcsProcess> bs;
        for (const auto &b : p.branches())
            bs.push_back(rename_bound(b, env, depth, bound_prefix));
        return CcsProcess::choice(move(bs));
    }
    }
    return p;
}

static void flatten_par(const CcsProcess &p, vector<CcsProcess> &out) {
    if (p.kind() == CcsProcess::Kind::Par) {
        flatten_par(p.left(), out);
        flatten_par(p.right(), out);
    } else if (!p.is_nil()) {
        out.push_back(p);
    }
}

static void sort_summands(vector<pair<ActionLabel, CcsProcess>> &s) {
    sort(s.begin(), s.end(), [](const auto &x, const auto &y) {
        if (x.first != y.first)
            return x.first < y.first;
        return x.second < y.second;
    });
}

CcsProcess normal_form(const CcsProcess &p, const map<Name, Name> &env, int depth,
                       const string &bound_prefix) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum: {
        vector<pair<ActionLabel, CcsProcess>> s;
        for (size_t k = 0; k < p.summand_count(); ++k)
            s.emplace_back(rename_label(p.summand_label(k), env),
                           normal_form(p.summand_continuation(k), env, depth, bound_prefix));
        sort_summands(s);
        return CcsProcess::sum(move(s));
    }
    case CcsProcess::Kind::Par: {
        vector<CcsProcess> parts;
        flatten_par(normal_form(p.left(), env, depth, bound_prefix), parts);
        flatten_par(normal_form(p.right(), env, depth, bound_prefix), parts);
        if (parts.empty())
            return CcsProcess::nil();
        sort(parts.begin(), parts.end());
        CcsProcess r = parts.back();
        for (size_t k = parts.size() - 1; k-- > 0;)
            r = CcsProcess::par(parts[k], r);
        return r;
    }
    case CcsProcess::Kind::Restrict: {
        Name fresh(bound_prefix + to_string(depth));
        map<Name, Name> inner = env;
        inner[p.restricted_name()] = fresh;
        return CcsProcess::restrict(normal_form(p.body(), inner, depth + 1, bound_prefix), fresh);
    }
    case CcsProcess::Kind::Choice: {
        vector<CcsProcess> bs;
        vector<pair<ActionLabel, CcsProcess>> guarded;
        auto add = [&](const CcsProcess &b) {
            if (b.kind() == CcsProcess::Kind::Sum) {
                for (size_t k = 0; k < b.summand_count(); ++k)
                    guarded.emplace_back(b.summand_label(k), b.summand_continuation(k));
            } else {
                bs.push_back(b);
            }
        };
        for (const auto &b : p.branches()) {
            CcsProcess nb = normal_form(b, env, depth, bound_prefix);
            if (nb.kind() == CcsProcess::Kind::Choice)
                for (const auto &x : nb.branches())
                    add(x);
            else
                add(nb);
        }
        if (!guarded.empty()) {
            sort_summands(guarded);
            bs.push_back(CcsProcess::sum(move(guarded)));
        }
        sort(bs.begin(), bs.end());
        if (bs.empty())
            return CcsProcess::nil();
        return CcsProcess::choice(move(bs));
    }
    }
    return p;
}

CcsProcess normal_form(const CcsProcess &p) {
    return normal_form(p, {}, 0, "%");
}

bool alpha_eq(const CcsProcess &p, const CcsProcess &q) {
    return rename_bound(p, {}, 0) == rename_bound(q, {}, 0);
}

bool ccs_congruent(const CcsProcess &p, const CcsProcess &q) {
    return normal_form(p) == normal_form(q);
}

}  // namespace revccs
