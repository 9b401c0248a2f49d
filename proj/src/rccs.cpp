#include "revccs/rccs.hpp"

#include <algorithm>
#include <functional>
#include <map>

using namespace std;

namespace revccs {

Memory Memory::pushed(const MemoryItem &item) const {
    Memory m = *this;
    m.items.push_back(item);
    return m;
}

Memory Memory::popped() const {
    Memory m = *this;
    m.items.pop_back();
    return m;
}

set<Ident> Memory::ids() const {
    set<Ident> out;
    for (const auto &it : items)
        if (!it.fork)
            out.insert(it.event.ident);
    return out;
}

set<Name> Memory::names() const {
    set<Name> out;
    for (const auto &it : items) {
        if (it.fork)
            continue;
        if (!it.event.action.is_tau())
            out.insert(it.event.action.name);
        for (const auto &n : it.event.alternative.free_names())
            out.insert(n);
    }
    return out;
}

static int compare_items(const MemoryItem &a, const MemoryItem &b, bool ignore_ids) {
    if (a.fork != b.fork)
        return a.fork ? -1 : 1;
    if (a.fork)
        return 0;
    if (!ignore_ids && a.event.ident != b.event.ident)
        return a.event.ident < b.event.ident ? -1 : 1;
    if (a.event.action != b.event.action)
        return a.event.action < b.event.action ? -1 : 1;
    return compare(a.event.alternative, b.event.alternative);
}

bool Memory::is_prefix_of(const Memory &other, bool strict) const {
    if (items.size() > other.items.size() || (strict && items.size() == other.items.size()))
        return false;
    for (size_t k = 0; k < items.size(); ++k)
        if (compare_items(items[k], other.items[k], false) != 0)
            return false;
    return true;
}

int compare(const Memory &a, const Memory &b, bool ignore_ids) {
    if (a.items.size() != b.items.size())
        return a.items.size() < b.items.size() ? -1 : 1;
    for (size_t k = 0; k < a.items.size(); ++k) {
        int c = compare_items(a.items[k], b.items[k], ignore_ids);
        if (c)
            return c;
    }
    return 0;
}

RccsProcess::RccsProcess() = default;

RccsProcess RccsProcess::thread(const Memory &memory, const CcsProcess &code) {
    RccsProcess r;
    r.kind_ = Kind::Thread;
    r.memory_ = memory;
    r.code_ = code;
    return r;
}

RccsProcess RccsProcess::par(const RccsProcess &left, const RccsProcess &right) {
    RccsProcess r;
    r.kind_ = Kind::Par;
    r.children_ = {left, right};
    return r;
}

RccsProcess RccsProcess::restrict(const RccsProcess &body, const Name &name) {
    RccsProcess r;
    r.kind_ = Kind::Restrict;
    r.children_ = {body};
    r.name_ = name;
    return r;
}

set<Ident> RccsProcess::ids() const {
    if (kind_ == Kind::Thread)
        return memory_.ids();
    set<Ident> out;
    for (const auto &c : children_) {
        auto s = c.ids();
        out.insert(s.begin(), s.end());
    }
    return out;
}

size_t RccsProcess::thread_count() const {
    if (kind_ == Kind::Thread)
        return 1;
    size_t n = 0;
    for (const auto &c : children_)
        n += c.thread_count();
    return n;
}

int compare(const RccsProcess &a, const RccsProcess &b, bool ignore_ids) {
    if (a.kind_ != b.kind_)
        return a.kind_ < b.kind_ ? -1 : 1;
    switch (a.kind_) {
    case RccsProcess::Kind::Thread: {
        int c = compare(a.memory_, b.memory_, ignore_ids);
        if (c)
            return c;
        return compare(a.code_, b.code_);
    }
    case RccsProcess::Kind::Restrict:
        if (a.name_ != b.name_)
            return a.name_ < b.name_ ? -1 : 1;
        return compare(a.children_[0], b.children_[0], ignore_ids);
    case RccsProcess::Kind::Par:
        for (size_t k = 0; k < 2; ++k) {
            int c = compare(a.children_[k], b.children_[k], ignore_ids);
            if (c)
                return c;
        }
        return 0;
    }
    return 0;
}

RccsProcess initial_state(const CcsProcess &p) {
    return RccsProcess::thread(Memory{}, p);
}

string pretty_memory(const Memory &m) {
    string s;
    for (auto it = m.items.rbegin(); it != m.items.rend(); ++it) {
        if (it->fork)
            s += "Y.";
        else
            s += "<" + to_string(it->event.ident) + "," + it->event.action.str() + "," +
                 pretty_ccs(it->event.alternative) + ">.";
    }
    return s + "{}";
}

string pretty_rccs(const RccsProcess &r) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread: {
        string code = pretty_ccs(r.code());
        if (r.code().kind() == CcsProcess::Kind::Par)
            code = "(" + code + ")";
        return pretty_memory(r.memory()) + " |> " + code;
    }
    case RccsProcess::Kind::Par: {
        string left = pretty_rccs(r.left());
        if (r.left().kind() == RccsProcess::Kind::Par)
            left = "(" + left + ")";
        return left + " | " + pretty_rccs(r.right());
    }
    case RccsProcess::Kind::Restrict:
        return "(" + pretty_rccs(r.body()) + ") \\ " + r.restricted_name().text;
    }
    return "";
}

namespace {

using detail::Lexer;

class RccsParser {
public:
    explicit RccsParser(Lexer &lex) : lex_(lex), ccs_(lex, ParseOptions{}) {}

    RccsProcess parse_proc() {
        RccsProcess left = parse_unit();
        if (lex_.peek().kind == Lexer::Tok::Bar) {
            lex_.next();
            return RccsProcess::par(left, parse_proc());
        }
        return left;
    }

private:
    RccsProcess parse_unit() {
        if (lex_.peek().kind == Lexer::Tok::LParen) {
            lex_.next();
            RccsProcess r = parse_proc();
            expect(Lexer::Tok::RParen, "')'");
            while (lex_.peek().kind == Lexer::Tok::Backslash) {
                lex_.next();
                r = RccsProcess::restrict(r, ccs_.parse_name());
            }
            return r;
        }
        Memory m = parse_memory();
        expect(Lexer::Tok::Triangle, "'|>'");
        return RccsProcess::thread(m, ccs_.parse_sum());
    }

    Memory parse_memory() {
        vector<MemoryItem> top_first;
        for (;;) {
            const auto &t = lex_.peek();
            if (t.kind == Lexer::Tok::LBrace) {
                lex_.next();
                expect(Lexer::Tok::RBrace, "'}'");
                break;
            }
            if (t.kind == Lexer::Tok::Name && t.text == "Y") {
                lex_.next();
                top_first.push_back(MemoryItem::fork_marker());
            } else if (t.kind == Lexer::Tok::Less) {
                lex_.next();
                const auto num = lex_.peek();
                if (num.kind != Lexer::Tok::Number)
                    lex_.fail("expected an identifier");
                lex_.next();
                MemoryEvent e;
                e.ident = static_cast<Ident>(stoul(num.text));
                if (e.ident == 0)
                    lex_.fail_at(num, "identifiers start at 1");
                expect(Lexer::Tok::Comma, "','");
                e.action = ccs_.parse_label();
                expect(Lexer::Tok::Comma, "','");
                e.alternative = ccs_.parse_proc();
                expect(Lexer::Tok::Greater, "'>'");
                top_first.push_back(MemoryItem::of(e));
            } else {
                lex_.fail("expected a memory item, 'Y' or '{}'");
            }
            expect(Lexer::Tok::Dot, "'.'");
        }
        Memory m;
        m.items.assign(top_first.rbegin(), top_first.rend());
        return m;
    }

    void expect(Lexer::Tok kind, const string &what) {
        if (lex_.peek().kind != kind)
            lex_.fail("expected " + what);
        lex_.next();
    }

    Lexer &lex_;
    detail::CcsParser ccs_;
};

CcsProcess subst_free(const CcsProcess &p, const Name &from, const Name &to) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum: {
        vector<pair<ActionLabel, CcsProcess>> s;
        for (size_t k = 0; k < p.summand_count(); ++k) {
            ActionLabel l = p.summand_label(k);
            if (!l.is_tau() && l.name == from)
                l.name = to;
            s.emplace_back(l, subst_free(p.summand_continuation(k), from, to));
        }
        return CcsProcess::sum(move(s));
    }
    case CcsProcess::Kind::Par:
        return CcsProcess::par(subst_free(p.left(), from, to), subst_free(p.right(), from, to));
    case CcsProcess::Kind::Restrict:
        if (p.restricted_name() == from)
            return p;
        return CcsProcess::restrict(subst_free(p.body(), from, to), p.restricted_name());
    case CcsProcess::Kind::Choice: {
        vector<CcsProcess> bs;
        for (const auto &b : p.branches())
            bs.push_back(subst_free(b, from, to));
        return CcsProcess::choice(move(bs));
    }
    }
    return p;
}

void flatten_rccs_par(const RccsProcess &r, vector<RccsProcess> &out) {
    if (r.kind() == RccsProcess::Kind::Par) {
        flatten_rccs_par(r.left(), out);
        flatten_rccs_par(r.right(), out);
    } else {
        out.push_back(r);
    }
}

RccsProcess build_par(const vector<RccsProcess> &parts) {
    RccsProcess r = parts.back();
    for (size_t k = parts.size() - 1; k-- > 0;)
        r = RccsProcess::par(parts[k], r);
    return r;
}

RccsProcess expand_thread(const Memory &m, const CcsProcess &code) {
    switch (code.kind()) {
    case CcsProcess::Kind::Sum:
        return RccsProcess::thread(m, code);
    case CcsProcess::Kind::Par: {
        Memory forked = m.pushed(MemoryItem::fork_marker());
        return RccsProcess::par(expand_thread(forked, code.left()),
                                expand_thread(forked, code.right()));
    }
    case CcsProcess::Kind::Restrict: {
        Name a = code.restricted_name();
        CcsProcess body = code.body();
        auto used = m.names();
        if (used.count(a)) {
            auto fn = body.free_names();
            set<Name> avoid(fn.begin(), fn.end());
            avoid.insert(used.begin(), used.end());
            int k = 0;
            Name fresh;
            do {
                fresh = Name("%u" + to_string(k++));
            } while (avoid.count(fresh));
            body = subst_free(body, a, fresh);
            a = fresh;
        }
        return RccsProcess::restrict(expand_thread(m, body), a);
    }
    case CcsProcess::Kind::Choice:
        break;
    }
    throw PreconditionError("unguarded choice has no reversible semantics");
}

RccsProcess expand(const RccsProcess &r) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        return expand_thread(r.memory(), normal_form(r.code(), {}, 0, "%t"));
    case RccsProcess::Kind::Par:
        return RccsProcess::par(expand(r.left()), expand(r.right()));
    case RccsProcess::Kind::Restrict:
        return RccsProcess::restrict(expand(r.body()), r.restricted_name());
    }
    return r;
}

Memory rename_memory(const Memory &m, const map<Name, Name> &env, int depth) {
    Memory out;
    for (const auto &it : m.items) {
        if (it.fork) {
            out.items.push_back(it);
            continue;
        }
        MemoryEvent e = it.event;
        auto f = env.find(e.action.name);
        if (f != env.end())
            e.action.name = f->second;
        e.alternative = normal_form(e.alternative, env, depth, "%");
        out.items.push_back(MemoryItem::of(e));
    }
    return out;
}

RccsProcess rename_names(const RccsProcess &r, const map<Name, Name> &env, int depth) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        return RccsProcess::thread(rename_memory(r.memory(), env, depth),
                                   normal_form(r.code(), env, depth, "%"));
    case RccsProcess::Kind::Par:
        return RccsProcess::par(rename_names(r.left(), env, depth),
                                rename_names(r.right(), env, depth));
    case RccsProcess::Kind::Restrict: {
        Name fresh("%" + to_string(depth));
        map<Name, Name> inner = env;
        inner[r.restricted_name()] = fresh;
        return RccsProcess::restrict(rename_names(r.body(), inner, depth + 1), fresh);
    }
    }
    return r;
}

RccsProcess sort_components(const RccsProcess &r, bool ignore_ids) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        return r;
    case RccsProcess::Kind::Restrict:
        return RccsProcess::restrict(sort_components(r.body(), ignore_ids), r.restricted_name());
    case RccsProcess::Kind::Par: {
        vector<RccsProcess> parts;
        flatten_rccs_par(r, parts);
        for (auto &p : parts)
            p = sort_components(p, ignore_ids);
        stable_sort(parts.begin(), parts.end(), [&](const auto &x, const auto &y) {
            return compare(x, y, ignore_ids) < 0;
        });
        return build_par(parts);
    }
    }
    return r;
}

void collect_ident_order(const RccsProcess &r, vector<Ident> &order, set<Ident> &seen) {
    if (r.kind() == RccsProcess::Kind::Thread) {
        for (const auto &it : r.memory().items)
            if (!it.fork && seen.insert(it.event.ident).second)
                order.push_back(it.event.ident);
        return;
    }
    for (const auto &c : r.children())
        collect_ident_order(c, order, seen);
}

RccsProcess apply_renaming(const RccsProcess &r, const map<Ident, Ident> &ren) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread: {
        Memory m = r.memory();
        for (auto &it : m.items)
            if (!it.fork)
                it.event.ident = ren.at(it.event.ident);
        return RccsProcess::thread(m, r.code());
    }
    case RccsProcess::Kind::Par:
        return RccsProcess::par(apply_renaming(r.left(), ren), apply_renaming(r.right(), ren));
    case RccsProcess::Kind::Restrict:
        return RccsProcess::restrict(apply_renaming(r.body(), ren), r.restricted_name());
    }
    return r;
}

map<Ident, Ident> first_use_renaming(const RccsProcess &r) {
    vector<Ident> order;
    set<Ident> seen;
    collect_ident_order(r, order, seen);
    map<Ident, Ident> ren;
    for (size_t k = 0; k < order.size(); ++k)
        ren[order[k]] = static_cast<Ident>(k + 1);
    return ren;
}

struct ThreadSite {
    vector<int> path;
    const RccsProcess *node = nullptr;
    // restriction ancestors as (depth in path, name)
    vector<pair<size_t, Name>> restrictions;
};

void collect_threads(const RccsProcess &r, vector<int> &path,
                     vector<pair<size_t, Name>> &restr, vector<ThreadSite> &out) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        out.push_back({path, &r, restr});
        return;
    case RccsProcess::Kind::Par:
        for (int k = 0; k < 2; ++k) {
            path.push_back(k);
            collect_threads(r.children()[k], path, restr, out);
            path.pop_back();
        }
        return;
    case RccsProcess::Kind::Restrict:
        restr.emplace_back(path.size(), r.restricted_name());
        path.push_back(0);
        collect_threads(r.body(), path, restr, out);
        path.pop_back();
        restr.pop_back();
        return;
    }
}

vector<ThreadSite> thread_sites(const RccsProcess &r) {
    vector<ThreadSite> out;
    vector<int> path;
    vector<pair<size_t, Name>> restr;
    collect_threads(r, path, restr, out);
    return out;
}

// Whether a label can cross every restriction of t strictly below path depth `above`.
bool passes_restrictions(const ThreadSite &t, const ActionLabel &l, size_t above) {
    if (l.is_tau())
        return true;
    for (const auto &[depth, name] : t.restrictions)
        if (depth >= above && name == l.name)
            return false;
    return true;
}

size_t common_prefix(const vector<int> &a, const vector<int> &b) {
    size_t n = 0;
    while (n < a.size() && n < b.size() && a[n] == b[n])
        ++n;
    return n;
}

RccsProcess replace_at(const RccsProcess &r, const vector<int> &path, size_t pos,
                       const RccsProcess &sub) {
    if (pos == path.size())
        return sub;
    if (r.kind() == RccsProcess::Kind::Restrict)
        return RccsProcess::restrict(replace_at(r.body(), path, pos + 1, sub),
                                     r.restricted_name());
    if (path[pos] == 0)
        return RccsProcess::par(replace_at(r.left(), path, pos + 1, sub), r.right());
    return RccsProcess::par(r.left(), replace_at(r.right(), path, pos + 1, sub));
}

set<Ident> ids_except(const vector<ThreadSite> &sites, size_t skip1, size_t skip2) {
    set<Ident> out;
    for (size_t k = 0; k < sites.size(); ++k) {
        if (k == skip1 || k == skip2)
            continue;
        auto s = sites[k].node->memory().ids();
        out.insert(s.begin(), s.end());
    }
    return out;
}

}  // namespace

RccsProcess parse_rccs(const string &text) {
    Lexer lex(text);
    RccsParser parser(lex);
    RccsProcess r = parser.parse_proc();
    if (lex.peek().kind != Lexer::Tok::End)
        lex.fail("unexpected trailing input");
    return r;
}

namespace detail {

RccsProcess collapse(const RccsProcess &r) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        return r;
    case RccsProcess::Kind::Restrict: {
        RccsProcess b = collapse(r.body());
        if (b.kind() == RccsProcess::Kind::Thread && !b.memory().names().count(r.restricted_name()))
            return RccsProcess::thread(b.memory(),
                                       CcsProcess::restrict(b.code(), r.restricted_name()));
        return RccsProcess::restrict(b, r.restricted_name());
    }
    case RccsProcess::Kind::Par: {
        vector<RccsProcess> parts;
        flatten_rccs_par(collapse(r.left()), parts);
        flatten_rccs_par(collapse(r.right()), parts);
        sort(parts.begin(), parts.end());
        bool changed = true;
        while (changed && parts.size() > 1) {
            changed = false;
            for (size_t i = 0; i < parts.size() && !changed; ++i) {
                const auto &x = parts[i];
                if (x.kind() != RccsProcess::Kind::Thread || x.memory().empty() ||
                    !x.memory().top().fork)
                    continue;
                for (size_t j = i + 1; j < parts.size(); ++j) {
                    const auto &y = parts[j];
                    if (y.kind() == RccsProcess::Kind::Thread && y.memory() == x.memory()) {
                        parts[i] = RccsProcess::thread(x.memory().popped(),
                                                       CcsProcess::par(x.code(), y.code()));
                        parts.erase(parts.begin() + static_cast<long>(j));
                        changed = true;
                        break;
                    }
                }
            }
        }
        if (parts.size() == 1)
            return parts[0];
        return build_par(parts);
    }
    }
    return r;
}

vector<Transition> forward_moves(const RccsProcess &normal, optional<Ident> ident) {
    vector<Transition> out;
    auto used = normal.ids();
    Ident i = 1;
    if (ident) {
        if (*ident == 0 || used.count(*ident))
            return out;
        i = *ident;
    } else {
        while (used.count(i))
            ++i;
    }
    auto sites = thread_sites(normal);
    auto event_for = [&](const CcsProcess &code, size_t k) {
        return MemoryEvent{i, code.summand_label(k), code.sum_without(k)};
    };
    auto fired = [&](const ThreadSite &t, const MemoryEvent &e, const CcsProcess &cont) {
        return RccsProcess::thread(t.node->memory().pushed(MemoryItem::of(e)), cont);
    };
    for (const auto &t : sites) {
        const CcsProcess &code = t.node->code();
        if (code.kind() != CcsProcess::Kind::Sum)
            throw PreconditionError("thread code is not a guarded sum");
        for (size_t k = 0; k < code.summand_count(); ++k) {
            const auto &l = code.summand_label(k);
            if (!passes_restrictions(t, l, 0))
                continue;
            MemoryEvent e = event_for(code, k);
            Transition tr;
            tr.source = normal;
            tr.direction = Direction::Forward;
            tr.ident = i;
            tr.action = l;
            tr.target = replace_at(normal, t.path, 0, fired(t, e, code.summand_continuation(k)));
            tr.touched = {{t.path, t.node->memory()}};
            tr.events = {e};
            out.push_back(move(tr));
        }
    }
    for (size_t x = 0; x < sites.size(); ++x) {
        for (size_t y = x + 1; y < sites.size(); ++y) {
            const auto &t1 = sites[x];
            const auto &t2 = sites[y];
            size_t lca = common_prefix(t1.path, t2.path);
            const CcsProcess &c1 = t1.node->code();
            const CcsProcess &c2 = t2.node->code();
            for (size_t k1 = 0; k1 < c1.summand_count(); ++k1) {
                for (size_t k2 = 0; k2 < c2.summand_count(); ++k2) {
                    const auto &l1 = c1.summand_label(k1);
                    const auto &l2 = c2.summand_label(k2);
                    if (l1.complement() != l2)
                        continue;
                    if (!passes_restrictions(t1, l1, lca + 1) ||
                        !passes_restrictions(t2, l2, lca + 1))
                        continue;
                    MemoryEvent e1 = event_for(c1, k1);
                    MemoryEvent e2 = event_for(c2, k2);
                    Transition tr;
                    tr.source = normal;
                    tr.direction = Direction::Forward;
                    tr.ident = i;
                    tr.action = ActionLabel::tau();
                    RccsProcess mid =
                        replace_at(normal, t1.path, 0, fired(t1, e1, c1.summand_continuation(k1)));
                    tr.target = replace_at(mid, t2.path, 0, fired(t2, e2, c2.summand_continuation(k2)));
                    tr.touched = {{t1.path, t1.node->memory()}, {t2.path, t2.node->memory()}};
                    tr.events = {e1, e2};
                    out.push_back(move(tr));
                }
            }
        }
    }
    return out;
}

static RccsProcess undo(const ThreadSite &t) {
    const Memory &m = t.node->memory();
    const MemoryEvent &e = m.top().event;
    if (e.alternative.kind() != CcsProcess::Kind::Sum)
        throw IncoherentMemoryError("memory alternative is not a guarded sum");
    vector<pair<ActionLabel, CcsProcess>> summands{{e.action, t.node->code()}};
    for (size_t k = 0; k < e.alternative.summand_count(); ++k)
        summands.emplace_back(e.alternative.summand_label(k), e.alternative.summand_continuation(k));
    return RccsProcess::thread(m.popped(), CcsProcess::sum(move(summands)));
}

vector<Transition> backward_moves(const RccsProcess &normal) {
    vector<Transition> out;
    RccsProcess tree = collapse(normal);
    auto sites = thread_sites(tree);
    auto undoable = [](const ThreadSite &t) {
        const Memory &m = t.node->memory();
        return !m.empty() && !m.top().fork && !m.popped().ids().count(m.top().event.ident);
    };
    for (size_t x = 0; x < sites.size(); ++x) {
        const auto &t = sites[x];
        if (!undoable(t))
            continue;
        const MemoryEvent &e = t.node->memory().top().event;
        if (!passes_restrictions(t, e.action, 0) || ids_except(sites, x, x).count(e.ident))
            continue;
        Transition tr;
        tr.source = normal;
        tr.direction = Direction::Backward;
        tr.ident = e.ident;
        tr.action = e.action;
        tr.target = replace_at(tree, t.path, 0, undo(t));
        tr.touched = {{t.path, t.node->memory().popped()}};
        tr.events = {e};
        out.push_back(move(tr));
    }
    for (size_t x = 0; x < sites.size(); ++x) {
        for (size_t y = x + 1; y < sites.size(); ++y) {
            const auto &t1 = sites[x];
            const auto &t2 = sites[y];
            if (!undoable(t1) || !undoable(t2))
                continue;
            const MemoryEvent &e1 = t1.node->memory().top().event;
            const MemoryEvent &e2 = t2.node->memory().top().event;
            if (e1.ident != e2.ident || e1.action.complement() != e2.action || e1.action.is_tau())
                continue;
            size_t lca = common_prefix(t1.path, t2.path);
            if (!passes_restrictions(t1, e1.action, lca + 1) ||
                !passes_restrictions(t2, e2.action, lca + 1))
                continue;
            if (ids_except(sites, x, y).count(e1.ident))
                continue;
            Transition tr;
            tr.source = normal;
            tr.direction = Direction::Backward;
            tr.ident = e1.ident;
            tr.action = ActionLabel::tau();
            tr.target = replace_at(replace_at(tree, t1.path, 0, undo(t1)), t2.path, 0, undo(t2));
            tr.touched = {{t1.path, t1.node->memory().popped()},
                          {t2.path, t2.node->memory().popped()}};
            tr.events = {e1, e2};
            out.push_back(move(tr));
        }
    }
    return out;
}

}  // namespace detail

RccsProcess rccs_normal_form(const RccsProcess &r) {
    RccsProcess e = expand(detail::collapse(r));
    return sort_components(rename_names(e, {}, 0), false);
}

bool rccs_congruent(const RccsProcess &r, const RccsProcess &s) {
    return rccs_normal_form(r) == rccs_normal_form(s);
}

RccsProcess canonical_state(const RccsProcess &r, IdentRenaming *renaming) {
    RccsProcess cur = rccs_normal_form(r);
    map<Ident, Ident> total;
    for (Ident i : cur.ids())
        total[i] = i;
    cur = sort_components(cur, true);
    for (int round = 0; round < 8; ++round) {
        auto ren = first_use_renaming(cur);
        RccsProcess next = sort_components(apply_renaming(cur, ren), false);
        for (auto &[from, to] : total)
            to = ren.at(to);
        bool stable = next == cur;
        cur = move(next);
        if (stable)
            break;
    }
    if (renaming)
        renaming->assign(total.begin(), total.end());
    return cur;
}

string direction_name(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

static void normalize_targets(vector<Transition> &ts) {
    for (auto &t : ts)
        t.target = rccs_normal_form(t.target);
}

static RccsProcess checked_normal_form(const RccsProcess &r) {
    if (!is_reachable(r))
        throw IncoherentMemoryError("process is not reachable: " + pretty_rccs(r));
    return rccs_normal_form(r);
}

vector<Transition> forward_transitions(const RccsProcess &r) {
    auto ts = detail::forward_moves(checked_normal_form(r), nullopt);
    normalize_targets(ts);
    return ts;
}

vector<Transition> forward_transitions_with_ident(const RccsProcess &r, Ident ident) {
    auto ts = detail::forward_moves(checked_normal_form(r), ident);
    normalize_targets(ts);
    return ts;
}

vector<Transition> backward_transitions(const RccsProcess &r) {
    auto ts = detail::backward_moves(checked_normal_form(r));
    normalize_targets(ts);
    return ts;
}

CcsProcess origin(const RccsProcess &r) {
    RccsProcess cur = rccs_normal_form(r);
    size_t budget = 1;
    function<void(const RccsProcess &)> count = [&](const RccsProcess &x) {
        if (x.kind() == RccsProcess::Kind::Thread)
            budget += x.memory().items.size();
        for (const auto &c : x.children())
            count(c);
    };
    count(cur);
    for (;;) {
        auto moves = detail::backward_moves(cur);
        if (moves.empty())
            break;
        if (budget-- == 0)
            throw IncoherentMemoryError("rewinding does not terminate");
        cur = rccs_normal_form(moves.front().target);
    }
    RccsProcess c = detail::collapse(cur);
    if (c.kind() != RccsProcess::Kind::Thread || !c.memory().empty())
        throw IncoherentMemoryError("rewinding got stuck at " + pretty_rccs(cur));
    return normal_form(c.code());
}

bool is_reachable(const RccsProcess &r) {
    try {
        origin(r);
        return true;
    } catch (const IncoherentMemoryError &) {
        return false;
    } catch (const PreconditionError &) {
        return false;
    }
}

vector<Memory> touched_memories(const Transition &t) {
    vector<Memory> out;
    for (const auto &tm : t.touched)
        out.push_back(tm.memory);
    return out;
}

static void require_coinitial(const Transition &t1, const Transition &t2) {
    if (t1.direction != t2.direction || !rccs_congruent(t1.source, t2.source))
        throw PreconditionError("transitions are not coinitial");
}

bool concurrent_transitions(const Transition &t1, const Transition &t2) {
    require_coinitial(t1, t2);
    for (const auto &a : t1.touched)
        for (const auto &b : t2.touched)
            if (a.path == b.path)
                return false;
    return true;
}

static bool same_move(const Transition &candidate, const Transition &model) {
    if (candidate.action != model.action || candidate.touched.size() != model.touched.size())
        return false;
    for (size_t k = 0; k < model.touched.size(); ++k) {
        const auto &ce = candidate.events[k];
        const auto &me = model.events[k];
        if (!(candidate.touched[k].memory == model.touched[k].memory) ||
            ce.action != me.action || !(ce.alternative == me.alternative))
            return false;
    }
    return true;
}

static Transition replay(const Transition &model, const RccsProcess &from) {
    RccsProcess n = rccs_normal_form(from);
    auto ts = detail::forward_moves(n, model.ident);
    if (ts.empty())
        ts = detail::forward_moves(n, nullopt);
    for (auto &t : ts) {
        if (same_move(t, model)) {
            t.target = rccs_normal_form(t.target);
            return t;
        }
    }
    throw logic_error("square completion found no residual transition");
}

pair<Transition, Transition> diamond_complete(const Transition &t1, const Transition &t2) {
    if (t1.direction != Direction::Forward || t2.direction != Direction::Forward)
        throw PreconditionError("square completion needs forward transitions");
    if (!concurrent_transitions(t1, t2))
        throw PreconditionError("transitions are not concurrent");
    return {replay(t1, t2.target), replay(t2, t1.target)};
}

bool direct_cause(const vector<Transition> &trace, size_t i, size_t k) {
    if (i >= trace.size() || k >= trace.size() || i >= k)
        throw out_of_range("trace index out of range");
    for (size_t j = 0; j < trace.size(); ++j) {
        if (trace[j].direction != Direction::Forward)
            throw PreconditionError("trace is not forward-only");
        if (j + 1 < trace.size() && !rccs_congruent(trace[j].target, trace[j + 1].source))
            throw PreconditionError("trace is not composable");
    }
    auto extended = [](const Transition &t) {
        vector<Memory> out;
        for (size_t n = 0; n < t.touched.size(); ++n)
            out.push_back(t.touched[n].memory.pushed(MemoryItem::of(t.events[n])));
        return out;
    };
    for (const auto &a : extended(trace[i]))
        for (const auto &b : extended(trace[k]))
            if (a.is_prefix_of(b, true))
                return true;
    return false;
}

LtsGraph explore(const CcsProcess &p, const ExploreOptions &options) {
    LtsGraph g;
    map<RccsProcess, size_t> index;
    auto intern = [&](const RccsProcess &s) {
        auto it = index.find(s);
        if (it != index.end())
            return it->second;
        if (g.states.size() >= options.state_cap)
            throw ResourceLimitError("state cap of " + to_string(options.state_cap) +
                                     " states exceeded");
        size_t id = g.states.size();
        g.states.push_back(s);
        g.out_edges.emplace_back();
        index.emplace(s, id);
        return id;
    };
    g.root = intern(canonical_state(initial_state(p)));
    for (size_t s = 0; s < g.states.size(); ++s) {
        RccsProcess state = g.states[s];
        auto moves = detail::forward_moves(state, nullopt);
        auto back = detail::backward_moves(state);
        moves.insert(moves.end(), make_move_iterator(back.begin()), make_move_iterator(back.end()));
        for (const auto &m : moves) {
            LtsEdge e;
            e.source = s;
            e.direction = m.direction;
            e.ident = m.ident;
            e.action = m.action;
            RccsProcess target = canonical_state(m.target, &e.renaming);
            e.target = intern(target);
            bool duplicate = false;
            for (size_t k : g.out_edges[s]) {
                const auto &o = g.edges[k];
                if (o.target == e.target && o.direction == e.direction && o.ident == e.ident &&
                    o.action == e.action && o.renaming == e.renaming) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate)
                continue;
            g.out_edges[s].push_back(g.edges.size());
            g.edges.push_back(move(e));
        }
    }
    return g;
}

}  // namespace revccs
