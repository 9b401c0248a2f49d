#include "paper_suite.hpp"

#include "revccs/corpus.hpp"
#include "revccs/encodings.hpp"
#include "revccs/equivalences.hpp"
#include "revccs/rccs.hpp"
#include "revccs/structures.hpp"
#include "revccs/syntax.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace revccs::cli {

namespace {

struct Claim {
    std::string name;
    std::function<std::string()> run;  // empty string on success
};

CcsProcess ccs(const std::string &text) {
    ParseOptions po;
    po.allow_unguarded_choice = true;
    return parse_ccs(text, po);
}

// events "x:l ...", configurations as lists of event names
ConfigurationStructure literal(const std::string &events,
                               const std::vector<std::string> &configs) {
    std::vector<EventId> ids;
    std::vector<Label> labels;
    std::map<std::string, std::size_t> index;
    std::istringstream in(events);
    std::string tok;
    while (in >> tok) {
        auto colon = tok.find(':');
        index[tok.substr(0, colon)] = ids.size();
        ids.push_back(EventId{Term::atom(ids.size() + 1)});
        labels.push_back(Label::action(tok.substr(colon + 1)));
    }
    std::vector<std::vector<std::size_t>> cfgs;
    for (const auto &c : configs) {
        std::istringstream cs(c);
        std::vector<std::size_t> x;
        while (cs >> tok) x.push_back(index.at(tok));
        cfgs.push_back(std::move(x));
    }
    return ConfigurationStructure(ids, labels, cfgs);
}

std::string expect(bool ok, const std::string &what) { return ok ? "" : what; }

std::string same_shape(const ConfigurationStructure &got, const ConfigurationStructure &want) {
    if (got.configs().size() != want.configs().size())
        return "expected " + std::to_string(want.configs().size()) + " configurations, got " +
               std::to_string(got.configs().size());
    return expect(iso_search(got, want, true).has_value(), "structures are not isomorphic");
}

std::string verdict(Relation r, const std::string &p, const std::string &q, bool want) {
    auto res = check(r, ccs(p), ccs(q));
    if (res.holds == want) return "";
    return relation_name(r) + " gave " + (res.holds ? "HOLDS" : "FAILS");
}

std::string label_multiset(const ConfigurationStructure &c, const EventSet &x) {
    std::vector<std::string> ls;
    for (auto e : x.elements()) ls.push_back(c.label(e).str());
    std::sort(ls.begin(), ls.end());
    std::string s;
    for (const auto &l : ls) s += (s.empty() ? "" : " ") + l;
    return "{" + s + "}";
}

std::vector<std::string> maximal_shapes(const ConfigurationStructure &c) {
    std::vector<std::string> out;
    for (const auto &x : maximal_configs(c)) out.push_back(label_multiset(c, x));
    std::sort(out.begin(), out.end());
    return out;
}

std::string idents_by_label(const IdentifiedStructure &s) {
    std::vector<std::string> out;
    for (std::size_t e = 0; e < s.event_count(); ++e)
        out.push_back(s.label(e).str() + "=" + s.ident(e).str());
    std::sort(out.begin(), out.end());
    std::string r;
    for (const auto &x : out) r += (r.empty() ? "" : " ") + x;
    return r;
}

const char *kSyncStart = "{} |> (a.b | c.~a)";
const char *kSyncAfterC = "(Y.{} |> a.b) | (<1,c,0>.Y.{} |> ~a)";
const char *kSyncEnd = "(<3,b,0>.<2,a,0>.Y.{} |> 0) | (<2,~a,0>.<1,c,0>.Y.{} |> 0)";
const char *kTwoEvents = "(<2,a,0>.Y.{} |> b) | (<1,c,0>.Y.{} |> 0)";

std::optional<Transition> find_move(const std::vector<Transition> &ts, Ident i,
                                    const std::string &action) {
    for (const auto &t : ts)
        if (t.ident == i && t.action.str() == action) return t;
    return std::nullopt;
}

std::vector<Claim> claims() {
    std::vector<Claim> cs;
    auto add = [&](std::string name, std::function<std::string()> f) {
        cs.push_back({std::move(name), std::move(f)});
    };

    add("parallel composition is associative up to congruence", [] {
        return expect(ccs_congruent(ccs("(a|b)|c"), ccs("a|(b|c)")), "not congruent");
    });
    add("memory distributes over parallel composition", [] {
        return expect(rccs_congruent(parse_rccs("<1,c,0>.{} |> (a|b)"),
                                     parse_rccs("(Y.<1,c,0>.{} |> a) | (Y.<1,c,0>.{} |> b)")),
                      "not congruent");
    });
    add("restriction scopes over a memory not mentioning the name", [] {
        return expect(rccs_congruent(parse_rccs("{} |> (a.0)\\b"), parse_rccs("({} |> a.0)\\b")),
                      "not congruent");
    });
    add("a.b|c.~a: after 1:c a synchronization 2:tau is enabled", [] {
        auto ts = forward_transitions(parse_rccs(kSyncAfterC));
        return expect(find_move(ts, 2, "tau").has_value(), "no 2:tau transition");
    });
    add("a.b|c after 1:c and 2:a: both events can be undone", [] {
        auto ts = backward_transitions(parse_rccs(kTwoEvents));
        return expect(find_move(ts, 1, "c") && find_move(ts, 2, "a"), "missing backward move");
    });
    add("origin of the a.b|c.~a end state is a.b|c.~a", [] {
        return expect(origin(parse_rccs(kSyncEnd)) == normal_form(ccs("a.b|c.~a")),
                      "origin differs");
    });
    add("origin of the a.b|c state with two events is a.b|c", [] {
        return expect(origin(parse_rccs(kTwoEvents)) == normal_form(ccs("(a.b)|c")),
                      "origin differs");
    });
    add("the a.b|c.~a end state is reachable", [] {
        return expect(is_reachable(parse_rccs(kSyncEnd)), "not reachable");
    });
    add("a.b|c.~a: the 1:c step extends the fork stack of the right thread", [] {
        auto ts = forward_transitions(parse_rccs(kSyncStart));
        auto t = find_move(ts, 1, "c");
        if (!t) return std::string("no 1:c move");
        auto ms = touched_memories(*t);
        return expect(ms.size() == 1 && pretty_memory(ms[0]) == "Y.{}", "unexpected stacks");
    });
    add("a.b|c.~a: the 2:tau step extends one stack per thread", [] {
        auto ts = forward_transitions(parse_rccs(kSyncAfterC));
        auto t = find_move(ts, 2, "tau");
        if (!t) return std::string("no 2:tau move");
        return expect(touched_memories(*t).size() == 2, "expected two stacks");
    });
    add("{}, {a1}, {a2}, {a1,a2} satisfies the axioms", [] {
        return expect(validate(literal("a1:a a2:a", {"", "a1", "a2", "a1 a2"})).ok(),
                      "validation failed");
    });
    add("causality: a before b in {a,b} of the synchronizing structure", [] {
        auto c = encode_ccs(ccs("a.b|~a"));
        std::optional<std::size_t> a, b;
        for (std::size_t e = 0; e < c.event_count(); ++e) {
            if (c.label(e).str() == "a") a = e;
            if (c.label(e).str() == "b") b = e;
        }
        EventSet x = c.empty_set();
        x.insert(*a);
        x.insert(*b);
        return expect(causality(c, x, c.event(*a), c.event(*b)) == Causality::Less, "not ordered");
    });
    add("concurrency: a1 and a2 are concurrent in a|a", [] {
        auto c = encode_ccs(ccs("a|a"));
        auto x = c.configs().back();
        return expect(causality(c, x, c.event(0), c.event(1)) == Causality::Concurrent,
                      "not concurrent");
    });
    add("a+a has two maximal configurations", [] {
        return expect(maximal_configs(encode_ccs(ccs("a+a"))).size() == 2, "wrong count");
    });
    add("a|a has one maximal configuration", [] {
        return expect(maximal_configs(encode_ccs(ccs("a|a"))).size() == 1, "wrong count");
    });
    add("the memory of a.b|c after c and a has maximal events a and c", [] {
        auto m = encode_memory(parse_rccs(kTwoEvents));
        std::vector<std::string> ls;
        for (const auto &e : maximal_events(m.base()))
            ls.push_back(m.label(*m.base().find_event(e)).str());
        std::sort(ls.begin(), ls.end());
        return expect(ls == std::vector<std::string>{"a", "c"}, "unexpected maximal events");
    });
    add("prefixing a onto {}, {b} gives the shape of a.b", [] {
        auto c = prefix(Label::action("a"), literal("b:b", {"", "b"}));
        return same_shape(c, literal("a:a b:b", {"", "a", "a b"}));
    });
    add("postfixing (c,1) onto 0 gives {}, {c} with c identified by 1", [] {
        auto s = postfix(IdentifiedStructure{ConfigurationStructure(), {}}, Label::action("c"),
                         Identifier::base(1));
        return expect(s.configs().size() == 2 && idents_by_label(s) == "c=1", "unexpected");
    });
    add("postfixing (~a,2) then gives the chain {} < {c} < {c,~a}", [] {
        IdentifiedStructure s{ConfigurationStructure(), {}};
        s = postfix(s, Label::action("c"), Identifier::base(1));
        s = postfix(s, Label::action("~a"), Identifier::base(2));
        auto err = same_shape(s.base(), literal("c:c o:~a", {"", "c", "c o"}));
        if (!err.empty()) return err;
        return expect(idents_by_label(s) == "c=1 ~a=2", "identifiers differ");
    });
    add("choice of two copies of a is a+a", [] {
        auto a = encode_ccs(ccs("a"));
        return same_shape(choice(a, a), literal("a1:a a2:a", {"", "a1", "a2"}));
    });
    add("product of the two thread memories of a.b|c.~a has 8 events", [] {
        auto s1 = encode_memory(parse_rccs("<3,b,0>.<2,a,0>.Y.{} |> 0"));
        auto s2 = encode_memory(parse_rccs("<2,~a,0>.<1,c,0>.Y.{} |> 0"));
        auto p = product(s1, s2);
        if (p.event_count() != 8) return "got " + std::to_string(p.event_count()) + " events";
        std::set<std::string> ids;
        for (std::size_t e = 0; e < p.event_count(); ++e)
            ids.insert(p.label(e).str() + "@" + p.ident(e).str());
        std::set<std::string> want{"(a,*)@(2,*)",  "(b,*)@(3,*)",  "(*,c)@(*,1)",
                                   "(*,~a)@(*,2)", "(a,c)@(2,1)",  "(a,~a)@(2,2)",
                                   "(b,c)@(3,1)",  "(b,~a)@(3,2)"};
        return expect(ids == want, "unexpected product events");
    });
    add("a.b|c.~a is the 11-configuration structure", [] {
        auto c = parallel_compose_proc(encode_ccs(ccs("a.b")), encode_ccs(ccs("c.~a")),
                                       SyncAlgebra::proc());
        auto err = same_shape(c, literal("a:a b:b c:c o:~a t:tau",
                                         {"", "a", "c", "a b", "a c", "c o", "c t", "a b c",
                                          "a c o", "c t b", "c a o b"}));
        if (!err.empty()) return err;
        auto ms = maximal_shapes(c);
        return expect(ms == std::vector<std::string>{"{a b c ~a}", "{b c tau}"},
                      "unexpected maximal configurations");
    });
    add("memory composition keeps b:3, c:1, tau:2 and drops five events", [] {
        auto s1 = encode_memory(parse_rccs("<3,b,0>.<2,a,0>.Y.{} |> 0"));
        auto s2 = encode_memory(parse_rccs("<2,~a,0>.<1,c,0>.Y.{} |> 0"));
        auto p = product(s1, s2);
        auto r = parallel_compose_mem(s1, s2, SyncAlgebra::mem());
        if (p.event_count() - r.event_count() != 5) return std::string("wrong number removed");
        return expect(idents_by_label(r) == "b=3 c=1 tau=2", "survivors " + idents_by_label(r));
    });
    add("a memory composed with itself is isomorphic to it", [] {
        auto m = encode_memory(parse_rccs("<2,b,0>.<1,a,0>.{} |> 0"));
        auto mm = parallel_compose_mem(m, m, SyncAlgebra::mem());
        return expect(iso_search(forget(mm), forget(m), true).has_value(), "not isomorphic");
    });
    add("the configurations below {c,a} in a.b|c form a diamond", [] {
        auto c = encode_ccs(ccs("(a.b)|c"));
        for (const auto &x : c.configs())
            if (label_multiset(c, x) == "{a c}")
                return same_shape(generate_below(c, x), literal("a:a c:c", {"", "a", "c", "a c"}));
        return std::string("no {a,c} configuration");
    });
    add("a+a and a|a are not isomorphic", [] {
        return expect(!iso_search(encode_ccs(ccs("a+a")), encode_ccs(ccs("a|a")), true),
                      "isomorphic");
    });
    add("the inactive process denotes 0", [] {
        return expect(encode_ccs(ccs("0")) == ConfigurationStructure(), "not 0");
    });
    add("a+a denotes {}, {a1}, {a2}", [] {
        return same_shape(encode_ccs(ccs("a+a")), literal("a1:a a2:a", {"", "a1", "a2"}));
    });
    add("an empty memory encodes 0", [] {
        return expect(forget(encode_memory(parse_rccs("{} |> a.b"))) == ConfigurationStructure(),
                      "not 0");
    });
    add("the a.b|c.~a end state encodes the chain c, tau, b with identifiers 1, 2, 3", [] {
        auto m = encode_memory(parse_rccs(kSyncEnd));
        auto err = same_shape(m.base(), literal("c:c t:tau b:b", {"", "c", "c t", "c t b"}));
        if (!err.empty()) return err;
        return expect(idents_by_label(m) == "b=3 c=1 tau=2", "identifiers " + idents_by_label(m));
    });
    add("the a.b|c state with two events encodes the diamond with c:1, a:2", [] {
        auto m = encode_memory(parse_rccs(kTwoEvents));
        auto err = same_shape(m.base(), literal("a:a c:c", {"", "a", "c", "a c"}));
        if (!err.empty()) return err;
        return expect(idents_by_label(m) == "a=2 c=1", "identifiers " + idents_by_label(m));
    });
    add("the a.b|c state with two events is addressed by {c,a}", [] {
        auto ap = encode_address(parse_rccs(kTwoEvents));
        return expect(label_multiset(ap.denotation, ap.address) == "{a c}" &&
                          ap.denotation.configs().size() == 6,
                      "address " + label_multiset(ap.denotation, ap.address));
    });
    add("undoing 1:c removes the c event from the memory encoding", [] {
        auto t = find_move(backward_transitions(parse_rccs(kTwoEvents)), 1, "c");
        if (!t) return std::string("no backward 1:c");
        auto rep = check_op_correspondence(*t);
        return expect(rep.ok, rep.message);
    });
    add("doing 3:b adds a b event to the memory encoding", [] {
        auto r2 = parse_rccs("(<2,a,0>.Y.{} |> b) | (Y.{} |> c)");
        auto t = find_move(forward_transitions(r2), 3, "b");
        if (!t) t = find_move(forward_transitions_with_ident(r2, 3), 3, "b");
        if (!t) return std::string("no forward 3:b");
        auto rep = check_op_correspondence(*t);
        return expect(rep.ok, rep.message);
    });
    add("the maximal a event of the two-event state is undone by 2:a", [] {
        auto r = parse_rccs(kTwoEvents);
        auto m = encode_memory(r);
        for (std::size_t e = 0; e < m.event_count(); ++e)
            if (m.label(e).str() == "a") {
                auto t = backward_from_maximal(r, m.event(e));
                return expect(t.ident == 2, "undone by " + std::to_string(t.ident));
            }
        return std::string("no a event");
    });
    add("the maximal c event of the two-event state is undone by 1:c", [] {
        auto r = parse_rccs(kTwoEvents);
        auto m = encode_memory(r);
        for (std::size_t e = 0; e < m.event_count(); ++e)
            if (m.label(e).str() == "c") {
                auto t = backward_from_maximal(r, m.event(e));
                return expect(t.ident == 1, "undone by " + std::to_string(t.ident));
            }
        return std::string("no c event");
    });
    add("hhpb: a.(b+b) and a.b+a.b", [] {
        return verdict(Relation::Hhpb, "a.(b+b)", "(a.b)+(a.b)", true);
    });
    add("hpb fails: (a.a)|b and a|a|b", [] {
        return verdict(Relation::Hpb, "(a.a)|b", "a|a|b", false);
    });
    add("hhpb fails: (a.a)|b and a|a|b", [] {
        return verdict(Relation::Hhpb, "(a.a)|b", "a|a|b", false);
    });
    add("hpb holds: (a|(b+c))+(a|b)+((a+c)|b) and (a|(b+c))+((a+c)|b)", [] {
        return verdict(Relation::Hpb, "(a|(b+c))+(a|b)+((a+c)|b)", "(a|(b+c))+((a+c)|b)", true);
    });
    add("hhpb fails: (a|(b+c))+(a|b)+((a+c)|b) and (a|(b+c))+((a+c)|b)", [] {
        return verdict(Relation::Hhpb, "(a|(b+c))+(a|b)+((a+c)|b)", "(a|(b+c))+((a+c)|b)", false);
    });
    add("sbf holds: a|a and a.a", [] { return verdict(Relation::Sbf, "a|a", "a.a", true); });
    add("bf fails: a|a and a.a", [] { return verdict(Relation::Bf, "a|a", "a.a", false); });
    add("sbf holds: (a.a)|b and a|a|b", [] {
        return verdict(Relation::Sbf, "(a.a)|b", "a|a|b", true);
    });
    add("hhpb-rccs: a.(b+b) and a.b+a.b", [] {
        return verdict(Relation::HhpbRccs, "a.(b+b)", "(a.b)+(a.b)", true);
    });
    add("a.a is not non-repeating", [] {
        return expect(!is_non_repeating(ccs("a.a")), "reported non-repeating");
    });
    add("(a.b)|a has auto-concurrency", [] {
        return expect(has_auto_concurrency(ccs("(a.b)|a")), "no auto-concurrency");
    });
    return cs;
}

}  // namespace

int run_paper_suite(std::ostream &out, std::uint64_t seed, std::size_t samples) {
    int failures = 0;
    auto report = [&](const std::string &name, const std::string &err) {
        if (err.empty()) {
            out << "PASS  " << name << "\n";
        } else {
            ++failures;
            out << "FAIL  " << name << ": " << err << "\n";
        }
    };
    for (const auto &c : claims()) {
        std::string err;
        try {
            err = c.run();
        } catch (const std::exception &e) {
            err = std::string("error: ") + e.what();
        }
        report(c.name, err);
    }
    // sampled corpus pairs: the process-level and structure-level relations agree
    auto corpus = generate_corpus();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
    for (std::size_t k = 0; k < samples; ++k) {
        const auto &p = corpus[pick(rng)];
        const auto &q = corpus[pick(rng)];
        std::string name = "bf agrees with hhpb: " + pretty_ccs(p) + " / " + pretty_ccs(q);
        std::string err;
        try {
            bool a = check(Relation::Bf, p, q).holds;
            bool b = check(Relation::Hhpb, p, q).holds;
            if (a != b) err = std::string("bf ") + (a ? "HOLDS" : "FAILS") + ", hhpb " + (b ? "HOLDS" : "FAILS");
        } catch (const std::exception &e) {
            err = std::string("error: ") + e.what();
        }
        report(name, err);
    }
    out << (failures == 0 ? "all claims pass" : std::to_string(failures) + " claims fail") << "\n";
    return failures;
}

}  // namespace revccs::cli
