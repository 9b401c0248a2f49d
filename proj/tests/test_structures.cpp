#include "doctest.h"
#include "support.hpp"

#include <algorithm>

using namespace testing;

namespace {

std::set<std::set<std::string>> config_names(const ConfigurationStructure &c) {
    std::set<std::set<std::string>> out;
    for (const auto &x : c.configs()) {
        std::set<std::string> s;
        for (auto e : x.elements()) s.insert(c.label(e).str());
        out.insert(s);
    }
    return out;
}

EventSet set_of(const ConfigurationStructure &c, std::initializer_list<std::size_t> ids) {
    EventSet x = c.empty_set();
    for (auto k : ids) x.insert(k);
    return x;
}

// Axioms checked pairwise, straight from their statements.
bool axioms_hold(const ConfigurationStructure &c) {
    const auto &cs = c.configs();
    if (!c.is_config(c.empty_set())) return false;
    for (const auto &x : cs) {
        auto xs = x.elements();
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                bool sep = false;
                for (const auto &z : cs)
                    if (z.is_subset_of(x) && z.contains(xs[i]) != z.contains(xs[j])) sep = true;
                if (!sep) return false;
            }
    }
    for (const auto &x : cs)
        for (const auto &y : cs) {
            bool bounded = false;
            for (const auto &z : cs) bounded = bounded || (x | y).is_subset_of(z);
            if (bounded && !c.is_config(x | y)) return false;
            if (c.is_config(x | y) && !c.is_config(x & y)) return false;
        }
    return true;
}

ConfigurationStructure random_family(std::mt19937_64 &rng, std::size_t n) {
    std::vector<EventId> ids;
    std::vector<Label> labels;
    std::uniform_int_distribution<int> lab(0, 1);
    for (std::size_t k = 0; k < n; ++k) {
        ids.push_back(EventId{Term::atom(k + 1)});
        labels.push_back(Label::action(lab(rng) ? "a" : "b"));
    }
    std::vector<std::vector<std::size_t>> cfgs{{}};
    std::bernoulli_distribution keep(0.4);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (!keep(rng)) continue;
        std::vector<std::size_t> x;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) x.push_back(k);
        cfgs.push_back(x);
    }
    return ConfigurationStructure(ids, labels, cfgs);
}

}  // namespace

TEST_SUITE("structures") {

TEST_CASE("validate on small families") {
    CHECK(validate(ConfigurationStructure()).ok());
    auto bad = literal("a:a b:b", {"", "a b"});
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok());
    bool coincidence_failed = false;
    for (const auto &c : rep.checks)
        if (c.axiom == "coincidence-freeness") coincidence_failed = !c.passed && !c.witness.empty();
    CHECK(coincidence_failed);
    CHECK(validate(load_golden("par_a_a.txt").structure).ok());
}

TEST_CASE("validate agrees with a direct axiom check on random families") {
    std::mt19937_64 rng(11);
    std::size_t valid = 0;
    for (int k = 0; k < 400; ++k) {
        auto c = random_family(rng, 1 + k % 4);
        bool expected = axioms_hold(c);
        valid += expected;
        CHECK(validate(c).ok() == expected);
    }
    CHECK(valid > 0);
}

TEST_CASE("causality examples") {
    auto seq = load_golden("seq_a_b.txt").structure;
    auto all = set_of(seq, {0, 1});
    CHECK(causality(seq, all, seq.event(0), seq.event(1)) == Causality::Less);
    CHECK(causality(seq, all, seq.event(1), seq.event(0)) == Causality::Greater);
    CHECK(causality(seq, all, seq.event(0), seq.event(0)) == Causality::Equal);
    auto par = load_golden("par_a_a.txt").structure;
    CHECK(causality(par, set_of(par, {0, 1}), par.event(0), par.event(1)) == Causality::Concurrent);
}

TEST_CASE("causal order matches the down-set oracle") {
    for (const auto &p : small_corpus(3)) {
        auto c = encode_ccs(p);
        for (const auto &x : c.configs()) {
            auto below = causal_below(c, x);
            for (auto e : x.elements()) {
                auto oracle = below_oracle(c, x, e);
                std::set<std::size_t> got;
                for (auto d : below[e].elements()) got.insert(d);
                CHECK(got == oracle);
                for (auto d : x.elements()) {
                    auto rel = causality(c, x, c.event(d), c.event(e));
                    bool le = oracle.count(d) > 0, ge = below_oracle(c, x, d).count(e) > 0;
                    if (d == e) CHECK(rel == Causality::Equal);
                    else if (le) CHECK(rel == Causality::Less);
                    else if (ge) CHECK(rel == Causality::Greater);
                    else CHECK(rel == Causality::Concurrent);
                }
            }
        }
    }
}

TEST_CASE("maximal configurations and events") {
    auto sum = load_golden("sum_a_a.txt").structure;
    CHECK(maximal_configs(sum).size() == 2);
    auto par = load_golden("par_a_a.txt").structure;
    REQUIRE(maximal_configs(par).size() == 1);
    CHECK(maximal_configs(par)[0].size() == 2);
    auto abc = load_golden("par_ab_c.txt").structure;
    auto past = generate_below(abc, set_of(abc, {0, 2}));
    std::set<std::string> labels;
    for (const auto &e : maximal_events(past)) labels.insert(past.label(past.index_of(e)).str());
    CHECK(labels == std::set<std::string>{"a", "c"});
}

TEST_CASE("restriction") {
    CHECK(restrict_labels(ConfigurationStructure(), {Label::action("a")}) == ConfigurationStructure());
    auto fig = load_golden("sync_ab_coa.txt").structure;
    auto r = restrict_labels(fig, {Label::action("a"), Label::action("~a")});
    CHECK(config_names(r) == std::set<std::set<std::string>>{{}, {"tau"}, {"tau", "b"}});
    auto abc = load_golden("par_ab_c.txt").structure;
    auto nob = restrict_events(abc, {abc.event(1)});
    CHECK(nob.configs().size() == 4);
    CHECK(nob.event_count() == 2);
}

TEST_CASE("prefix and postfix") {
    auto a = prefix(Label::action("a"), ConfigurationStructure());
    CHECK(config_names(a) == std::set<std::set<std::string>>{{}, {"a"}});
    auto b = prefix(Label::action("b"), ConfigurationStructure());
    auto ab = prefix(Label::action("a"), b);
    CHECK(config_names(ab) == std::set<std::set<std::string>>{{}, {"a"}, {"a", "b"}});
    CHECK(brute_iso(ab, load_golden("seq_a_b.txt").structure));

    IdentifiedStructure zero{ConfigurationStructure(), {}};
    auto c1 = postfix(zero, Label::action("c"), Identifier::base(1));
    REQUIRE(c1.event_count() == 1);
    CHECK(c1.ident(0) == Identifier::base(1));
    auto c2 = postfix(c1, Label::action("~a"), Identifier::base(2));
    CHECK(config_names(c2.base()) == std::set<std::set<std::string>>{{}, {"c"}, {"c", "~a"}});
    CHECK(brute_iso(c2.base(), load_golden("seq_c_coa.txt").structure));
    CHECK_THROWS_AS(postfix(c2, Label::action("b"), Identifier::base(1)), StructureError);
}

TEST_CASE("choice and coproduct") {
    auto a = prefix(Label::action("a"), ConfigurationStructure());
    CHECK(brute_iso(choice(a, a), load_golden("sum_a_a.txt").structure));
    CHECK(brute_iso(choice(a, ConfigurationStructure()), a));
    auto co = coproduct(a, a);
    CHECK(co.event_count() == 2);
    CHECK_FALSE(co.label(0) == co.label(1));
}

TEST_CASE("relabel and reidentify") {
    auto s = enrich(load_golden("par_a_a.txt").structure);
    CHECK(relabel(s, [](const EventId &, const Label &l) { return l; }) == s);
    CHECK_THROWS_AS(reidentify(s, [](const EventId &, const Identifier &) { return Identifier::base(7); }),
                    StructureError);
}

TEST_CASE("enrich and forget") {
    auto c = load_golden("sum_a_a.txt").structure;
    auto e = enrich(c, {c.event(0), c.event(1)});
    CHECK(forget(e) == c);
    CHECK(e.ident(0) == Identifier::base(1));
    CHECK(e.ident(1) == Identifier::base(2));
}

TEST_CASE("parallel composition under the process algebra") {
    auto a = prefix(Label::action("a"), ConfigurationStructure());
    auto coa = prefix(Label::action("~a"), ConfigurationStructure());
    auto c = parallel_compose_proc(a, coa, SyncAlgebra::proc());
    CHECK(config_names(c) ==
          std::set<std::set<std::string>>{{}, {"a"}, {"~a"}, {"a", "~a"}, {"tau"}});
    CHECK(brute_iso(parallel_compose_proc(a, ConfigurationStructure(), SyncAlgebra::proc()), a));
    auto tau = prefix(Label::action("tau"), ConfigurationStructure());
    CHECK(parallel_compose_proc(tau, tau, SyncAlgebra::proc()).configs().size() == 4);
}

TEST_CASE("generate_below") {
    auto abc = load_golden("par_ab_c.txt").structure;
    CHECK(generate_below(abc, abc.empty_set()) == ConfigurationStructure());
    auto s = encode_memory(parse_rccs("(<2,a,0>.Y.{} |> b) | (<1,c,0>.Y.{} |> 0)"));
    auto top = maximal_configs(s.base());
    REQUIRE(top.size() == 1);
    CHECK(generate_below(s, top[0]) == s);
    CHECK(config_names(s.base()) == std::set<std::set<std::string>>{{}, {"a"}, {"c"}, {"a", "c"}});
}

TEST_CASE("iso_search agrees with brute force") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
        auto c1 = random_structure(rng, 5), c2 = random_structure(rng, 5);
        CHECK(iso_search(c1, c2, true).has_value() == brute_iso(c1, c2));
        CHECK(iso_search(c1, c1, true).has_value());
    }
    CHECK_FALSE(iso_search(load_golden("sum_a_a.txt").structure, load_golden("par_a_a.txt").structure, true));
}

TEST_CASE("product against the powerset oracle") {
    std::mt19937_64 rng(3);
    int compared = 0;
    for (int k = 0; k < 200; ++k) {
        auto c1 = random_structure(rng, 3), c2 = random_structure(rng, 2);
        std::size_t n = c1.event_count() + c2.event_count() + c1.event_count() * c2.event_count();
        if (n > 12) continue;
        auto p = product(c1, c2);
        std::set<std::set<EventId>> got;
        for (const auto &x : p.configs()) {
            auto ids = p.ids_of(x);
            got.insert({ids.begin(), ids.end()});
        }
        CHECK(got == powerset_product(c1, c2));
        CHECK(validate(p).ok());
        ++compared;
    }
    CHECK(compared > 50);
    CHECK(product(ConfigurationStructure(), ConfigurationStructure()) == ConfigurationStructure());
}

TEST_CASE("operations preserve the axioms") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        auto c1 = random_structure(rng, 4), c2 = random_structure(rng, 4);
        CHECK(validate(prefix(Label::action("a"), c1)).ok());
        CHECK(validate(postfix(c1, Label::action("b"))).ok());
        CHECK(validate(choice(c1, c2)).ok());
        CHECK(validate(coproduct(c1, c2)).ok());
        CHECK(validate(restrict_labels(c1, {Label::action("a")})).ok());
        CHECK(validate(parallel_compose_proc(c1, c2, SyncAlgebra::proc())).ok());
        auto s1 = enrich(c1);
        CHECK(validate(parallel_compose_mem(s1, s1, SyncAlgebra::mem())).ok());
    }
}

TEST_CASE("synchronization algebras") {
    auto a = Label::action("a"), coa = Label::action("~a"), tau = Label::action("tau");
    auto proc = SyncAlgebra::proc(), mem = SyncAlgebra::mem();
    CHECK(*proc.combine(&a, nullptr) == a);
    CHECK(*proc.combine(&a, &coa) == tau);
    CHECK_FALSE(proc.combine(&a, &a));
    CHECK_FALSE(proc.combine(&tau, &tau));
    CHECK(*mem.combine(&a, &a) == a);
    CHECK(*mem.combine(&tau, &tau) == tau);
    CHECK(*mem.combine(&coa, &a) == tau);
}

}
