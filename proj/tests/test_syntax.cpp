#include "doctest.h"
#include "support.hpp"

using namespace testing;

TEST_SUITE("syntax") {

TEST_CASE("prefix binds tighter than sum, sum tighter than par") {
    auto p = parse_ccs("a.b + c | d");
    REQUIRE(p.kind() == CcsProcess::Kind::Par);
    CHECK(p.left().kind() == CcsProcess::Kind::Sum);
    CHECK(p.left().summand_count() == 2);
    CHECK(p.left().summand_label(0).str() == "a");
    CHECK(p.left().summand_continuation(0).summand_label(0).str() == "b");
    CHECK(p.right().summand_label(0).str() == "d");
}

TEST_CASE("hand-built terms match parsed ones") {
    auto a = parse_action_label("a");
    auto coa = parse_action_label("~a");
    auto b = parse_action_label("b");
    auto nil = CcsProcess::nil();
    auto built = CcsProcess::par(CcsProcess::prefix(a, CcsProcess::prefix(b, nil)),
                                 CcsProcess::prefix(coa, nil));
    CHECK(parse_ccs("a.b | ~a") == built);
    CHECK(parse_ccs("(a.b) | (~a.0)") == built);
    auto r = CcsProcess::restrict(built, Name{"a"});
    CHECK(parse_ccs("(a.b | ~a) \\ a") == r);
}

TEST_CASE("action labels") {
    CHECK(parse_action_label("~a").complement().str() == "a");
    CHECK(parse_action_label("tau").is_tau());
    CHECK(parse_action_label("a").complement() == parse_action_label("~a"));
}

TEST_CASE("pretty printing round-trips over the corpus") {
    for (const auto &p : corpus()) {
        auto text = pretty_ccs(p);
        CHECK_MESSAGE(parse_ccs(text) == p, text);
    }
}

TEST_CASE("alpha equivalence renames bound names only") {
    CHECK(alpha_eq(parse_ccs("(a.b) \\ a"), parse_ccs("(c.b) \\ c")));
    CHECK_FALSE(alpha_eq(parse_ccs("(a.b) \\ a"), parse_ccs("(b.b) \\ b")));
    CHECK_FALSE(alpha_eq(parse_ccs("a.b"), parse_ccs("c.b")));
}

TEST_CASE("structural congruence laws") {
    CHECK(ccs_congruent(parse_ccs("a | b"), parse_ccs("b | a")));
    CHECK(ccs_congruent(parse_ccs("a | (b | c)"), parse_ccs("(a | b) | c")));
    CHECK(ccs_congruent(parse_ccs("a + b"), parse_ccs("b + a")));
    CHECK(ccs_congruent(parse_ccs("a | 0"), parse_ccs("a")));
    CHECK_FALSE(ccs_congruent(parse_ccs("a.b"), parse_ccs("b.a")));
    CHECK_FALSE(ccs_congruent(parse_ccs("a | a"), parse_ccs("a.a")));
    CHECK(ccs_congruent(ccs("(a|b) + (c|d)"), ccs("(d|c) + (b|a)")));
}

TEST_CASE("normal form is idempotent and decides congruence on the corpus sample") {
    std::size_t k = 0;
    for (const auto &p : corpus()) {
        if (k++ % 7) continue;
        CHECK(normal_form(normal_form(p)) == normal_form(p));
    }
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parse_ccs("a.(b"), ParseError);
    CHECK_THROWS_AS(parse_ccs("a +"), ParseError);
    CHECK_THROWS_AS(parse_ccs("a..b"), ParseError);
    try {
        parse_ccs("a.(b");
    } catch (const ParseError &e) {
        CHECK(e.column() > 0);
    }
}

TEST_CASE("unguarded choice needs the option") {
    CHECK_THROWS_AS(parse_ccs("(a|b) + c"), ParseError);
    auto p = ccs("(a|b) + c");
    CHECK(p.kind() == CcsProcess::Kind::Choice);
    CHECK(p.has_choice());
}

TEST_CASE("prefix count and free names") {
    auto p = parse_ccs("(a.b | ~a.c) \\ a");
    CHECK(p.prefix_count() == 4);
    auto names = p.free_names();
    CHECK(names.size() == 2);
}

}
