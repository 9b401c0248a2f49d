#include "doctest.h"
#include "revccs/serialize.hpp"
#include "support.hpp"

using namespace testing;

TEST_SUITE("serialize") {

TEST_CASE("structure json") {
    auto c = encode_ccs(parse_ccs("a.b"));
    auto j = to_json(c);
    REQUIRE(j["events"].size() == 2);
    CHECK(j["configs"].size() == 3);
    CHECK(j["events"][0].contains("label"));
    auto s = encode_memory(parse_rccs("<2,b,0>.<1,a,0>.{} |> 0"));
    auto js = to_json(s);
    CHECK(js["events"][0].contains("ident"));
    auto round = Json::parse(js.dump());
    CHECK(round == js);
}

TEST_CASE("lts json and dot") {
    auto g = explore(parse_ccs("a | b"));
    auto j = to_json(g);
    CHECK(j["states"].size() == g.states.size());
    CHECK(j["edges"].size() == g.edges.size());
    auto dot = to_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("dashed") != std::string::npos);
}

TEST_CASE("structure dot draws the lattice") {
    auto c = encode_ccs(parse_ccs("a | b"));
    auto dot = to_dot(c);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("verdict rendering") {
    StructureModel m1(encode_ccs(parse_ccs("a.(b+b)"))), m2(encode_ccs(parse_ccs("(a.b)+(a.b)")));
    auto r = check_structures(Relation::Hhpb, m1, m2);
    auto j = to_json(r, m1, m2);
    CHECK(j["verdict"] == "HOLDS");
    CHECK(j["witness"].size() == r.witness.size());
    CHECK(to_text(r, m1, m2).rfind("HOLDS", 0) == 0);

    ProcessModel p1(parse_ccs("a|a")), p2(parse_ccs("a.a"));
    auto f = check_processes(Relation::Bf, p1, p2);
    auto jf = to_json(f, p1, p2);
    CHECK(jf["verdict"] == "FAILS");
    CHECK(jf.contains("certificate"));
    CHECK(to_text(f, p1, p2).rfind("FAILS", 0) == 0);
}

}
