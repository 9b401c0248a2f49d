#include "paper_suite.hpp"

#include "revccs/encodings.hpp"
#include "revccs/equivalences.hpp"
#include "revccs/rccs.hpp"
#include "revccs/serialize.hpp"
#include "revccs/structures.hpp"
#include "revccs/syntax.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace revccs;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string format = "text";
    std::size_t state_cap = 100000;
    bool state_cap_set = false;
    std::uint64_t seed = 0;
    std::size_t samples = 20;
    std::string relation;
    bool weak = false;
    std::vector<std::string> inputs;
    std::string state;
    std::string script;
};

std::string resolve(const std::string &arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    auto text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
}

bool looks_reversible(const std::string &text) { return text.find("|>") != std::string::npos; }

CcsProcess read_ccs(const std::string &arg, bool allow_choice) {
    ParseOptions po;
    po.allow_unguarded_choice = allow_choice;
    return parse_ccs(resolve(arg), po);
}

RccsProcess read_state(const std::string &arg) {
    auto text = resolve(arg);
    if (looks_reversible(text)) return parse_rccs(text);
    return initial_state(parse_ccs(text));
}

std::size_t state_cap(const Config &cfg) {
    if (cfg.state_cap_set) return cfg.state_cap;
    if (const char *env = std::getenv("REVCCS_STATE_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw UsageError(std::string("REVCCS_STATE_CAP is not a number: ") + env);
        }
    }
    return cfg.state_cap;
}

void print_structure(const ConfigurationStructure &c, const std::string &format) {
    if (format == "json") std::cout << to_json(c).dump(2) << "\n";
    else if (format == "dot") std::cout << to_dot(c);
    else std::cout << to_text(c);
}

void print_structure(const IdentifiedStructure &s, const std::string &format) {
    if (format == "json") std::cout << to_json(s).dump(2) << "\n";
    else if (format == "dot") std::cout << to_dot(s);
    else std::cout << to_text(s);
}

int cmd_parse(const Config &cfg) {
    auto text = resolve(cfg.inputs.at(0));
    if (looks_reversible(text)) {
        auto r = parse_rccs(text);
        if (cfg.format == "json") {
            Json j = {{"kind", "rccs"},
                      {"pretty", pretty_rccs(r)},
                      {"normal_form", pretty_rccs(rccs_normal_form(r))},
                      {"reachable", is_reachable(r)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << pretty_rccs(r) << "\n" << pretty_rccs(rccs_normal_form(r)) << "\n";
        }
        return 0;
    }
    auto p = read_ccs(text, true);
    if (cfg.format == "json") {
        Json j = {{"kind", "ccs"},
                  {"pretty", pretty_ccs(p)},
                  {"normal_form", pretty_ccs(normal_form(p))},
                  {"prefixes", p.prefix_count()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << pretty_ccs(p) << "\n" << pretty_ccs(normal_form(p)) << "\n";
    }
    return 0;
}

int cmd_lts(const Config &cfg) {
    ExploreOptions eo;
    eo.state_cap = state_cap(cfg);
    auto g = explore(read_ccs(cfg.inputs.at(0), false), eo);
    if (cfg.format == "json") {
        std::cout << to_json(g).dump(2) << "\n";
    } else if (cfg.format == "dot") {
        std::cout << to_dot(g);
    } else {
        std::cout << "states " << g.states.size() << "\n";
        for (std::size_t s = 0; s < g.states.size(); ++s)
            std::cout << "  s" << s << "  " << pretty_rccs(g.states[s]) << (s == g.root ? "  (root)" : "")
                      << "\n";
        std::cout << "edges " << g.edges.size() << "\n";
        for (const auto &e : g.edges)
            std::cout << "  s" << e.source << " -> s" << e.target << "  " << direction_name(e.direction)
                      << " " << e.ident << ":" << e.action.str() << "\n";
    }
    return 0;
}

int cmd_address(const Config &cfg) {
    auto r = read_state(cfg.inputs.at(0));
    auto ap = encode_address(r);
    if (cfg.format == "json") {
        Json j = {{"origin", pretty_ccs(origin(r))},
                  {"denotation", to_json(ap.denotation)},
                  {"address", Json::array()}};
        for (const auto &id : ap.denotation.ids_of(ap.address)) j["address"].push_back(id.str());
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "dot") {
        std::cout << to_dot(generate_below(ap.denotation, ap.address), "address");
    } else {
        std::cout << "origin " << pretty_ccs(origin(r)) << "\n"
                  << to_text(ap.denotation) << "address " << config_string(ap.denotation, ap.address)
                  << "\n";
    }
    return 0;
}

int cmd_check(const Config &cfg) {
    auto rel = parse_relation(cfg.relation);
    if (!rel) throw UsageError("unknown relation " + cfg.relation);
    if (cfg.weak && !supports_weak(*rel)) throw UsageError(cfg.relation + " has no weak variant");
    if (cfg.format == "dot") throw UsageError("check supports --format text or json");
    CheckOptions opts;
    opts.weak = cfg.weak;
    opts.state_cap = state_cap(cfg);
    bool structural = is_structure_relation(*rel);
    auto p1 = read_ccs(cfg.inputs.at(0), structural);
    auto p2 = read_ccs(cfg.inputs.at(1), structural);
    if (structural) {
        StructureModel m1(encode_ccs(p1)), m2(encode_ccs(p2));
        auto res = check_structures(*rel, m1, m2, opts);
        if (cfg.format == "json") std::cout << to_json(res, m1, m2).dump(2) << "\n";
        else std::cout << to_text(res, m1, m2);
    } else {
        ExploreOptions eo;
        eo.state_cap = opts.state_cap;
        ProcessModel m1(p1, eo), m2(p2, eo);
        auto res = check_processes(*rel, m1, m2, opts);
        if (cfg.format == "json") std::cout << to_json(res, m1, m2).dump(2) << "\n";
        else std::cout << to_text(res, m1, m2);
    }
    return 0;
}

// "+a", "+i:a" or "-i"
Transition apply_step(const RccsProcess &r, const std::string &item) {
    if (item.size() < 2 || (item[0] != '+' && item[0] != '-'))
        throw UsageError("bad step '" + item + "'");
    auto body = item.substr(1);
    auto number = [&](const std::string &s) -> Ident {
        try {
            std::size_t used = 0;
            auto v = std::stoul(s, &used);
            if (used != s.size()) throw UsageError("bad identifier in '" + item + "'");
            return static_cast<Ident>(v);
        } catch (const std::logic_error &) {
            throw UsageError("bad identifier in '" + item + "'");
        }
    };
    if (item[0] == '-') {
        Ident i = number(body);
        for (const auto &t : backward_transitions(r))
            if (t.ident == i) return t;
        throw UsageError("no backward transition with identifier " + body);
    }
    std::optional<Ident> ident;
    std::string action = body;
    if (auto colon = body.find(':'); colon != std::string::npos) {
        ident = number(body.substr(0, colon));
        action = body.substr(colon + 1);
    }
    auto label = parse_action_label(action);
    auto ts = ident ? forward_transitions_with_ident(r, *ident) : forward_transitions(r);
    for (const auto &t : ts)
        if (t.action == label) return t;
    throw UsageError("no forward transition on " + action +
                     (ident ? " with identifier " + std::to_string(*ident) : std::string()));
}

int cmd_step(const Config &cfg) {
    auto r = read_state(cfg.state);
    std::vector<Transition> done;
    std::stringstream ss(resolve(cfg.script));
    std::string item;
    while (std::getline(ss, item, ';')) {
        item.erase(0, item.find_first_not_of(" \t\n"));
        item.erase(item.find_last_not_of(" \t\n") + 1);
        if (item.empty()) continue;
        auto t = apply_step(r, item);
        r = t.target;
        done.push_back(std::move(t));
    }
    if (cfg.format == "json") {
        Json j = {{"steps", Json::array()}, {"state", pretty_rccs(r)}};
        for (const auto &t : done) j["steps"].push_back(to_json(t));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto &t : done)
            std::cout << (t.direction == Direction::Forward ? "+" : "-") << t.ident << ":"
                      << t.action.str() << "  " << pretty_rccs(t.target) << "\n";
        std::cout << pretty_rccs(r) << "\n";
    }
    return 0;
}

int run(int argc, char **argv) {
    CLI::App app{"Reversible CCS: semantics, encodings and bisimulation checks"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    app.add_option_function<std::size_t>(
           "--state-cap",
           [&](const std::size_t &v) {
               cfg.state_cap = v;
               cfg.state_cap_set = true;
           },
           "Maximum number of explored states (env REVCCS_STATE_CAP)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
    app.fallthrough();

    auto input = [&](CLI::App *sub, const std::string &what, std::size_t n) {
        sub->add_option("inputs", cfg.inputs, what + " (text or @file)")->required()->expected(
            static_cast<int>(n));
        sub->fallthrough();
    };
    auto *parse = app.add_subcommand("parse", "Parse and pretty-print a CCS or RCCS term");
    input(parse, "term", 1);
    auto *lts = app.add_subcommand("lts", "Explore the reachable transition system");
    input(lts, "process", 1);
    auto *encode = app.add_subcommand("encode", "Configuration structure of a process");
    input(encode, "process", 1);
    auto *encmem = app.add_subcommand("encode-memory", "Identified structure of an RCCS memory");
    input(encmem, "state", 1);
    auto *address = app.add_subcommand("address", "Origin structure and the configuration of a state");
    input(address, "state", 1);
    auto *check = app.add_subcommand("check", "Decide a bisimulation between two processes");
    input(check, "processes", 2);
    check->add_option("--relation", cfg.relation, "hpb, hhpb, bf, sbf, bf-fwd, hpb-rccs, hhpb-rccs")
        ->required();
    check->add_flag("--weak", cfg.weak, "Weak variant (hpb, hhpb, hpb-rccs, hhpb-rccs)");
    auto *step = app.add_subcommand(
        "step",
        "Run a transition script on a state: items separated by ';', '+a' fires a forward a, "
        "'+i:a' fires it with identifier i, '-i' undoes identifier i");
    step->add_option("state", cfg.state, "CCS process or RCCS state (text or @file)")->required();
    step->add_option("script", cfg.script, "Transition script (text or @file)")->required();
    step->fallthrough();
    auto *suite = app.add_subcommand("paper-suite", "Check the published example verdicts");
    suite->add_option("--samples", cfg.samples, "Sampled corpus pairs")->capture_default_str();
    suite->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*parse) return cmd_parse(cfg);
        if (*lts) return cmd_lts(cfg);
        if (*encode) {
            print_structure(encode_ccs(read_ccs(cfg.inputs.at(0), true)), cfg.format);
            return 0;
        }
        if (*encmem) {
            print_structure(encode_memory(read_state(cfg.inputs.at(0))), cfg.format);
            return 0;
        }
        if (*address) return cmd_address(cfg);
        if (*check) return cmd_check(cfg);
        if (*step) return cmd_step(cfg);
        if (*suite) return cli::run_paper_suite(std::cout, cfg.seed, cfg.samples) == 0 ? 0 : 3;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError &e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceLimitError &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) { return run(argc, argv); }
