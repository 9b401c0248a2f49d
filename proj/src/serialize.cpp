#include "revccs/serialize.hpp"

#include <sstream>

namespace revccs {

namespace {

std::string quote(const std::string &s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

Json config_json(const ConfigurationStructure &c, const EventSet &x) {
    Json arr = Json::array();
    for (auto e : x.elements()) arr.push_back(c.event(e).str());
    return arr;
}

Json structure_json(const ConfigurationStructure &c, const std::vector<Identifier> *idents) {
    Json events = Json::array();
    for (std::size_t e = 0; e < c.event_count(); ++e) {
        Json ev = {{"id", c.event(e).str()}, {"label", c.label(e).str()}};
        if (idents) ev["ident"] = (*idents)[e].str();
        events.push_back(std::move(ev));
    }
    Json configs = Json::array();
    for (const auto &x : c.configs()) configs.push_back(config_json(c, x));
    return {{"events", events}, {"configs", configs}};
}

std::string structure_dot(const ConfigurationStructure &c, const std::vector<Identifier> *idents,
                          const std::string &name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
    const auto &cfgs = c.configs();
    for (std::size_t k = 0; k < cfgs.size(); ++k) {
        std::string text = "{";
        bool first = true;
        for (auto e : cfgs[k].elements()) {
            if (!first) text += ", ";
            first = false;
            text += c.label(e).str();
            if (idents) text += "[" + (*idents)[e].str() + "]";
        }
        text += "}";
        os << "  c" << k << " [label=" << quote(text) << "];\n";
    }
    for (std::size_t k = 0; k < cfgs.size(); ++k)
        for (std::size_t e = 0; e < c.event_count(); ++e) {
            if (cfgs[k].contains(e)) continue;
            EventSet y = cfgs[k];
            y.insert(e);
            if (auto j = c.config_index(y))
                os << "  c" << k << " -> c" << *j << " [label=" << quote(c.label(e).str()) << "];\n";
        }
    os << "}\n";
    return os.str();
}

std::string structure_text(const ConfigurationStructure &c, const std::vector<Identifier> *idents) {
    std::ostringstream os;
    os << "events " << c.event_count() << "\n";
    for (std::size_t e = 0; e < c.event_count(); ++e) {
        os << "  " << c.event(e).str() << " : " << c.label(e).str();
        if (idents) os << " @ " << (*idents)[e].str();
        os << "\n";
    }
    os << "configurations " << c.configs().size() << "\n";
    for (const auto &x : c.configs()) os << "  " << config_string(c, x) << "\n";
    return os.str();
}

Json pairs_json(const std::vector<std::pair<std::size_t, std::size_t>> &m) {
    Json arr = Json::array();
    for (auto [a, b] : m) arr.push_back(Json::array({a, b}));
    return arr;
}

template <typename State, typename Pair>
Json result_json(const BisimResult &r, State state, Pair pair) {
    Json j = {{"relation", relation_name(r.relation)},
              {"weak", r.weak},
              {"verdict", r.holds ? "HOLDS" : "FAILS"},
              {"nodes", r.nodes}};
    if (r.holds) {
        Json w = Json::array();
        for (const auto &t : r.witness)
            w.push_back({{"left", state(true, t.left)},
                         {"right", state(false, t.right)},
                         {"map", pair(t)}});
        j["witness"] = std::move(w);
    } else {
        Json cert = Json::array();
        for (const auto &s : r.certificate)
            cert.push_back({{"left", state(true, s.left)},
                            {"right", state(false, s.right)},
                            {"clause", s.clause},
                            {"move", s.move},
                            {"responses", s.responses}});
        j["certificate"] = std::move(cert);
    }
    return j;
}

template <typename State, typename Pair>
std::string result_text(const BisimResult &r, State state, Pair pair) {
    std::ostringstream os;
    os << (r.holds ? "HOLDS" : "FAILS") << "\n";
    if (r.holds) {
        os << "witness " << r.witness.size() << " triples\n";
        for (const auto &t : r.witness) {
            os << "  " << state(true, t.left) << "  ~  " << state(false, t.right) << "  [";
            for (std::size_t k = 0; k < t.map.size(); ++k) {
                auto [a, b] = pair(t.map[k]);
                os << (k ? " " : "") << a << "->" << b;
            }
            os << "]\n";
        }
    } else {
        os << "certificate\n";
        for (const auto &s : r.certificate)
            os << "  " << state(true, s.left) << "  vs  " << state(false, s.right) << "  " << s.clause
               << " " << s.move << " (" << s.responses << " responses)\n";
    }
    return os.str();
}

}  // namespace

std::string config_string(const ConfigurationStructure &c, const EventSet &x) {
    std::string s = "{";
    bool first = true;
    for (auto e : x.elements()) {
        if (!first) s += ", ";
        first = false;
        s += c.event(e).str();
    }
    return s + "}";
}

Json to_json(const ConfigurationStructure &c) { return structure_json(c, nullptr); }
Json to_json(const IdentifiedStructure &s) { return structure_json(s.base(), &s.idents()); }

std::string to_dot(const ConfigurationStructure &c, const std::string &name) {
    return structure_dot(c, nullptr, name);
}
std::string to_dot(const IdentifiedStructure &s, const std::string &name) {
    return structure_dot(s.base(), &s.idents(), name);
}

std::string to_text(const ConfigurationStructure &c) { return structure_text(c, nullptr); }
std::string to_text(const IdentifiedStructure &s) { return structure_text(s.base(), &s.idents()); }

Json to_json(const LtsGraph &g) {
    Json states = Json::array();
    for (const auto &s : g.states) states.push_back(pretty_rccs(s));
    Json edges = Json::array();
    for (const auto &e : g.edges)
        edges.push_back({{"source", e.source},
                         {"target", e.target},
                         {"direction", direction_name(e.direction)},
                         {"ident", e.ident},
                         {"action", e.action.str()}});
    return {{"root", g.root}, {"states", states}, {"edges", edges}};
}

std::string to_dot(const LtsGraph &g, const std::string &name) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  node [shape=box];\n";
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        os << "  s" << s << " [label=" << quote(pretty_rccs(g.states[s]));
        if (s == g.root) os << ", peripheries=2";
        os << "];\n";
    }
    for (const auto &e : g.edges) {
        bool fwd = e.direction == Direction::Forward;
        os << "  s" << e.source << " -> s" << e.target << " [label="
           << quote(std::to_string(e.ident) + ":" + e.action.str()) << (fwd ? "" : ", style=dashed")
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

Json to_json(const Transition &t) {
    return {{"source", pretty_rccs(t.source)},
            {"direction", direction_name(t.direction)},
            {"ident", t.ident},
            {"action", t.action.str()},
            {"target", pretty_rccs(t.target)}};
}

Json to_json(const BisimResult &r, const StructureModel &m1, const StructureModel &m2) {
    auto state = [&](bool left, std::size_t x) {
        const auto &c = left ? m1.structure() : m2.structure();
        return config_string(c, c.configs()[x]);
    };
    auto pair = [&](const MatchTriple &t) {
        Json arr = Json::array();
        for (auto [a, b] : t.map)
            arr.push_back(Json::array({m1.structure().event(a).str(), m2.structure().event(b).str()}));
        return arr;
    };
    return result_json(r, state, pair);
}

Json to_json(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2) {
    auto state = [&](bool left, std::size_t s) {
        return pretty_rccs((left ? m1 : m2).lts().states[s]);
    };
    return result_json(r, state, [](const MatchTriple &t) { return pairs_json(t.map); });
}

std::string to_text(const BisimResult &r, const StructureModel &m1, const StructureModel &m2) {
    return result_text(r, [&](bool left, std::size_t x) {
        const auto &c = left ? m1.structure() : m2.structure();
        return config_string(c, c.configs()[x]);
    }, [&](std::pair<std::size_t, std::size_t> p) {
        return std::pair{m1.structure().event(p.first).str(), m2.structure().event(p.second).str()};
    });
}

std::string to_text(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2) {
    return result_text(r, [&](bool left, std::size_t s) {
        return pretty_rccs((left ? m1 : m2).lts().states[s]);
    }, [](std::pair<std::size_t, std::size_t> p) { return p; });
}

}  // namespace revccs
