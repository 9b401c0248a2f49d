#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#ifndef REVCCS_GOLDEN_DIR
#define REVCCS_GOLDEN_DIR "tests/golden"
#endif

namespace testing {

CcsProcess ccs(const std::string &text) {
    ParseOptions po;
    po.allow_unguarded_choice = true;
    return parse_ccs(text, po);
}

ConfigurationStructure literal(const std::string &events, const std::vector<std::string> &configs) {
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

Golden load_golden(const std::string &name) {
    std::ifstream in(std::string(REVCCS_GOLDEN_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    Golden g;
    std::string line, events;
    std::vector<std::string> configs;
    while (std::getline(in, line)) {
        auto sp = line.find(' ');
        auto key = line.substr(0, sp);
        auto rest = sp == std::string::npos ? std::string() : line.substr(sp + 1);
        if (key == "process") g.process = rest;
        else if (key == "events") events = rest;
        else if (key == "config") configs.push_back(rest);
    }
    g.structure = literal(events, configs);
    return g;
}

std::vector<std::string> label_shapes(const ConfigurationStructure &c) {
    std::vector<std::string> out;
    for (const auto &x : c.configs()) {
        std::vector<std::string> ls;
        for (auto e : x.elements()) ls.push_back(c.label(e).str());
        std::sort(ls.begin(), ls.end());
        std::string s = "{";
        for (std::size_t k = 0; k < ls.size(); ++k) s += (k ? " " : "") + ls[k];
        out.push_back(s + "}");
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool brute_iso(const ConfigurationStructure &c1, const ConfigurationStructure &c2) {
    std::size_t n = c1.event_count();
    if (n != c2.event_count() || c1.configs().size() != c2.configs().size()) return false;
    std::vector<std::size_t> perm(n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k == n) {
            for (const auto &x : c1.configs()) {
                EventSet y = c2.empty_set();
                for (auto e : x.elements()) y.insert(perm[e]);
                if (!c2.is_config(y)) return false;
            }
            return true;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || !(c1.label(k) == c2.label(j))) continue;
            used[j] = true;
            perm[k] = j;
            if (go(k + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return go(0);
}

std::set<std::size_t> below_oracle(const ConfigurationStructure &c, const EventSet &x, std::size_t e) {
    std::set<std::size_t> out;
    for (auto d : x.elements()) {
        bool below = true;
        for (const auto &y : c.configs())
            if (y.is_subset_of(x) && y.contains(e) && !y.contains(d)) below = false;
        if (below) out.insert(d);
    }
    return out;
}

bool lop_oracle(const ConfigurationStructure &c1, const EventSet &x1,
                const ConfigurationStructure &c2, const EventSet &x2,
                const std::vector<std::pair<std::size_t, std::size_t>> &f) {
    if (f.size() != x1.size() || f.size() != x2.size()) return false;
    std::map<std::size_t, std::size_t> m;
    std::set<std::size_t> range;
    for (auto [a, b] : f) {
        if (!x1.contains(a) || !x2.contains(b) || !(c1.label(a) == c2.label(b))) return false;
        m[a] = b;
        range.insert(b);
    }
    if (m.size() != f.size() || range.size() != f.size()) return false;
    for (auto [a, b] : f) {
        auto down1 = below_oracle(c1, x1, a);
        std::set<std::size_t> image;
        for (auto d : down1) image.insert(m[d]);
        if (image != below_oracle(c2, x2, b)) return false;
    }
    return true;
}

namespace {

using Map = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<Map> all_bijections(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
    std::vector<Map> out;
    if (a.size() != b.size()) return out;
    std::vector<std::size_t> perm = b;
    std::sort(perm.begin(), perm.end());
    do {
        Map f;
        for (std::size_t k = 0; k < a.size(); ++k) f.emplace_back(a[k], perm[k]);
        std::sort(f.begin(), f.end());
        out.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

bool hpb_oracle(const ConfigurationStructure &c1, const ConfigurationStructure &c2, bool hereditary) {
    using Triple = std::tuple<std::size_t, std::size_t, Map>;
    std::set<Triple> alive;
    const auto &k1 = c1.configs(), &k2 = c2.configs();
    for (std::size_t i = 0; i < k1.size(); ++i)
        for (std::size_t j = 0; j < k2.size(); ++j)
            for (auto &f : all_bijections(k1[i].elements(), k2[j].elements()))
                if (lop_oracle(c1, k1[i], c2, k2[j], f)) alive.insert({i, j, f});
    auto idx = [](const ConfigurationStructure &c, const EventSet &y) { return c.config_index(y); };
    auto clause_ok = [&](const Triple &t) {
        auto &[i, j, f] = t;
        // forward, both sides
        for (int side = 0; side < 2; ++side) {
            const auto &ca = side ? c2 : c1;
            const auto &cb = side ? c1 : c2;
            const auto &xa = side ? k2[j] : k1[i];
            const auto &xb = side ? k1[i] : k2[j];
            for (std::size_t e = 0; e < ca.event_count(); ++e) {
                if (xa.contains(e)) continue;
                EventSet ya = xa;
                ya.insert(e);
                auto ia = idx(ca, ya);
                if (!ia) continue;
                bool answered = false;
                for (std::size_t d = 0; d < cb.event_count() && !answered; ++d) {
                    if (xb.contains(d)) continue;
                    EventSet yb = xb;
                    yb.insert(d);
                    auto ib = idx(cb, yb);
                    if (!ib) continue;
                    Map g = f;
                    g.emplace_back(side ? d : e, side ? e : d);
                    std::sort(g.begin(), g.end());
                    Triple next = side ? Triple{*ib, *ia, g} : Triple{*ia, *ib, g};
                    answered = alive.count(next) > 0;
                }
                if (!answered) return false;
            }
        }
        if (!hereditary) return true;
        for (int side = 0; side < 2; ++side) {
            const auto &ca = side ? c2 : c1;
            const auto &cb = side ? c1 : c2;
            const auto &xa = side ? k2[j] : k1[i];
            const auto &xb = side ? k1[i] : k2[j];
            for (auto e : xa.elements()) {
                EventSet ya = xa;
                ya.erase(e);
                auto ia = idx(ca, ya);
                if (!ia) continue;
                bool answered = false;
                for (auto d : xb.elements()) {
                    EventSet yb = xb;
                    yb.erase(d);
                    auto ib = idx(cb, yb);
                    if (!ib) continue;
                    Map g;
                    for (auto [a, b] : f) {
                        std::size_t here = side ? b : a;
                        if (here != e) g.emplace_back(a, b);
                    }
                    Triple next = side ? Triple{*ib, *ia, g} : Triple{*ia, *ib, g};
                    if (alive.count(next)) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) return false;
            }
        }
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = alive.begin(); it != alive.end();) {
            if (!clause_ok(*it)) {
                it = alive.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    auto r1 = c1.config_index(c1.empty_set()), r2 = c2.config_index(c2.empty_set());
    return alive.count({*r1, *r2, Map{}}) > 0;
}

namespace {

Ident through(const IdentRenaming &ren, Ident i) {
    for (auto [a, b] : ren)
        if (a == i) return b;
    throw std::runtime_error("identifier outside renaming");
}

std::vector<Ident> sorted_ids(const RccsProcess &r) {
    auto s = r.ids();
    return {s.begin(), s.end()};
}

}  // namespace

bool bf_oracle(const LtsGraph &g1, const LtsGraph &g2, bool backward) {
    using Triple = std::tuple<std::size_t, std::size_t, Map>;
    std::set<Triple> alive;
    for (std::size_t s = 0; s < g1.states.size(); ++s)
        for (std::size_t t = 0; t < g2.states.size(); ++t) {
            auto a = sorted_ids(g1.states[s]);
            auto b = sorted_ids(g2.states[t]);
            std::vector<std::size_t> aa(a.begin(), a.end()), bb(b.begin(), b.end());
            for (auto &f : all_bijections(aa, bb)) alive.insert({s, t, f});
        }
    auto image = [](const Map &f, std::size_t i) -> std::optional<std::size_t> {
        for (auto [a, b] : f)
            if (a == i) return b;
        return std::nullopt;
    };
    auto translate = [](const Map &g, const LtsEdge &e1, const LtsEdge &e2) {
        Map out;
        for (auto [a, b] : g)
            out.emplace_back(through(e1.renaming, static_cast<Ident>(a)),
                             through(e2.renaming, static_cast<Ident>(b)));
        std::sort(out.begin(), out.end());
        return out;
    };
    auto clause_ok = [&](const Triple &t) {
        auto &[s1, s2, f] = t;
        for (int side = 0; side < 2; ++side) {
            const auto &ga = side ? g2 : g1;
            const auto &gb = side ? g1 : g2;
            std::size_t sa = side ? s2 : s1, sb = side ? s1 : s2;
            for (auto ei : ga.out_edges[sa]) {
                const auto &ea = ga.edges[ei];
                bool fwd = ea.direction == Direction::Forward;
                if (!fwd && !backward) continue;
                bool answered = false;
                for (auto ej : gb.out_edges[sb]) {
                    const auto &eb = gb.edges[ej];
                    if (eb.direction != ea.direction || !(eb.action == ea.action)) continue;
                    const LtsEdge &e1 = side ? eb : ea;
                    const LtsEdge &e2 = side ? ea : eb;
                    Map g;
                    if (fwd) {
                        g = f;
                        g.emplace_back(e1.ident, e2.ident);
                    } else {
                        auto im = image(f, e1.ident);
                        if (!im || *im != e2.ident) continue;
                        for (auto [a, b] : f)
                            if (a != e1.ident) g.emplace_back(a, b);
                    }
                    if (alive.count({e1.target, e2.target, translate(g, e1, e2)})) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) return false;
            }
        }
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = alive.begin(); it != alive.end();) {
            if (!clause_ok(*it)) {
                it = alive.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return alive.count({g1.root, g2.root, Map{}}) > 0;
}

namespace {

bool pair_game(const LtsGraph &g1, const LtsGraph &g2, bool backward, bool equal_ids) {
    std::set<std::pair<std::size_t, std::size_t>> alive;
    for (std::size_t s = 0; s < g1.states.size(); ++s)
        for (std::size_t t = 0; t < g2.states.size(); ++t)
            if (!equal_ids || g1.states[s].ids().size() == g2.states[t].ids().size())
                alive.insert({s, t});
    auto ok = [&](std::size_t s1, std::size_t s2) {
        for (int side = 0; side < 2; ++side) {
            const auto &ga = side ? g2 : g1;
            const auto &gb = side ? g1 : g2;
            std::size_t sa = side ? s2 : s1, sb = side ? s1 : s2;
            for (auto ei : ga.out_edges[sa]) {
                const auto &ea = ga.edges[ei];
                if (ea.direction == Direction::Backward && !backward) continue;
                bool answered = false;
                for (auto ej : gb.out_edges[sb]) {
                    const auto &eb = gb.edges[ej];
                    if (eb.direction != ea.direction || !(eb.action == ea.action)) continue;
                    auto next = side ? std::pair{eb.target, ea.target} : std::pair{ea.target, eb.target};
                    if (alive.count(next)) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) return false;
            }
        }
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = alive.begin(); it != alive.end();) {
            if (!ok(it->first, it->second)) {
                it = alive.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return alive.count({g1.root, g2.root}) > 0;
}

}  // namespace

bool sbf_oracle(const LtsGraph &g1, const LtsGraph &g2) { return pair_game(g1, g2, true, true); }

bool interleaving_oracle(const LtsGraph &g1, const LtsGraph &g2) {
    return pair_game(g1, g2, false, false);
}

std::string validate_witness(const BisimResult &r, const StructureModel &m1, const StructureModel &m2) {
    if (!r.holds) return "";
    const auto &c1 = m1.structure(), &c2 = m2.structure();
    std::set<std::tuple<std::size_t, std::size_t, Map>> w;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto &t : r.witness) {
        auto m = t.map;
        std::sort(m.begin(), m.end());
        w.insert({t.left, t.right, m});
        pairs.insert({t.left, t.right});
        if (!lop_oracle(c1, c1.configs()[t.left], c2, c2.configs()[t.right], m))
            return "triple without an l&o-p bijection";
    }
    auto r1 = *c1.config_index(c1.empty_set()), r2 = *c2.config_index(c2.empty_set());
    if (!pairs.count({r1, r2})) return "root pair missing";
    bool hereditary = r.relation == Relation::Hhpb;
    auto holds = [&](std::size_t y1, std::size_t y2, const Map &g) {
        if (r.weak) return pairs.count({y1, y2}) > 0;
        auto s = g;
        std::sort(s.begin(), s.end());
        return w.count({y1, y2, s}) > 0;
    };
    for (const auto &t : r.witness) {
        const auto &x1 = c1.configs()[t.left], &x2 = c2.configs()[t.right];
        for (int side = 0; side < 2; ++side) {
            const auto &ca = side ? c2 : c1;
            const auto &cb = side ? c1 : c2;
            const auto &xa = side ? x2 : x1;
            const auto &xb = side ? x1 : x2;
            for (std::size_t e = 0; e < ca.event_count(); ++e) {
                if (xa.contains(e)) continue;
                EventSet ya = xa;
                ya.insert(e);
                auto ia = ca.config_index(ya);
                if (!ia) continue;
                bool answered = false;
                for (std::size_t d = 0; d < cb.event_count() && !answered; ++d) {
                    if (xb.contains(d) || !(ca.label(e) == cb.label(d))) continue;
                    EventSet yb = xb;
                    yb.insert(d);
                    auto ib = cb.config_index(yb);
                    if (!ib) continue;
                    Map g = t.map;
                    g.emplace_back(side ? d : e, side ? e : d);
                    answered = side ? holds(*ib, *ia, g) : holds(*ia, *ib, g);
                }
                if (!answered) return "unanswered forward move";
            }
            if (!hereditary) continue;
            for (auto e : xa.elements()) {
                EventSet ya = xa;
                ya.erase(e);
                auto ia = ca.config_index(ya);
                if (!ia) continue;
                bool answered = false;
                for (auto d : xb.elements()) {
                    if (!(ca.label(e) == cb.label(d))) continue;
                    EventSet yb = xb;
                    yb.erase(d);
                    auto ib = cb.config_index(yb);
                    if (!ib) continue;
                    Map g;
                    bool paired = r.weak;
                    for (auto [a, b] : t.map) {
                        std::size_t here = side ? b : a, there = side ? a : b;
                        if (here == e) paired = paired || there == d;
                        else g.emplace_back(a, b);
                    }
                    if (!paired) continue;
                    if (side ? holds(*ib, *ia, g) : holds(*ia, *ib, g)) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) return "unanswered backward move";
            }
        }
    }
    return "";
}

std::string validate_witness(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2) {
    if (!r.holds) return "";
    const auto &g1 = m1.lts(), &g2 = m2.lts();
    bool ids = r.relation == Relation::Bf || r.relation == Relation::BfForward ||
               ((r.relation == Relation::HpbRccs || r.relation == Relation::HhpbRccs) && !r.weak);
    bool backward = r.relation != Relation::BfForward && r.relation != Relation::HpbRccs;
    std::set<std::tuple<std::size_t, std::size_t, Map>> w;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto &t : r.witness) {
        auto m = t.map;
        std::sort(m.begin(), m.end());
        w.insert({t.left, t.right, m});
        pairs.insert({t.left, t.right});
        if (g1.states[t.left].ids().size() != g2.states[t.right].ids().size())
            return "identifier counts differ";
        if (r.relation == Relation::HpbRccs || r.relation == Relation::HhpbRccs) {
            auto e1 = forget(encode_memory(g1.states[t.left]));
            auto e2 = forget(encode_memory(g2.states[t.right]));
            if (!brute_iso(e1, e2)) return "memory encodings not isomorphic";
        }
    }
    if (!pairs.count({g1.root, g2.root})) return "root pair missing";
    for (const auto &t : r.witness) {
        for (int side = 0; side < 2; ++side) {
            const auto &ga = side ? g2 : g1;
            const auto &gb = side ? g1 : g2;
            std::size_t sa = side ? t.right : t.left, sb = side ? t.left : t.right;
            for (auto ei : ga.out_edges[sa]) {
                const auto &ea = ga.edges[ei];
                bool fwd = ea.direction == Direction::Forward;
                if (!fwd && !backward) continue;
                bool answered = false;
                for (auto ej : gb.out_edges[sb]) {
                    const auto &eb = gb.edges[ej];
                    if (eb.direction != ea.direction || !(eb.action == ea.action)) continue;
                    const LtsEdge &e1 = side ? eb : ea;
                    const LtsEdge &e2 = side ? ea : eb;
                    if (!ids) {
                        if (pairs.count({e1.target, e2.target})) answered = true;
                    } else {
                        Map g;
                        bool paired = fwd;
                        for (auto [a, b] : t.map) {
                            if (!fwd && a == e1.ident) {
                                paired = b == e2.ident;
                                continue;
                            }
                            g.emplace_back(a, b);
                        }
                        if (!paired) continue;
                        if (fwd) g.emplace_back(e1.ident, e2.ident);
                        Map h;
                        for (auto [a, b] : g)
                            h.emplace_back(through(e1.renaming, static_cast<Ident>(a)),
                                           through(e2.renaming, static_cast<Ident>(b)));
                        std::sort(h.begin(), h.end());
                        if (w.count({e1.target, e2.target, h})) answered = true;
                    }
                    if (answered) break;
                }
                if (!answered) return "unanswered move";
            }
        }
    }
    return "";
}

const std::vector<CcsProcess> &corpus() {
    static const std::vector<CcsProcess> all = generate_corpus();
    return all;
}

std::vector<CcsProcess> small_corpus(std::size_t n) {
    std::vector<CcsProcess> out;
    for (const auto &p : corpus())
        if (p.prefix_count() <= n) out.push_back(p);
    return out;
}

std::vector<Transition> random_walk(const CcsProcess &p, std::size_t steps, std::mt19937_64 &rng) {
    std::vector<Transition> out;
    RccsProcess r = initial_state(p);
    for (std::size_t k = 0; k < steps; ++k) {
        auto ts = forward_transitions(r);
        if (ts.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
        auto t = ts[pick(rng)];
        r = t.target;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<EventSet> replay_addresses(const ConfigurationStructure &denotation,
                                       const std::vector<Transition> &trace) {
    std::vector<EventSet> cands{denotation.empty_set()};
    for (const auto &t : trace) {
        auto target = forget(encode_memory(t.target));
        std::set<EventSet> next;
        for (const auto &x : cands)
            for (std::size_t e = 0; e < denotation.event_count(); ++e) {
                if (x.contains(e) || !(denotation.label(e) == Label::action(t.action.str()))) continue;
                EventSet y = x;
                y.insert(e);
                if (!denotation.is_config(y)) continue;
                if (brute_iso(generate_below(denotation, y), target)) next.insert(y);
            }
        cands.assign(next.begin(), next.end());
    }
    return cands;
}

}  // namespace testing

namespace testing {

std::set<std::set<EventId>> powerset_product(const ConfigurationStructure &c1,
                                             const ConfigurationStructure &c2) {
    struct Ev {
        int a, b;
        EventId id;
    };
    std::vector<Ev> evs;
    for (int a = -1; a < static_cast<int>(c1.event_count()); ++a)
        for (int b = -1; b < static_cast<int>(c2.event_count()); ++b) {
            if (a < 0 && b < 0) continue;
            Term ta = a < 0 ? Term::star() : c1.event(a).value;
            Term tb = b < 0 ? Term::star() : c2.event(b).value;
            evs.push_back({a, b, EventId{Term::pair(ta, tb)}});
        }
    std::size_t n = evs.size();
    if (n > 20) throw std::runtime_error("product too large for the powerset oracle");
    auto projections_ok = [&](std::uint32_t mask) {
        EventSet x1 = c1.empty_set(), x2 = c2.empty_set();
        for (std::size_t k = 0; k < n; ++k) {
            if (!(mask >> k & 1)) continue;
            if (evs[k].a >= 0) x1.insert(evs[k].a);
            if (evs[k].b >= 0) x2.insert(evs[k].b);
        }
        return c1.is_config(x1) && c2.is_config(x2);
    };
    std::set<std::set<EventId>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool injective = true;
        for (std::size_t i = 0; i < n && injective; ++i)
            for (std::size_t j = i + 1; j < n && injective; ++j) {
                if (!(mask >> i & 1) || !(mask >> j & 1)) continue;
                if ((evs[i].a >= 0 && evs[i].a == evs[j].a) || (evs[i].b >= 0 && evs[i].b == evs[j].b))
                    injective = false;
            }
        if (!injective || !projections_ok(mask)) continue;
        std::vector<std::uint32_t> subs;
        for (std::uint32_t z = mask;; z = (z - 1) & mask) {
            if (projections_ok(z)) subs.push_back(z);
            if (z == 0) break;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            bool covered = false;
            for (auto z : subs) covered = covered || (z >> i & 1);
            ok = covered;
            for (std::size_t j = i + 1; j < n && ok; ++j) {
                if (!(mask >> j & 1)) continue;
                bool separated = false;
                for (auto z : subs) separated = separated || ((z >> i & 1) != (z >> j & 1));
                ok = separated;
            }
        }
        if (!ok) continue;
        std::set<EventId> x;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1) x.insert(evs[k].id);
        out.insert(std::move(x));
    }
    return out;
}

ConfigurationStructure random_structure(std::mt19937_64 &rng, std::size_t max_events) {
    static std::vector<ConfigurationStructure> pool = [] {
        std::vector<ConfigurationStructure> all;
        for (const auto &p : corpus()) {
            auto c = encode_ccs(p);
            if (c.event_count() <= 8) all.push_back(std::move(c));
        }
        all.push_back(ConfigurationStructure());
        return all;
    }();
    for (;;) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        const auto &c = pool[pick(rng)];
        if (c.event_count() <= max_events) return c;
    }
}

}  // namespace testing
