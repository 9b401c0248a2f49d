#include "revccs/equivalences.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace revccs {

std::string relation_name(Relation r) {
    switch (r) {
    case Relation::Hpb: return "hpb";
    case Relation::Hhpb: return "hhpb";
    case Relation::Bf: return "bf";
    case Relation::Sbf: return "sbf";
    case Relation::BfForward: return "bf-fwd";
    case Relation::HpbRccs: return "hpb-rccs";
    case Relation::HhpbRccs: return "hhpb-rccs";
    }
    return "?";
}

std::optional<Relation> parse_relation(const std::string &name) {
    for (auto r : {Relation::Hpb, Relation::Hhpb, Relation::Bf, Relation::Sbf, Relation::BfForward,
                   Relation::HpbRccs, Relation::HhpbRccs})
        if (relation_name(r) == name) return r;
    return std::nullopt;
}

bool is_structure_relation(Relation r) { return r == Relation::Hpb || r == Relation::Hhpb; }

bool supports_weak(Relation r) {
    return r == Relation::Hpb || r == Relation::Hhpb || r == Relation::HpbRccs ||
           r == Relation::HhpbRccs;
}

// ------------------------------------------------------------------ models

StructureModel::StructureModel(ConfigurationStructure c) : c_(std::move(c)) {
    const auto &cfgs = c_.configs();
    auto root = c_.config_index(c_.empty_set());
    if (!root) throw StructureError("structure lacks the empty configuration");
    root_ = *root;
    forward_.resize(cfgs.size());
    backward_.resize(cfgs.size());
    below_.resize(cfgs.size());
    for (std::size_t k = 0; k < cfgs.size(); ++k) {
        const auto &x = cfgs[k];
        for (std::size_t e = 0; e < c_.event_count(); ++e) {
            EventSet y = x;
            if (x.contains(e)) {
                y.erase(e);
                if (auto j = c_.config_index(y)) backward_[k].emplace_back(e, *j);
            } else {
                y.insert(e);
                if (auto j = c_.config_index(y)) forward_[k].emplace_back(e, *j);
            }
        }
        below_[k] = causal_below(c_, x);
    }
}

ProcessModel::ProcessModel(const CcsProcess &p, const ExploreOptions &options)
    : p_(p), lts_(explore(p, options)) {
    memory_.resize(lts_.states.size());
    shape_.resize(lts_.states.size());
}

const IdentifiedStructure &ProcessModel::memory(std::size_t state) const {
    auto &slot = memory_.at(state);
    if (!slot) slot = encode_memory(lts_.states[state]);
    return *slot;
}

const MemoryShape &ProcessModel::shape(std::size_t state) const {
    auto &slot = shape_.at(state);
    if (!slot) slot = memory_shape(memory(state));
    return *slot;
}

// ------------------------------------------------------------- bijections

bool is_lop(const StructureModel &m1, std::size_t x1, const StructureModel &m2, std::size_t x2,
            const EventBijection &f) {
    const auto &c1 = m1.structure(), &c2 = m2.structure();
    const auto &cx1 = c1.configs()[x1], &cx2 = c2.configs()[x2];
    if (f.size() != cx1.size() || f.size() != cx2.size()) return false;
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> img(c1.event_count(), none);
    EventSet range = c2.empty_set();
    for (auto [d1, d2] : f) {
        if (!cx1.contains(d1) || !cx2.contains(d2) || img[d1] != none || range.contains(d2))
            return false;
        if (!(c1.label(d1) == c2.label(d2))) return false;
        img[d1] = d2;
        range.insert(d2);
    }
    const auto &b1 = m1.below(x1), &b2 = m2.below(x2);
    for (auto [d1, d2] : f) {
        EventSet mapped = c2.empty_set();
        for (auto e : b1[d1].elements()) mapped.insert(img[e]);
        if (!(mapped == b2[d2])) return false;
    }
    return true;
}

std::vector<EventBijection> lop_bijections(const StructureModel &m1, std::size_t x1,
                                           const StructureModel &m2, std::size_t x2) {
    std::vector<EventBijection> out;
    const auto &c1 = m1.structure(), &c2 = m2.structure();
    auto el1 = c1.configs()[x1].elements(), el2 = c2.configs()[x2].elements();
    if (el1.size() != el2.size()) return out;
    EventBijection cur;
    std::vector<bool> used(el2.size(), false);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == el1.size()) {
            if (is_lop(m1, x1, m2, x2, cur)) out.push_back(cur);
            return;
        }
        for (std::size_t j = 0; j < el2.size(); ++j) {
            if (used[j] || !(c1.label(el1[k]) == c2.label(el2[j]))) continue;
            used[j] = true;
            cur.emplace_back(el1[k], el2[j]);
            go(k + 1);
            cur.pop_back();
            used[j] = false;
        }
    };
    go(0);
    return out;
}

std::vector<std::vector<std::pair<EventId, EventId>>> lop_bijections(
    const ConfigurationStructure &c1, const EventSet &x, const ConfigurationStructure &c2,
    const EventSet &y) {
    StructureModel m1(c1), m2(c2);
    auto i = c1.config_index(x), j = c2.config_index(y);
    if (!i || !j) throw StructureError("lop bijections need configurations");
    std::vector<std::vector<std::pair<EventId, EventId>>> out;
    for (const auto &f : lop_bijections(m1, *i, m2, *j)) {
        std::vector<std::pair<EventId, EventId>> g;
        for (auto [a, b] : f) g.emplace_back(c1.event(a), c2.event(b));
        out.push_back(std::move(g));
    }
    return out;
}

bool is_memory_iso(const MemoryShape &a, const MemoryShape &b,
                   const std::vector<std::pair<std::uint64_t, std::uint64_t>> &f) {
    std::size_t n = a.idents.size();
    if (n != b.idents.size() || f.size() != n || a.configs.size() != b.configs.size())
        return false;
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> perm(n, none);
    std::uint64_t hit = 0;
    for (auto [x, y] : f) {
        auto pa = std::lower_bound(a.idents.begin(), a.idents.end(), x);
        auto pb = std::lower_bound(b.idents.begin(), b.idents.end(), y);
        if (pa == a.idents.end() || *pa != x || pb == b.idents.end() || *pb != y) return false;
        auto p = static_cast<std::size_t>(pa - a.idents.begin());
        auto q = static_cast<std::size_t>(pb - b.idents.begin());
        if (perm[p] != none || (hit >> q & 1U)) return false;
        if (!(a.labels[p] == b.labels[q])) return false;
        perm[p] = q;
        hit |= std::uint64_t{1} << q;
    }
    for (auto mask : a.configs) {
        std::uint64_t img = 0;
        for (std::size_t p = 0; p < n; ++p)
            if (mask >> p & 1U) img |= std::uint64_t{1} << perm[p];
        if (!b.has_config(img)) return false;
    }
    return true;
}

// ------------------------------------------------------------------- game

namespace {

struct Key {
    std::uint32_t a = 0, b = 0;
    std::vector<std::uint32_t> f;
    bool operator==(const Key &) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key &k) const {
        std::size_t h = (std::size_t{k.a} << 32) ^ k.b;
        for (auto v : k.f) h = h * 0x100000001b3ULL ^ v;
        return std::hash<std::size_t>{}(h);
    }
};

struct ObligationSpec {
    int clause = 0;
    std::size_t move = 0;
    std::vector<Key> cands;
};

using Expander = std::function<void(const Key &, std::vector<ObligationSpec> &)>;

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Greatest fixed point over triples reachable from the root: a node dies
// as soon as one of its obligations has no live candidate left.
class Game {
public:
    Game(Expander expand, std::size_t node_cap) : expand_(std::move(expand)), cap_(node_cap) {}

    bool solve(const Key &root) {
        std::uint32_t r = intern(root);
        std::vector<ObligationSpec> specs;
        std::vector<std::uint32_t> ids;
        for (std::size_t head = 0; head < order_.size() && !nodes_[r].dead; ++head) {
            std::uint32_t n = order_[head];
            if (nodes_[n].dead) continue;
            specs.clear();
            expand_(nodes_[n].key, specs);
            nodes_[n].expanded = true;
            for (auto &spec : specs) {
                ids.clear();
                for (auto &k : spec.cands) ids.push_back(intern(std::move(k)));
                std::sort(ids.begin(), ids.end());
                ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
                Obligation ob{spec.clause, spec.move, 0, static_cast<std::uint32_t>(ids.size()),
                              ids.empty() ? kNone : ids.front()};
                auto oi = static_cast<std::uint32_t>(nodes_[n].obs.size());
                for (auto id : ids) {
                    if (nodes_[id].dead) continue;
                    ob.alive++;
                    nodes_[id].preds.emplace_back(n, oi);
                }
                nodes_[n].obs.push_back(ob);
                if (ob.alive == 0) {
                    kill(n, oi);
                    break;
                }
            }
        }
        return !nodes_[r].dead;
    }

    std::size_t size() const { return nodes_.size(); }

    template <typename F>
    void for_each_alive(F &&f) const {
        for (const auto &n : nodes_)
            if (!n.dead && n.expanded) f(n.key);
    }

    struct Step {
        Key key;
        int clause;
        std::size_t move;
        std::size_t responses;
    };

    std::vector<Step> certificate() const {
        std::vector<Step> out;
        std::uint32_t n = 0;
        while (n != kNone && nodes_[n].dead && out.size() < 256) {
            const auto &ob = nodes_[n].obs[nodes_[n].kill];
            out.push_back({nodes_[n].key, ob.clause, ob.move, ob.count});
            n = ob.first;
        }
        return out;
    }

private:
    struct Obligation {
        int clause;
        std::size_t move;
        std::uint32_t alive;
        std::uint32_t count;
        std::uint32_t first;
    };
    struct Node {
        Key key;
        bool dead = false;
        bool expanded = false;
        std::uint32_t kill = 0;
        std::vector<Obligation> obs;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> preds;
    };

    std::uint32_t intern(Key k) {
        auto it = index_.find(k);
        if (it != index_.end()) return it->second;
        if (nodes_.size() >= cap_) throw ResourceLimitError("bisimulation game exceeds node cap");
        auto id = static_cast<std::uint32_t>(nodes_.size());
        index_.emplace(k, id);
        nodes_.push_back(Node{std::move(k), false, false, 0, {}, {}});
        order_.push_back(id);
        return id;
    }

    void kill(std::uint32_t n, std::uint32_t ob) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> work{{n, ob}};
        while (!work.empty()) {
            auto [v, o] = work.back();
            work.pop_back();
            if (nodes_[v].dead) continue;
            nodes_[v].dead = true;
            nodes_[v].kill = o;
            for (auto [p, po] : nodes_[v].preds) {
                if (nodes_[p].dead) continue;
                if (--nodes_[p].obs[po].alive == 0) work.emplace_back(p, po);
            }
        }
    }

    Expander expand_;
    std::size_t cap_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;
    std::unordered_map<Key, std::uint32_t, KeyHash> index_;
};

const char *clause_name(int clause) {
    switch (clause) {
    case 1: return "forward-left";
    case 2: return "forward-right";
    case 3: return "backward-left";
    case 4: return "backward-right";
    }
    return "?";
}

// ------------------------------------------------------ structure games

class StructureGame {
public:
    StructureGame(const StructureModel &m1, const StructureModel &m2, bool hereditary, bool weak)
        : m1_(m1), m2_(m2), hereditary_(hereditary), weak_(weak) {}

    Key root() const {
        return {static_cast<std::uint32_t>(m1_.root()), static_cast<std::uint32_t>(m2_.root()), {}};
    }

    EventBijection bijection(const Key &k) const {
        EventBijection f;
        auto el = m1_.structure().configs()[k.a].elements();
        for (std::size_t p = 0; p < el.size(); ++p) f.emplace_back(el[p], k.f[p]);
        return f;
    }

    EventBijection witness_map(const Key &k) {
        if (!weak_) return bijection(k);
        auto all = lop_bijections(m1_, k.a, m2_, k.b);
        return all.empty() ? EventBijection{} : all.front();
    }

    void expand(const Key &k, std::vector<ObligationSpec> &out) {
        std::size_t x1 = k.a, x2 = k.b;
        EventBijection f = weak_ ? EventBijection{} : bijection(k);
        const auto &c1 = m1_.structure(), &c2 = m2_.structure();
        for (auto [e1, y1] : m1_.forward(x1)) {
            ObligationSpec ob{1, e1, {}};
            for (auto [e2, y2] : m2_.forward(x2))
                if (c1.label(e1) == c2.label(e2)) respond(f, y1, y2, e1, e2, true, ob);
            out.push_back(std::move(ob));
        }
        for (auto [e2, y2] : m2_.forward(x2)) {
            ObligationSpec ob{2, e2, {}};
            for (auto [e1, y1] : m1_.forward(x1))
                if (c1.label(e1) == c2.label(e2)) respond(f, y1, y2, e1, e2, true, ob);
            out.push_back(std::move(ob));
        }
        if (!hereditary_) return;
        for (auto [e1, y1] : m1_.backward(x1)) {
            ObligationSpec ob{3, e1, {}};
            for (auto [e2, y2] : m2_.backward(x2))
                if (c1.label(e1) == c2.label(e2)) respond(f, y1, y2, e1, e2, false, ob);
            out.push_back(std::move(ob));
        }
        for (auto [e2, y2] : m2_.backward(x2)) {
            ObligationSpec ob{4, e2, {}};
            for (auto [e1, y1] : m1_.backward(x1))
                if (c1.label(e1) == c2.label(e2)) respond(f, y1, y2, e1, e2, false, ob);
            out.push_back(std::move(ob));
        }
    }

private:
    void respond(const EventBijection &f, std::size_t y1, std::size_t y2, std::size_t e1,
                 std::size_t e2, bool forward, ObligationSpec &ob) {
        if (weak_) {
            if (lop_exists(y1, y2))
                ob.cands.push_back({static_cast<std::uint32_t>(y1), static_cast<std::uint32_t>(y2), {}});
            return;
        }
        EventBijection g;
        if (forward) {
            g = f;
            g.emplace_back(e1, e2);
        } else {
            bool paired = false;
            for (auto [d1, d2] : f) {
                if (d1 == e1 || d2 == e2) {
                    paired = paired || (d1 == e1 && d2 == e2);
                    continue;
                }
                g.emplace_back(d1, d2);
            }
            if (!paired) return;
        }
        if (!is_lop(m1_, y1, m2_, y2, g)) return;
        std::sort(g.begin(), g.end());
        Key k{static_cast<std::uint32_t>(y1), static_cast<std::uint32_t>(y2), {}};
        for (auto [d1, d2] : g) k.f.push_back(static_cast<std::uint32_t>(d2));
        ob.cands.push_back(std::move(k));
    }

    bool lop_exists(std::size_t y1, std::size_t y2) {
        auto key = (static_cast<std::uint64_t>(y1) << 32) | y2;
        auto it = lop_cache_.find(key);
        if (it != lop_cache_.end()) return it->second;
        bool ok = !lop_bijections(m1_, y1, m2_, y2).empty();
        lop_cache_.emplace(key, ok);
        return ok;
    }

    const StructureModel &m1_, &m2_;
    bool hereditary_, weak_;
    std::unordered_map<std::uint64_t, bool> lop_cache_;
};

// -------------------------------------------------------- process games

std::uint32_t renamed(const IdentRenaming &ren, Ident i) {
    for (auto [from, to] : ren)
        if (from == i) return to;
    throw PreconditionError("identifier " + std::to_string(i) + " missing from renaming");
}

class ProcessGame {
public:
    enum class Mode { Identifiers, Labels, Memory, MemoryWeak };

    ProcessGame(const ProcessModel &m1, const ProcessModel &m2, Mode mode, bool backward)
        : m1_(m1), m2_(m2), mode_(mode), backward_(backward) {
        counts1_ = id_counts(m1.lts());
        counts2_ = id_counts(m2.lts());
    }

    Key root() const {
        return {static_cast<std::uint32_t>(m1_.lts().root), static_cast<std::uint32_t>(m2_.lts().root), {}};
    }

    std::vector<std::pair<std::size_t, std::size_t>> witness_map(const Key &k) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        if (strong()) {
            for (std::size_t i = 0; i < k.f.size(); ++i) out.emplace_back(i + 1, k.f[i]);
        } else if (mode_ == Mode::MemoryWeak) {
            auto map = detail::find_iso(m1_.memory(k.a).base(), m2_.memory(k.b).base(), true,
                                        nullptr, nullptr);
            if (map) {
                const auto &i1 = m1_.memory(k.a).idents();
                const auto &i2 = m2_.memory(k.b).idents();
                for (std::size_t e = 0; e < map->size(); ++e)
                    out.emplace_back(i1[e].value.number(), i2[(*map)[e]].value.number());
                std::sort(out.begin(), out.end());
            }
        } else {
            for (std::size_t i = 1; i <= counts1_[k.a]; ++i) out.emplace_back(i, i);
        }
        return out;
    }

    std::string move_text(bool left, std::size_t edge) const {
        const auto &g = left ? m1_.lts() : m2_.lts();
        const auto &e = g.edges[edge];
        return direction_name(e.direction) + " " + std::to_string(e.ident) + ":" + e.action.str();
    }

    void expand(const Key &k, std::vector<ObligationSpec> &out) {
        const auto &g1 = m1_.lts(), &g2 = m2_.lts();
        for (int clause = 1; clause <= (backward_ ? 4 : 2); ++clause) {
            bool left = clause == 1 || clause == 3;
            Direction dir = clause <= 2 ? Direction::Forward : Direction::Backward;
            const auto &ga = left ? g1 : g2;
            const auto &gb = left ? g2 : g1;
            std::size_t sa = left ? k.a : k.b, sb = left ? k.b : k.a;
            for (auto ei : ga.out_edges[sa]) {
                const auto &ea = ga.edges[ei];
                if (ea.direction != dir) continue;
                ObligationSpec ob{clause, ei, {}};
                for (auto ej : gb.out_edges[sb]) {
                    const auto &eb = gb.edges[ej];
                    if (eb.direction != dir || !(eb.action == ea.action)) continue;
                    const LtsEdge &e1 = left ? ea : eb;
                    const LtsEdge &e2 = left ? eb : ea;
                    respond(k, e1, e2, dir, ob);
                }
                out.push_back(std::move(ob));
            }
        }
    }

private:
    bool strong() const { return mode_ == Mode::Identifiers || mode_ == Mode::Memory; }

    static std::vector<std::size_t> id_counts(const LtsGraph &g) {
        std::vector<std::size_t> out;
        for (const auto &s : g.states) out.push_back(s.ids().size());
        return out;
    }

    void respond(const Key &k, const LtsEdge &e1, const LtsEdge &e2, Direction dir,
                 ObligationSpec &ob) {
        auto t1 = static_cast<std::uint32_t>(e1.target), t2 = static_cast<std::uint32_t>(e2.target);
        if (counts1_[t1] != counts2_[t2]) return;
        if (!strong()) {
            if (mode_ == Mode::MemoryWeak && !iso_exists(t1, t2)) return;
            ob.cands.push_back({t1, t2, {}});
            return;
        }
        std::vector<std::pair<Ident, Ident>> raw;
        for (std::size_t i = 0; i < k.f.size(); ++i)
            raw.emplace_back(static_cast<Ident>(i + 1), static_cast<Ident>(k.f[i]));
        if (dir == Direction::Forward) {
            raw.emplace_back(e1.ident, e2.ident);
        } else {
            auto it = std::find(raw.begin(), raw.end(), std::pair<Ident, Ident>{e1.ident, e2.ident});
            if (it == raw.end()) return;
            raw.erase(it);
        }
        Key next{t1, t2, std::vector<std::uint32_t>(counts1_[t1], 0)};
        for (auto [x, y] : raw) {
            auto cx = renamed(e1.renaming, x);
            if (cx == 0 || cx > next.f.size())
                throw PreconditionError("identifiers of explored states are not canonical");
            next.f[cx - 1] = renamed(e2.renaming, y);
        }
        if (mode_ == Mode::Memory) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
            for (std::size_t i = 0; i < next.f.size(); ++i) pairs.emplace_back(i + 1, next.f[i]);
            if (!is_memory_iso(m1_.shape(t1), m2_.shape(t2), pairs)) return;
        }
        ob.cands.push_back(std::move(next));
    }

    bool iso_exists(std::uint32_t t1, std::uint32_t t2) {
        auto key = (static_cast<std::uint64_t>(t1) << 32) | t2;
        auto it = iso_cache_.find(key);
        if (it != iso_cache_.end()) return it->second;
        bool ok = detail::find_iso(m1_.memory(t1).base(), m2_.memory(t2).base(), true, nullptr,
                                   nullptr)
                      .has_value();
        iso_cache_.emplace(key, ok);
        return ok;
    }

    const ProcessModel &m1_, &m2_;
    Mode mode_;
    bool backward_;
    std::vector<std::size_t> counts1_, counts2_;
    std::unordered_map<std::uint64_t, bool> iso_cache_;
};

}  // namespace

BisimResult check_structures(Relation r, const StructureModel &m1, const StructureModel &m2,
                             const CheckOptions &options) {
    if (!is_structure_relation(r))
        throw PreconditionError(relation_name(r) + " is not a relation on structures");
    StructureGame sg(m1, m2, r == Relation::Hhpb, options.weak);
    Game game([&](const Key &k, std::vector<ObligationSpec> &out) { sg.expand(k, out); },
              options.node_cap);
    BisimResult res;
    res.relation = r;
    res.weak = options.weak;
    res.holds = game.solve(sg.root());
    res.nodes = game.size();
    if (res.holds) {
        game.for_each_alive([&](const Key &k) {
            res.witness.push_back({k.a, k.b, sg.witness_map(k)});
        });
    } else {
        for (const auto &st : game.certificate()) {
            bool left = st.clause == 1 || st.clause == 3;
            const auto &c = left ? m1.structure() : m2.structure();
            res.certificate.push_back({st.key.a, st.key.b, clause_name(st.clause),
                                       c.label(st.move).str() + " " + c.event(st.move).str(),
                                       st.responses});
        }
    }
    return res;
}

BisimResult check_processes(Relation r, const ProcessModel &m1, const ProcessModel &m2,
                            const CheckOptions &options) {
    if (is_structure_relation(r))
        throw PreconditionError(relation_name(r) + " is not a relation on processes");
    if (options.weak && !supports_weak(r))
        throw PreconditionError(relation_name(r) + " has no weak variant");
    using Mode = ProcessGame::Mode;
    Mode mode = Mode::Identifiers;
    bool backward = true;
    switch (r) {
    case Relation::Bf: break;
    case Relation::Sbf: mode = Mode::Labels; break;
    case Relation::BfForward: backward = false; break;
    case Relation::HpbRccs:
        backward = false;
        mode = options.weak ? Mode::MemoryWeak : Mode::Memory;
        break;
    case Relation::HhpbRccs: mode = options.weak ? Mode::MemoryWeak : Mode::Memory; break;
    default: break;
    }
    ProcessGame pg(m1, m2, mode, backward);
    Game game([&](const Key &k, std::vector<ObligationSpec> &out) { pg.expand(k, out); },
              options.node_cap);
    BisimResult res;
    res.relation = r;
    res.weak = options.weak;
    res.holds = game.solve(pg.root());
    res.nodes = game.size();
    if (res.holds) {
        game.for_each_alive([&](const Key &k) {
            res.witness.push_back({k.a, k.b, pg.witness_map(k)});
        });
    } else {
        for (const auto &st : game.certificate()) {
            bool left = st.clause == 1 || st.clause == 3;
            res.certificate.push_back({st.key.a, st.key.b, clause_name(st.clause),
                                       pg.move_text(left, st.move), st.responses});
        }
    }
    return res;
}

namespace {

BisimResult on_structures(Relation r, const ConfigurationStructure &c1,
                          const ConfigurationStructure &c2, const CheckOptions &options) {
    StructureModel m1(c1), m2(c2);
    return check_structures(r, m1, m2, options);
}

BisimResult on_processes(Relation r, const CcsProcess &p1, const CcsProcess &p2,
                         const CheckOptions &options) {
    ExploreOptions eo;
    eo.state_cap = options.state_cap;
    ProcessModel m1(p1, eo), m2(p2, eo);
    return check_processes(r, m1, m2, options);
}

}  // namespace

BisimResult hpb(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                const CheckOptions &options) {
    return on_structures(Relation::Hpb, c1, c2, options);
}

BisimResult hhpb(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                 const CheckOptions &options) {
    return on_structures(Relation::Hhpb, c1, c2, options);
}

BisimResult bf(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options) {
    return on_processes(Relation::Bf, p1, p2, options);
}

BisimResult sbf(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options) {
    return on_processes(Relation::Sbf, p1, p2, options);
}

BisimResult bf_forward_only(const CcsProcess &p1, const CcsProcess &p2,
                            const CheckOptions &options) {
    return on_processes(Relation::BfForward, p1, p2, options);
}

BisimResult hpb_rccs(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options) {
    return on_processes(Relation::HpbRccs, p1, p2, options);
}

BisimResult hhpb_rccs(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options) {
    return on_processes(Relation::HhpbRccs, p1, p2, options);
}

BisimResult check(Relation r, const CcsProcess &p1, const CcsProcess &p2,
                  const CheckOptions &options) {
    if (is_structure_relation(r)) return on_structures(r, encode_ccs(p1), encode_ccs(p2), options);
    if (p1.has_choice() || p2.has_choice())
        throw PreconditionError("unguarded choice has no operational semantics");
    return on_processes(r, p1, p2, options);
}

bool is_non_repeating(const ConfigurationStructure &c) {
    for (const auto &x : c.configs()) {
        std::set<Label> seen;
        for (auto e : x.elements())
            if (!seen.insert(c.label(e)).second) return false;
    }
    return true;
}

bool has_auto_concurrency(const ConfigurationStructure &c) {
    for (const auto &x : c.configs()) {
        auto el = x.elements();
        if (el.size() < 2) continue;
        auto below = causal_below(c, x);
        for (std::size_t i = 0; i < el.size(); ++i)
            for (std::size_t j = i + 1; j < el.size(); ++j) {
                auto d = el[i], e = el[j];
                if (!(c.label(d) == c.label(e))) continue;
                if (!below[e].contains(d) && !below[d].contains(e)) return true;
            }
    }
    return false;
}

bool is_non_repeating(const CcsProcess &p) { return is_non_repeating(encode_ccs(p)); }

bool has_auto_concurrency(const CcsProcess &p) { return has_auto_concurrency(encode_ccs(p)); }

}  // namespace revccs
