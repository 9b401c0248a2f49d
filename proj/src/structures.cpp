#include "revccs/structures.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace revccs {

// ---------------------------------------------------------------- EventSet

EventSet::EventSet(std::size_t universe) : words_((universe + 63) / 64, 0), universe_(universe) {}

void EventSet::insert(std::size_t i) {
    if (i >= universe_) throw StructureError("event index out of range");
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void EventSet::erase(std::size_t i) {
    if (i >= universe_) return;
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

bool EventSet::contains(std::size_t i) const {
    return i < universe_ && (words_[i / 64] >> (i % 64) & 1U);
}

std::size_t EventSet::size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool EventSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool EventSet::is_subset_of(const EventSet &other) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t o = k < other.words_.size() ? other.words_[k] : 0;
        if (words_[k] & ~o) return false;
    }
    return true;
}

bool EventSet::intersects(const EventSet &other) const {
    std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t k = 0; k < n; ++k)
        if (words_[k] & other.words_[k]) return true;
    return false;
}

EventSet EventSet::operator|(const EventSet &other) const {
    EventSet r(std::max(universe_, other.universe_));
    for (std::size_t k = 0; k < r.words_.size(); ++k) {
        std::uint64_t a = k < words_.size() ? words_[k] : 0;
        std::uint64_t b = k < other.words_.size() ? other.words_[k] : 0;
        r.words_[k] = a | b;
    }
    return r;
}

EventSet EventSet::operator&(const EventSet &other) const {
    EventSet r(std::max(universe_, other.universe_));
    std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t k = 0; k < n; ++k) r.words_[k] = words_[k] & other.words_[k];
    return r;
}

std::vector<std::size_t> EventSet::elements() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(k * 64 + static_cast<std::size_t>(b));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t EventSet::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
}

bool operator<(const EventSet &a, const EventSet &b) {
    auto sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.elements() < b.elements();
}

// ------------------------------------------------------ ConfigurationStructure

ConfigurationStructure::ConfigurationStructure() {
    configs_.push_back(EventSet(0));
    build_index();
}

ConfigurationStructure::ConfigurationStructure(std::vector<EventId> events,
                                               std::vector<Label> labels,
                                               std::vector<std::vector<std::size_t>> configs) {
    if (events.size() != labels.size())
        throw StructureError("events and labels differ in length");
    std::size_t n = events.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return events[a] < events[b]; });
    std::vector<std::size_t> where(n);
    for (std::size_t k = 0; k < n; ++k) {
        where[order[k]] = k;
        events_.push_back(events[order[k]]);
        labels_.push_back(labels[order[k]]);
        if (k > 0 && events_[k] == events_[k - 1])
            throw StructureError("duplicate event " + events_[k].str());
    }
    std::unordered_set<EventSet, EventSetHash> seen;
    for (const auto &cfg : configs) {
        EventSet x(n);
        for (auto i : cfg) {
            if (i >= n) throw StructureError("configuration refers to unknown event");
            x.insert(where[i]);
        }
        if (seen.insert(x).second) configs_.push_back(std::move(x));
    }
    std::sort(configs_.begin(), configs_.end());
    build_index();
}

ConfigurationStructure ConfigurationStructure::from_ids(
    std::vector<EventId> events, std::vector<Label> labels,
    const std::vector<std::vector<EventId>> &configs) {
    std::unordered_map<EventId, std::size_t> pos;
    for (std::size_t k = 0; k < events.size(); ++k) pos.emplace(events[k], k);
    std::vector<std::vector<std::size_t>> idx;
    for (const auto &cfg : configs) {
        std::vector<std::size_t> v;
        for (const auto &e : cfg) {
            auto it = pos.find(e);
            if (it == pos.end()) throw StructureError("unknown event " + e.str());
            v.push_back(it->second);
        }
        idx.push_back(std::move(v));
    }
    return ConfigurationStructure(std::move(events), std::move(labels), std::move(idx));
}

void ConfigurationStructure::build_index() {
    config_index_.clear();
    event_index_.clear();
    for (std::size_t k = 0; k < configs_.size(); ++k) config_index_.emplace(configs_[k], k);
    for (std::size_t k = 0; k < events_.size(); ++k) event_index_.emplace(events_[k], k);
}

std::optional<std::size_t> ConfigurationStructure::find_event(const EventId &e) const {
    auto it = event_index_.find(e);
    if (it == event_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ConfigurationStructure::index_of(const EventId &e) const {
    auto i = find_event(e);
    if (!i) throw StructureError("unknown event " + e.str());
    return *i;
}

std::optional<std::size_t> ConfigurationStructure::config_index(const EventSet &x) const {
    auto it = config_index_.find(x);
    if (it == config_index_.end()) return std::nullopt;
    return it->second;
}

EventSet ConfigurationStructure::set_of(const std::vector<EventId> &ids) const {
    EventSet x = empty_set();
    for (const auto &e : ids) x.insert(index_of(e));
    return x;
}

std::vector<EventId> ConfigurationStructure::ids_of(const EventSet &x) const {
    std::vector<EventId> out;
    for (auto i : x.elements()) out.push_back(events_.at(i));
    return out;
}

std::set<Label> ConfigurationStructure::alphabet() const {
    return {labels_.begin(), labels_.end()};
}

bool operator==(const ConfigurationStructure &a, const ConfigurationStructure &b) {
    return a.events_ == b.events_ && a.labels_ == b.labels_ && a.configs_ == b.configs_;
}

// -------------------------------------------------------- IdentifiedStructure

IdentifiedStructure::IdentifiedStructure(ConfigurationStructure base, std::vector<Identifier> idents)
    : base_(std::move(base)), idents_(std::move(idents)) {
    if (idents_.size() != base_.event_count())
        throw StructureError("identifier map does not cover the events");
}

std::set<Identifier> IdentifiedStructure::ident_set() const {
    return {idents_.begin(), idents_.end()};
}

std::optional<std::size_t> IdentifiedStructure::find_ident(const Identifier &i) const {
    for (std::size_t k = 0; k < idents_.size(); ++k)
        if (idents_[k] == i) return k;
    return std::nullopt;
}

namespace {

// Builds an identified structure from parallel vectors in arbitrary order.
IdentifiedStructure make_identified(std::vector<EventId> events, std::vector<Label> labels,
                                    std::vector<Identifier> idents,
                                    std::vector<std::vector<std::size_t>> configs) {
    ConfigurationStructure base(events, std::move(labels), std::move(configs));
    std::vector<Identifier> aligned(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) aligned[base.index_of(events[k])] = idents[k];
    return IdentifiedStructure(std::move(base), std::move(aligned));
}

std::vector<std::vector<std::size_t>> config_lists(const ConfigurationStructure &c) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto &x : c.configs()) out.push_back(x.elements());
    return out;
}

std::string set_literal(const ConfigurationStructure &c, const EventSet &x) {
    std::string s = "{";
    bool first = true;
    for (auto i : x.elements()) {
        if (!first) s += ",";
        first = false;
        s += c.event(i).str();
    }
    return s + "}";
}

bool collision_free(const ConfigurationStructure &c, const std::vector<Identifier> &idents,
                    std::string *witness) {
    for (const auto &x : c.configs()) {
        std::map<Identifier, std::size_t> seen;
        for (auto i : x.elements()) {
            auto [it, fresh] = seen.emplace(idents[i], i);
            if (!fresh) {
                if (witness)
                    *witness = "events " + c.event(it->second).str() + " and " +
                               c.event(i).str() + " share identifier " + idents[i].str() +
                               " in " + set_literal(c, x);
                return false;
            }
        }
    }
    return true;
}

std::uint64_t fresh_atom(const std::vector<Term> &used) {
    std::set<std::uint64_t> nums;
    for (const auto &t : used)
        if (t.kind() == Term::Kind::Atom) nums.insert(t.number());
    std::uint64_t k = 1;
    while (nums.count(k)) ++k;
    return k;
}

EventId fresh_event(const ConfigurationStructure &c) {
    std::vector<Term> used;
    for (const auto &e : c.events()) used.push_back(e.value);
    return {Term::atom(fresh_atom(used))};
}

Identifier fresh_identifier(const std::vector<Identifier> &idents) {
    std::vector<Term> used;
    for (const auto &i : idents) used.push_back(i.value);
    return {Term::atom(fresh_atom(used))};
}

}  // namespace

// ------------------------------------------------------------------ validate

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto &c : checks) {
        os << c.axiom << ": " << (c.passed ? "ok" : "FAILED");
        if (!c.passed) os << " (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

ValidationReport validate(const ConfigurationStructure &c) {
    ValidationReport report;
    const auto &cfgs = c.configs();

    report.checks.push_back({"finiteness", true, ""});

    AxiomCheck coincidence{"coincidence-freeness", true, ""};
    for (const auto &x : cfgs) {
        if (!coincidence.passed) break;
        std::vector<const EventSet *> below;
        for (const auto &z : cfgs)
            if (z.is_subset_of(x)) below.push_back(&z);
        std::map<std::vector<bool>, std::size_t> signature;
        for (auto e : x.elements()) {
            std::vector<bool> sig;
            for (auto *z : below) sig.push_back(z->contains(e));
            auto [it, fresh] = signature.emplace(sig, e);
            if (!fresh) {
                coincidence.passed = false;
                coincidence.witness = "events " + c.event(it->second).str() + " and " +
                                      c.event(e).str() + " are not separated below " +
                                      set_literal(c, x);
                break;
            }
        }
    }
    report.checks.push_back(coincidence);

    AxiomCheck completeness{"finite-completeness", true, ""};
    if (!c.is_config(c.empty_set())) {
        completeness.passed = false;
        completeness.witness = "the empty set is not a configuration";
    }
    AxiomCheck stability{"stability", true, ""};
    std::vector<const EventSet *> tops;
    for (const auto &x : cfgs)
        if (std::none_of(cfgs.begin(), cfgs.end(), [&](const EventSet &y) {
                return y.size() > x.size() && x.is_subset_of(y);
            }))
            tops.push_back(&x);
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        for (std::size_t j = i + 1; j < cfgs.size(); ++j) {
            EventSet u = cfgs[i] | cfgs[j];
            bool in = c.is_config(u);
            if (completeness.passed && !in &&
                std::any_of(tops.begin(), tops.end(), [&](const EventSet *y) { return u.is_subset_of(*y); })) {
                completeness.passed = false;
                completeness.witness = "union of " + set_literal(c, cfgs[i]) + " and " +
                                       set_literal(c, cfgs[j]) + " is bounded but missing";
            }
            if (stability.passed && in && !c.is_config(cfgs[i] & cfgs[j])) {
                stability.passed = false;
                stability.witness = "intersection of " + set_literal(c, cfgs[i]) + " and " +
                                    set_literal(c, cfgs[j]) + " is missing";
            }
        }
    }
    report.checks.push_back(completeness);
    report.checks.push_back(stability);
    return report;
}

ValidationReport validate(const IdentifiedStructure &s) {
    ValidationReport report = validate(s.base());
    AxiomCheck collision{"collision-freeness", true, ""};
    collision.passed = collision_free(s.base(), s.idents(), &collision.witness);
    report.checks.push_back(collision);
    return report;
}

// ----------------------------------------------------------------- causality

std::vector<EventSet> causal_below(const ConfigurationStructure &c, const EventSet &x) {
    if (!c.is_config(x)) throw StructureError("not a configuration: " + set_literal(c, x));
    std::vector<EventSet> below(c.event_count(), c.empty_set());
    auto elems = x.elements();
    std::vector<bool> started(c.event_count(), false);
    for (const auto &z : c.configs()) {
        if (!z.is_subset_of(x)) continue;
        for (auto e : elems) {
            if (!z.contains(e)) continue;
            if (!started[e]) {
                below[e] = z;
                started[e] = true;
            } else {
                below[e] = below[e] & z;
            }
        }
    }
    return below;
}

Causality causality(const ConfigurationStructure &c, const EventSet &x, const EventId &d,
                    const EventId &e) {
    auto di = c.index_of(d), ei = c.index_of(e);
    if (!x.contains(di) || !x.contains(ei))
        throw StructureError("events must belong to the configuration");
    if (di == ei) return Causality::Equal;
    auto below = causal_below(c, x);
    if (below[ei].contains(di)) return Causality::Less;
    if (below[di].contains(ei)) return Causality::Greater;
    return Causality::Concurrent;
}

std::vector<EventSet> maximal_configs(const ConfigurationStructure &c) {
    std::vector<EventSet> out;
    const auto &cfgs = c.configs();
    for (const auto &x : cfgs) {
        bool maximal = std::none_of(cfgs.begin(), cfgs.end(), [&](const EventSet &y) {
            return y.size() > x.size() && x.is_subset_of(y);
        });
        if (maximal) out.push_back(x);
    }
    return out;
}

std::vector<EventId> maximal_events(const ConfigurationStructure &c) {
    std::vector<bool> below_other(c.event_count(), false);
    for (const auto &x : maximal_configs(c)) {
        auto below = causal_below(c, x);
        for (auto e : x.elements())
            for (auto d : below[e].elements())
                if (d != e) below_other[d] = true;
    }
    std::vector<EventId> out;
    for (std::size_t i = 0; i < c.event_count(); ++i)
        if (!below_other[i]) out.push_back(c.event(i));
    return out;
}

bool is_connected(const ConfigurationStructure &c) {
    for (const auto &x : c.configs()) {
        if (x.empty()) continue;
        bool has_pred = false;
        for (auto e : x.elements()) {
            EventSet y = x;
            y.erase(e);
            if (c.is_config(y)) {
                has_pred = true;
                break;
            }
        }
        if (!has_pred) return false;
    }
    return true;
}

// -------------------------------------------------------------- SyncAlgebra

namespace {

std::optional<std::string> action_text(const Label &l) {
    if (l.value.kind() != Term::Kind::Text) return std::nullopt;
    return l.value.text_value();
}

std::optional<std::string> complement_text(const std::string &s) {
    if (s == "tau") return std::nullopt;
    if (!s.empty() && s[0] == '~') return s.substr(1);
    return "~" + s;
}

}  // namespace

SyncAlgebra SyncAlgebra::proc() {
    SyncAlgebra alg;
    alg.name_ = "proc";
    alg.op_ = [](const Label &a, const Label &b) -> std::optional<Label> {
        auto sa = action_text(a), sb = action_text(b);
        if (!sa || !sb) return std::nullopt;
        auto ca = complement_text(*sa);
        if (ca && *ca == *sb) return Label::action("tau");
        return std::nullopt;
    };
    return alg;
}

SyncAlgebra SyncAlgebra::mem() {
    SyncAlgebra alg;
    alg.name_ = "mem";
    alg.op_ = [](const Label &a, const Label &b) -> std::optional<Label> {
        auto sa = action_text(a), sb = action_text(b);
        if (!sa || !sb) return std::nullopt;
        if (*sa == *sb) return a;
        auto ca = complement_text(*sa);
        if (ca && *ca == *sb) return Label::action("tau");
        return std::nullopt;
    };
    return alg;
}

SyncAlgebra SyncAlgebra::from_table(const std::set<Label> &alphabet, const Table &table) {
    for (const auto &[key, value] : table) {
        if (!alphabet.count(key.first) || !alphabet.count(key.second))
            throw StructureError("table entry outside the alphabet");
        if (!alphabet.count(value))
            throw StructureError("table result " + value.str() + " outside the alphabet");
    }
    auto look = [&](const Label &a, const Label &b) -> std::optional<Label> {
        auto it = table.find({a, b});
        if (it == table.end()) return std::nullopt;
        return it->second;
    };
    for (const auto &a : alphabet)
        for (const auto &b : alphabet)
            if (look(a, b) != look(b, a))
                throw StructureError("table is not commutative on " + a.str() + ", " + b.str());
    for (const auto &a : alphabet)
        for (const auto &b : alphabet)
            for (const auto &c : alphabet) {
                auto ab = look(a, b), bc = look(b, c);
                std::optional<Label> left = ab ? look(*ab, c) : std::nullopt;
                std::optional<Label> right = bc ? look(a, *bc) : std::nullopt;
                if (left != right)
                    throw StructureError("table is not associative on " + a.str() + ", " +
                                         b.str() + ", " + c.str());
            }
    SyncAlgebra alg;
    alg.name_ = "table";
    alg.op_ = look;
    return alg;
}

std::optional<Label> SyncAlgebra::combine(const Label *a, const Label *b) const {
    if (!a && !b) throw StructureError("star combined with star");
    if (!a) return *b;
    if (!b) return *a;
    return op_(*a, *b);
}

// -------------------------------------------------------- simple operations

ConfigurationStructure relabel(const ConfigurationStructure &c, const LabelMap &f) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < c.event_count(); ++i) labels.push_back(f(c.event(i), c.label(i)));
    return ConfigurationStructure(c.events(), std::move(labels), config_lists(c));
}

IdentifiedStructure relabel(const IdentifiedStructure &s, const LabelMap &f) {
    return IdentifiedStructure(relabel(s.base(), f), s.idents());
}

IdentifiedStructure reidentify(const IdentifiedStructure &s, const IdentMap &f) {
    std::vector<Identifier> idents;
    for (std::size_t i = 0; i < s.event_count(); ++i) idents.push_back(f(s.event(i), s.ident(i)));
    std::string witness;
    if (!collision_free(s.base(), idents, &witness))
        throw StructureError("reidentifying breaks collision freeness: " + witness);
    return IdentifiedStructure(s.base(), std::move(idents));
}

namespace {

std::pair<ConfigurationStructure, std::vector<std::size_t>> restrict_impl(
    const ConfigurationStructure &c, const std::vector<bool> &removed) {
    std::vector<std::size_t> kept, where(c.event_count(), 0);
    std::vector<EventId> events;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < c.event_count(); ++i) {
        if (removed[i]) continue;
        where[i] = kept.size();
        kept.push_back(i);
        events.push_back(c.event(i));
        labels.push_back(c.label(i));
    }
    std::vector<std::vector<std::size_t>> configs;
    for (const auto &x : c.configs()) {
        auto el = x.elements();
        if (std::any_of(el.begin(), el.end(), [&](std::size_t i) { return removed[i]; }))
            continue;
        for (auto &i : el) i = where[i];
        configs.push_back(std::move(el));
    }
    return {ConfigurationStructure(std::move(events), std::move(labels), std::move(configs)),
            kept};
}

std::vector<bool> events_mask(const ConfigurationStructure &c, const std::set<EventId> &a) {
    std::vector<bool> removed(c.event_count(), false);
    for (const auto &e : a) {
        if (auto i = c.find_event(e)) removed[*i] = true;
    }
    return removed;
}

std::vector<bool> labels_mask(const ConfigurationStructure &c, const std::set<Label> &l) {
    std::vector<bool> removed(c.event_count(), false);
    for (std::size_t i = 0; i < c.event_count(); ++i) removed[i] = l.count(c.label(i)) > 0;
    return removed;
}

IdentifiedStructure restrict_identified(const IdentifiedStructure &s,
                                        const std::vector<bool> &removed) {
    auto [base, kept] = restrict_impl(s.base(), removed);
    std::vector<Identifier> idents;
    for (auto i : kept) idents.push_back(s.ident(i));
    // restrict_impl keeps the canonical order, so kept is aligned with base
    return IdentifiedStructure(std::move(base), std::move(idents));
}

}  // namespace

ConfigurationStructure restrict_events(const ConfigurationStructure &c, const std::set<EventId> &a) {
    return restrict_impl(c, events_mask(c, a)).first;
}

IdentifiedStructure restrict_events(const IdentifiedStructure &s, const std::set<EventId> &a) {
    return restrict_identified(s, events_mask(s.base(), a));
}

ConfigurationStructure restrict_labels(const ConfigurationStructure &c, const std::set<Label> &l) {
    return restrict_impl(c, labels_mask(c, l)).first;
}

IdentifiedStructure restrict_labels(const IdentifiedStructure &s, const std::set<Label> &l) {
    return restrict_identified(s, labels_mask(s.base(), l));
}

namespace {

// New event below (prefix) or above the maximal configurations (postfix).
std::pair<ConfigurationStructure, EventId> extend(const ConfigurationStructure &c,
                                                  const Label &a, bool below) {
    EventId e = fresh_event(c);
    std::vector<EventId> events = c.events();
    std::vector<Label> labels = c.labels();
    events.push_back(e);
    labels.push_back(a);
    std::size_t n = c.event_count();
    std::vector<std::vector<std::size_t>> configs;
    if (below) {
        configs.push_back({});
        for (const auto &x : c.configs()) {
            auto el = x.elements();
            el.push_back(n);
            configs.push_back(std::move(el));
        }
    } else {
        configs = config_lists(c);
        for (const auto &x : maximal_configs(c)) {
            auto el = x.elements();
            el.push_back(n);
            configs.push_back(std::move(el));
        }
    }
    return {ConfigurationStructure(std::move(events), std::move(labels), std::move(configs)), e};
}

IdentifiedStructure extend_identified(const IdentifiedStructure &s, const Label &a, bool below,
                                      const Identifier &i) {
    if (s.ident_set().count(i)) throw StructureError("identifier " + i.str() + " already used");
    auto [base, e] = extend(s.base(), a, below);
    std::vector<Identifier> idents(base.event_count());
    for (std::size_t k = 0; k < s.event_count(); ++k)
        idents[base.index_of(s.event(k))] = s.ident(k);
    idents[base.index_of(e)] = i;
    return IdentifiedStructure(std::move(base), std::move(idents));
}

}  // namespace

ConfigurationStructure prefix(const Label &a, const ConfigurationStructure &c) {
    return extend(c, a, true).first;
}

IdentifiedStructure prefix(const Label &a, const IdentifiedStructure &s) {
    return extend_identified(s, a, true, fresh_identifier(s.idents()));
}

IdentifiedStructure prefix(const Label &a, const IdentifiedStructure &s, const Identifier &i) {
    return extend_identified(s, a, true, i);
}

ConfigurationStructure postfix(const ConfigurationStructure &c, const Label &a) {
    return extend(c, a, false).first;
}

IdentifiedStructure postfix(const IdentifiedStructure &s, const Label &a, const Identifier &i) {
    return extend_identified(s, a, false, i);
}

namespace {

struct Summed {
    std::vector<EventId> events;
    std::vector<Label> labels;
    std::vector<Identifier> idents;
    std::vector<std::vector<std::size_t>> configs;
};

// Disjoint union of events tagged by branch, configurations per branch.
Summed disjoint_sum(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                    const std::vector<Identifier> *i1, const std::vector<Identifier> *i2,
                    bool keep_tags) {
    Summed out;
    const ConfigurationStructure *cs[2] = {&c1, &c2};
    const std::vector<Identifier> *is[2] = {i1, i2};
    std::size_t offset[2] = {0, c1.event_count()};
    for (int b = 0; b < 2; ++b) {
        const auto &c = *cs[b];
        for (std::size_t k = 0; k < c.event_count(); ++k) {
            out.events.push_back({Term::tagged(b + 1, c.event(k).value)});
            out.labels.push_back(keep_tags ? Label{Term::tagged(b + 1, c.label(k).value)}
                                           : c.label(k));
            if (is[b]) {
                const auto &id = (*is[b])[k];
                out.idents.push_back(keep_tags ? Identifier{Term::tagged(b + 1, id.value)} : id);
            }
        }
    }
    for (int b = 0; b < 2; ++b) {
        for (const auto &x : cs[b]->configs()) {
            if (b == 1 && x.empty()) continue;
            auto el = x.elements();
            for (auto &i : el) i += offset[b];
            out.configs.push_back(std::move(el));
        }
    }
    return out;
}

}  // namespace

ConfigurationStructure choice(const ConfigurationStructure &c1, const ConfigurationStructure &c2) {
    auto s = disjoint_sum(c1, c2, nullptr, nullptr, false);
    return ConfigurationStructure(std::move(s.events), std::move(s.labels), std::move(s.configs));
}

IdentifiedStructure choice(const IdentifiedStructure &s1, const IdentifiedStructure &s2) {
    auto ids1 = s1.ident_set();
    for (const auto &i : s2.idents())
        if (ids1.count(i))
            throw StructureError("choice operands share identifier " + i.str());
    auto s = disjoint_sum(s1.base(), s2.base(), &s1.idents(), &s2.idents(), false);
    return make_identified(std::move(s.events), std::move(s.labels), std::move(s.idents),
                           std::move(s.configs));
}

ConfigurationStructure coproduct(const ConfigurationStructure &c1,
                                 const ConfigurationStructure &c2) {
    auto s = disjoint_sum(c1, c2, nullptr, nullptr, true);
    return ConfigurationStructure(std::move(s.events), std::move(s.labels), std::move(s.configs));
}

IdentifiedStructure coproduct(const IdentifiedStructure &s1, const IdentifiedStructure &s2) {
    auto s = disjoint_sum(s1.base(), s2.base(), &s1.idents(), &s2.idents(), true);
    return make_identified(std::move(s.events), std::move(s.labels), std::move(s.idents),
                           std::move(s.configs));
}

// ------------------------------------------------------------------ product

namespace detail {

namespace {

// Single-event extensions of each configuration: (event, resulting config index).
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> extensions(
    const ConfigurationStructure &c) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(c.configs().size());
    for (std::size_t k = 0; k < c.configs().size(); ++k) {
        const auto &x = c.configs()[k];
        for (std::size_t e = 0; e < c.event_count(); ++e) {
            if (x.contains(e)) continue;
            EventSet y = x;
            y.insert(e);
            if (auto j = c.config_index(y)) out[k].emplace_back(e, *j);
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> product_configs(const ConfigurationStructure &c1,
                                                      const ConfigurationStructure &c2,
                                                      const ProductEvents &events) {
    if (!is_connected(c1) || !is_connected(c2)) {
        if (events.size() <= 20) return product_configs_oracle(c1, c2, events);
        throw StructureError("product of disconnected structures is too large to enumerate");
    }
    std::size_t n1 = c1.event_count(), n2 = c2.event_count();
    std::vector<std::size_t> table((n1 + 1) * (n2 + 1), SIZE_MAX);
    for (std::size_t k = 0; k < events.size(); ++k) {
        auto [a, b] = events[k];
        table[static_cast<std::size_t>(a + 1) * (n2 + 1) + static_cast<std::size_t>(b + 1)] = k;
    }
    auto lookup = [&](int a, int b) {
        return table[static_cast<std::size_t>(a + 1) * (n2 + 1) + static_cast<std::size_t>(b + 1)];
    };
    auto ext1 = extensions(c1), ext2 = extensions(c2);
    auto empty1 = c1.config_index(c1.empty_set());
    auto empty2 = c2.config_index(c2.empty_set());
    if (!empty1 || !empty2) throw StructureError("product factor lacks the empty configuration");

    struct State {
        EventSet x;
        std::size_t k1, k2;
    };
    std::unordered_set<EventSet, EventSetHash> seen;
    std::deque<State> queue;
    std::vector<std::vector<std::size_t>> out;
    EventSet start(events.size());
    seen.insert(start);
    queue.push_back({start, *empty1, *empty2});
    while (!queue.empty()) {
        State st = std::move(queue.front());
        queue.pop_front();
        out.push_back(st.x.elements());
        auto visit = [&](std::size_t e, std::size_t k1, std::size_t k2) {
            if (e == SIZE_MAX) return;
            EventSet y = st.x;
            y.insert(e);
            if (seen.insert(y).second) queue.push_back({std::move(y), k1, k2});
        };
        for (auto [a, j1] : ext1[st.k1]) visit(lookup(static_cast<int>(a), -1), j1, st.k2);
        for (auto [b, j2] : ext2[st.k2]) visit(lookup(-1, static_cast<int>(b)), st.k1, j2);
        for (auto [a, j1] : ext1[st.k1])
            for (auto [b, j2] : ext2[st.k2])
                visit(lookup(static_cast<int>(a), static_cast<int>(b)), j1, j2);
    }
    return out;
}

std::vector<std::vector<std::size_t>> product_configs_oracle(const ConfigurationStructure &c1,
                                                             const ConfigurationStructure &c2,
                                                             const ProductEvents &events) {
    std::size_t n = events.size();
    if (n > 20) throw StructureError("too many product events for exhaustive enumeration");
    std::size_t total = std::size_t{1} << n;
    std::vector<char> valid(total, 0);
    for (std::size_t mask = 0; mask < total; ++mask) {
        EventSet p1 = c1.empty_set(), p2 = c2.empty_set();
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) {
            if (!(mask >> k & 1U)) continue;
            auto [a, b] = events[k];
            if (a >= 0) {
                if (p1.contains(static_cast<std::size_t>(a))) ok = false;
                else p1.insert(static_cast<std::size_t>(a));
            }
            if (b >= 0) {
                if (p2.contains(static_cast<std::size_t>(b))) ok = false;
                else p2.insert(static_cast<std::size_t>(b));
            }
        }
        valid[mask] = ok && c1.is_config(p1) && c2.is_config(p2);
    }
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < total; ++mask) {
        if (!valid[mask]) continue;
        // separating family: valid submasks
        std::vector<std::size_t> family;
        for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
            if (valid[sub]) family.push_back(sub);
            if (sub == 0) break;
        }
        std::set<std::vector<bool>> sigs;
        bool ok = true;
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < n && ok; ++k) {
            if (!(mask >> k & 1U)) continue;
            members.push_back(k);
            std::vector<bool> sig;
            for (auto z : family) sig.push_back(z >> k & 1U);
            ok = sigs.insert(sig).second;
        }
        if (ok) out.push_back(members);
    }
    return out;
}

}  // namespace detail

namespace {

struct ProductParts {
    detail::ProductEvents pairs;
    std::vector<EventId> events;
    std::vector<Label> labels;
};

Term star_or(const std::vector<EventId> &v, int i) {
    return i < 0 ? Term::star() : v[static_cast<std::size_t>(i)].value;
}

ProductParts all_product_events(const ConfigurationStructure &c1, const ConfigurationStructure &c2) {
    ProductParts p;
    int n1 = static_cast<int>(c1.event_count()), n2 = static_cast<int>(c2.event_count());
    for (int a = -1; a < n1; ++a)
        for (int b = -1; b < n2; ++b) {
            if (a < 0 && b < 0) continue;
            p.pairs.emplace_back(a, b);
            p.events.push_back({Term::pair(star_or(c1.events(), a), star_or(c2.events(), b))});
            Term la = a < 0 ? Term::star() : c1.label(static_cast<std::size_t>(a)).value;
            Term lb = b < 0 ? Term::star() : c2.label(static_cast<std::size_t>(b)).value;
            p.labels.push_back({Term::pair(la, lb)});
        }
    return p;
}

}  // namespace

ConfigurationStructure product(const ConfigurationStructure &c1, const ConfigurationStructure &c2) {
    auto p = all_product_events(c1, c2);
    auto configs = detail::product_configs(c1, c2, p.pairs);
    return ConfigurationStructure(std::move(p.events), std::move(p.labels), std::move(configs));
}

IdentifiedStructure product(const IdentifiedStructure &s1, const IdentifiedStructure &s2) {
    auto p = all_product_events(s1.base(), s2.base());
    std::vector<Identifier> idents;
    for (auto [a, b] : p.pairs) {
        Term ia = a < 0 ? Term::star() : s1.ident(static_cast<std::size_t>(a)).value;
        Term ib = b < 0 ? Term::star() : s2.ident(static_cast<std::size_t>(b)).value;
        idents.push_back({Term::pair(ia, ib)});
    }
    auto configs = detail::product_configs(s1.base(), s2.base(), p.pairs);
    return make_identified(std::move(p.events), std::move(p.labels), std::move(idents),
                           std::move(configs));
}

ConfigurationStructure parallel_compose_proc(const ConfigurationStructure &c1,
                                             const ConfigurationStructure &c2,
                                             const SyncAlgebra &alg) {
    auto all = all_product_events(c1, c2);
    ProductParts kept;
    for (std::size_t k = 0; k < all.pairs.size(); ++k) {
        auto [a, b] = all.pairs[k];
        const Label *la = a < 0 ? nullptr : &c1.label(static_cast<std::size_t>(a));
        const Label *lb = b < 0 ? nullptr : &c2.label(static_cast<std::size_t>(b));
        auto l = alg.combine(la, lb);
        if (!l) continue;
        kept.pairs.push_back(all.pairs[k]);
        kept.events.push_back(all.events[k]);
        kept.labels.push_back(*l);
    }
    auto configs = detail::product_configs(c1, c2, kept.pairs);
    return ConfigurationStructure(std::move(kept.events), std::move(kept.labels),
                                  std::move(configs));
}

IdentifiedStructure parallel_compose_mem(const IdentifiedStructure &s1,
                                         const IdentifiedStructure &s2, const SyncAlgebra &alg) {
    auto all = all_product_events(s1.base(), s2.base());
    auto ids1 = s1.ident_set(), ids2 = s2.ident_set();
    ProductParts kept;
    std::vector<Identifier> idents;
    for (std::size_t k = 0; k < all.pairs.size(); ++k) {
        auto [a, b] = all.pairs[k];
        std::optional<Identifier> id;
        if (a >= 0 && b >= 0) {
            const auto &i1 = s1.ident(static_cast<std::size_t>(a));
            if (i1 == s2.ident(static_cast<std::size_t>(b))) id = i1;
        } else if (a >= 0) {
            const auto &i1 = s1.ident(static_cast<std::size_t>(a));
            if (!ids2.count(i1)) id = i1;
        } else {
            const auto &i2 = s2.ident(static_cast<std::size_t>(b));
            if (!ids1.count(i2)) id = i2;
        }
        if (!id) continue;
        const Label *la = a < 0 ? nullptr : &s1.label(static_cast<std::size_t>(a));
        const Label *lb = b < 0 ? nullptr : &s2.label(static_cast<std::size_t>(b));
        auto l = alg.combine(la, lb);
        if (!l) continue;
        kept.pairs.push_back(all.pairs[k]);
        kept.events.push_back(all.events[k]);
        kept.labels.push_back(*l);
        idents.push_back(*id);
    }
    auto configs = detail::product_configs(s1.base(), s2.base(), kept.pairs);
    auto result = make_identified(std::move(kept.events), std::move(kept.labels),
                                  std::move(idents), std::move(configs));
    std::string witness;
    if (!collision_free(result.base(), result.idents(), &witness))
        throw StructureError("parallel composition breaks collision freeness: " + witness);
    return result;
}

ConfigurationStructure generate_below(const ConfigurationStructure &c, const EventSet &x) {
    if (!c.is_config(x)) throw StructureError("not a configuration: " + set_literal(c, x));
    std::vector<bool> removed(c.event_count(), true);
    for (auto e : x.elements()) removed[e] = false;
    return restrict_impl(c, removed).first;
}

IdentifiedStructure generate_below(const IdentifiedStructure &s, const EventSet &x) {
    if (!s.base().is_config(x))
        throw StructureError("not a configuration: " + set_literal(s.base(), x));
    std::vector<bool> removed(s.event_count(), true);
    for (auto e : x.elements()) removed[e] = false;
    return restrict_identified(s, removed);
}

ConfigurationStructure forget(const IdentifiedStructure &s) { return s.base(); }

IdentifiedStructure enrich(const ConfigurationStructure &c, const std::vector<EventId> &order) {
    std::vector<EventId> seq = order.empty() ? c.events() : order;
    if (seq.size() != c.event_count()) throw StructureError("order must list every event once");
    std::vector<Identifier> idents(c.event_count());
    std::vector<bool> hit(c.event_count(), false);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        auto i = c.index_of(seq[k]);
        if (hit[i]) throw StructureError("order lists " + seq[k].str() + " twice");
        hit[i] = true;
        idents[i] = Identifier::base(k + 1);
    }
    return IdentifiedStructure(c, std::move(idents));
}

// -------------------------------------------------------------- isomorphism

namespace detail {

namespace {

struct Signature {
    std::size_t config_count;
    std::size_t depth;
    auto operator<=>(const Signature &) const = default;
};

std::vector<Signature> signatures(const ConfigurationStructure &c) {
    std::vector<Signature> out(c.event_count(), {0, SIZE_MAX});
    for (const auto &x : c.configs())
        for (auto e : x.elements()) {
            out[e].config_count++;
            out[e].depth = std::min(out[e].depth, x.size());
        }
    return out;
}

std::vector<std::size_t> size_profile(const ConfigurationStructure &c) {
    std::vector<std::size_t> out;
    for (const auto &x : c.configs()) out.push_back(x.size());
    std::sort(out.begin(), out.end());
    return out;
}

class IsoSearch {
public:
    IsoSearch(const ConfigurationStructure &c1, const ConfigurationStructure &c2, bool fix_labels,
              const std::vector<Identifier> *i1, const std::vector<Identifier> *i2)
        : c1_(c1), c2_(c2), fix_labels_(fix_labels), i1_(i1), i2_(i2) {}

    std::optional<std::vector<std::size_t>> run() {
        std::size_t n = c1_.event_count();
        if (n != c2_.event_count() || c1_.configs().size() != c2_.configs().size())
            return std::nullopt;
        if (size_profile(c1_) != size_profile(c2_)) return std::nullopt;
        sig1_ = signatures(c1_);
        sig2_ = signatures(c2_);
        auto s1 = sig1_, s2 = sig2_;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
        if (fix_labels_) {
            std::map<Label, std::size_t> n1, n2;
            for (const auto &l : c1_.labels()) n1[l]++;
            for (const auto &l : c2_.labels()) n2[l]++;
            if (n1 != n2) return std::nullopt;
        }
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return sig1_[a].depth < sig1_[b].depth;
        });
        std::vector<std::size_t> pos(n);
        for (std::size_t k = 0; k < n; ++k) pos[order_[k]] = k;
        closing1_.assign(n, {});
        for (std::size_t k = 0; k < c1_.configs().size(); ++k) {
            const auto &x = c1_.configs()[k];
            if (x.empty()) continue;
            std::size_t last = 0;
            for (auto e : x.elements()) last = std::max(last, pos[e]);
            closing1_[last].push_back(k);
        }
        containing2_.assign(n, {});
        for (std::size_t k = 0; k < c2_.configs().size(); ++k)
            for (auto e : c2_.configs()[k].elements()) containing2_[e].push_back(k);
        map_.assign(n, SIZE_MAX);
        inverse_.assign(n, SIZE_MAX);
        assigned2_ = c2_.empty_set();
        if (search(0)) return map_;
        return std::nullopt;
    }

private:
    bool compatible(std::size_t a, std::size_t b) {
        if (!(sig1_[a] == sig2_[b])) return false;
        if (fix_labels_ && !(c1_.label(a) == c2_.label(b))) return false;
        return true;
    }

    template <typename K>
    static bool bind(std::map<K, K> &fwd, std::map<K, K> &bwd, const K &x, const K &y,
                     bool &added) {
        added = false;
        auto f = fwd.find(x);
        auto b = bwd.find(y);
        if (f != fwd.end() || b != bwd.end())
            return f != fwd.end() && b != bwd.end() && f->second == y && b->second == x;
        fwd.emplace(x, y);
        bwd.emplace(y, x);
        added = true;
        return true;
    }

    bool configs_ok(std::size_t step, std::size_t target) {
        for (auto k : closing1_[step]) {
            EventSet img = c2_.empty_set();
            for (auto e : c1_.configs()[k].elements()) img.insert(map_[e]);
            if (!c2_.is_config(img)) return false;
        }
        for (auto k : containing2_[target]) {
            const auto &y = c2_.configs()[k];
            if (!y.is_subset_of(assigned2_)) continue;
            EventSet pre = c1_.empty_set();
            for (auto e : y.elements()) pre.insert(inverse_[e]);
            if (!c1_.is_config(pre)) return false;
        }
        return true;
    }

    bool search(std::size_t step) {
        if (step == order_.size()) return true;
        std::size_t a = order_[step];
        for (std::size_t b = 0; b < c2_.event_count(); ++b) {
            if (inverse_[b] != SIZE_MAX || !compatible(a, b)) continue;
            bool label_added = false, ident_added = false;
            if (!fix_labels_ &&
                !bind(labels_, labels_back_, c1_.label(a), c2_.label(b), label_added))
                continue;
            bool ok = true;
            if (i1_ && i2_) ok = bind(idents_, idents_back_, (*i1_)[a], (*i2_)[b], ident_added);
            if (ok) {
                map_[a] = b;
                inverse_[b] = a;
                assigned2_.insert(b);
                if (configs_ok(step, b) && search(step + 1)) return true;
                map_[a] = SIZE_MAX;
                inverse_[b] = SIZE_MAX;
                assigned2_.erase(b);
            }
            if (ident_added) {
                idents_back_.erase(idents_[(*i1_)[a]]);
                idents_.erase((*i1_)[a]);
            }
            if (label_added) {
                labels_back_.erase(labels_[c1_.label(a)]);
                labels_.erase(c1_.label(a));
            }
        }
        return false;
    }

    const ConfigurationStructure &c1_, &c2_;
    bool fix_labels_;
    const std::vector<Identifier> *i1_, *i2_;
    std::vector<Signature> sig1_, sig2_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> closing1_, containing2_;
    std::vector<std::size_t> map_, inverse_;
    EventSet assigned2_;
    std::map<Label, Label> labels_, labels_back_;
    std::map<Identifier, Identifier> idents_, idents_back_;
};

}  // namespace

std::optional<std::vector<std::size_t>> find_iso(const ConfigurationStructure &c1,
                                                 const ConfigurationStructure &c2,
                                                 bool fix_labels,
                                                 const std::vector<Identifier> *idents1,
                                                 const std::vector<Identifier> *idents2) {
    return IsoSearch(c1, c2, fix_labels, idents1, idents2).run();
}

}  // namespace detail

namespace {

StructIso make_iso(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                   const std::vector<std::size_t> &map, const std::vector<Identifier> *i1,
                   const std::vector<Identifier> *i2) {
    StructIso iso;
    std::set<std::pair<Label, Label>> labels;
    std::set<std::pair<Identifier, Identifier>> idents;
    for (std::size_t a = 0; a < map.size(); ++a) {
        iso.event_map.emplace_back(c1.event(a), c2.event(map[a]));
        labels.emplace(c1.label(a), c2.label(map[a]));
        if (i1 && i2) idents.emplace((*i1)[a], (*i2)[map[a]]);
    }
    iso.label_map.assign(labels.begin(), labels.end());
    iso.ident_map.assign(idents.begin(), idents.end());
    return iso;
}

}  // namespace

std::optional<StructIso> iso_search(const IdentifiedStructure &s1, const IdentifiedStructure &s2,
                                    bool fix_labels) {
    auto map = detail::find_iso(s1.base(), s2.base(), fix_labels, &s1.idents(), &s2.idents());
    if (!map) return std::nullopt;
    return make_iso(s1.base(), s2.base(), *map, &s1.idents(), &s2.idents());
}

std::optional<StructIso> iso_search(const ConfigurationStructure &c1,
                                    const ConfigurationStructure &c2, bool fix_labels) {
    auto map = detail::find_iso(c1, c2, fix_labels, nullptr, nullptr);
    if (!map) return std::nullopt;
    return make_iso(c1, c2, *map, nullptr, nullptr);
}

}  // namespace revccs
