#pragma once

#include "revccs/term.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace revccs {

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Subset of a structure's events, as a bitset over event indices.
class EventSet {
public:
    EventSet() = default;
    explicit EventSet(std::size_t universe);

    void insert(std::size_t i);
    void erase(std::size_t i);
    bool contains(std::size_t i) const;
    std::size_t size() const;
    bool empty() const;
    std::size_t universe() const { return universe_; }
    bool is_subset_of(const EventSet &other) const;
    bool intersects(const EventSet &other) const;
    EventSet operator|(const EventSet &other) const;
    EventSet operator&(const EventSet &other) const;
    std::vector<std::size_t> elements() const;
    std::size_t hash() const;

    friend bool operator==(const EventSet &a, const EventSet &b) { return a.words_ == b.words_; }
    friend bool operator<(const EventSet &a, const EventSet &b);

private:
    std::vector<std::uint64_t> words_;
    std::size_t universe_ = 0;
};

struct EventSetHash {
    std::size_t operator()(const EventSet &s) const { return s.hash(); }
};

class ConfigurationStructure {
public:
    // the structure 0 with the single configuration {}
    ConfigurationStructure();
    // events must be distinct; configurations refer to indices of `events`
    ConfigurationStructure(std::vector<EventId> events, std::vector<Label> labels,
                           std::vector<std::vector<std::size_t>> configs);
    static ConfigurationStructure from_ids(std::vector<EventId> events, std::vector<Label> labels,
                                           const std::vector<std::vector<EventId>> &configs);

    std::size_t event_count() const { return events_.size(); }
    const std::vector<EventId> &events() const { return events_; }
    const std::vector<Label> &labels() const { return labels_; }
    const EventId &event(std::size_t i) const { return events_[i]; }
    const Label &label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> find_event(const EventId &e) const;
    std::size_t index_of(const EventId &e) const;

    const std::vector<EventSet> &configs() const { return configs_; }
    std::optional<std::size_t> config_index(const EventSet &x) const;
    bool is_config(const EventSet &x) const { return config_index(x).has_value(); }

    EventSet empty_set() const { return EventSet(events_.size()); }
    EventSet set_of(const std::vector<EventId> &ids) const;
    std::vector<EventId> ids_of(const EventSet &x) const;
    std::set<Label> alphabet() const;

    friend bool operator==(const ConfigurationStructure &a, const ConfigurationStructure &b);

private:
    void build_index();

    std::vector<EventId> events_;
    std::vector<Label> labels_;
    std::vector<EventSet> configs_;
    std::unordered_map<EventSet, std::size_t, EventSetHash> config_index_;
    std::unordered_map<EventId, std::size_t> event_index_;
};

class IdentifiedStructure {
public:
    IdentifiedStructure() = default;
    // idents are aligned with base.events()
    IdentifiedStructure(ConfigurationStructure base, std::vector<Identifier> idents);

    const ConfigurationStructure &base() const { return base_; }
    std::size_t event_count() const { return base_.event_count(); }
    const EventId &event(std::size_t i) const { return base_.event(i); }
    const Label &label(std::size_t i) const { return base_.label(i); }
    const Identifier &ident(std::size_t i) const { return idents_[i]; }
    const std::vector<Identifier> &idents() const { return idents_; }
    const std::vector<EventSet> &configs() const { return base_.configs(); }
    std::set<Identifier> ident_set() const;
    std::optional<std::size_t> find_ident(const Identifier &i) const;

    friend bool operator==(const IdentifiedStructure &a, const IdentifiedStructure &b) {
        return a.base_ == b.base_ && a.idents_ == b.idents_;
    }

private:
    ConfigurationStructure base_;
    std::vector<Identifier> idents_;
};

struct AxiomCheck {
    std::string axiom;
    bool passed = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;
    bool ok() const;
    std::string summary() const;
};

ValidationReport validate(const ConfigurationStructure &c);
ValidationReport validate(const IdentifiedStructure &s);

enum class Causality { Less, Greater, Concurrent, Equal };

// below[e] = events d with d <=_x e, for each event e in x (other entries empty)
std::vector<EventSet> causal_below(const ConfigurationStructure &c, const EventSet &x);
Causality causality(const ConfigurationStructure &c, const EventSet &x, const EventId &d,
                    const EventId &e);
std::vector<EventSet> maximal_configs(const ConfigurationStructure &c);
std::vector<EventId> maximal_events(const ConfigurationStructure &c);

/*
  Synchronization algebra over structure labels. A null operand stands
  for the unit (star); an empty result stands for the zero (bottom).
*/
class SyncAlgebra {
public:
    using Table = std::map<std::pair<Label, Label>, Label>;

    static SyncAlgebra proc();
    static SyncAlgebra mem();
    // Table entries missing from the alphabet square are bottom; the
    // algebra must be commutative and associative.
    static SyncAlgebra from_table(const std::set<Label> &alphabet, const Table &table);

    std::optional<Label> combine(const Label *a, const Label *b) const;
    const std::string &name() const { return name_; }

private:
    std::string name_;
    std::function<std::optional<Label>(const Label &, const Label &)> op_;
};

using LabelMap = std::function<Label(const EventId &, const Label &)>;
using IdentMap = std::function<Identifier(const EventId &, const Identifier &)>;

ConfigurationStructure relabel(const ConfigurationStructure &c, const LabelMap &f);
IdentifiedStructure relabel(const IdentifiedStructure &s, const LabelMap &f);
IdentifiedStructure reidentify(const IdentifiedStructure &s, const IdentMap &f);

ConfigurationStructure restrict_events(const ConfigurationStructure &c, const std::set<EventId> &a);
IdentifiedStructure restrict_events(const IdentifiedStructure &s, const std::set<EventId> &a);
ConfigurationStructure restrict_labels(const ConfigurationStructure &c, const std::set<Label> &l);
IdentifiedStructure restrict_labels(const IdentifiedStructure &s, const std::set<Label> &l);

ConfigurationStructure prefix(const Label &a, const ConfigurationStructure &c);
IdentifiedStructure prefix(const Label &a, const IdentifiedStructure &s);
IdentifiedStructure prefix(const Label &a, const IdentifiedStructure &s, const Identifier &i);
ConfigurationStructure postfix(const ConfigurationStructure &c, const Label &a);
IdentifiedStructure postfix(const IdentifiedStructure &s, const Label &a, const Identifier &i);

ConfigurationStructure choice(const ConfigurationStructure &c1, const ConfigurationStructure &c2);
IdentifiedStructure choice(const IdentifiedStructure &s1, const IdentifiedStructure &s2);
ConfigurationStructure coproduct(const ConfigurationStructure &c1,
                                 const ConfigurationStructure &c2);
IdentifiedStructure coproduct(const IdentifiedStructure &s1, const IdentifiedStructure &s2);

ConfigurationStructure product(const ConfigurationStructure &c1, const ConfigurationStructure &c2);
IdentifiedStructure product(const IdentifiedStructure &s1, const IdentifiedStructure &s2);

ConfigurationStructure parallel_compose_proc(const ConfigurationStructure &c1,
                                             const ConfigurationStructure &c2,
                                             const SyncAlgebra &alg);
IdentifiedStructure parallel_compose_mem(const IdentifiedStructure &s1,
                                         const IdentifiedStructure &s2, const SyncAlgebra &alg);

ConfigurationStructure generate_below(const ConfigurationStructure &c, const EventSet &x);
IdentifiedStructure generate_below(const IdentifiedStructure &s, const EventSet &x);

ConfigurationStructure forget(const IdentifiedStructure &s);
// numbers events 1..n along `order` (defaults to the canonical event order)
IdentifiedStructure enrich(const ConfigurationStructure &c,
                           const std::vector<EventId> &order = {});

struct StructIso {
    std::vector<std::pair<EventId, EventId>> event_map;
    std::vector<std::pair<Label, Label>> label_map;
    std::vector<std::pair<Identifier, Identifier>> ident_map;
};

std::optional<StructIso> iso_search(const IdentifiedStructure &s1, const IdentifiedStructure &s2,
                                    bool fix_labels);
std::optional<StructIso> iso_search(const ConfigurationStructure &c1,
                                    const ConfigurationStructure &c2, bool fix_labels);

bool is_connected(const ConfigurationStructure &c);

namespace detail {
// Product events are index pairs into the factors, -1 standing for star.
using ProductEvents = std::vector<std::pair<int, int>>;
// Configurations of the product restricted to `events`, generated by
// single-event extension from the empty set (factors must be connected).
std::vector<std::vector<std::size_t>> product_configs(const ConfigurationStructure &c1,
                                                      const ConfigurationStructure &c2,
                                                      const ProductEvents &events);
// Same set, by filtering every subset against the product conditions.
std::vector<std::vector<std::size_t>> product_configs_oracle(const ConfigurationStructure &c1,
                                                             const ConfigurationStructure &c2,
                                                             const ProductEvents &events);
// Event-index map from c1 to c2 forming an isomorphism.
std::optional<std::vector<std::size_t>> find_iso(const ConfigurationStructure &c1,
                                                 const ConfigurationStructure &c2,
                                                 bool fix_labels,
                                                 const std::vector<Identifier> *idents1,
                                                 const std::vector<Identifier> *idents2);
}  // namespace detail

}  // namespace revccs
