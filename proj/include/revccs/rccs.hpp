#pragma once

#include "revccs/syntax.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revccs {

using Ident = std::uint32_t;
using IdentRenaming = std::vector<std::pair<Ident, Ident>>;

class IncoherentMemoryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MemoryEvent {
    Ident ident = 0;
    ActionLabel action;
    CcsProcess alternative;
};

struct MemoryItem {
    bool fork = false;
    MemoryEvent event;

    static MemoryItem fork_marker() { return {true, {}}; }
    static MemoryItem of(const MemoryEvent &e) { return {false, e}; }
};

// Stack of memory items, items.front() is the oldest, items.back() the top.
struct Memory {
    std::vector<MemoryItem> items;

    bool empty() const { return items.empty(); }
    const MemoryItem &top() const { return items.back(); }
    Memory pushed(const MemoryItem &item) const;
    Memory popped() const;
    std::set<Ident> ids() const;
    std::set<Name> names() const;
    bool is_prefix_of(const Memory &other, bool strict) const;
};

int compare(const Memory &a, const Memory &b, bool ignore_ids = false);
inline bool operator==(const Memory &a, const Memory &b) { return compare(a, b) == 0; }
inline bool operator<(const Memory &a, const Memory &b) { return compare(a, b) < 0; }

class RccsProcess {
public:
    enum class Kind : std::uint8_t { Thread, Par, Restrict };

    RccsProcess();
    static RccsProcess thread(const Memory &memory, const CcsProcess &code);
    static RccsProcess par(const RccsProcess &left, const RccsProcess &right);
    static RccsProcess restrict(const RccsProcess &body, const Name &name);

    Kind kind() const { return kind_; }
    const Memory &memory() const { return memory_; }
    const CcsProcess &code() const { return code_; }
    const RccsProcess &left() const { return children_[0]; }
    const RccsProcess &right() const { return children_[1]; }
    const RccsProcess &body() const { return children_[0]; }
    const Name &restricted_name() const { return name_; }
    const std::vector<RccsProcess> &children() const { return children_; }

    std::set<Ident> ids() const;
    std::size_t thread_count() const;

    friend int compare(const RccsProcess &a, const RccsProcess &b, bool ignore_ids);
    friend bool operator==(const RccsProcess &a, const RccsProcess &b) {
        return compare(a, b, false) == 0;
    }
    friend bool operator<(const RccsProcess &a, const RccsProcess &b) {
        return compare(a, b, false) < 0;
    }

private:
    Kind kind_ = Kind::Thread;
    Memory memory_;
    CcsProcess code_;
    std::vector<RccsProcess> children_;
    Name name_;
};

int compare(const RccsProcess &a, const RccsProcess &b, bool ignore_ids = false);

RccsProcess initial_state(const CcsProcess &p);

std::string pretty_memory(const Memory &m);
std::string pretty_rccs(const RccsProcess &r);
RccsProcess parse_rccs(const std::string &text);

// Congruence normal form: distributed memories, lifted restrictions,
// canonical bound names, sorted parallel components. Identifiers kept.
RccsProcess rccs_normal_form(const RccsProcess &r);
bool rccs_congruent(const RccsProcess &r, const RccsProcess &s);

// Normal form with identifiers renamed 1..k by first use; renaming maps old to new.
RccsProcess canonical_state(const RccsProcess &r, IdentRenaming *renaming = nullptr);

enum class Direction : std::uint8_t { Forward, Backward };
std::string direction_name(Direction d);

// A memory stack extended (forward) or exposed (backward) by a transition,
// located by its child-index path in the source's normal form.
struct TouchedMemory {
    std::vector<int> path;
    Memory memory;
};

struct Transition {
    RccsProcess source;
    Direction direction = Direction::Forward;
    Ident ident = 0;
    ActionLabel action;
    RccsProcess target;
    std::vector<TouchedMemory> touched;
    // pushed or popped memory events, aligned with touched
    std::vector<MemoryEvent> events;
};

std::vector<Transition> forward_transitions(const RccsProcess &r);
std::vector<Transition> backward_transitions(const RccsProcess &r);
// Forward transitions instantiating the given identifier; empty if it is not fresh.
std::vector<Transition> forward_transitions_with_ident(const RccsProcess &r, Ident ident);

CcsProcess origin(const RccsProcess &r);
bool is_reachable(const RccsProcess &r);

std::vector<Memory> touched_memories(const Transition &t);
bool concurrent_transitions(const Transition &t1, const Transition &t2);
// Closes the square; targets agree up to rccs_congruent when the two
// identifiers differ and up to identifier renaming otherwise.
std::pair<Transition, Transition> diamond_complete(const Transition &t1, const Transition &t2);
bool direct_cause(const std::vector<Transition> &trace, std::size_t i, std::size_t k);

struct LtsEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    Direction direction = Direction::Forward;
    Ident ident = 0;
    ActionLabel action;
    // raw target identifiers to canonical target identifiers
    IdentRenaming renaming;
};

struct LtsGraph {
    std::vector<RccsProcess> states;
    std::vector<LtsEdge> edges;
    std::vector<std::vector<std::size_t>> out_edges;
    std::size_t root = 0;
};

struct ExploreOptions {
    std::size_t state_cap = 100000;
};

LtsGraph explore(const CcsProcess &p, const ExploreOptions &options = {});

namespace detail {
std::vector<Transition> forward_moves(const RccsProcess &normal, std::optional<Ident> ident);
std::vector<Transition> backward_moves(const RccsProcess &normal);
RccsProcess collapse(const RccsProcess &r);
}  // namespace detail

}  // namespace revccs
