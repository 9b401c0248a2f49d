#include "revccs/encodings.hpp"

#include <algorithm>

namespace revccs {

Label action_label(const ActionLabel &a) { return Label::action(a.str()); }

ConfigurationStructure encode_ccs(const CcsProcess &p) {
    switch (p.kind()) {
    case CcsProcess::Kind::Sum: {
        std::size_t n = p.summand_count();
        if (n == 0) return ConfigurationStructure();
        ConfigurationStructure acc = prefix(action_label(p.summand_label(n - 1)),
                                            encode_ccs(p.summand_continuation(n - 1)));
        for (std::size_t k = n - 1; k-- > 0;) {
            auto head = prefix(action_label(p.summand_label(k)), encode_ccs(p.summand_continuation(k)));
            acc = choice(head, acc);
        }
        return acc;
    }
    case CcsProcess::Kind::Par:
        return parallel_compose_proc(encode_ccs(p.left()), encode_ccs(p.right()),
                                     SyncAlgebra::proc());
    case CcsProcess::Kind::Restrict: {
        const auto &a = p.restricted_name().text;
        return restrict_labels(encode_ccs(p.body()),
                               std::set<Label>{Label::action(a), Label::action("~" + a)});
    }
    case CcsProcess::Kind::Choice: {
        const auto &bs = p.branches();
        if (bs.empty()) return ConfigurationStructure();
        ConfigurationStructure acc = encode_ccs(bs.back());
        for (std::size_t k = bs.size() - 1; k-- > 0;) acc = choice(encode_ccs(bs[k]), acc);
        return acc;
    }
    }
    throw EncodingError("unknown process kind");
}

namespace {

void collect_threads(const RccsProcess &r, std::vector<Memory> &out) {
    switch (r.kind()) {
    case RccsProcess::Kind::Thread:
        out.push_back(r.memory());
        break;
    case RccsProcess::Kind::Par:
        collect_threads(r.left(), out);
        collect_threads(r.right(), out);
        break;
    case RccsProcess::Kind::Restrict:
        collect_threads(r.body(), out);
        break;
    }
}

IdentifiedStructure encode_stack(const Memory &m) {
    IdentifiedStructure s{ConfigurationStructure(), {}};
    for (const auto &item : m.items) {
        if (item.fork) continue;
        Identifier i = Identifier::base(item.event.ident);
        if (s.ident_set().count(i))
            throw IncoherentMemoryError("identifier " + std::to_string(item.event.ident) +
                                        " occurs twice in one stack");
        s = postfix(s, action_label(item.event.action), i);
    }
    return s;
}

bool same_item(const MemoryItem &a, const MemoryItem &b) {
    Memory ma{{a}}, mb{{b}};
    return compare(ma, mb) == 0;
}

// Length of the longest common prefix of a and b that ends with a fork marker.
std::size_t fork_prefix(const Memory &a, const Memory &b) {
    std::size_t n = std::min(a.items.size(), b.items.size()), best = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!same_item(a.items[k], b.items[k])) break;
        if (a.items[k].fork) best = k + 1;
    }
    return best;
}

}  // namespace

IdentifiedStructure encode_memory(const RccsProcess &r) {
    std::vector<Memory> threads;
    collect_threads(r, threads);
    struct Group {
        Memory memory;
        IdentifiedStructure enc;
    };
    std::vector<Group> groups;
    for (const auto &m : threads) groups.push_back({m, encode_stack(m)});
    auto mem = SyncAlgebra::mem();
    while (groups.size() > 1) {
        std::size_t bi = 0, bj = 1, blen = 0;
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                auto len = fork_prefix(groups[i].memory, groups[j].memory);
                if (len > blen) {
                    blen = len;
                    bi = i;
                    bj = j;
                }
            }
        Group merged;
        try {
            merged.enc = parallel_compose_mem(groups[bi].enc, groups[bj].enc, mem);
        } catch (const StructureError &e) {
            throw IncoherentMemoryError(std::string("memory does not encode: ") + e.what());
        }
        if (blen > 0)
            merged.memory.items.assign(groups[bi].memory.items.begin(),
                                       groups[bi].memory.items.begin() +
                                           static_cast<std::ptrdiff_t>(blen - 1));
        groups[bi] = std::move(merged);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    if (groups.empty()) return IdentifiedStructure{ConfigurationStructure(), {}};
    return groups.front().enc;
}

AddressPair encode_address(const RccsProcess &r) {
    CcsProcess o = origin(r);
    auto denotation = encode_ccs(o);
    auto target = forget(encode_memory(r));
    for (const auto &x : denotation.configs()) {
        if (x.size() != target.event_count()) continue;
        if (iso_search(generate_below(denotation, x), target, true))
            return {denotation, x};
    }
    throw EncodingError("no configuration of the origin matches the memory of " + pretty_rccs(r));
}

bool MemoryShape::has_config(std::uint64_t mask) const {
    return std::binary_search(configs.begin(), configs.end(), mask);
}

MemoryShape memory_shape(const IdentifiedStructure &s) {
    std::size_t n = s.event_count();
    if (n > 64) throw EncodingError("memory encoding too large for a shape");
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    for (std::size_t k = 0; k < n; ++k) {
        const auto &v = s.ident(k).value;
        if (v.kind() != Term::Kind::Atom)
            throw EncodingError("memory encoding identifier " + s.ident(k).str() + " is not basic");
        order.emplace_back(v.number(), k);
    }
    std::sort(order.begin(), order.end());
    MemoryShape shape;
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (p > 0 && order[p].first == order[p - 1].first)
            throw EncodingError("identifier " + std::to_string(order[p].first) + " is not unique");
        shape.idents.push_back(order[p].first);
        shape.labels.push_back(s.label(order[p].second));
        pos[order[p].second] = p;
    }
    for (const auto &x : s.configs()) {
        std::uint64_t mask = 0;
        for (auto e : x.elements()) mask |= std::uint64_t{1} << pos[e];
        shape.configs.push_back(mask);
    }
    std::sort(shape.configs.begin(), shape.configs.end());
    return shape;
}

namespace {

std::optional<std::size_t> event_with_ident(const IdentifiedStructure &s, Ident i) {
    return s.find_ident(Identifier::base(i));
}

bool is_maximal(const IdentifiedStructure &s, std::size_t e) {
    auto maxes = maximal_events(s.base());
    return std::find(maxes.begin(), maxes.end(), s.event(e)) != maxes.end();
}

// Compares `smaller` with `larger` minus event e, identifiers fixed.
CorrespondenceReport compare_with_removal(const IdentifiedStructure &smaller,
                                          const IdentifiedStructure &larger, Ident i,
                                          const ActionLabel &a) {
    CorrespondenceReport rep;
    auto e = event_with_ident(larger, i);
    if (!e) {
        rep.message = "no event with identifier " + std::to_string(i);
        return rep;
    }
    rep.event = larger.event(*e);
    if (!(larger.label(*e) == action_label(a))) {
        rep.message = "event " + rep.event.str() + " is labelled " + larger.label(*e).str() +
                      ", expected " + a.str();
        return rep;
    }
    if (!is_maximal(larger, *e)) {
        rep.message = "event " + rep.event.str() + " is not maximal";
        return rep;
    }
    auto reduced = restrict_events(larger, {rep.event});
    if (!(memory_shape(reduced) == memory_shape(smaller))) {
        rep.message = "encodings differ after removing " + rep.event.str();
        return rep;
    }
    auto iso = iso_search(smaller, reduced, true);
    if (!iso) {
        rep.message = "no isomorphism after removing " + rep.event.str();
        return rep;
    }
    rep.iso = *iso;
    rep.ok = true;
    rep.message = "ok";
    return rep;
}

}  // namespace

CorrespondenceReport check_op_correspondence(const Transition &t) {
    auto src = encode_memory(t.source);
    auto tgt = encode_memory(t.target);
    if (t.direction == Direction::Forward) return compare_with_removal(src, tgt, t.ident, t.action);
    return compare_with_removal(tgt, src, t.ident, t.action);
}

Transition backward_from_maximal(const RccsProcess &r, const EventId &e) {
    auto enc = encode_memory(r);
    auto idx = enc.base().find_event(e);
    if (!idx) throw PreconditionError("unknown event " + e.str());
    if (!is_maximal(enc, *idx)) throw PreconditionError("event " + e.str() + " is not maximal");
    const auto &v = enc.ident(*idx).value;
    if (v.kind() != Term::Kind::Atom) throw EncodingError("identifier is not basic");
    auto i = static_cast<Ident>(v.number());
    auto expected = memory_shape(restrict_events(enc, {e}));
    for (const auto &t : backward_transitions(r)) {
        if (t.ident != i || !(action_label(t.action) == enc.label(*idx))) continue;
        if (!(memory_shape(encode_memory(t.target)) == expected))
            throw EncodingError("backward move on " + std::to_string(i) +
                                " does not remove exactly the event " + e.str());
        return t;
    }
    throw EncodingError("no backward move undoes event " + e.str());
}

}  // namespace revccs
