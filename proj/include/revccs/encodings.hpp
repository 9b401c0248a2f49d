#pragma once

#include "revccs/rccs.hpp"
#include "revccs/structures.hpp"

#include <stdexcept>
#include <string>

namespace revccs {

class EncodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Label action_label(const ActionLabel &a);

ConfigurationStructure encode_ccs(const CcsProcess &p);
IdentifiedStructure encode_memory(const RccsProcess &r);

struct AddressPair {
    ConfigurationStructure denotation;
    EventSet address;
};

AddressPair encode_address(const RccsProcess &r);

struct CorrespondenceReport {
    bool ok = false;
    std::string message;
    EventId event;
    StructIso iso;
};

CorrespondenceReport check_op_correspondence(const Transition &t);
Transition backward_from_maximal(const RccsProcess &r, const EventId &e);

// Identifier-indexed view of a memory encoding: identifiers are unique in
// such structures, so events can be named by them.
struct MemoryShape {
    std::vector<std::uint64_t> idents;        // sorted identifier values
    std::vector<Label> labels;                // aligned with idents
    std::vector<std::uint64_t> configs;       // bitmasks over positions in idents, sorted
    bool has_config(std::uint64_t mask) const;
    friend bool operator==(const MemoryShape &, const MemoryShape &) = default;
};

MemoryShape memory_shape(const IdentifiedStructure &s);

}  // namespace revccs
