#pragma once

#include "revccs/encodings.hpp"
#include "revccs/rccs.hpp"
#include "revccs/structures.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace revccs {

enum class Relation { Hpb, Hhpb, Bf, Sbf, BfForward, HpbRccs, HhpbRccs };

std::string relation_name(Relation r);
std::optional<Relation> parse_relation(const std::string &name);
bool is_structure_relation(Relation r);
bool supports_weak(Relation r);

struct CheckOptions {
    bool weak = false;
    std::size_t state_cap = 100000;
    std::size_t node_cap = 10000000;
};

// left/right are configuration indices (structure relations) or LTS state
// indices (process relations); map pairs event indices or identifiers.
struct MatchTriple {
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::pair<std::size_t, std::size_t>> map;
};

struct CertificateStep {
    std::size_t left = 0;
    std::size_t right = 0;
    std::string clause;
    std::string move;
    std::size_t responses = 0;
};

struct BisimResult {
    Relation relation = Relation::Hpb;
    bool weak = false;
    bool holds = false;
    std::vector<MatchTriple> witness;
    std::vector<CertificateStep> certificate;
    std::size_t nodes = 0;
};

// Configuration graph of a structure with per-configuration causal orders.
class StructureModel {
public:
    explicit StructureModel(ConfigurationStructure c);

    const ConfigurationStructure &structure() const { return c_; }
    std::size_t root() const { return root_; }
    // (event, target configuration)
    const std::vector<std::pair<std::size_t, std::size_t>> &forward(std::size_t x) const {
        return forward_[x];
    }
    const std::vector<std::pair<std::size_t, std::size_t>> &backward(std::size_t x) const {
        return backward_[x];
    }
    const std::vector<EventSet> &below(std::size_t x) const { return below_[x]; }

private:
    ConfigurationStructure c_;
    std::size_t root_ = 0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forward_, backward_;
    std::vector<std::vector<EventSet>> below_;
};

// Explored LTS of a process with lazily computed memory encodings.
class ProcessModel {
public:
    explicit ProcessModel(const CcsProcess &p, const ExploreOptions &options = {});

    const CcsProcess &process() const { return p_; }
    const LtsGraph &lts() const { return lts_; }
    const IdentifiedStructure &memory(std::size_t state) const;
    const MemoryShape &shape(std::size_t state) const;

private:
    CcsProcess p_;
    LtsGraph lts_;
    mutable std::vector<std::optional<IdentifiedStructure>> memory_;
    mutable std::vector<std::optional<MemoryShape>> shape_;
};

using EventBijection = std::vector<std::pair<std::size_t, std::size_t>>;

bool is_lop(const StructureModel &m1, std::size_t x1, const StructureModel &m2, std::size_t x2,
            const EventBijection &f);
std::vector<EventBijection> lop_bijections(const StructureModel &m1, std::size_t x1,
                                           const StructureModel &m2, std::size_t x2);
std::vector<std::vector<std::pair<EventId, EventId>>> lop_bijections(
    const ConfigurationStructure &c1, const EventSet &x, const ConfigurationStructure &c2,
    const EventSet &y);

// Does the identifier map f (pairs of identifiers) induce an isomorphism?
bool is_memory_iso(const MemoryShape &a, const MemoryShape &b,
                   const std::vector<std::pair<std::uint64_t, std::uint64_t>> &f);

BisimResult check_structures(Relation r, const StructureModel &m1, const StructureModel &m2,
                             const CheckOptions &options = {});
BisimResult check_processes(Relation r, const ProcessModel &m1, const ProcessModel &m2,
                            const CheckOptions &options = {});

BisimResult hpb(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                const CheckOptions &options = {});
BisimResult hhpb(const ConfigurationStructure &c1, const ConfigurationStructure &c2,
                 const CheckOptions &options = {});
BisimResult bf(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options = {});
BisimResult sbf(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options = {});
BisimResult bf_forward_only(const CcsProcess &p1, const CcsProcess &p2,
                            const CheckOptions &options = {});
BisimResult hpb_rccs(const CcsProcess &p1, const CcsProcess &p2, const CheckOptions &options = {});
BisimResult hhpb_rccs(const CcsProcess &p1, const CcsProcess &p2,
                      const CheckOptions &options = {});

// Dispatches on the relation; structure relations encode the processes first.
BisimResult check(Relation r, const CcsProcess &p1, const CcsProcess &p2,
                  const CheckOptions &options = {});

bool is_non_repeating(const CcsProcess &p);
bool has_auto_concurrency(const CcsProcess &p);
bool is_non_repeating(const ConfigurationStructure &c);
bool has_auto_concurrency(const ConfigurationStructure &c);

}  // namespace revccs
