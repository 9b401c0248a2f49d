#pragma once

#include "revccs/corpus.hpp"
#include "revccs/encodings.hpp"
#include "revccs/equivalences.hpp"
#include "revccs/rccs.hpp"
#include "revccs/structures.hpp"
#include "revccs/syntax.hpp"

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testing {

using namespace revccs;

CcsProcess ccs(const std::string &text);

struct Golden {
    std::string process;
    ConfigurationStructure structure;
};

Golden load_golden(const std::string &name);

// "a1:a a2:a" and configurations as lists of event names
ConfigurationStructure literal(const std::string &events, const std::vector<std::string> &configs);

std::vector<std::string> label_shapes(const ConfigurationStructure &c);

// Brute-force oracles, independent of the library's search and game code.
bool brute_iso(const ConfigurationStructure &c1, const ConfigurationStructure &c2);
std::set<std::size_t> below_oracle(const ConfigurationStructure &c, const EventSet &x, std::size_t e);
bool lop_oracle(const ConfigurationStructure &c1, const EventSet &x1,
                const ConfigurationStructure &c2, const EventSet &x2,
                const std::vector<std::pair<std::size_t, std::size_t>> &f);
// All triples seeded, clauses applied until nothing changes.
bool hpb_oracle(const ConfigurationStructure &c1, const ConfigurationStructure &c2, bool hereditary);
bool bf_oracle(const LtsGraph &g1, const LtsGraph &g2, bool backward);
bool sbf_oracle(const LtsGraph &g1, const LtsGraph &g2);
bool interleaving_oracle(const LtsGraph &g1, const LtsGraph &g2);
// Product configurations by filtering every subset of the partial product
// (events named pair(e1 or star, e2 or star)) against the product conditions.
std::set<std::set<EventId>> powerset_product(const ConfigurationStructure &c1,
                                             const ConfigurationStructure &c2);

// Encoding of a random corpus process with at most max_events events.
ConfigurationStructure random_structure(std::mt19937_64 &rng, std::size_t max_events);

// Every witness triple is well formed and every clause is answered inside the witness.
std::string validate_witness(const BisimResult &r, const StructureModel &m1, const StructureModel &m2);
std::string validate_witness(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2);

const std::vector<CcsProcess> &corpus();
// corpus members with at most n prefixes
std::vector<CcsProcess> small_corpus(std::size_t n);

// Random forward walk from the initial state; returns the transitions taken.
std::vector<Transition> random_walk(const CcsProcess &p, std::size_t steps, std::mt19937_64 &rng);
// Candidate addresses by replaying a forward trace on the denotation of the origin.
std::vector<EventSet> replay_addresses(const ConfigurationStructure &denotation,
                                       const std::vector<Transition> &trace);

}  // namespace testing
