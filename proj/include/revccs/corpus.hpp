#pragma once

#include "revccs/syntax.hpp"

#include <string>
#include <vector>

namespace revccs {

struct CorpusOptions {
    std::size_t max_prefixes = 4;
    std::size_t max_components = 2;
    std::vector<std::string> actions{"a", "~a", "b"};
};

// Every recursion-free term up to the bounds, one representative per
// congruence class, in normal form and sorted.
std::vector<CcsProcess> generate_corpus(const CorpusOptions &options = {});

}  // namespace revccs
