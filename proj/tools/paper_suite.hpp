#pragma once

#include <cstdint>
#include <ostream>

namespace revccs::cli {

// Runs the regression suite of published claims; returns the number of failures.
int run_paper_suite(std::ostream &out, std::uint64_t seed, std::size_t samples);

}  // namespace revccs::cli
