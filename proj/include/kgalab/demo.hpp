#pragma once

#include "kgalab/store.hpp"

namespace kga {

// One-shot end-to-end run: key ceremony, ingestion of a fixture corpus,
// a legitimate search, and the four attacks, emitting a pass/fail matrix.
// mode is "vulnerable", "hardened", or "both". The report is a pure function
// of the seed (no timestamps, no wall times), so equal seeds give
// byte-identical output.
Json run_demo(const std::string& mode, std::uint64_t seed);

}  // namespace kga
