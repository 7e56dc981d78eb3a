#ifndef FFLAB_SEARCH_HPP
#define FFLAB_SEARCH_HPP

#include <ostream>

#include "fflab/json_io.hpp"
#include "fflab/rng.hpp"

namespace fflab {

struct SearchConfig {
    u64 seed = 0;
    long trials = 100;
    u64 characteristic = 101;  // 0 = rationals
    unsigned ext = 1;
    int genus = 0;             // 0, 1 or 2
    int k_min = 4, k_max = 8;
    int codim_min = 0, codim_max = 3;

    void validate() const;
};

/// Deterministic random instance for one trial: genus-0 subspaces of
/// L(n inf) containing 1 (alternating random-combination and monomial
/// shapes, filtered so S generates K(x)), or genus-1/2 subspaces of
/// L(n Pinf) containing {1, x, y}.
Instance generate_instance(const SearchConfig& cfg, u64 trial_seed);

struct SearchResult {
    long trials_run = 0;
    long failures = 0;  // assertion failures (exit code 3 when > 0)
};

/// Runs the seeded search, one JSON line per trial on `out`, strictly in
/// trial order. An assertion failure emits the reproducer instance in its
/// line and stops the run.
SearchResult run_search(const SearchConfig& cfg, std::ostream& out);

}  // namespace fflab

#endif
