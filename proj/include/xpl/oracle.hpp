#pragma once

#include "xpl/formula.hpp"
#include "xpl/plts.hpp"
#include "xpl/rational.hpp"

#include <cstddef>
#include <cstdint>

namespace xpl {

enum class OracleMode { Exact, MonteCarlo };

struct OracleConfig {
    std::size_t depth = 4;  // transitions from the root to the horizon
    OracleMode mode = OracleMode::Exact;
    std::size_t samples = 10000;  // per scheduler, monte-carlo only
    std::uint64_t seed = 1;
    std::size_t budget = 1000000;  // schedulers (monte-carlo) or distributions (exact)
};

// Bounds on the supremum over schedulers of the measure of d-trees satisfying
// f, from depth-bounded prefixes evaluated in three-valued logic: a prefix is
// satisfied when every extension satisfies f, undetermined when the answer
// depends on what lies past the horizon.
struct OracleResult {
    // Exact mode: max over schedulers of the satisfied measure (a lower bound
    // on the true value) and of the satisfied-or-undetermined measure (an
    // upper bound).
    Rational lower;
    Rational upper;
    // Monte-carlo mode: the same two maxima over sampled frequencies, and the
    // standard error of the lower estimate for the best scheduler.
    double lower_estimate = 0.0;
    double upper_estimate = 0.0;
    double standard_error = 0.0;
    std::size_t schedulers = 0;  // monte-carlo: schedulers enumerated
    std::size_t work = 0;        // exact: distributions generated
};

// Brute force over pure history-dependent schedulers, independent of the
// dependency-graph pipeline. f must be closed, guarded and free of Prob and
// simultaneous blocks (std::invalid_argument otherwise). Throws
// BudgetExceeded when the enumeration grows past cfg.budget.
OracleResult oracle_value(const Plts& model, StateId s, const Formula& f, const OracleConfig& cfg = {});

}  // namespace xpl
