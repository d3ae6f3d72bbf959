#pragma once

// The top-level verification pipelines behind the CLI subcommands.

#include "p3mod/gf3.hpp"
#include "p3mod/report.hpp"

namespace p3mod {

/// Full verification of the main construction (omega size 9): order
/// accounting, collection validation, centre, faithfulness and
/// non-quadraticity of the centre on the block module with exact
/// witnesses, the rank-9 witness subgroup, its quadratic action and
/// structural weak closure, the j-value bound, and the commutator
/// identities used by the centre argument.
Report verify_theorem_main(const RunConfig& cfg);

/// Brute-force oracle suites and property checks on the 27-element
/// instance (omega size 2) and/or the 3^10 mini-instance (omega size 4),
/// per cfg.omega_sizes.
Report props_suite(const RunConfig& cfg);

/// Offender / quadratic / weak-closure analysis of a user-supplied small
/// matrix group.
Report analyze_group(const RunConfig& cfg, const std::vector<Mat>& gens);

}  // namespace p3mod
