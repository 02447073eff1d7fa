#pragma once

#include <json.hpp>
#include <string>

#include "bireg/grid.hpp"
#include "bireg/scenarios.hpp"
#include "bireg/tensor_norms.hpp"

namespace bireg {

/// Insertion-ordered JSON so that identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

/// Complex scalar as "re+imj" with 17 significant digits (round-trip exact
/// in double precision); the imaginary part always carries its sign.
std::string format_complex(Complex z);

/// Complex scalar as a two-element [re, im] JSON array.
Json complex_to_json(Complex z);

/// Row-major CSV of the grid entries, one grid row per line, cells in
/// "re+imj" form.
std::string grid_to_csv(const LimitGrid& grid);

/// Grid with its limit estimates and stabilization flags.
Json grid_to_json(const LimitGrid& grid);

Json verdict_to_json(const BiregularityVerdict& verdict);

Json estimate_to_json(const ProjectiveNormEstimate& estimate);

Json schur_suite_to_json(const SchurSuiteSummary& summary);

Json null_monitor_to_json(const SchurNullMonitor& monitor);

/// Plot-ready decay table: one "i,max_measured" line per column index.
std::string null_monitor_to_csv(const SchurNullMonitor& monitor);

Json finite_dim_to_json(const FiniteDimSummary& summary);

}  // namespace bireg
