#pragma once

#include "axisym/diagnostics.hpp"
#include "axisym/run_record.hpp"

namespace axisym {

/// Executes a configured run: builds the initial field, advances the
/// transport solver to t_end, writes snapshots, diagnostics/profile/particle
/// CSVs and the manifest. Deterministic for a fixed config (fixed summation
/// orders; thread count only partitions work). On a step failure the partial
/// record is flushed with status "incomplete" and the error rethrown.
RunRecord run_simulation(const SimConfig& config);

/// Rebuilds the derived reports (growth fit, a/b series, axis-rate fit) from
/// a persisted run directory. Pure function of the record; writes
/// reports/*.json under the run directory.
void regenerate_reports(const std::string& run_dir);

} // namespace axisym
