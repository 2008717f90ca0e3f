#pragma once

// One function per scenario kind. Each returns the full table (and plot, where
// the kind has one) so callers can decide what to write only after every
// computation has succeeded.

#include <optional>

#include "emtime/config.hpp"
#include "emtime/csv.hpp"
#include "emtime/svg.hpp"

namespace emtime {

struct ScenarioResult {
    Table table;
    std::optional<LinePlot> plot;
};

ScenarioResult run_history(const HistoryConfig& cfg);
ScenarioResult run_observers(const ObserversConfig& cfg);
ScenarioResult run_coherence_sweep(const CoherenceSweepConfig& cfg);
ScenarioResult run_unified(const UnifiedConfig& cfg, double tol);
ScenarioResult run_cosmo(const CosmoConfig& cfg, double tol);
ScenarioResult run_dilation(const DilationConfig& cfg, double tol);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

} // namespace emtime
