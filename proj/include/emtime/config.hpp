#pragma once

// Scenario files: a YAML document with a `scenario` kind, optional global
// settings and one parameter section named after the kind. Parsing is strict:
// unknown keys, wrong types and violated physical invariants of the parsed
// types are all reported as ConfigError with the offending line and key.
// See docs/scenario-format.md for the schema.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emtime/chronometry.hpp"
#include "emtime/clockwork.hpp"
#include "emtime/entcoh.hpp"
#include "emtime/error.hpp"
#include "emtime/qlin.hpp"

namespace emtime {

class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::string source, int line, std::string key);

    const std::string& source() const noexcept { return source_; }
    int line() const noexcept { return line_; } // 1-based, 0 when unknown
    const std::string& key() const noexcept { return key_; }

private:
    std::string source_;
    int line_;
    std::string key_;
};

enum class ScenarioKind { history, observers, dilation, cosmo, unified, coherence_sweep };

std::string_view to_string(ScenarioKind kind);

struct HistoryConfig {
    Index levels = 8;
    double dt = 1.0;
    LatticeSign lattice = LatticeSign::positive;
    Operator hamiltonian;
    /// Exactly one of psi0 / global_vector is set.
    std::optional<StateVector> psi0;
    std::optional<StateVector> global_vector;
};

struct ObserversConfig {
    std::array<ObserverProfile, 3> profiles;
    ScenarioInputs inputs;
    std::vector<double> entanglement_grid;
};

struct CoherenceSweepConfig {
    double c0 = 1.0;
    double k = 1.0;
    Complex alpha = 1.0 / std::sqrt(2.0);
    Complex beta = 1.0 / std::sqrt(2.0);
    std::vector<double> entanglement_grid;
};

struct UnifiedConfig {
    WorldlineSpec worldline;
    std::size_t samples = 101;
};

struct CosmoConfig {
    enum class Preset { constant, exponential, tabulated };
    Preset preset = Preset::constant;
    double value = 1.0;  // constant preset
    double hubble = 1.0; // exponential preset: a(t) = exp(H t)
    Profile table;       // tabulated preset
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t samples = 101;
};

struct DilationConfig {
    Operator hamiltonian;
    StateVector psi0;
    WorldlineSpec worldline;
    std::size_t samples = 101;
};

using ScenarioParams =
    std::variant<HistoryConfig, ObserversConfig, DilationConfig, CosmoConfig, UnifiedConfig, CoherenceSweepConfig>;

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::history;
    std::optional<std::uint64_t> seed;
    double tolerance = kDefaultTolerance;
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;
    ScenarioParams params;
};

ScenarioConfig parse_scenario(std::string_view text, const std::string& source_name = "<scenario>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

} // namespace emtime
