#pragma once

#include <vector>

#include "emtime/chronometry.hpp"
#include "emtime/clockwork.hpp"
#include "emtime/qlin.hpp"

namespace emtime {

/// Projections with norm at or below this are treated as undefined.
inline constexpr double kZeroWeight = 1e-14;

struct ConditionalState {
    StateVector state; // normalized
    double weight;     // || <t_n|Phi> ||
};

/// Normalized system states indexed by clock (or coordinate) time.
struct ConditionalTrajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> norms; // pre-normalization weights

    std::size_t size() const noexcept { return times.size(); }
};

/// <t_n|Phi> normalized, for 0 <= n < N. Throws UndefinedConditionalState
/// when the projection vanishes.
ConditionalState condition_on_clock(const HistoryState& history, long n);

/// Conditions on every clock reading t_0 .. t_{N-1}.
ConditionalTrajectory conditional_trajectory(const HistoryState& history);

/// Central-difference residuals || (psi_{n+1} - psi_{n-1}) / (2 dt) + i H psi_n / hbar ||
/// at every interior point of a uniformly spaced trajectory. States are used
/// with the phase they carry; clock conditioning fixes that phase.
std::vector<double> schrodinger_residual(const ConditionalTrajectory& trajectory,
                                         const Operator& system_hamiltonian);

/// States exp(-i H tau(t_n)) psi0 on the coordinate grid of `series`: the
/// Hamiltonian is unchanged, only the time argument is replaced by emergent time.
ConditionalTrajectory reparametrized_trajectory(const Operator& system_hamiltonian,
                                                const StateVector& psi0,
                                                const EmergentTimeSeries& series);

} // namespace emtime
