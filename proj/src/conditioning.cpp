#include "emtime/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emtime/error.hpp"

namespace emtime {

ConditionalState condition_on_clock(const HistoryState& history, long n) {
    const ClockModel& clock = history.clock();
    if (n < 0 || n >= clock.levels()) {
        throw InvalidArgument("condition_on_clock: index " + std::to_string(n) + " outside [0, " +
                              std::to_string(clock.levels()) + ")");
    }
    // <t_n|Phi> = sum_k conj(t_n[k]) Phi_k
    const CVector projected = history.blocks().transpose() * clock.time_states().col(n).conjugate();
    const double weight = projected.norm();
    if (weight <= kZeroWeight) {
        throw UndefinedConditionalState("conditional state undefined at clock reading n=" + std::to_string(n) +
                                            ": projection norm " + std::to_string(weight) +
                                            " carries no internal time",
                                        n);
    }
    return {StateVector(projected / weight), weight};
}

ConditionalTrajectory conditional_trajectory(const HistoryState& history) {
    ConditionalTrajectory traj;
    const Index N = history.clock().levels();
    traj.times.reserve(N);
    traj.states.reserve(N);
    traj.norms.reserve(N);
    for (Index n = 0; n < N; ++n) {
        auto [state, weight] = condition_on_clock(history, n);
        traj.times.push_back(history.clock().time(n));
        traj.states.push_back(std::move(state));
        traj.norms.push_back(weight);
    }
    return traj;
}

std::vector<double> schrodinger_residual(const ConditionalTrajectory& trajectory,
                                         const Operator& system_hamiltonian) {
    const std::size_t count = trajectory.size();
    if (count < 3) {
        throw InvalidArgument("schrodinger_residual: need at least 3 points, got " + std::to_string(count));
    }
    if (trajectory.states.size() != count) {
        throw InvalidArgument("schrodinger_residual: times and states differ in length");
    }
    const double dt = trajectory.times[1] - trajectory.times[0];
    if (!(dt > 0.0)) throw InvalidArgument("schrodinger_residual: times must be increasing");
    for (std::size_t n = 1; n < count; ++n) {
        const double step = trajectory.times[n] - trajectory.times[n - 1];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw InvalidArgument("schrodinger_residual: time grid is not uniform at index " + std::to_string(n));
        }
    }
    const CMatrix& h = system_hamiltonian.matrix();
    if (h.rows() != trajectory.states.front().dim()) {
        throw InvalidArgument("schrodinger_residual: H_S dimension does not match the states");
    }

    const Complex i_over_hbar(0.0, 1.0 / hbar);
    std::vector<double> residuals;
    residuals.reserve(count - 2);
    for (std::size_t n = 1; n + 1 < count; ++n) {
        const CVector derivative =
            (trajectory.states[n + 1].amplitudes() - trajectory.states[n - 1].amplitudes()) / (2.0 * dt);
        residuals.push_back((derivative + i_over_hbar * (h * trajectory.states[n].amplitudes())).norm());
    }
    return residuals;
}

ConditionalTrajectory reparametrized_trajectory(const Operator& system_hamiltonian,
                                                const StateVector& psi0,
                                                const EmergentTimeSeries& series) {
    if (series.t_grid.size() != series.tau_values.size()) {
        throw InvalidArgument("reparametrized_trajectory: grid and tau lengths differ");
    }
    for (std::size_t n = 1; n < series.tau_values.size(); ++n) {
        if (series.tau_values[n] < series.tau_values[n - 1]) {
            throw InvalidArgument("reparametrized_trajectory: emergent time decreases at index " +
                                  std::to_string(n));
        }
    }
    if (!psi0.is_normalized()) throw InvalidArgument("reparametrized_trajectory: psi0 is not normalized");

    const Propagator propagator(system_hamiltonian);
    ConditionalTrajectory traj;
    traj.times = series.t_grid;
    traj.states.reserve(series.tau_values.size());
    for (double tau : series.tau_values) traj.states.push_back(propagator.evolve(tau, psi0));
    traj.norms.assign(series.tau_values.size(), 1.0);
    return traj;
}

} // namespace emtime
