#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emtime/qlin.hpp"

namespace emtime {

/// Von Neumann entropy (nats) of the reduced state of a bipartite pure state.
/// Schmidt weights below 1e-14 contribute nothing.
double entanglement_entropy(const StateVector& psi, std::array<Index, 2> dims);

/// -sum lambda ln lambda over the spectrum of rho.
double von_neumann_entropy(const DensityMatrix& rho);

/// C0 * exp(-k E). Requires E >= 0, k > 0, 0 < C0 <= 1.
double coherence_model(double entanglement, double c0, double k);

struct CoherenceCurve {
    std::vector<double> entanglement;
    std::vector<double> coherence;
};

CoherenceCurve coherence_curve(const std::vector<double>& entanglement_grid, double c0, double k);

/// The qubit state alpha|0> + beta|1> with its off-diagonal elements damped by
/// exp(-k E). omega and t enter only through a global phase and leave the
/// matrix unchanged.
DensityMatrix dephased_qubit_state(Complex alpha, Complex beta, double omega, double t, double k, double entanglement);

/// Sum of |rho_ij| over i != j.
double l1_coherence(const DensityMatrix& rho);

/// Map from entanglement to the tick rate dtau/dt.
enum class TickRate { exp_decay, unity, zero };

TickRate parse_tick_rate(std::string_view name);
std::string_view to_string(TickRate rate);

struct ObserverProfile {
    std::string label;
    double entanglement = 0.0;
    double k = 1.0;
    double c0 = 1.0;
    TickRate tick_rate = TickRate::exp_decay;
    /// Decay constant of the exp_decay tick rate; defaults to `k` when unset.
    std::optional<double> tick_k;

    void validate() const;
    double tick_rate_at(double e) const;
};

struct ObserverRow {
    std::string label;
    double entanglement;
    double coherence;
    double tick_rate;
    std::vector<double> local_time; // tau_i(t) on the scenario grid
    std::vector<DensityMatrix> states; // dephased qubit on the grid
    double l1;
    double purity;
};

struct ScenarioInputs {
    Complex alpha = 1.0 / std::sqrt(2.0);
    Complex beta = 1.0 / std::sqrt(2.0);
    double omega = 1.0;
    std::vector<double> t_grid{0.0};
};

/// Three observers ordered by nondecreasing entanglement; rows keep the
/// input order. Equal entanglement yields identical rows.
std::vector<ObserverRow> three_observer_scenario(const std::array<ObserverProfile, 3>& profiles,
                                                 const ScenarioInputs& inputs);

} // namespace emtime
