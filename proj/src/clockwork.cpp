#include "emtime/clockwork.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emtime/error.hpp"

namespace emtime {

namespace {

RVector lattice_energies(Index levels, double dt, LatticeSign sign) {
    const double spacing = 2.0 * std::numbers::pi / (static_cast<double>(levels) * dt);
    const double s = sign == LatticeSign::positive ? 1.0 : -1.0;
    RVector e(levels);
    for (Index k = 0; k < levels; ++k) e(k) = s * spacing * static_cast<double>(k);
    return e;
}

// The phase exp(-i E_k t_n) is evaluated from the integer product k*n mod N so
// that time states are exactly periodic and do not lose accuracy for large n.
Complex fourier_phase(Index k, long n, Index levels, LatticeSign sign) {
    const long long N = levels;
    long long kn = (static_cast<long long>(k) * (n % N)) % N;
    if (kn < 0) kn += N;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(kn) / static_cast<double>(N);
    return std::polar(1.0, sign == LatticeSign::positive ? -angle : angle);
}

} // namespace

ClockModel::ClockModel(Index levels, double dt, LatticeSign sign)
    : levels_(levels), dt_(dt), sign_(sign) {
    if (levels < 2) throw InvalidArgument("clock: need at least 2 levels, got " + std::to_string(levels));
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidArgument("clock: time spacing must be positive and finite, got " + std::to_string(dt));
    }
    energies_ = lattice_energies(levels, dt, sign);
    hamiltonian_ = Operator::diagonal(energies_);

    const double amp = 1.0 / std::sqrt(static_cast<double>(levels));
    time_states_.resize(levels, levels);
    for (Index n = 0; n < levels; ++n) {
        for (Index k = 0; k < levels; ++k) time_states_(k, n) = amp * fourier_phase(k, n, levels, sign);
    }
}

double ClockModel::lattice_spacing() const noexcept {
    return 2.0 * std::numbers::pi / period();
}

StateVector ClockModel::time_state(long n) const {
    const double amp = 1.0 / std::sqrt(static_cast<double>(levels_));
    CVector v(levels_);
    for (Index k = 0; k < levels_; ++k) v(k) = amp * fourier_phase(k, n, levels_, sign_);
    return StateVector(std::move(v));
}

ClockModel build_fourier_clock(Index levels, double dt, LatticeSign sign) {
    return ClockModel(levels, dt, sign);
}

HistoryState::HistoryState(ClockModel clock, Index system_dim, StateVector global_vector)
    : clock_(std::move(clock)), system_dim_(system_dim), global_(std::move(global_vector)) {
    if (system_dim_ <= 0) throw InvalidArgument("history state: system dimension must be positive");
    if (global_.dim() != clock_.levels() * system_dim_) {
        throw InvalidArgument("history state: global vector has dimension " + std::to_string(global_.dim()) +
                              ", expected " + std::to_string(clock_.levels()) + " x " +
                              std::to_string(system_dim_));
    }
    if (!global_.is_normalized()) {
        throw InvalidArgument("history state: global vector is not normalized (norm " +
                              std::to_string(global_.norm()) + ")");
    }
}

CMatrix HistoryState::blocks() const {
    // Eigen is column-major; a row-major map gives row k = system block k.
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(global_.amplitudes().data(), clock_.levels(), system_dim_);
}

HistoryState build_history_state(const ClockModel& clock, const Operator& system_hamiltonian,
                                 const StateVector& psi0) {
    if (!psi0.is_normalized()) {
        throw InvalidArgument("history state: psi0 is not normalized (norm " + std::to_string(psi0.norm()) + ")");
    }
    if (system_hamiltonian.dim() != psi0.dim()) {
        throw InvalidArgument("history state: H_S has dimension " + std::to_string(system_hamiltonian.dim()) +
                              " but psi0 has dimension " + std::to_string(psi0.dim()));
    }
    const Propagator propagator(system_hamiltonian);
    const Index N = clock.levels();
    const Index d = psi0.dim();
    const double weight = 1.0 / std::sqrt(static_cast<double>(N));

    CVector global = CVector::Zero(N * d);
    for (Index n = 0; n < N; ++n) {
        const CVector psi_n = weight * propagator.evolve(clock.time(n), psi0).amplitudes();
        const auto t_n = clock.time_states().col(n);
        for (Index k = 0; k < N; ++k) global.segment(k * d, d) += t_n(k) * psi_n;
    }
    return HistoryState(clock, d, StateVector(std::move(global)));
}

double constraint_residual(const HistoryState& history, const Operator& system_hamiltonian) {
    if (system_hamiltonian.dim() != history.system_dim()) {
        throw InvalidArgument("constraint residual: H_S has dimension " +
                              std::to_string(system_hamiltonian.dim()) + ", history system dimension is " +
                              std::to_string(history.system_dim()));
    }
    // (H_C (x) 1) Phi <-> H_C B and (1 (x) H_S) Phi <-> B H_S^T for the block matrix B.
    const CMatrix b = history.blocks();
    const CMatrix image = history.clock().hamiltonian().matrix() * b + b * system_hamiltonian.matrix().transpose();
    return image.norm();
}

} // namespace emtime
