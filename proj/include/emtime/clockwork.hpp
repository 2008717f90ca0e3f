#pragma once

#include "emtime/qlin.hpp"

namespace emtime {

/// Sign of the clock energy lattice. `positive` gives E_k = +2 pi k / (N dt);
/// `negated` gives E_k = -2 pi k / (N dt). A history state annihilates
/// H_C (x) 1 + 1 (x) H_S exactly when every eigenvalue of H_S equals -E_k for
/// some k, so `negated` pairs with system spectra on the positive lattice.
enum class LatticeSign { positive, negated };

/// Finite clock whose energy eigenbasis is the computational basis and whose
/// time states are the discrete Fourier transform of that basis.
class ClockModel {
public:
    ClockModel(Index levels, double dt, LatticeSign sign = LatticeSign::positive);

    Index levels() const noexcept { return levels_; }
    double dt() const noexcept { return dt_; }
    double period() const noexcept { return static_cast<double>(levels_) * dt_; }
    LatticeSign sign() const noexcept { return sign_; }

    /// t_n = n dt
    double time(long n) const noexcept { return static_cast<double>(n) * dt_; }
    double lattice_spacing() const noexcept;

    const RVector& energies() const noexcept { return energies_; }
    const Operator& hamiltonian() const noexcept { return hamiltonian_; }

    /// Columns are |t_0>, ..., |t_{N-1}> in the energy basis.
    const CMatrix& time_states() const noexcept { return time_states_; }

    /// |t_n> for any integer n; periodic with period N.
    StateVector time_state(long n) const;

private:
    Index levels_;
    double dt_;
    LatticeSign sign_;
    RVector energies_;
    Operator hamiltonian_;
    CMatrix time_states_;
};

ClockModel build_fourier_clock(Index levels, double dt, LatticeSign sign = LatticeSign::positive);

/// Global clock (x) system vector. The clock factor is the left factor.
class HistoryState {
public:
    /// Wraps an arbitrary normalized global vector of dimension N * system_dim.
    HistoryState(ClockModel clock, Index system_dim, StateVector global_vector);

    const ClockModel& clock() const noexcept { return clock_; }
    Index system_dim() const noexcept { return system_dim_; }
    const StateVector& global_vector() const noexcept { return global_; }

    /// Global vector reshaped so that row k holds the system block of clock
    /// energy level k.
    CMatrix blocks() const;

private:
    ClockModel clock_;
    Index system_dim_;
    StateVector global_;
};

/// (1/sqrt N) sum_n |t_n> (x) exp(-i H_S t_n) |psi0>
HistoryState build_history_state(const ClockModel& clock, const Operator& system_hamiltonian,
                                 const StateVector& psi0);

/// || (H_C (x) 1 + 1 (x) H_S) |Phi> ||
double constraint_residual(const HistoryState& history, const Operator& system_hamiltonian);

} // namespace emtime
