#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Composite spaces use a row-major index convention: for a space A (x) B with
// dimensions (dA, dB) the basis vector |i>|j> sits at index i*dB + j. The
// clock factor is always the left (slower-varying) factor.

#include <array>
#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace emtime {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Natural units: every Hamiltonian is measured in angular frequency.
inline constexpr double hbar = 1.0;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(CVector amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(Index dim, Index k);

    Index dim() const noexcept { return amplitudes_.size(); }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](Index i) const { return amplitudes_(i); }

    double norm() const { return amplitudes_.norm(); }
    bool is_normalized(double tol = kNormTolerance) const;

    /// Rescaled copy with unit norm. Throws InvalidArgument for the zero vector.
    StateVector normalized() const;

    /// <this|other>
    Complex inner(const StateVector& other) const;

private:
    CVector amplitudes_;
};

/// |<a|b>| for normalized states; 1 means equal up to a global phase.
double fidelity(const StateVector& a, const StateVector& b);

class Operator {
public:
    Operator() = default;
    /// Wraps any square matrix; the Hermitian tag is set when the matrix is
    /// Hermitian within kHermitianTolerance.
    explicit Operator(CMatrix entries);

    /// Like the constructor but rejects non-Hermitian input.
    static Operator hermitian(CMatrix entries);
    static Operator diagonal(const RVector& values);
    static Operator zero(Index dim);

    Index dim() const noexcept { return entries_.rows(); }
    const CMatrix& matrix() const noexcept { return entries_; }
    bool is_hermitian() const noexcept { return hermitian_; }

    StateVector apply(const StateVector& psi) const;

private:
    CMatrix entries_;
    bool hermitian_ = false;
};

class DensityMatrix {
public:
    DensityMatrix() = default;
    /// Validates Hermiticity, unit trace and positivity (eigenvalues >= -1e-10).
    explicit DensityMatrix(CMatrix entries);

    static DensityMatrix pure(const StateVector& psi);

    Index dim() const noexcept { return entries_.rows(); }
    const CMatrix& matrix() const noexcept { return entries_; }
    Complex operator()(Index i, Index j) const { return entries_(i, j); }

    double trace() const { return entries_.trace().real(); }
    double purity() const;
    RVector eigenvalues() const;

private:
    CMatrix entries_;
};

struct SpectralDecomposition {
    RVector eigenvalues;  // ascending
    CMatrix eigenvectors; // orthonormal columns
};

/// max |A - A^dagger| over all entries.
double hermitian_deviation(const CMatrix& m);

StateVector tensor_product(const StateVector& a, const StateVector& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

SpectralDecomposition eig_hermitian(const Operator& h);

/// Caches the spectral decomposition of a Hermitian generator so repeated
/// evolutions cost one matrix-vector product each.
class Propagator {
public:
    explicit Propagator(const Operator& h);

    Index dim() const noexcept { return spectrum_.eigenvalues.size(); }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }

    /// exp(-i H t / hbar) psi
    StateVector evolve(double t, const StateVector& psi) const;
    CMatrix unitary(double t) const;

private:
    SpectralDecomposition spectrum_;
};

StateVector evolve_unitary(const Operator& h, double t, const StateVector& psi);

/// Reduced state of a bipartite density matrix on factor `keep` (0 or 1).
DensityMatrix partial_trace(const DensityMatrix& rho, std::array<Index, 2> dims, int keep);

} // namespace emtime
