#include "emtime/qlin.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "emtime/error.hpp"

namespace emtime {

namespace {

bool all_finite(const CVector& v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
    }
    return true;
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InvalidArgument(std::string(what) + ": expected a nonempty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

} // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) throw InvalidArgument("StateVector: dimension must be positive");
    if (!all_finite(amplitudes_)) throw InvalidArgument("StateVector: non-finite amplitude");
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector([&] {
          CVector v(static_cast<Index>(amplitudes.size()));
          Index i = 0;
          for (const Complex& a : amplitudes) v(i++) = a;
          return v;
      }()) {}

StateVector StateVector::basis(Index dim, Index k) {
    if (dim <= 0 || k < 0 || k >= dim) {
        throw InvalidArgument("StateVector::basis: index " + std::to_string(k) +
                              " out of range for dimension " + std::to_string(dim));
    }
    CVector v = CVector::Zero(dim);
    v(k) = 1.0;
    return StateVector(std::move(v));
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("StateVector: cannot normalize the zero vector");
    return StateVector(amplitudes_ / n);
}

Complex StateVector::inner(const StateVector& other) const {
    if (other.dim() != dim()) {
        throw InvalidArgument("inner product: dimension mismatch " + std::to_string(dim()) +
                              " vs " + std::to_string(other.dim()));
    }
    return amplitudes_.dot(other.amplitudes_); // Eigen conjugates the left operand
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(a.inner(b)); }

double hermitian_deviation(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Operator::Operator(CMatrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "Operator");
    if (!all_finite(entries_.reshaped())) throw InvalidArgument("Operator: non-finite entry");
    hermitian_ = hermitian_deviation(entries_) <= kHermitianTolerance;
}

Operator Operator::hermitian(CMatrix entries) {
    Operator op(std::move(entries));
    if (!op.hermitian_) {
        throw InvalidArgument("Operator: matrix is not Hermitian (max |A - A^dagger| = " +
                              std::to_string(hermitian_deviation(op.entries_)) + ")");
    }
    return op;
}

Operator Operator::diagonal(const RVector& values) {
    return Operator(values.cast<Complex>().asDiagonal().toDenseMatrix());
}

Operator Operator::zero(Index dim) { return Operator(CMatrix::Zero(dim, dim)); }

StateVector Operator::apply(const StateVector& psi) const {
    if (psi.dim() != dim()) {
        throw InvalidArgument("Operator::apply: dimension mismatch " + std::to_string(dim()) +
                              " vs " + std::to_string(psi.dim()));
    }
    return StateVector(entries_ * psi.amplitudes());
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "DensityMatrix");
    if (hermitian_deviation(entries_) > kHermitianTolerance) {
        throw InvalidArgument("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace() - 1.0) > kNormTolerance) {
        throw InvalidArgument("DensityMatrix: trace " + std::to_string(trace()) + " differs from 1");
    }
    if (eigenvalues().minCoeff() < -1e-10) {
        throw InvalidArgument("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    if (!psi.is_normalized()) throw InvalidArgument("DensityMatrix::pure: state is not normalized");
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return entries_.squaredNorm();
}

RVector DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    CVector out(a.dim() * b.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    }
    return StateVector(std::move(out));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

SpectralDecomposition eig_hermitian(const Operator& h) {
    if (!h.is_hermitian()) throw InvalidArgument("eig_hermitian: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw Error("eig_hermitian: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Propagator::Propagator(const Operator& h) : spectrum_(eig_hermitian(h)) {}

CMatrix Propagator::unitary(double t) const {
    const auto& [values, vectors] = spectrum_;
    CVector phases(values.size());
    for (Index k = 0; k < values.size(); ++k) phases(k) = std::polar(1.0, -values(k) * t / hbar);
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

StateVector Propagator::evolve(double t, const StateVector& psi) const {
    if (psi.dim() != dim()) {
        throw InvalidArgument("evolve: dimension mismatch between generator (" +
                              std::to_string(dim()) + ") and state (" + std::to_string(psi.dim()) + ")");
    }
    const auto& [values, vectors] = spectrum_;
    CVector coeffs = vectors.adjoint() * psi.amplitudes();
    for (Index k = 0; k < values.size(); ++k) coeffs(k) *= std::polar(1.0, -values(k) * t / hbar);
    return StateVector(vectors * coeffs);
}

StateVector evolve_unitary(const Operator& h, double t, const StateVector& psi) {
    return Propagator(h).evolve(t, psi);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::array<Index, 2> dims, int keep) {
    const auto [d1, d2] = dims;
    if (d1 <= 0 || d2 <= 0 || d1 * d2 != rho.dim()) {
        throw InvalidArgument("partial_trace: dims " + std::to_string(d1) + "x" + std::to_string(d2) +
                              " do not match density matrix dimension " + std::to_string(rho.dim()));
    }
    if (keep != 0 && keep != 1) throw InvalidArgument("partial_trace: keep must be 0 or 1");

    const CMatrix& m = rho.matrix();
    if (keep == 0) {
        CMatrix out = CMatrix::Zero(d1, d1);
        for (Index i = 0; i < d1; ++i)
            for (Index j = 0; j < d1; ++j)
                for (Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
        return DensityMatrix(std::move(out));
    }
    CMatrix out = CMatrix::Zero(d2, d2);
    for (Index k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
    return DensityMatrix(std::move(out));
}

} // namespace emtime
