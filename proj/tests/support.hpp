#pragma once

#include <cmath>
#include <random>

#include "emtime/qlin.hpp"

namespace emtime::testing {

inline CMatrix random_hermitian(std::mt19937_64& rng, Index dim, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    CMatrix a(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
    return 0.5 * (a + a.adjoint());
}

inline StateVector random_state(std::mt19937_64& rng, Index dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
    return StateVector(v).normalized();
}

/// exp(-i H t) by scaling and squaring of the Taylor series; independent of
/// the spectral route used by the library.
inline CMatrix taylor_unitary(const CMatrix& h, double t) {
    const CMatrix a = Complex(0.0, -t) * h;
    const double n1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (n1 / std::ldexp(1.0, squarings) > 0.25) ++squarings;
    const CMatrix scaled = a / std::ldexp(1.0, squarings);
    CMatrix term = CMatrix::Identity(h.rows(), h.cols());
    CMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

} // namespace emtime::testing
