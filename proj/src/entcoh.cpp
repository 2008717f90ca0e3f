#include "emtime/entcoh.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "emtime/error.hpp"

namespace emtime {

namespace {

constexpr double kNegligibleWeight = 1e-14;

double entropy_of_weights(const RVector& weights) {
    double s = 0.0;
    for (Index i = 0; i < weights.size(); ++i) {
        const double p = weights(i);
        if (p > kNegligibleWeight) s -= p * std::log(p);
    }
    return s;
}

std::string num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

double entanglement_entropy(const StateVector& psi, std::array<Index, 2> dims) {
    const auto [d1, d2] = dims;
    if (d1 <= 0 || d2 <= 0 || d1 * d2 != psi.dim()) {
        throw InvalidArgument("entanglement_entropy: dims " + std::to_string(d1) + "x" + std::to_string(d2) +
                              " do not match state dimension " + std::to_string(psi.dim()));
    }
    if (!psi.is_normalized()) throw InvalidArgument("entanglement_entropy: state is not normalized");
    // Schmidt coefficients are the singular values of the d1 x d2 coefficient matrix.
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const CMatrix coeffs = Eigen::Map<const RowMajor>(psi.amplitudes().data(), d1, d2);
    const Eigen::JacobiSVD<CMatrix> svd(coeffs);
    return entropy_of_weights(svd.singularValues().array().square().matrix());
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_weights(rho.eigenvalues()); }

double coherence_model(double entanglement, double c0, double k) {
    if (!(entanglement >= 0.0) || !std::isfinite(entanglement)) {
        throw InvalidArgument("coherence_model: entanglement must be finite and nonnegative, got " + num(entanglement));
    }
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("coherence_model: k must be positive, got " + num(k));
    if (!(c0 > 0.0 && c0 <= 1.0)) throw InvalidArgument("coherence_model: C0 must lie in (0, 1], got " + num(c0));
    return c0 * std::exp(-k * entanglement);
}

CoherenceCurve coherence_curve(const std::vector<double>& entanglement_grid, double c0, double k) {
    CoherenceCurve curve;
    curve.entanglement = entanglement_grid;
    curve.coherence.reserve(entanglement_grid.size());
    for (double e : entanglement_grid) curve.coherence.push_back(coherence_model(e, c0, k));
    return curve;
}

DensityMatrix dephased_qubit_state(Complex alpha, Complex beta, double omega, double t, double k,
                                   double entanglement) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTolerance) {
        throw InvalidArgument("dephased_qubit_state: |alpha|^2 + |beta|^2 = " +
                              num(std::norm(alpha) + std::norm(beta)) + " differs from 1");
    }
    if (!(entanglement >= 0.0)) throw InvalidArgument("dephased_qubit_state: entanglement must be nonnegative");
    if (!(k > 0.0)) throw InvalidArgument("dephased_qubit_state: k must be positive");
    if (!std::isfinite(omega) || !std::isfinite(t)) throw InvalidArgument("dephased_qubit_state: non-finite omega or t");

    const double damping = std::exp(-k * entanglement);
    CMatrix rho(2, 2);
    rho(0, 0) = std::norm(alpha);
    rho(1, 1) = std::norm(beta);
    rho(0, 1) = alpha * std::conj(beta) * damping;
    rho(1, 0) = std::conj(alpha) * beta * damping;
    return DensityMatrix(std::move(rho));
}

double l1_coherence(const DensityMatrix& rho) {
    double sum = 0.0;
    for (Index i = 0; i < rho.dim(); ++i) {
        for (Index j = 0; j < rho.dim(); ++j) {
            if (i != j) sum += std::abs(rho(i, j));
        }
    }
    return sum;
}

TickRate parse_tick_rate(std::string_view name) {
    if (name == "exp_decay") return TickRate::exp_decay;
    if (name == "unity") return TickRate::unity;
    if (name == "zero") return TickRate::zero;
    throw InvalidArgument("unknown tick-rate function '" + std::string(name) +
                          "' (expected exp_decay, unity or zero)");
}

std::string_view to_string(TickRate rate) {
    switch (rate) {
    case TickRate::exp_decay: return "exp_decay";
    case TickRate::unity: return "unity";
    case TickRate::zero: return "zero";
    }
    return "?";
}

void ObserverProfile::validate() const {
    if (!(entanglement >= 0.0) || !std::isfinite(entanglement)) {
        throw InvalidArgument("observer " + label + ": entanglement must be finite and nonnegative");
    }
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("observer " + label + ": k must be positive");
    if (!(c0 > 0.0 && c0 <= 1.0)) throw InvalidArgument("observer " + label + ": C0 must lie in (0, 1]");
    if (tick_k && (!(*tick_k > 0.0) || !std::isfinite(*tick_k))) {
        throw InvalidArgument("observer " + label + ": tick_k must be positive");
    }
}

double ObserverProfile::tick_rate_at(double e) const {
    switch (tick_rate) {
    case TickRate::exp_decay: return std::exp(-tick_k.value_or(k) * e);
    case TickRate::unity: return 1.0;
    case TickRate::zero: return 0.0;
    }
    return 0.0;
}

std::vector<ObserverRow> three_observer_scenario(const std::array<ObserverProfile, 3>& profiles,
                                                 const ScenarioInputs& inputs) {
    for (const auto& p : profiles) p.validate();
    for (std::size_t i = 1; i < profiles.size(); ++i) {
        if (profiles[i].entanglement < profiles[i - 1].entanglement) {
            throw InvalidArgument("three_observer_scenario: entanglement must not decrease from A to C, got " +
                                  num(profiles[i - 1].entanglement) + " then " + num(profiles[i].entanglement));
        }
    }
    if (inputs.t_grid.empty()) throw InvalidArgument("three_observer_scenario: empty time grid");

    std::vector<ObserverRow> rows;
    rows.reserve(profiles.size());
    for (const auto& p : profiles) {
        ObserverRow row{p.label, p.entanglement, coherence_model(p.entanglement, p.c0, p.k),
                        p.tick_rate_at(p.entanglement), {}, {}, 0.0, 0.0};
        for (double t : inputs.t_grid) {
            const double tau = row.tick_rate * t;
            row.local_time.push_back(tau);
            row.states.push_back(dephased_qubit_state(inputs.alpha, inputs.beta, inputs.omega, tau, p.k, p.entanglement));
        }
        row.l1 = l1_coherence(row.states.front());
        row.purity = row.states.front().purity();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace emtime
