#include "emtime/scenario.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "emtime/conditioning.hpp"
#include "emtime/entcoh.hpp"

namespace emtime {

namespace {

std::vector<double> column(const std::vector<std::vector<Cell>>& rows, std::size_t j) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const double* v = std::get_if<double>(&row[j]);
        out.push_back(v ? *v : std::nan(""));
    }
    return out;
}

std::vector<double> populations(const StateVector& s) {
    std::vector<double> p(static_cast<std::size_t>(s.dim()));
    for (Index k = 0; k < s.dim(); ++k) p[static_cast<std::size_t>(k)] = std::norm(s[k]);
    return p;
}

void add_population_series(LinePlot& plot, const std::vector<double>& times, const std::vector<StateVector>& states) {
    if (states.empty()) return;
    const Index dim = states.front().dim();
    for (Index k = 0; k < dim; ++k) {
        PlotSeries s;
        s.label = "|<" + std::to_string(k) + "|psi>|^2";
        s.x = times;
        for (const auto& state : states) s.y.push_back(std::norm(state[k]));
        plot.series.push_back(std::move(s));
    }
}

} // namespace

ScenarioResult run_history(const HistoryConfig& cfg) {
    const ClockModel clock = build_fourier_clock(cfg.levels, cfg.dt, cfg.lattice);
    const HistoryState history = cfg.psi0 ? build_history_state(clock, cfg.hamiltonian, *cfg.psi0)
                                          : HistoryState(clock, cfg.hamiltonian.dim(), *cfg.global_vector);
    const ConditionalTrajectory traj = conditional_trajectory(history);
    const double constraint = constraint_residual(history, cfg.hamiltonian);

    // Interior points only; the central difference is undefined at the ends.
    std::vector<double> residual;
    if (traj.size() >= 3) residual = schrodinger_residual(traj, cfg.hamiltonian);

    // A raw global vector has no prescribed initial state; its own n = 0
    // reading stands in.
    const StateVector psi0 = cfg.psi0 ? *cfg.psi0 : traj.states.front();
    const Propagator propagator(cfg.hamiltonian);

    ScenarioResult result;
    result.table.header = {"n", "t", "weight", "fidelity_vs_oracle", "schrodinger_residual",
                           "constraint_residual_total"};
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const double fid = fidelity(traj.states[n], propagator.evolve(traj.times[n], psi0));
        Cell res;
        if (n > 0 && n + 1 < traj.size()) res = residual[n - 1];
        result.table.rows.push_back(
            {static_cast<double>(n), traj.times[n], traj.norms[n], fid, res, constraint});
    }

    LinePlot plot;
    plot.title = "Conditional populations, N = " + std::to_string(cfg.levels);
    plot.x_label = "clock reading t_n";
    plot.y_label = "population";
    add_population_series(plot, traj.times, traj.states);
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_observers(const ObserversConfig& cfg) {
    const std::vector<ObserverRow> rows = three_observer_scenario(cfg.profiles, cfg.inputs);

    ScenarioResult result;
    result.table.header = {"label", "E", "C", "tick_rate", "l1_coherence", "purity"};
    for (const auto& row : rows) {
        result.table.rows.push_back({row.label, row.entanglement, row.coherence, row.tick_rate, row.l1, row.purity});
    }

    LinePlot plot;
    plot.title = "Local coherence versus clock entanglement";
    plot.x_label = "entanglement E";
    plot.y_label = "coherence C";
    // One curve per distinct (C0, k); usually all three observers share it.
    std::map<std::pair<double, double>, bool> drawn;
    for (const auto& p : cfg.profiles) {
        if (drawn[{p.c0, p.k}]) continue;
        drawn[{p.c0, p.k}] = true;
        const CoherenceCurve curve = coherence_curve(cfg.entanglement_grid, p.c0, p.k);
        plot.series.push_back({"C0 exp(-k E), C0 = " + format_number(p.c0) + ", k = " + format_number(p.k),
                               curve.entanglement, curve.coherence});
    }
    PlotSeries markers;
    markers.label = "observers";
    markers.markers_only = true;
    for (const auto& row : rows) {
        markers.x.push_back(row.entanglement);
        markers.y.push_back(row.coherence);
    }
    plot.series.push_back(std::move(markers));
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_coherence_sweep(const CoherenceSweepConfig& cfg) {
    const CoherenceCurve curve = coherence_curve(cfg.entanglement_grid, cfg.c0, cfg.k);

    ScenarioResult result;
    result.table.header = {"E", "C", "l1_coherence", "purity"};
    for (std::size_t i = 0; i < curve.entanglement.size(); ++i) {
        const DensityMatrix rho = dephased_qubit_state(cfg.alpha, cfg.beta, 0.0, 0.0, cfg.k, curve.entanglement[i]);
        result.table.rows.push_back({curve.entanglement[i], curve.coherence[i], l1_coherence(rho), rho.purity()});
    }

    LinePlot plot;
    plot.title = "Coherence decay";
    plot.x_label = "entanglement E";
    plot.y_label = "value";
    plot.series.push_back({"C(E)", curve.entanglement, curve.coherence});
    plot.series.push_back({"l1 coherence", curve.entanglement, column(result.table.rows, 2), false, true});
    plot.series.push_back({"purity", curve.entanglement, column(result.table.rows, 3)});
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_unified(const UnifiedConfig& cfg, double tol) {
    const EmergentTimeSeries series = emergent_time_unified(cfg.worldline, tol, cfg.samples);

    ScenarioResult result;
    result.table.header = {"t", "tau", "radicand", "error_estimate"};
    for (std::size_t i = 0; i < series.t_grid.size(); ++i) {
        const double t = series.t_grid[i];
        result.table.rows.push_back(
            {t, series.tau_values[i], unified_terms(cfg.worldline, t).radicand(), series.cumulative_error[i]});
    }

    LinePlot plot;
    plot.title = "Emergent time along the worldline";
    plot.x_label = "coordinate time t";
    plot.y_label = "tau";
    plot.series.push_back({"tau(t)", series.t_grid, series.tau_values});
    std::vector<double> elapsed;
    for (double t : series.t_grid) elapsed.push_back(t - cfg.worldline.t0);
    plot.series.push_back({"t - t0", series.t_grid, elapsed, false, true});
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_cosmo(const CosmoConfig& cfg, double tol) {
    using Preset = CosmoConfig::Preset;
    std::function<double(double)> scale;
    switch (cfg.preset) {
    case Preset::constant: scale = [v = cfg.value](double) { return v; }; break;
    case Preset::exponential: scale = [h = cfg.hubble](double t) { return std::exp(h * t); }; break;
    case Preset::tabulated: scale = [&table = cfg.table](double t) { return table(t); }; break;
    }
    const std::vector<double> grid = linspace(cfg.t0, cfg.t1, cfg.samples);
    const EmergentTimeSeries series = flrw_series(scale, grid, tol);

    auto closed_form = [&](double t) -> Cell {
        switch (cfg.preset) {
        case Preset::constant: return (t - cfg.t0) / cfg.value;
        case Preset::exponential:
            return -std::exp(-cfg.hubble * cfg.t0) * std::expm1(-cfg.hubble * (t - cfg.t0)) / cfg.hubble;
        case Preset::tabulated: return {};
        }
        return {};
    };

    ScenarioResult result;
    result.table.header = {"t", "tau", "closed_form_tau_if_available", "abs_diff"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Cell exact = closed_form(grid[i]);
        Cell diff;
        if (const double* e = std::get_if<double>(&exact)) diff = std::abs(series.tau_values[i] - *e);
        result.table.rows.push_back({grid[i], series.tau_values[i], exact, diff});
    }

    LinePlot plot;
    plot.title = "Cosmological emergent time";
    plot.x_label = "cosmic time t";
    plot.y_label = "tau";
    plot.series.push_back({"integral of dt / a(t)", grid, series.tau_values});
    if (cfg.preset == Preset::exponential) {
        const double limit = std::exp(-cfg.hubble * cfg.t0) / cfg.hubble;
        plot.series.push_back({"saturation 1/H", {grid.front(), grid.back()}, {limit, limit}, false, true});
    }
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_dilation(const DilationConfig& cfg, double tol) {
    const EmergentTimeSeries series = emergent_time_unified(cfg.worldline, tol, cfg.samples);
    const ConditionalTrajectory traj = reparametrized_trajectory(cfg.hamiltonian, cfg.psi0, series);

    ScenarioResult result;
    result.table.header = {"t", "tau", "tick_rate"};
    for (Index k = 0; k < cfg.hamiltonian.dim(); ++k) result.table.header.push_back("p" + std::to_string(k));
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<Cell> row{series.t_grid[i], series.tau_values[i],
                              std::sqrt(unified_terms(cfg.worldline, series.t_grid[i]).radicand())};
        for (double p : populations(traj.states[i])) row.emplace_back(p);
        result.table.rows.push_back(std::move(row));
    }

    LinePlot plot;
    plot.title = "Populations in emergent time";
    plot.x_label = "coordinate time t";
    plot.y_label = "population";
    add_population_series(plot, traj.times, traj.states);
    result.plot = std::move(plot);
    return result;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    return std::visit(
        [&](const auto& params) -> ScenarioResult {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, HistoryConfig>) return run_history(params);
            else if constexpr (std::is_same_v<T, ObserversConfig>) return run_observers(params);
            else if constexpr (std::is_same_v<T, CoherenceSweepConfig>) return run_coherence_sweep(params);
            else if constexpr (std::is_same_v<T, UnifiedConfig>) return run_unified(params, cfg.tolerance);
            else if constexpr (std::is_same_v<T, CosmoConfig>) return run_cosmo(params, cfg.tolerance);
            else return run_dilation(params, cfg.tolerance);
        },
        cfg.params);
}

} // namespace emtime
