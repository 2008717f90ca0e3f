#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emtime/chronometry.hpp"
#include "emtime/clockwork.hpp"
#include "emtime/conditioning.hpp"
#include "emtime/entcoh.hpp"
#include "emtime/error.hpp"
#include "emtime/qlin.hpp"

namespace py = pybind11;
using namespace emtime;

namespace {

// Owned by the module; plain handles so no destructor runs at exit.
py::handle domain_type;
py::handle undefined_type;

// Python callers pass plain numpy arrays; the typed wrappers stay on this side.
StateVector state(const CVector& v) { return StateVector(v); }
Operator hamiltonian(const CMatrix& m) { return Operator::hermitian(m); }

LatticeSign parse_sign(const std::string& s) {
    if (s == "positive") return LatticeSign::positive;
    if (s == "negated") return LatticeSign::negated;
    throw InvalidArgument("lattice sign must be 'positive' or 'negated'");
}

// A float is a constant profile; a (times, values) pair is tabulated.
Profile profile(const py::object& obj) {
    if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj)) return Profile::constant(obj.cast<double>());
    auto [t, v] = obj.cast<std::pair<std::vector<double>, std::vector<double>>>();
    return Profile::tabulated(std::move(t), std::move(v));
}

py::dict series_dict(const EmergentTimeSeries& s) {
    py::dict d;
    d["t"] = s.t_grid;
    d["tau"] = s.tau_values;
    d["cumulative_error"] = s.cumulative_error;
    d["error_estimate"] = s.quadrature_error_estimate;
    return d;
}

} // namespace

PYBIND11_MODULE(_emtime, m) {
    m.doc() = "Emergent time from clock-system entanglement: native core.";

    // Translators run most-recent first, so bases are registered before
    // the classes derived from them.
    const py::handle error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError).ptr();
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error);
    py::register_exception<QuadratureError>(m, "QuadratureError", error);
    domain_type = py::register_exception<DomainError>(m, "DomainError", error).ptr();
    undefined_type = py::register_exception<UndefinedConditionalState>(m, "UndefinedConditionalState", domain_type).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            // Carry the offending term over as an attribute.
            const py::handle type = dynamic_cast<const UndefinedConditionalState*>(&e) ? undefined_type : domain_type;
            py::object exc = py::reinterpret_borrow<py::object>(type)(e.what());
            exc.attr("term") = e.term();
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    // Linear algebra
    m.def("evolve_unitary", [](const CMatrix& h, double t, const CVector& psi) {
        return evolve_unitary(hamiltonian(h), t, state(psi)).amplitudes();
    }, py::arg("hamiltonian"), py::arg("t"), py::arg("psi"), "exp(-i H t) psi");
    m.def("fidelity", [](const CVector& a, const CVector& b) { return fidelity(state(a), state(b)); });
    m.def("partial_trace", [](const CMatrix& rho, std::array<Index, 2> dims, int keep) {
        return partial_trace(DensityMatrix(rho), dims, keep).matrix();
    }, py::arg("rho"), py::arg("dims"), py::arg("keep"));

    // Clocks and history states
    py::class_<ClockModel>(m, "ClockModel")
        .def(py::init([](Index levels, double dt, const std::string& sign) {
            return ClockModel(levels, dt, parse_sign(sign));
        }), py::arg("levels"), py::arg("dt"), py::arg("lattice") = "positive")
        .def_property_readonly("levels", &ClockModel::levels)
        .def_property_readonly("dt", &ClockModel::dt)
        .def_property_readonly("period", &ClockModel::period)
        .def_property_readonly("energies", &ClockModel::energies)
        .def_property_readonly("hamiltonian", [](const ClockModel& c) { return c.hamiltonian().matrix(); })
        .def_property_readonly("time_states", &ClockModel::time_states)
        .def("time", &ClockModel::time)
        .def("time_state", [](const ClockModel& c, long n) { return c.time_state(n).amplitudes(); });

    py::class_<HistoryState>(m, "HistoryState")
        .def(py::init([](const ClockModel& clock, Index dim, const CVector& v) {
            return HistoryState(clock, dim, state(v));
        }), py::arg("clock"), py::arg("system_dim"), py::arg("global_vector"))
        .def_property_readonly("clock", &HistoryState::clock)
        .def_property_readonly("system_dim", &HistoryState::system_dim)
        .def_property_readonly("global_vector", [](const HistoryState& h) { return h.global_vector().amplitudes(); })
        .def("blocks", &HistoryState::blocks);

    m.def("build_history_state", [](const ClockModel& clock, const CMatrix& h, const CVector& psi0) {
        return build_history_state(clock, hamiltonian(h), state(psi0));
    }, py::arg("clock"), py::arg("hamiltonian"), py::arg("psi0"));
    m.def("constraint_residual", [](const HistoryState& hist, const CMatrix& h) {
        return constraint_residual(hist, hamiltonian(h));
    }, py::arg("history"), py::arg("hamiltonian"));

    // Conditioning
    m.def("condition_on_clock", [](const HistoryState& h, long n) {
        const ConditionalState c = condition_on_clock(h, n);
        return py::make_tuple(c.state.amplitudes(), c.weight);
    }, py::arg("history"), py::arg("n"), "(normalized state, weight)");
    m.def("conditional_states", [](const HistoryState& h) {
        const ConditionalTrajectory t = conditional_trajectory(h);
        CMatrix states(static_cast<Index>(t.size()), h.system_dim());
        for (std::size_t i = 0; i < t.size(); ++i) states.row(static_cast<Index>(i)) = t.states[i].amplitudes().transpose();
        return py::make_tuple(t.times, states, t.norms);
    }, py::arg("history"), "(times, states as rows, weights)");
    m.def("schrodinger_residual", [](const HistoryState& hist, const CMatrix& h) {
        return schrodinger_residual(conditional_trajectory(hist), hamiltonian(h));
    }, py::arg("history"), py::arg("hamiltonian"));

    // Entanglement and coherence
    m.def("entanglement_entropy", [](const CVector& psi, std::array<Index, 2> dims) {
        return entanglement_entropy(state(psi), dims);
    }, py::arg("psi"), py::arg("dims"));
    m.def("von_neumann_entropy", [](const CMatrix& rho) { return von_neumann_entropy(DensityMatrix(rho)); });
    m.def("coherence_model", &coherence_model, py::arg("E"), py::arg("c0") = 1.0, py::arg("k") = 1.0);
    m.def("dephased_qubit_state", [](Complex a, Complex b, double omega, double t, double k, double e) {
        return dephased_qubit_state(a, b, omega, t, k, e).matrix();
    }, py::arg("alpha"), py::arg("beta"), py::arg("omega"), py::arg("t"), py::arg("k"), py::arg("E"));
    m.def("l1_coherence", [](const CMatrix& rho) { return l1_coherence(DensityMatrix(rho)); });

    // Chronometry
    m.def("sr_factor", &sr_factor, py::arg("v"), py::arg("c") = 1.0);
    m.def("schwarzschild_factor", &schwarzschild_factor, py::arg("gm"), py::arg("r"), py::arg("c") = 1.0);
    m.def("emergent_time_schwarzschild", &emergent_time_schwarzschild, py::arg("gm"), py::arg("r_b"),
          py::arg("duration"), py::arg("normalization") = 1.0);
    m.def("emergent_time_exponential", &emergent_time_exponential, py::arg("hubble"), py::arg("duration"));
    m.def("emergent_time_flrw", [](const std::function<double(double)>& a, double t0, double t1, double tol) {
        const QuadratureResult r = emergent_time_flrw(a, t0, t1, tol);
        return py::make_tuple(r.value, r.error_estimate);
    }, py::arg("scale_factor"), py::arg("t0"), py::arg("t1"), py::arg("tol") = kDefaultTolerance,
       "(value, error estimate) of the integral of dt / a(t)");
    m.def("emergent_time_unified",
          [](const py::object& v, const py::object& r, double gm, double hubble, double c, double t0, double t1,
             double tol, std::size_t samples) {
              WorldlineSpec spec;
              spec.speed = profile(v);
              spec.radius = profile(r);
              spec.gm = gm;
              spec.hubble = hubble;
              spec.c = c;
              spec.t0 = t0;
              spec.t1 = t1;
              return series_dict(emergent_time_unified(spec, tol, samples));
          },
          py::arg("v") = 0.0, py::arg("r") = 1.0, py::arg("gm") = 0.0, py::arg("hubble") = 0.0, py::arg("c") = 1.0,
          py::arg("t0") = 0.0, py::arg("t1") = 1.0, py::arg("tol") = kDefaultTolerance, py::arg("samples") = 101,
          "Cumulative emergent time under motion, gravity and expansion. v and r are numbers or (times, values).");
}
