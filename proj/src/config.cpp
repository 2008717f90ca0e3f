#include "emtime/config.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace emtime {

ConfigError::ConfigError(const std::string& message, std::string source, int line, std::string key)
    : Error([&] {
          std::string where = source;
          if (line > 0) where += ":" + std::to_string(line);
          if (!key.empty()) where += ": " + key;
          return where + ": " + message;
      }()),
      source_(std::move(source)),
      line_(line),
      key_(std::move(key)) {}

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::history: return "history";
    case ScenarioKind::observers: return "observers";
    case ScenarioKind::dilation: return "dilation";
    case ScenarioKind::cosmo: return "cosmo";
    case ScenarioKind::unified: return "unified";
    case ScenarioKind::coherence_sweep: return "coherence-sweep";
    }
    return "?";
}

namespace {

int line_of(const YAML::Node& node) {
    if (!node.IsDefined()) return 0;
    const int line = node.Mark().line;
    return line >= 0 ? line + 1 : 0;
}

class Section {
public:
    Section(YAML::Node node, std::string path, const std::string& source)
        : node_(std::move(node)), path_(std::move(path)), source_(source) {
        if (!node_.IsMap()) fail(node_, "", "expected a mapping of keys to values");
    }

    [[noreturn]] void fail(const YAML::Node& at, const std::string& key, const std::string& message) const {
        const int line = line_of(at) ? line_of(at) : line_of(node_);
        throw ConfigError(message, source_, line, qualified(key));
    }

    std::string qualified(const std::string& key) const {
        if (key.empty()) return path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

    YAML::Node take(const std::string& key) {
        consumed_.insert(key);
        return node_[key];
    }

    YAML::Node need(const std::string& key) {
        YAML::Node n = take(key);
        if (!n) fail(node_, key, "missing required key");
        return n;
    }

    Section section(const std::string& key) { return Section(need(key), qualified(key), source_); }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        YAML::Node n = take(key);
        if (!n) {
            if (fallback) return *fallback;
            fail(node_, key, "missing required key");
        }
        return to_number(n, key);
    }

    std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) {
        YAML::Node n = take(key);
        if (!n) {
            if (fallback) return *fallback;
            fail(node_, key, "missing required key");
        }
        const double v = to_number(n, key);
        if (v < 0.0 || v != std::floor(v) || v > 1e9) fail(n, key, "expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        YAML::Node n = take(key);
        if (!n) {
            if (fallback) return *fallback;
            fail(node_, key, "missing required key");
        }
        if (!n.IsScalar()) fail(n, key, "expected a string");
        return n.as<std::string>();
    }

    double to_number(const YAML::Node& n, const std::string& key) const {
        if (!n.IsScalar()) fail(n, key, "expected a number");
        try {
            const double v = n.as<double>();
            if (!std::isfinite(v)) fail(n, key, "expected a finite number");
            return v;
        } catch (const YAML::Exception&) {
            fail(n, key, "expected a number, got '" + n.Scalar() + "'");
        }
    }

    Complex to_complex(const YAML::Node& n, const std::string& key) const {
        if (n.IsScalar()) return to_number(n, key);
        if (n.IsSequence() && n.size() == 2) return {to_number(n[0], key), to_number(n[1], key)};
        fail(n, key, "expected a number or a [re, im] pair");
    }

    std::vector<double> numbers(const YAML::Node& n, const std::string& key) const {
        if (!n.IsSequence() || n.size() == 0) fail(n, key, "expected a nonempty list of numbers");
        std::vector<double> out;
        for (const auto& item : n) out.push_back(to_number(item, key));
        return out;
    }

    CVector complex_vector(const YAML::Node& n, const std::string& key) const {
        if (!n.IsSequence() || n.size() == 0) fail(n, key, "expected a nonempty list of amplitudes");
        CVector out(static_cast<Index>(n.size()));
        for (std::size_t i = 0; i < n.size(); ++i) out(static_cast<Index>(i)) = to_complex(n[i], key);
        return out;
    }

    // Turns InvalidArgument raised while building domain types into a
    // ConfigError located at `at`.
    template <class Fn>
    auto guard(const YAML::Node& at, const std::string& key, Fn&& fn) const {
        try {
            return fn();
        } catch (const InvalidArgument& e) {
            fail(at, key, e.what());
        }
    }

    void finish() const {
        for (const auto& kv : node_) {
            const std::string key = kv.first.as<std::string>();
            if (!consumed_.count(key)) fail(kv.first, key, "unknown key");
        }
    }

    const YAML::Node& node() const noexcept { return node_; }
    const std::string& source() const noexcept { return source_; }

private:
    YAML::Node node_;
    std::string path_;
    const std::string& source_;
    std::set<std::string> consumed_;
};

struct ParseContext {
    std::optional<std::uint64_t> seed;
    int seed_line = 0;
};

std::vector<double> parse_grid(Section& parent, const std::string& key, std::optional<std::vector<double>> fallback) {
    if (!parent.has(key)) {
        if (fallback) return *fallback;
        parent.need(key);
    }
    YAML::Node n = parent.take(key);
    if (n.IsSequence()) return parent.numbers(n, key);
    Section grid(n, parent.qualified(key), parent.source());
    const double start = grid.number("start");
    const double stop = grid.number("stop");
    const std::size_t points = grid.count("points");
    grid.finish();
    if (points < 2) grid.fail(n, "points", "need at least 2 points");
    if (!(stop > start)) grid.fail(n, "stop", "must exceed start");
    return linspace(start, stop, points);
}

Operator parse_hamiltonian(Section& parent) {
    YAML::Node node = parent.need("hamiltonian");
    Section h(node, parent.qualified("hamiltonian"), parent.source());
    const bool diag = h.has("diagonal");
    const bool full = h.has("matrix");
    if (diag == full) h.fail(node, "", "give exactly one of 'diagonal' or 'matrix'");
    Operator op;
    if (diag) {
        YAML::Node d = h.take("diagonal");
        const std::vector<double> values = h.numbers(d, "diagonal");
        op = Operator::diagonal(Eigen::Map<const RVector>(values.data(), static_cast<Index>(values.size())));
    } else {
        YAML::Node m = h.take("matrix");
        if (!m.IsSequence() || m.size() == 0) h.fail(m, "matrix", "expected a list of rows");
        const Index dim = static_cast<Index>(m.size());
        CMatrix entries(dim, dim);
        for (Index i = 0; i < dim; ++i) {
            const CVector row = h.complex_vector(m[static_cast<std::size_t>(i)], "matrix");
            if (row.size() != dim) h.fail(m[static_cast<std::size_t>(i)], "matrix", "matrix must be square");
            entries.row(i) = row.transpose();
        }
        op = h.guard(m, "matrix", [&] { return Operator::hermitian(entries); });
    }
    h.finish();
    return op;
}

StateVector parse_state(Section& parent, const std::string& key, Index dim, const ParseContext& ctx) {
    YAML::Node n = parent.need(key);
    if (n.IsScalar() && n.Scalar() == "random") {
        if (!ctx.seed) parent.fail(n, key, "'random' requires a top-level 'seed'");
        std::mt19937_64 rng(*ctx.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        CVector v(dim);
        for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
        return StateVector(v).normalized();
    }
    const CVector v = parent.complex_vector(n, key);
    if (v.size() != dim) {
        parent.fail(n, key, "has dimension " + std::to_string(v.size()) + ", expected " + std::to_string(dim));
    }
    StateVector s = parent.guard(n, key, [&] { return StateVector(v); });
    if (!s.is_normalized()) parent.fail(n, key, "state is not normalized (norm " + std::to_string(s.norm()) + ")");
    return s;
}

Profile parse_profile(Section& parent, const std::string& key, double fallback) {
    if (!parent.has(key)) return Profile::constant(fallback);
    YAML::Node n = parent.take(key);
    if (n.IsScalar()) return Profile::constant(parent.to_number(n, key));
    Section table(n, parent.qualified(key), parent.source());
    YAML::Node times = table.need("times");
    YAML::Node values = table.need("values");
    std::vector<double> t = table.numbers(times, "times");
    std::vector<double> v = table.numbers(values, "values");
    table.finish();
    return table.guard(n, "", [&] { return Profile::tabulated(std::move(t), std::move(v)); });
}

WorldlineSpec parse_worldline(Section& parent) {
    YAML::Node node = parent.need("worldline");
    Section w(node, parent.qualified("worldline"), parent.source());
    WorldlineSpec spec;
    spec.speed = parse_profile(w, "v", 0.0);
    spec.radius = parse_profile(w, "r", 1.0);
    spec.gm = w.number("GM", 0.0);
    spec.hubble = w.number("H", 0.0);
    spec.c = w.number("c", 1.0);
    spec.t0 = w.number("t0", 0.0);
    spec.t1 = w.number("t1");
    w.finish();
    if (!(spec.c > 0.0)) w.fail(node, "c", "speed of light must be positive");
    if (spec.gm < 0.0) w.fail(node, "GM", "must be nonnegative");
    if (spec.hubble < 0.0) w.fail(node, "H", "must be nonnegative");
    if (spec.t1 < spec.t0) w.fail(node, "t1", "must not precede t0");
    for (const auto& [name, profile] : {std::pair{"v", &spec.speed}, std::pair{"r", &spec.radius}}) {
        if (!profile->is_constant() && (profile->knots().front() > spec.t0 || profile->knots().back() < spec.t1)) {
            w.fail(node, name, "tabulation does not cover [t0, t1]");
        }
    }
    return spec;
}

std::size_t parse_samples(Section& s) {
    const std::size_t n = s.count("samples", 101);
    if (n < 2) s.fail(s.node()["samples"], "samples", "need at least 2 samples");
    return n;
}

HistoryConfig parse_history(Section& s, const ParseContext& ctx) {
    HistoryConfig cfg;
    YAML::Node clock_node = s.need("clock");
    Section clock(clock_node, s.qualified("clock"), s.source());
    const std::size_t levels = clock.count("levels");
    cfg.dt = clock.number("dt");
    const std::string lattice = clock.text("lattice", "positive");
    clock.finish();
    if (levels < 2) clock.fail(clock_node, "levels", "need at least 2 clock levels");
    if (!(cfg.dt > 0.0)) clock.fail(clock_node, "dt", "must be positive");
    if (lattice == "positive") cfg.lattice = LatticeSign::positive;
    else if (lattice == "negated") cfg.lattice = LatticeSign::negated;
    else clock.fail(clock_node, "lattice", "expected 'positive' or 'negated'");
    cfg.levels = static_cast<Index>(levels);

    cfg.hamiltonian = parse_hamiltonian(s);
    const bool has_psi = s.has("psi0");
    const bool has_global = s.has("global_vector");
    if (has_psi == has_global) s.fail(s.node(), "", "give exactly one of 'psi0' or 'global_vector'");
    if (has_psi) {
        cfg.psi0 = parse_state(s, "psi0", cfg.hamiltonian.dim(), ctx);
    } else {
        cfg.global_vector = parse_state(s, "global_vector", cfg.levels * cfg.hamiltonian.dim(), ctx);
    }
    return cfg;
}

ObserverProfile parse_observer(const YAML::Node& node, const std::string& path, const std::string& source) {
    Section o(node, path, source);
    ObserverProfile p;
    p.label = o.text("label");
    p.entanglement = o.number("E");
    p.k = o.number("k", 1.0);
    p.c0 = o.number("C0", 1.0);
    const std::string rate = o.text("tick_rate", "exp_decay");
    if (o.has("tick_k")) p.tick_k = o.number("tick_k");
    o.finish();
    p.tick_rate = o.guard(node, "tick_rate", [&] { return parse_tick_rate(rate); });
    o.guard(node, "", [&] {
        p.validate();
        return 0;
    });
    return p;
}

ObserversConfig parse_observers(Section& s) {
    ObserversConfig cfg;
    YAML::Node list = s.need("profiles");
    if (!list.IsSequence() || list.size() != 3) s.fail(list, "profiles", "expected exactly 3 observer profiles");
    for (std::size_t i = 0; i < 3; ++i) {
        cfg.profiles[i] = parse_observer(list[i], s.qualified("profiles[" + std::to_string(i) + "]"), s.source());
        if (i > 0 && !(cfg.profiles[i].entanglement > cfg.profiles[i - 1].entanglement)) {
            s.fail(list[i], "profiles[" + std::to_string(i) + "].E",
                   "entanglement must strictly increase from A to C (got " +
                       std::to_string(cfg.profiles[i - 1].entanglement) + " then " +
                       std::to_string(cfg.profiles[i].entanglement) + ")");
        }
    }
    if (s.has("alpha")) cfg.inputs.alpha = s.to_complex(s.take("alpha"), "alpha");
    if (s.has("beta")) cfg.inputs.beta = s.to_complex(s.take("beta"), "beta");
    if (std::abs(std::norm(cfg.inputs.alpha) + std::norm(cfg.inputs.beta) - 1.0) > kNormTolerance) {
        s.fail(s.node(), "beta", "|alpha|^2 + |beta|^2 must equal 1");
    }
    cfg.inputs.omega = s.number("omega", 1.0);
    cfg.inputs.t_grid = parse_grid(s, "times", std::vector<double>{0.0});
    const double e_max = std::max(5.0, 1.25 * cfg.profiles[2].entanglement);
    cfg.entanglement_grid = parse_grid(s, "entanglement_grid", linspace(0.0, e_max, 101));
    return cfg;
}

CoherenceSweepConfig parse_coherence_sweep(Section& s) {
    CoherenceSweepConfig cfg;
    cfg.c0 = s.number("C0", 1.0);
    cfg.k = s.number("k", 1.0);
    if (s.has("alpha")) cfg.alpha = s.to_complex(s.take("alpha"), "alpha");
    if (s.has("beta")) cfg.beta = s.to_complex(s.take("beta"), "beta");
    if (!(cfg.k > 0.0)) s.fail(s.node()["k"], "k", "must be positive");
    if (!(cfg.c0 > 0.0 && cfg.c0 <= 1.0)) s.fail(s.node()["C0"], "C0", "must lie in (0, 1]");
    if (std::abs(std::norm(cfg.alpha) + std::norm(cfg.beta) - 1.0) > kNormTolerance) {
        s.fail(s.node(), "beta", "|alpha|^2 + |beta|^2 must equal 1");
    }
    cfg.entanglement_grid = parse_grid(s, "entanglement_grid", linspace(0.0, 5.0, 101));
    for (double e : cfg.entanglement_grid) {
        if (e < 0.0) s.fail(s.node()["entanglement_grid"], "entanglement_grid", "entanglement must be nonnegative");
    }
    return cfg;
}

CosmoConfig parse_cosmo(Section& s) {
    CosmoConfig cfg;
    YAML::Node node = s.need("scale_factor");
    Section a(node, s.qualified("scale_factor"), s.source());
    const std::string preset = a.text("preset");
    if (preset == "constant") {
        cfg.preset = CosmoConfig::Preset::constant;
        cfg.value = a.number("value", 1.0);
    } else if (preset == "exponential") {
        cfg.preset = CosmoConfig::Preset::exponential;
        cfg.hubble = a.number("H");
        if (!(cfg.hubble > 0.0)) a.fail(node, "H", "must be positive");
    } else if (preset == "tabulated") {
        cfg.preset = CosmoConfig::Preset::tabulated;
        YAML::Node times = a.need("times");
        YAML::Node values = a.need("values");
        std::vector<double> t = a.numbers(times, "times");
        std::vector<double> v = a.numbers(values, "values");
        cfg.table = a.guard(node, "", [&] { return Profile::tabulated(std::move(t), std::move(v)); });
    } else {
        a.fail(node, "preset", "expected 'constant', 'exponential' or 'tabulated', got '" + preset + "'");
    }
    a.finish();
    cfg.t0 = s.number("t0", 0.0);
    cfg.t1 = s.number("t1");
    if (!(cfg.t1 > cfg.t0)) s.fail(s.node()["t1"], "t1", "must exceed t0");
    if (cfg.preset == CosmoConfig::Preset::tabulated &&
        (cfg.table.knots().front() > cfg.t0 || cfg.table.knots().back() < cfg.t1)) {
        a.fail(node, "times", "tabulation does not cover [t0, t1]");
    }
    cfg.samples = parse_samples(s);
    return cfg;
}

UnifiedConfig parse_unified(Section& s) {
    UnifiedConfig cfg;
    cfg.worldline = parse_worldline(s);
    cfg.samples = parse_samples(s);
    return cfg;
}

DilationConfig parse_dilation(Section& s, const ParseContext& ctx) {
    DilationConfig cfg;
    cfg.hamiltonian = parse_hamiltonian(s);
    cfg.psi0 = parse_state(s, "psi0", cfg.hamiltonian.dim(), ctx);
    cfg.worldline = parse_worldline(s);
    cfg.samples = parse_samples(s);
    return cfg;
}

ScenarioKind parse_kind(const std::string& name, const Section& root, const YAML::Node& at) {
    for (ScenarioKind k : {ScenarioKind::history, ScenarioKind::observers, ScenarioKind::dilation, ScenarioKind::cosmo,
                           ScenarioKind::unified, ScenarioKind::coherence_sweep}) {
        if (name == to_string(k)) return k;
    }
    root.fail(at, "scenario",
              "unknown scenario kind '" + name + "' (expected history, observers, dilation, cosmo, unified or coherence-sweep)");
}

} // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::string& source_name) {
    YAML::Node root_node;
    try {
        root_node = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, source_name, e.mark.line >= 0 ? e.mark.line + 1 : 0, "");
    }
    if (!root_node || root_node.IsNull()) throw ConfigError("empty scenario file", source_name, 0, "");

    try {
        Section root(root_node, "", source_name);
        ScenarioConfig cfg;
        YAML::Node kind_node = root.need("scenario");
        cfg.kind = parse_kind(root.text("scenario"), root, kind_node);

        ParseContext ctx;
        if (root.has("seed")) {
            YAML::Node seed = root.take("seed");
            const double v = root.to_number(seed, "seed");
            if (v < 0.0 || v != std::floor(v) || v > 9.007199254740992e15) {
                root.fail(seed, "seed", "expected a nonnegative integer");
            }
            cfg.seed = static_cast<std::uint64_t>(v);
            ctx.seed = cfg.seed;
        }
        if (root.has("tolerance")) {
            cfg.tolerance = root.number("tolerance");
            if (!(cfg.tolerance > 0.0)) root.fail(root_node["tolerance"], "tolerance", "must be positive");
        }
        if (root.has("output")) {
            Section out = root.section("output");
            if (out.has("csv")) cfg.csv_path = out.text("csv");
            if (out.has("svg")) cfg.svg_path = out.text("svg");
            out.finish();
        }

        const std::string section_name(to_string(cfg.kind));
        Section params = root.section(section_name);
        switch (cfg.kind) {
        case ScenarioKind::history: cfg.params = parse_history(params, ctx); break;
        case ScenarioKind::observers: cfg.params = parse_observers(params); break;
        case ScenarioKind::dilation: cfg.params = parse_dilation(params, ctx); break;
        case ScenarioKind::cosmo: cfg.params = parse_cosmo(params); break;
        case ScenarioKind::unified: cfg.params = parse_unified(params); break;
        case ScenarioKind::coherence_sweep: cfg.params = parse_coherence_sweep(params); break;
        }
        params.finish();
        root.finish();
        return cfg;
    } catch (const YAML::Exception& e) {
        throw ConfigError(e.msg, source_name, e.mark.line >= 0 ? e.mark.line + 1 : 0, "");
    }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file", path.string(), 0, "");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

} // namespace emtime
