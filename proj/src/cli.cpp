#include "emtime/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"

#include "emtime/config.hpp"
#include "emtime/error.hpp"
#include "emtime/scenario.hpp"

namespace emtime {

namespace {

namespace fs = std::filesystem;

class Diagnostics {
public:
    Diagnostics(std::ostream& err, bool color) : err_(err), color_(color) {}

    void error(const std::string& message) const { line("1;31", "error", message); }
    void note(const std::string& message) const { line("1;36", "note", message); }

private:
    void line(const char* ansi, const char* tag, const std::string& message) const {
        err_ << "emtime: ";
        if (color_) err_ << "\033[" << ansi << 'm' << tag << ":\033[0m ";
        else err_ << tag << ": ";
        err_ << message << '\n';
    }

    std::ostream& err_;
    bool color_;
};

// Paths written in a scenario file are relative to that file; paths given on
// the command line are relative to the working directory.
fs::path output_path(const std::optional<std::string>& flag, const std::optional<std::string>& configured,
                     const fs::path& scenario_file) {
    if (flag) return *flag;
    if (!configured) return {};
    const fs::path p(*configured);
    return p.is_absolute() ? p : scenario_file.parent_path() / p;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + path.string() + "' for writing");
    file << contents;
    file.close();
    if (!file) throw Error("failed writing '" + path.string() + "'");
}

struct RunOptions {
    std::string scenario_file;
    std::optional<std::string> csv;
    std::optional<std::string> svg;
    std::optional<double> tol;
    bool quiet = false;
};

int run(const RunOptions& opts, std::ostream& out, const Diagnostics& diag) {
    try {
        ScenarioConfig cfg = load_scenario(opts.scenario_file);
        if (opts.tol) cfg.tolerance = *opts.tol;

        // Everything is computed and rendered before the first byte is written.
        const ScenarioResult result = run_scenario(cfg);
        const std::string csv = to_csv(result.table);
        const fs::path csv_path = output_path(opts.csv, cfg.csv_path, opts.scenario_file);
        const fs::path svg_path = output_path(opts.svg, cfg.svg_path, opts.scenario_file);
        std::string svg;
        if (!svg_path.empty()) {
            if (!result.plot) throw Error("scenario '" + std::string(to_string(cfg.kind)) + "' has no plot");
            svg = render_svg(*result.plot);
        }

        if (csv_path.empty()) {
            out << csv << std::flush;
        } else {
            write_file(csv_path, csv);
            if (!opts.quiet) diag.note("wrote " + std::to_string(result.table.rows.size()) + " rows to " + csv_path.string());
        }
        if (!svg_path.empty()) {
            write_file(svg_path, svg);
            if (!opts.quiet) diag.note("wrote plot to " + svg_path.string());
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        diag.error(e.what());
        return exit_config;
    } catch (const InvalidArgument& e) {
        diag.error(opts.scenario_file + ": invalid scenario: " + e.what());
        return exit_config;
    } catch (const DomainError& e) {
        diag.error(e.what());
        if (!e.term().empty()) diag.note("offending term: " + e.term());
        return exit_domain;
    } catch (const std::exception& e) {
        diag.error(std::string("internal: ") + e.what());
        return exit_internal;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    const Diagnostics diag(err, color);
    CLI::App app{"Emergent-time scenarios: history states, observers, time dilation and cosmology.", "emtime"};
    app.require_subcommand(1);

    RunOptions opts;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file and emit its CSV table (and SVG plot)");
    run_cmd->add_option("scenario-file", opts.scenario_file, "YAML scenario file")->required();
    run_cmd->add_option("--csv", opts.csv, "Write the CSV table here instead of stdout");
    run_cmd->add_option("--svg", opts.svg, "Write an SVG plot here");
    run_cmd->add_option("--tol", opts.tol, "Quadrature tolerance, overrides the scenario's")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--quiet,-q", opts.quiet, "Suppress informational messages");

    // CLI11 consumes a reversed argument vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        diag.error(e.what());
        err << "Run with --help for usage.\n";
        return exit_config;
    }
    return run(opts, out, diag);
}

} // namespace emtime
