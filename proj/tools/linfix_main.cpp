// linfix: classify linear operators x -> Ax by operator-theoretic class and
// run the associated fixed-point iterations (Banach-Picard, Krasnoselskij,
// Mann) on matrices, consensus graphs, and zero-sum game couplings.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "linfix/errors.hpp"
#include "linfix/io.hpp"

namespace {

using namespace linfix;

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string iteration;
    std::string schedule = "harmonic";
    double alpha = std::nan("");
    double c = 1.0;
    std::size_t max_iter = 100000;
    double tol = std::nan("");
    std::string x0_text;
    std::uint64_t seed = 42;
    std::string format;
};

bool flag_set(double v) { return !std::isnan(v); }

StepSchedule make_schedule(const RunConfig& cfg) {
    if (cfg.schedule == "harmonic") return StepSchedule::harmonic(cfg.c);
    if (cfg.schedule == "sqrt-harmonic") return StepSchedule::sqrt_harmonic(cfg.c);
    if (cfg.schedule == "constant") {
        if (!flag_set(cfg.alpha))
            throw ParameterError("constant schedule requires --alpha");
        return StepSchedule::constant(cfg.alpha);
    }
    throw ParameterError("unknown schedule '" + cfg.schedule + "'");
}

Vector start_vector(const RunConfig& cfg, std::size_t n) {
    if (!cfg.x0_text.empty()) {
        Vector x0 = io::parse_vector(cfg.x0_text);
        if (x0.size() != n)
            throw ParameterError("--x0 has " + std::to_string(x0.size()) +
                                 " entries, expected " + std::to_string(n));
        return x0;
    }
    return seeded_unit_vector(n, cfg.seed);
}

IterationOptions iteration_options(const RunConfig& cfg) {
    IterationOptions opts;
    if (flag_set(cfg.tol)) {
        if (cfg.tol <= 0.0) throw ParameterError("--tol must be positive");
        opts.conv_tol = cfg.tol;
    }
    return opts;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw ParameterError("cannot open output file '" + cfg.output + "'");
    out << text;
}

void emit_trace(const RunConfig& cfg, const Trajectory& tr,
                const std::vector<std::string>& footer) {
    std::ostringstream ss;
    if (cfg.format == "report") {
        io::write_verdict_report(ss, tr, footer);
    } else {
        io::TraceOptions topts;
        topts.footer = footer;
        // State columns stay readable for small systems; residual columns
        // carry the analysis either way.
        topts.include_states = tr.final_state().size() <= 12;
        io::write_trace_csv(ss, tr, topts);
    }
    write_output(cfg, ss.str());
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    if (cfg.format.empty()) return;
    for (const char* a : allowed)
        if (cfg.format == a) return;
    throw ParameterError("--format '" + cfg.format + "' not valid for --command " +
                         cfg.command);
}

void cmd_classify(const RunConfig& cfg) {
    require_format(cfg, {"report"});
    if (!cfg.iteration.empty() || flag_set(cfg.alpha))
        throw ParameterError("classify takes no iteration flags");
    const Matrix a = io::read_matrix_file(cfg.input);
    const ClassificationReport rep = classify(a);
    std::ostringstream ss;
    io::write_classification_report(ss, rep, cfg.input);
    write_output(cfg, ss.str());
}

void cmd_iterate(const RunConfig& cfg) {
    require_format(cfg, {"csv", "report"});
    const Matrix a = io::read_matrix_file(cfg.input);
    const Vector x0 = start_vector(cfg, a.rows());
    const IterationOptions opts = iteration_options(cfg);

    Trajectory tr;
    if (cfg.iteration == "picard") {
        if (flag_set(cfg.alpha))
            throw ParameterError("picard takes no --alpha");
        tr = picard(a, x0, cfg.max_iter, opts);
    } else if (cfg.iteration == "krasnoselskij") {
        if (!flag_set(cfg.alpha))
            throw ParameterError("krasnoselskij requires --alpha in (0, 1)");
        tr = krasnoselskij(a, x0, cfg.alpha, cfg.max_iter, opts);
    } else if (cfg.iteration == "mann") {
        tr = mann(a, x0, make_schedule(cfg), cfg.max_iter, opts);
    } else if (cfg.iteration.empty()) {
        throw ParameterError("--command iterate requires --iteration");
    } else {
        throw ParameterError("unknown iteration '" + cfg.iteration + "'");
    }
    emit_trace(cfg, tr, {});
}

void cmd_consensus(const RunConfig& cfg) {
    require_format(cfg, {"csv", "report"});
    if (!cfg.iteration.empty() || flag_set(cfg.alpha))
        throw ParameterError("consensus runs the Mann dynamics; only schedule flags apply");
    const DirectedWeightedGraph g = io::read_graph_file(cfg.input);
    const Matrix l = laplacian(g);
    const Matrix a = consensus_operator(l);
    const Vector x0 = start_vector(cfg, a.rows());

    std::vector<std::string> footer;
    if (!is_strongly_connected(g))
        footer.push_back(
            "warning: graph is not strongly connected; convergence to consensus "
            "is not guaranteed");

    const Trajectory tr = mann(a, x0, make_schedule(cfg), cfg.max_iter,
                               iteration_options(cfg));
    const double ctol = flag_set(cfg.tol) ? cfg.tol : 1e-6;
    footer.push_back(std::string("consensus: ") +
                     (is_consensus(tr.final_state(), ctol) ? "true" : "false"));
    emit_trace(cfg, tr, footer);
}

void cmd_game(const RunConfig& cfg) {
    require_format(cfg, {"csv", "report"});
    if (!cfg.iteration.empty() || flag_set(cfg.alpha))
        throw ParameterError("game runs the Mann dynamics; only schedule flags apply");
    ZeroSumGame game{io::read_matrix_file(cfg.input)};
    const Matrix a = game_iteration_operator(game);
    const Vector x0 = start_vector(cfg, a.rows());

    std::vector<std::string> footer;
    const std::vector<Complex> vals = eigenvalues(a);
    for (std::size_t i = 0; i < vals.size(); ++i)
        footer.push_back("eigenvalue." + std::to_string(i) + ": " +
                         io::format_double(vals[i].real()) + " " +
                         io::format_double(vals[i].imag()));

    const Trajectory tr =
        mann(a, x0, make_schedule(cfg), cfg.max_iter, iteration_options(cfg));
    emit_trace(cfg, tr, footer);
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{
        "linfix: operator-theoretic classification of linear maps and "
        "fixed-point iteration analysis"};
    app.add_option("--command", cfg.command, "classify | iterate | consensus | game")
        ->required()
        ->check(CLI::IsMember({"classify", "iterate", "consensus", "game"}));
    app.add_option("--input", cfg.input,
                   "input file (matrix for classify/iterate/game, edge list for "
                   "consensus)")
        ->required();
    app.add_option("--output", cfg.output, "output file (default: stdout)");
    app.add_option("--iteration", cfg.iteration, "picard | krasnoselskij | mann");
    app.add_option("--alpha", cfg.alpha, "constant step size in (0, 1)");
    app.add_option("--schedule", cfg.schedule,
                   "constant | harmonic | sqrt-harmonic (default harmonic)");
    app.add_option("--c", cfg.c, "schedule coefficient: alpha_k = c/(k+1) or c/sqrt(k+1)");
    app.add_option("--max-iter", cfg.max_iter, "iteration budget (default 100000)");
    app.add_option("--tol", cfg.tol,
                   "convergence tolerance (iterate/game); consensus test tolerance "
                   "(consensus)");
    app.add_option("--x0", cfg.x0_text, "start vector, comma separated (e.g. 0.5,0)");
    app.add_option("--seed", cfg.seed,
                   "seed of the default pseudo-random unit start vector (default 42)");
    app.add_option("--format", cfg.format, "csv | report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }

    try {
        if (cfg.command == "classify")
            cmd_classify(cfg);
        else if (cfg.command == "iterate")
            cmd_iterate(cfg);
        else if (cfg.command == "consensus")
            cmd_consensus(cfg);
        else
            cmd_game(cfg);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 4;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return 4;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
