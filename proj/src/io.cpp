#include "linfix/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "linfix/errors.hpp"

namespace linfix::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

/// Whitespace-delimited token reader tracking 1-based line/column of the
/// token start for parse diagnostics.
class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) : in_(in) {}

    bool next(std::string& tok) {
        tok.clear();
        int c = 0;
        while ((c = in_.get()) != EOF) {
            advance(c);
            if (!std::isspace(c)) break;
        }
        if (c == EOF) return false;
        tok_line_ = line_;
        tok_col_ = col_;
        tok.push_back(static_cast<char>(c));
        while ((c = in_.peek()) != EOF && !std::isspace(c)) {
            in_.get();
            advance(c);
            tok.push_back(static_cast<char>(c));
        }
        return true;
    }

    std::size_t line() const { return tok_line_; }
    std::size_t column() const { return tok_col_; }
    std::size_t cursor_line() const { return line_; }
    std::size_t cursor_column() const { return col_; }

private:
    void advance(int c) {
        if (c == '\n') {
            ++line_;
            col_ = 0;
        } else {
            ++col_;
        }
    }

    std::istream& in_;
    std::size_t line_ = 1, col_ = 0;
    std::size_t tok_line_ = 1, tok_col_ = 1;
};

double parse_number(Tokenizer& tz, const std::string& tok, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty())
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'",
                         tz.line(), tz.column());
    if (!std::isfinite(v))
        throw ParseError(std::string(what) + " must be finite", tz.line(), tz.column());
    return v;
}

std::size_t parse_index(Tokenizer& tz, const std::string& tok, const char* what,
                        std::size_t max_value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || tok.empty() ||
        tok.find_first_of("+-.") != std::string::npos)
        throw ParseError(std::string("expected ") + what + ", got '" + tok + "'",
                         tz.line(), tz.column());
    if (v < 1 || v > max_value)
        throw ParseError(std::string(what) + " out of range", tz.line(), tz.column());
    return static_cast<std::size_t>(v);
}

constexpr std::size_t kMaxDim = 10000;

Matrix read_matrix_tokens(Tokenizer& tz) {
    std::string tok;
    if (!tz.next(tok)) throw ParseError("empty matrix input", 1, 1);
    const std::size_t n = parse_index(tz, tok, "matrix dimension", kMaxDim);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!tz.next(tok))
                throw ParseError("matrix ends early", tz.cursor_line(),
                                 tz.cursor_column() + 1);
            m(i, j) = parse_number(tz, tok, "matrix entry");
        }
    return m;
}

void expect_end(Tokenizer& tz) {
    std::string tok;
    if (tz.next(tok))
        throw ParseError("unexpected trailing data '" + tok + "'", tz.line(),
                         tz.column());
}

std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path.string() + "'", 1, 1);
    return in;
}

void write_vector_line(std::ostream& out, const char* key, const Vector& v) {
    out << key << ':';
    for (double x : v) out << ' ' << format_double(x);
    out << '\n';
}

}  // namespace

Matrix read_matrix(std::istream& in) {
    Tokenizer tz(in);
    return read_matrix_tokens(tz);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in = open_file(path);
    Tokenizer tz(in);
    Matrix m = read_matrix_tokens(tz);
    expect_end(tz);
    return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

std::string matrix_to_string(const Matrix& m) {
    std::ostringstream ss;
    write_matrix(ss, m);
    return ss.str();
}

DirectedWeightedGraph read_graph(std::istream& in) {
    Tokenizer tz(in);
    std::string tok;
    if (!tz.next(tok)) throw ParseError("empty graph input", 1, 1);
    const std::size_t n = parse_index(tz, tok, "node count", kMaxDim);
    DirectedWeightedGraph g{n, Matrix(n, n)};
    Matrix seen(n, n);
    while (tz.next(tok)) {
        const std::size_t i = parse_index(tz, tok, "edge source index", n);
        if (!tz.next(tok))
            throw ParseError("edge line ends early", tz.cursor_line(),
                             tz.cursor_column() + 1);
        const std::size_t j = parse_index(tz, tok, "edge target index", n);
        if (!tz.next(tok))
            throw ParseError("edge line ends early", tz.cursor_line(),
                             tz.cursor_column() + 1);
        const double w = parse_number(tz, tok, "edge weight");
        if (i == j) throw ParseError("self-loops are not allowed", tz.line(), tz.column());
        if (w < 0.0)
            throw ParseError("edge weights must be nonnegative", tz.line(), tz.column());
        if (seen(i - 1, j - 1) != 0.0)
            throw ParseError("duplicate edge", tz.line(), tz.column());
        seen(i - 1, j - 1) = 1.0;
        g.weights(i - 1, j - 1) = w;
    }
    return g;
}

DirectedWeightedGraph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in = open_file(path);
    return read_graph(in);
}

Vector parse_vector(const std::string& text) {
    Vector out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v))
            throw ParameterError("invalid vector literal '" + text + "'");
        out.push_back(v);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    if (out.empty()) throw ParameterError("empty vector literal");
    return out;
}

const char* status_name(ConvergenceStatus s) {
    switch (s) {
        case ConvergenceStatus::converged: return "converged";
        case ConvergenceStatus::diverged: return "diverged";
        case ConvergenceStatus::oscillating: return "oscillating";
        case ConvergenceStatus::undecided: return "undecided";
    }
    return "undecided";
}

namespace {

void write_certificate(std::ostream& out, const char* key,
                       const std::optional<Matrix>& p) {
    out << "certificate." << key << ": " << (p ? "present" : "absent") << '\n';
    if (p) {
        out << "certificate." << key << ".matrix.begin\n";
        write_matrix(out, *p);
        out << "certificate." << key << ".matrix.end\n";
    }
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_classification_report(std::ostream& out, const ClassificationReport& rep,
                                 const std::string& input_label) {
    out << "# operator classification\n";
    if (!input_label.empty()) out << "input: " << input_label << '\n';
    out << "n: " << rep.spectrum.dimension << '\n';
    out << "spectral_radius: " << format_double(rep.spectrum.spectral_radius) << '\n';
    out << "cluster_tol_abs: " << format_double(rep.spectrum.cluster_tol_abs) << '\n';
    out << "min_cluster_gap: " << format_double(rep.spectrum.min_cluster_gap) << '\n';
    out << "clusters: " << rep.spectrum.clusters.size() << '\n';
    for (std::size_t i = 0; i < rep.spectrum.clusters.size(); ++i) {
        const EigenCluster& c = rep.spectrum.clusters[i];
        out << "cluster." << i << ".re: " << format_double(c.value.real()) << '\n';
        out << "cluster." << i << ".im: " << format_double(c.value.imag()) << '\n';
        out << "cluster." << i << ".algebraic: " << c.algebraic << '\n';
        out << "cluster." << i << ".geometric: " << c.geometric << '\n';
        out << "cluster." << i << ".semisimple: " << bool_name(c.semisimple()) << '\n';
    }
    if (rep.lipschitz_in_p)
        out << "lipschitz_l2: " << format_double(rep.lipschitz_in_p->first) << '\n';
    out << "contraction: " << bool_name(rep.is_contraction) << '\n';
    if (rep.contraction_factor)
        out << "contraction_factor: " << format_double(*rep.contraction_factor) << '\n';
    out << "nonexpansive: " << bool_name(rep.is_nonexpansive) << '\n';
    out << "averaged: " << bool_name(rep.is_averaged) << '\n';
    if (rep.averagedness)
        out << "averaged_eta: " << format_double(*rep.averagedness) << '\n';
    out << "spc: " << bool_name(rep.is_spc) << '\n';
    if (rep.spc_constant)
        out << "spc_kappa: " << format_double(*rep.spc_constant) << '\n';
    out << "borderline_flags: " << rep.borderline_flags.size() << '\n';
    for (std::size_t i = 0; i < rep.borderline_flags.size(); ++i) {
        const BorderlineFlag& f = rep.borderline_flags[i];
        out << "borderline." << i << ".re: " << format_double(f.eigenvalue.real())
            << '\n';
        out << "borderline." << i << ".im: " << format_double(f.eigenvalue.imag())
            << '\n';
        out << "borderline." << i << ".distance: " << format_double(f.distance) << '\n';
        out << "borderline." << i << ".note: " << f.note << '\n';
    }
    write_certificate(out, "contraction", rep.certificate_contraction);
    write_certificate(out, "nonexpansive", rep.certificate_nonexpansive);
    write_certificate(out, "averaged", rep.certificate_averaged);
    write_certificate(out, "spc", rep.certificate_spc);
}

namespace {

void write_verdict_lines(std::ostream& out, const Trajectory& tr, const char* prefix,
                         const std::vector<std::string>& footer) {
    const ConvergenceVerdict& v = tr.verdict;
    out << prefix << "verdict: " << status_name(v.status) << '\n';
    out << prefix << "iterations: " << v.iterations_used << '\n';
    out << prefix << "final_fix_residual: " << format_double(v.final_fix_residual)
        << '\n';
    out << prefix << "norm_growth_ratio: " << format_double(v.norm_growth_ratio)
        << '\n';
    out << prefix << "rotation_proxy: " << format_double(v.rotation_proxy) << '\n';
    {
        std::ostringstream line;
        write_vector_line(line, "final_state", tr.final_state());
        out << prefix << line.str();
    }
    if (v.status == ConvergenceStatus::converged) {
        std::ostringstream line;
        write_vector_line(line, "limit", v.limit);
        out << prefix << line.str();
    }
    for (const std::string& extra : footer) out << prefix << extra << '\n';
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trajectory& tr, const TraceOptions& opts) {
    const std::size_t n = tr.final_state().size();
    out << "k";
    if (opts.include_states)
        for (std::size_t i = 0; i < n; ++i) out << ",x" << i;
    out << ",step_residual,fix_residual\n";

    std::size_t stored = 0;
    for (std::size_t k = 0; k < tr.residuals.size(); ++k) {
        while (stored + 1 < tr.iterate_steps.size() && tr.iterate_steps[stored] < k)
            ++stored;
        out << k;
        if (opts.include_states) {
            const bool have_state =
                stored < tr.iterate_steps.size() && tr.iterate_steps[stored] == k;
            for (std::size_t i = 0; i < n; ++i) {
                out << ',';
                if (have_state) out << format_double(tr.iterates[stored][i]);
            }
        }
        out << ',' << format_double(tr.residuals[k]) << ','
            << format_double(tr.fix_residuals[k]) << '\n';
    }
    write_verdict_lines(out, tr, "# ", opts.footer);
}

void write_verdict_report(std::ostream& out, const Trajectory& tr,
                          const std::vector<std::string>& footer) {
    out << "# iteration verdict\n";
    write_verdict_lines(out, tr, "", footer);
}

}  // namespace linfix::io
