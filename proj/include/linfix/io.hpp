#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "linfix/applications.hpp"
#include "linfix/classify.hpp"
#include "linfix/iteration.hpp"

namespace linfix::io {

/// Shortest decimal form that round-trips the exact double (printf %.17g
/// semantics with 17 significant digits).
std::string format_double(double v);

// Matrix files: first token n, then n rows of n whitespace-separated
// decimal numbers. Parse failures throw ParseError with 1-based
// line/column positions; entries must be finite.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& m);
std::string matrix_to_string(const Matrix& m);

// Graph files: first token n_nodes, then edge lines "i j w" with 1-based
// node indices, no self-loops or duplicate edges, nonnegative weights.
DirectedWeightedGraph read_graph(std::istream& in);
DirectedWeightedGraph read_graph_file(const std::filesystem::path& path);

/// Comma-separated vector literal such as "0.5,0" (CLI --x0 values).
Vector parse_vector(const std::string& text);

const char* status_name(ConvergenceStatus s);

/// Key-value classification report; certificate matrices are embedded in
/// the matrix file format between begin/end marker lines so they re-parse
/// bit-identically.
void write_classification_report(std::ostream& out, const ClassificationReport& rep,
                                 const std::string& input_label);

struct TraceOptions {
    bool include_states = true;
    /// Extra "key: value" lines appended to the verdict footer.
    std::vector<std::string> footer;
};

/// CSV trace: header line, one row per iteration with the step and
/// fixed-point residuals (state columns filled at stored iterates), then a
/// '#'-prefixed verdict footer.
void write_trace_csv(std::ostream& out, const Trajectory& tr,
                     const TraceOptions& opts = {});

/// Verdict-only key-value form of a trajectory.
void write_verdict_report(std::ostream& out, const Trajectory& tr,
                          const std::vector<std::string>& footer = {});

}  // namespace linfix::io
