#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "linfix/errors.hpp"
#include "linfix/io.hpp"
#include "support/fixtures.hpp"
#include "support/test_support.hpp"

using namespace linfix;

TEST_CASE("format_double round-trips doubles exactly") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        double v = support::gaussian(rng) * std::pow(10.0, trial % 30 - 15);
        if (trial == 0) v = 0.0;
        const std::string s = io::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("matrix round-trip is bit identical") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = support::random_matrix(1 + trial % 5, rng, 3.0);
        std::stringstream ss;
        io::write_matrix(ss, m);
        CHECK(io::read_matrix(ss) == m);
    }
}

TEST_CASE("matrix parse diagnostics carry positions") {
    {
        std::istringstream in("2\n1 2\n3 oops\n");
        try {
            (void)io::read_matrix(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(e.column == 3);
        }
    }
    {
        std::istringstream in("2\n1 2 3\n");
        CHECK_THROWS_AS((void)io::read_matrix(in), ParseError);
    }
    {
        std::istringstream in("2\n1 2 3 inf\n");
        CHECK_THROWS_AS((void)io::read_matrix(in), ParseError);  // non-finite entry
    }
    {
        std::istringstream in("");
        CHECK_THROWS_AS((void)io::read_matrix(in), ParseError);
    }
}

TEST_CASE("graph parsing") {
    std::istringstream in("3\n1 2 0.5\n1 3 0.5\n2 3 1\n3 1 1\n");
    const DirectedWeightedGraph g = io::read_graph(in);
    CHECK(laplacian(g) == support::three_node_laplacian());

    std::istringstream loop("2\n1 1 1\n");
    CHECK_THROWS_AS((void)io::read_graph(loop), ParseError);
    std::istringstream dup("2\n1 2 1\n1 2 2\n");
    CHECK_THROWS_AS((void)io::read_graph(dup), ParseError);
    std::istringstream range("2\n1 3 1\n");
    CHECK_THROWS_AS((void)io::read_graph(range), ParseError);
    std::istringstream neg("2\n1 2 -1\n");
    CHECK_THROWS_AS((void)io::read_graph(neg), ParseError);
}

TEST_CASE("vector literals") {
    const Vector v = io::parse_vector("0.5,0");
    CHECK(v == Vector{0.5, 0.0});
    CHECK(io::parse_vector("-1") == Vector{-1.0});
    CHECK_THROWS_AS((void)io::parse_vector(""), ParameterError);
    CHECK_THROWS_AS((void)io::parse_vector("1,,2"), ParameterError);
    CHECK_THROWS_AS((void)io::parse_vector("1,abc"), ParameterError);
}

TEST_CASE("classification report embeds a re-parsable certificate") {
    const Matrix a = Matrix::identity(3) - support::three_node_laplacian();
    const ClassificationReport rep = classify(a);
    std::ostringstream out;
    io::write_classification_report(out, rep, "demo");
    const std::string text = out.str();

    CHECK(text.find("spc: true\n") != std::string::npos);
    CHECK(text.find("contraction: false\n") != std::string::npos);

    const std::string begin = "certificate.spc.matrix.begin\n";
    const std::string end = "certificate.spc.matrix.end\n";
    const auto b = text.find(begin);
    const auto e = text.find(end);
    REQUIRE(b != std::string::npos);
    REQUIRE(e != std::string::npos);
    std::istringstream block(text.substr(b + begin.size(), e - b - begin.size()));
    REQUIRE(rep.certificate_spc.has_value());
    CHECK(io::read_matrix(block) == *rep.certificate_spc);
}

TEST_CASE("trace csv layout") {
    const Trajectory tr = picard(0.5 * Matrix::identity(2), {1.0, 1.0}, 200);
    std::ostringstream out;
    io::TraceOptions topts;
    topts.footer = {"note: test"};
    io::write_trace_csv(out, tr, topts);
    const std::string text = out.str();
    CHECK(text.rfind("k,x0,x1,step_residual,fix_residual\n", 0) == 0);
    CHECK(text.find("# verdict: converged\n") != std::string::npos);
    CHECK(text.find("# note: test\n") != std::string::npos);

    std::size_t rows = 0;
    for (char ch : text)
        if (ch == '\n') ++rows;
    // header + one row per recorded residual + footer lines
    CHECK(rows >= tr.residuals.size() + 2);
}

TEST_CASE("verdict report layout") {
    const Trajectory tr = picard(0.5 * Matrix::identity(2), {1.0, 1.0}, 200);
    std::ostringstream out;
    io::write_verdict_report(out, tr);
    const std::string text = out.str();
    CHECK(text.find("verdict: converged\n") != std::string::npos);
    CHECK(text.find("limit:") != std::string::npos);
    CHECK(text.find("final_fix_residual:") != std::string::npos);
}
