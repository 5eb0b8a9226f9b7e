#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "support.hpp"
#include "jacobi/dsl/interpreter.hpp"
#include "jacobi/dsl/parser.hpp"
#include "jacobi/dsl/printer.hpp"
#include "jacobi/dsl/report.hpp"

using namespace jacobi;
using namespace jacobi::dsl;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kHeader = "patch M = (x, y, z)\nalgebroid T = tangent(M)\n";

}  // namespace

TEST(Dsl, FormLiteralParsesToDegreeOne) {
    const std::string text = "patch M=(x1,x2,y1,y2,z)\nalgebroid T = tangent(M)\nform beta = -y1*dx1 - y2*dx2 + dz\n";
    Interpreter in;
    const Report r = in.run(parse(text));
    EXPECT_TRUE(r.checks.empty());
    const Form& beta = std::get<Form>(in.bindings().at("beta"));
    EXPECT_EQ(beta.degree(), 1u);
    EXPECT_EQ(beta.components().size(), 3u);
    EXPECT_EQ(beta.at(mask_of({4})), ExpPoly::one(5));
    EXPECT_EQ(beta.at(mask_of({0})), -ExpPoly::variable(5, 2));
}

TEST(Dsl, ExampleScriptRoundTrips) {
    const std::string text = read_file(JACOBI_EXAMPLES_DIR "/paper.jac");
    ASSERT_FALSE(text.empty());
    const Script s = parse(text);
    const std::string printed = print(s);
    EXPECT_TRUE(same_script(s, parse(printed)));
    EXPECT_EQ(print(parse(printed)), printed);
}

TEST(Dsl, CallNeedsAdjacentParenthesis) {
    const ExprPtr call = parse_expression("d(f)");
    EXPECT_EQ(call->kind, Expr::Kind::call);
    const ExprPtr graph = parse_expression("(sharp p)");
    EXPECT_EQ(graph->kind, Expr::Kind::graph);
    EXPECT_EQ(graph->text, "sharp");
}

TEST(Dsl, UnbalancedParenthesisReportsColumn) {
    try {
        parse("form w = d(x\n");
        FAIL() << "expected a syntax error";
    } catch (const ScriptError& e) {
        EXPECT_EQ(e.location().line, 1);
        EXPECT_GT(e.location().column, 0);
    }
    const Report r = run_script("check zero (x\n");
    ASSERT_TRUE(r.parse_error.has_value());
    EXPECT_NE(r.parse_error->find("column"), std::string::npos);
    EXPECT_EQ(r.exit_code(false), 2);
}

TEST(Dsl, UnknownIdentifierIsAnErrorRecord) {
    const Report r = run_script(std::string(kHeader) + "check zero nowhere\n");
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].status, RecordStatus::error);
    EXPECT_NE(r.checks[0].note.find("nowhere"), std::string::npos);
    EXPECT_EQ(r.exit_code(false), 2);
}

TEST(Dsl, WrongArityIsAnErrorRecord) {
    const Report r = run_script(std::string(kHeader) + "check zero d(dx, dy)\n");
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].status, RecordStatus::error);
}

TEST(Dsl, EmptyScriptPasses) {
    const Report r = run_script("");
    EXPECT_TRUE(r.checks.empty());
    EXPECT_EQ(r.exit_code(true), 0);
    const auto j = nlohmann::json::parse(emit_json(r));
    EXPECT_EQ(j["version"], kReportVersion);
    EXPECT_EQ(j["summary"]["pass"], 0);
}

TEST(Dsl, FailingJacobiCheckCarriesWitness) {
    // [dx^dy, x dx^dz] = dy^dx^dz is not zero.
    const Report r = run_script(std::string(kHeader) + "multivector p = ddx^ddy + x*ddx^ddz\ncheck jacobi T p\n");
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_EQ(r.checks[0].status, RecordStatus::fail);
    ASSERT_TRUE(r.checks[0].witness.has_value());
    EXPECT_FALSE(r.checks[0].witness->residue.empty());
    EXPECT_EQ(r.exit_code(false), 1);
}

TEST(Dsl, SinglePassingCheckSummary) {
    const Report r = run_script(std::string(kHeader) + "check zero d(d(x*y*dz))\n");
    const auto j = nlohmann::json::parse(emit_json(r));
    EXPECT_EQ(j["summary"]["pass"], 1);
    EXPECT_EQ(j["summary"]["fail"], 0);
    EXPECT_EQ(j["checks"].size(), 1u);
}

TEST(Dsl, RandomizedChecksAreDeterministic) {
    const std::string text = std::string(kHeader) + "check properties T samples=5\n";
    RunOptions o;
    o.seed = 7;
    EXPECT_EQ(emit_json(run_script(text, o)), emit_json(run_script(text, o)));
}
