#ifndef JACOBI_DSL_INTERPRETER_HPP
#define JACOBI_DSL_INTERPRETER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "jacobi/algebroid.hpp"
#include "jacobi/dirac.hpp"
#include "jacobi/dsl/ast.hpp"
#include "jacobi/dsl/report.hpp"
#include "jacobi/lift.hpp"
#include "jacobi/tensor_map.hpp"

namespace jacobi::dsl {

struct ListValue;

/// Runtime values.  Plain numbers stay rational until they meet a value
/// with a coefficient ring.
using Value = std::variant<Rational, ExpPoly, MultiVector, Form, TensorMap, GraphRelation, Patch,
                           JacobiAlgebroidData, JacobiBialgebroidData, LiftedInstance, std::shared_ptr<ListValue>>;

struct ListValue {
    std::vector<Value> items;
    bool tuple = false;
};

const char* value_type_name(const Value& v);

struct RunOptions {
    std::uint64_t seed = 0;
};

/// Executes a script statement by statement.  Declarations bind names;
/// each check appends one record.  A failing declaration appends an error
/// record and leaves the name unbound.
class Interpreter {
public:
    explicit Interpreter(RunOptions options = {}) : options_(options) {}

    Report run(const Script& script);
    /// Runs one statement, appending to `report`.
    void execute(const Statement& s, Report& report);

    /// Evaluates an expression with the current algebroid as context.
    Value evaluate(const Expr& e);
    Value evaluate(const Expr& e, const JacobiAlgebroidData* context);

    const std::map<std::string, Value>& bindings() const { return names_; }
    const JacobiAlgebroidData* current() const;

private:
    void declare(const Statement& s);
    CheckResult run_check(const Statement& s);

    Value eval(const Expr& e, const JacobiAlgebroidData* ctx);
    Value call(const Expr& e, const JacobiAlgebroidData* ctx);
    Value resolve_name(const Expr& e, const JacobiAlgebroidData* ctx);

    RunOptions options_;
    std::map<std::string, Value> names_;
    std::string current_;
};

/// Convenience: parse, run, and on parse failure return a report carrying
/// the error.
Report run_script(const std::string& text, RunOptions options = {});

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_INTERPRETER_HPP
