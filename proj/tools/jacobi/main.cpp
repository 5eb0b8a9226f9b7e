#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "jacobi/dsl/interpreter.hpp"
#include "jacobi/dsl/parser.hpp"
#include "jacobi/dsl/printer.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for Jacobi algebroid structures"};
    app.require_subcommand(1);

    std::string check_file;
    bool json = false;
    bool strict = false;
    std::uint64_t seed = 0;
    auto* check = app.add_subcommand("check", "Run the checks in a .jac script");
    check->add_option("file", check_file, "Script to run")->required();
    check->add_flag("--json", json, "Emit the versioned JSON report");
    check->add_option("--seed", seed, "Seed for randomized suites");
    check->add_flag("--strict", strict, "Exit with 3 when any check is not decided");

    std::string fmt_file;
    auto* fmt = app.add_subcommand("fmt", "Print a script in canonical form");
    fmt->add_option("file", fmt_file, "Script to format")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string& path = check->parsed() ? check_file : fmt_file;
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "jacobi: cannot read " << path << "\n";
        return 2;
    }

    if (fmt->parsed()) {
        try {
            std::cout << jacobi::dsl::print(jacobi::dsl::parse(text));
        } catch (const jacobi::dsl::ScriptError& e) {
            std::cerr << path << ": " << e.what() << "\n";
            return 2;
        }
        return 0;
    }

    const jacobi::dsl::Report report = jacobi::dsl::run_script(text, jacobi::dsl::RunOptions{seed});
    if (json) {
        std::cout << jacobi::dsl::emit_json(report);
    } else {
        std::cout << jacobi::dsl::emit_text(report, use_color());
    }
    return report.exit_code(strict);
}
