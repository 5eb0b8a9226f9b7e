#ifndef JACOBI_DSL_REPORT_HPP
#define JACOBI_DSL_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "jacobi/check.hpp"

namespace jacobi::dsl {

enum class RecordStatus { pass, fail, not_decided, error };

const char* record_status_name(RecordStatus s);

struct CheckRecord {
    std::string name;
    int line = 0;
    RecordStatus status = RecordStatus::pass;
    std::string strategy;
    std::optional<Witness> witness;
    std::string note;
};

struct Summary {
    int pass = 0;
    int fail = 0;
    int not_decided = 0;
    int error = 0;
};

struct Report {
    std::vector<CheckRecord> checks;
    /// Set when the script failed to parse; checks is then empty.
    std::optional<std::string> parse_error;

    Summary summary() const;
    /// 0 all pass, 1 any fail, 2 parse or evaluation error, 3 not-decided
    /// with `strict`.  Errors take precedence over failures, failures over
    /// not-decided.
    int exit_code(bool strict) const;
};

CheckRecord record_from(const std::string& name, int line, const CheckResult& r);

inline constexpr int kReportVersion = 1;

std::string emit_json(const Report& report);
/// Aligned table; ANSI colors on the status column when `color` is set.
std::string emit_text(const Report& report, bool color);

}  // namespace jacobi::dsl

#endif  // JACOBI_DSL_REPORT_HPP
