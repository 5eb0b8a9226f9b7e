#ifndef JACOBI_CHECK_HPP
#define JACOBI_CHECK_HPP

#include <optional>
#include <string>
#include <vector>

namespace jacobi {

/// inconclusive means no complete decision strategy applied; it is never a
/// disguised failure.
enum class Status { pass, fail, inconclusive };

const char* status_name(Status s);

/// A failing identity together with the arguments it was evaluated on and
/// the (nonzero) residue, all printed in the DSL syntax so they can be
/// pasted back into a script.
struct Witness {
    std::string identity;
    std::vector<std::string> arguments;
    std::string residue;
};

struct CheckResult {
    Status status = Status::pass;
    std::string strategy;
    std::optional<Witness> witness;
    std::string note;

    bool passed() const { return status == Status::pass; }
    bool failed() const { return status == Status::fail; }

    static CheckResult pass(std::string strategy, std::string note = {});
    static CheckResult fail(std::string strategy, Witness w);
    static CheckResult inconclusive(std::string strategy, std::string note);
};

/// Conjunction: the first failure wins, then the first inconclusive result;
/// otherwise a pass carrying `strategy`.
CheckResult all_of(const std::vector<CheckResult>& parts, const std::string& strategy);

}  // namespace jacobi

#endif  // JACOBI_CHECK_HPP
