#include "jacobi/check.hpp"

namespace jacobi {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::fail:
            return "fail";
        case Status::inconclusive:
            return "not-decided";
    }
    return "unknown";
}

CheckResult CheckResult::pass(std::string strategy, std::string note) {
    CheckResult r;
    r.status = Status::pass;
    r.strategy = std::move(strategy);
    r.note = std::move(note);
    return r;
}

CheckResult CheckResult::fail(std::string strategy, Witness w) {
    CheckResult r;
    r.status = Status::fail;
    r.strategy = std::move(strategy);
    r.witness = std::move(w);
    return r;
}

CheckResult CheckResult::inconclusive(std::string strategy, std::string note) {
    CheckResult r;
    r.status = Status::inconclusive;
    r.strategy = std::move(strategy);
    r.note = std::move(note);
    return r;
}

CheckResult all_of(const std::vector<CheckResult>& parts, const std::string& strategy) {
    for (const auto& p : parts) {
        if (p.status == Status::fail) {
            return p;
        }
    }
    for (const auto& p : parts) {
        if (p.status == Status::inconclusive) {
            return p;
        }
    }
    std::string note;
    for (const auto& p : parts) {
        if (!p.note.empty()) {
            note = p.note;
        }
    }
    return CheckResult::pass(strategy, note);
}

}  // namespace jacobi
