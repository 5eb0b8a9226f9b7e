#include "jacobi/dsl/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace jacobi::dsl {

const char* record_status_name(RecordStatus s) {
    switch (s) {
        case RecordStatus::pass:
            return "pass";
        case RecordStatus::fail:
            return "fail";
        case RecordStatus::not_decided:
            return "not-decided";
        case RecordStatus::error:
            return "error";
    }
    return "error";
}

Summary Report::summary() const {
    Summary s;
    for (const auto& c : checks) {
        switch (c.status) {
            case RecordStatus::pass:
                ++s.pass;
                break;
            case RecordStatus::fail:
                ++s.fail;
                break;
            case RecordStatus::not_decided:
                ++s.not_decided;
                break;
            case RecordStatus::error:
                ++s.error;
                break;
        }
    }
    return s;
}

int Report::exit_code(bool strict) const {
    const Summary s = summary();
    if (parse_error || s.error > 0) {
        return 2;
    }
    if (s.fail > 0) {
        return 1;
    }
    if (strict && s.not_decided > 0) {
        return 3;
    }
    return 0;
}

CheckRecord record_from(const std::string& name, int line, const CheckResult& r) {
    CheckRecord rec;
    rec.name = name;
    rec.line = line;
    rec.strategy = r.strategy;
    rec.witness = r.witness;
    rec.note = r.note;
    switch (r.status) {
        case Status::pass:
            rec.status = RecordStatus::pass;
            break;
        case Status::fail:
            rec.status = RecordStatus::fail;
            break;
        case Status::inconclusive:
            rec.status = RecordStatus::not_decided;
            break;
    }
    return rec;
}

std::string emit_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["version"] = kReportVersion;
    if (report.parse_error) {
        doc["parse_error"] = *report.parse_error;
    }
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["line"] = c.line;
        j["status"] = record_status_name(c.status);
        j["strategy"] = c.strategy;
        if (c.witness) {
            j["witness"] = {{"identity", c.witness->identity},
                            {"arguments", c.witness->arguments},
                            {"residue", c.witness->residue}};
        }
        if (!c.note.empty()) {
            j["note"] = c.note;
        }
        checks.push_back(std::move(j));
    }
    doc["checks"] = std::move(checks);
    const Summary s = report.summary();
    doc["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"not_decided", s.not_decided}, {"error", s.error}};
    return doc.dump(2) + "\n";
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

const char* color_of(RecordStatus s) {
    switch (s) {
        case RecordStatus::pass:
            return "\x1b[32m";
        case RecordStatus::fail:
            return "\x1b[31m";
        case RecordStatus::not_decided:
            return "\x1b[33m";
        case RecordStatus::error:
            return "\x1b[35m";
    }
    return "";
}

}  // namespace

std::string emit_text(const Report& report, bool color) {
    std::string out;
    if (report.parse_error) {
        return "parse error: " + *report.parse_error + "\n";
    }
    std::size_t wline = 4;
    std::size_t wname = 5;
    std::size_t wstatus = 6;
    for (const auto& c : report.checks) {
        wline = std::max(wline, std::to_string(c.line).size());
        wname = std::max(wname, c.name.size());
        wstatus = std::max(wstatus, std::string(record_status_name(c.status)).size());
    }
    out += pad("line", wline) + "  " + pad("check", wname) + "  " + pad("status", wstatus) + "  strategy\n";
    for (const auto& c : report.checks) {
        std::string status = pad(record_status_name(c.status), wstatus);
        if (color) {
            status = std::string(color_of(c.status)) + status + "\x1b[0m";
        }
        out += pad(std::to_string(c.line), wline) + "  " + pad(c.name, wname) + "  " + status + "  " + c.strategy + "\n";
        if (!c.note.empty()) {
            out += std::string(wline + 2, ' ') + "note: " + c.note + "\n";
        }
        if (c.witness) {
            const std::string indent(wline + 2, ' ');
            out += indent + "identity: " + c.witness->identity + "\n";
            for (const auto& a : c.witness->arguments) {
                out += indent + "  at " + a + "\n";
            }
            out += indent + "residue: " + c.witness->residue + "\n";
        }
    }
    const Summary s = report.summary();
    out += "\n" + std::to_string(s.pass) + " pass, " + std::to_string(s.fail) + " fail, " +
           std::to_string(s.not_decided) + " not-decided, " + std::to_string(s.error) + " error\n";
    return out;
}

}  // namespace jacobi::dsl
