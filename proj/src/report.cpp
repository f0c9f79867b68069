#include "spinc/report.hpp"

namespace spinc {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    }
    return "?";
}

nlohmann::json to_json(const CheckReport& r)
{
    nlohmann::json j;
    j["check_id"] = r.check_id;
    j["ref"] = r.ref;
    j["params"] = r.params;
    j["status"] = to_string(r.status);
    j["expected"] = r.expected;
    j["actual"] = r.actual;
    if (!r.detail.empty())
        j["detail"] = r.detail;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

void settle(CheckReport& r, bool ok, std::string expected, std::string actual,
            std::string detail)
{
    r.status = ok ? Status::pass : Status::fail;
    r.expected = std::move(expected);
    r.actual = std::move(actual);
    r.detail = std::move(detail);
}

bool all_passed(const std::vector<CheckReport>& rs)
{
    for (const auto& r : rs)
        if (r.status == Status::fail)
            return false;
    return true;
}

}  // namespace spinc
