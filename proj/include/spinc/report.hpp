#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinc {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct CheckReport {
    std::string check_id;
    std::string ref;  // statement being checked, in words
    nlohmann::json params = nlohmann::json::object();
    Status status = Status::skipped;
    std::string expected;
    std::string actual;
    std::string detail;  // first point of divergence on failure
    long long runtime_ms = 0;

    bool passed() const { return status == Status::pass; }
};

nlohmann::json to_json(const CheckReport& r);

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    long long ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

// Fills status/expected/actual/detail from an equality test.
void settle(CheckReport& r, bool ok, std::string expected, std::string actual,
            std::string detail = {});

bool all_passed(const std::vector<CheckReport>& rs);

}  // namespace spinc
