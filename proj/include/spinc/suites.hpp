#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinc/report.hpp"

namespace spinc {

inline constexpr const char* kReportVersion = "1";

struct RunConfig {
    std::vector<unsigned> primes{3, 5};
    std::optional<unsigned> n_max;  // Delta degree; per-prime default cap when unset
    std::size_t trunc = 256;        // series truncation
    std::optional<unsigned> d_cap;  // orbit census degree; per-prime default cap when unset
    std::vector<std::string> suites{"selftest"};
    std::string out;                // report path; empty for stdout
    int jobs = 0;                   // 0: OpenMP default

    unsigned n_for(unsigned p) const;
    unsigned d_for(unsigned p) const;
};

std::vector<std::string> suite_names();

// Throws std::invalid_argument on a bad prime, cap or suite name.
void validate(const RunConfig& cfg);

// Checks of the named suites, in a fixed order independent of jobs.
std::vector<CheckReport> run_suites(const RunConfig& cfg);

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json report_json(const RunConfig& cfg, const std::vector<CheckReport>& checks);

// Writes path.tmp then renames over path.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace spinc
