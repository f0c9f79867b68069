#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "spinc/orbits.hpp"
#include "spinc/suites.hpp"

using namespace spinc;

int main(int argc, char** argv)
{
    CLI::App app{"Run verification suites and write a JSON report."};
    RunConfig cfg;
    std::string suites = "selftest";
    unsigned n_max = 0, d_cap = 0;
    app.add_option("--q", cfg.primes, "odd primes")->delimiter(',');
    app.add_option("--n-max", n_max, "largest Delta degree (even); per-prime cap by default");
    app.add_option("--trunc", cfg.trunc, "series truncation")->capture_default_str();
    app.add_option("--d-cap", d_cap, "orbit census degree; per-prime cap by default");
    app.add_option("--suite", suites, "comma list of: series, orbits, delta, classcount, dualcount, "
                                      "oracle, identity, selftest")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "report path (stdout if omitted)");
    app.add_option("--jobs", cfg.jobs, "threads (0 = OpenMP default)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return e.get_exit_code() == 0 ? rc : 2;
    }
    if (n_max)
        cfg.n_max = n_max;
    if (d_cap)
        cfg.d_cap = d_cap;
    cfg.suites.clear();
    for (auto& s : CLI::detail::split(suites, ','))
        if (!s.empty())
            cfg.suites.push_back(CLI::detail::trim_copy(s));

    if (const char* dir = std::getenv("SPINC_CENSUS_CACHE"))
        set_census_cache_dir(dir);
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (cfg.jobs > 0)
        omp_set_num_threads(cfg.jobs);

    auto checks = run_suites(cfg);
    std::string text = report_json(cfg, checks).dump(2) + "\n";
    try {
        if (cfg.out.empty())
            std::cout << text;
        else
            write_atomic(cfg.out, text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::size_t failed = 0;
    for (const auto& r : checks)
        if (r.status == Status::fail) {
            ++failed;
            std::cerr << "FAIL " << r.check_id << " " << r.params.dump() << ": " << r.detail << "\n";
        }
    std::cerr << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed ? 1 : 0;
}
