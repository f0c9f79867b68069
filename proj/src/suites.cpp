#include "spinc/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "spinc/classcount.hpp"
#include "spinc/delta.hpp"
#include "spinc/dualcount.hpp"
#include "spinc/oracle.hpp"
#include "spinc/orbits.hpp"
#include "spinc/series.hpp"

namespace spinc {

unsigned RunConfig::n_for(unsigned p) const { return n_max ? *n_max : default_degree_cap(p); }
unsigned RunConfig::d_for(unsigned p) const { return d_cap ? *d_cap : default_degree_cap(p); }

std::vector<std::string> suite_names()
{
    return {"series", "orbits", "delta", "classcount", "dualcount", "oracle", "identity", "selftest"};
}

void validate(const RunConfig& cfg)
{
    if (cfg.primes.empty())
        throw std::invalid_argument("no primes given");
    for (unsigned p : cfg.primes) {
        if (p < 3 || !is_prime(p))
            throw std::invalid_argument("q = " + std::to_string(p) + " is not an odd prime");
        unsigned cap = default_degree_cap(p);
        if (cfg.n_for(p) % 2 || cfg.n_for(p) > cap)
            throw std::invalid_argument("--n-max must be even and at most " + std::to_string(cap) +
                                        " for q = " + std::to_string(p));
        if (cfg.d_for(p) < 2 || cfg.d_for(p) > cap)
            throw std::invalid_argument("--d-cap must lie in [2, " + std::to_string(cap) +
                                        "] for q = " + std::to_string(p));
    }
    if (cfg.trunc < 8 || cfg.trunc > 4096)
        throw std::invalid_argument("--trunc must lie in [8, 4096]");
    if (cfg.jobs < 0)
        throw std::invalid_argument("--jobs must be nonnegative");
    if (cfg.suites.empty())
        throw std::invalid_argument("no suite given");
    auto names = suite_names();
    for (const auto& s : cfg.suites)
        if (std::find(names.begin(), names.end(), s) == names.end())
            throw std::invalid_argument("unknown suite '" + s + "'");
}

namespace {

using Task = std::function<std::vector<CheckReport>()>;

template <class F>
void one(std::vector<Task>& ts, F f)
{
    ts.push_back([f] { return std::vector<CheckReport>{f()}; });
}

bool oracle_prime(unsigned p) { return p == 3 || p == 5; }

void series_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (const auto& name : series_identity_names())
        for (int u : {1, -1})
            one(ts, [=, T = cfg.trunc] { return verify_series_identity(name, u, T); });
}

void orbits_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (unsigned p : cfg.primes) {
        unsigned D = cfg.d_for(p);
        for (auto g : {OrbitGroup::gamma, OrbitGroup::gamma1, OrbitGroup::alpha_gamma,
                       OrbitGroup::alpha_gamma1, OrbitGroup::alpha_beta_gamma})
            one(ts, [=] { return census_completeness(orbit_census_cached(p, g, D)); });
        for (const auto& tag : orbit_product_tags())
            one(ts, [=] { return verify_orbit_products(p, tag, D); });
        one(ts, [=] { return verify_J_kind(p, std::min(D, 4u)); });
    }
}

void delta_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (unsigned p : cfg.primes) {
        unsigned n = std::min(cfg.n_for(p), 8u);
        for (unsigned N = 0; N <= n; N += 2) {
            one(ts, [=] { return verify_class_counts(p, N); });
            one(ts, [=] { return verify_signed_sums(p, N); });
            if (N >= 4) {
                one(ts, [=] { return verify_beta_invariance(p, N); });
                for (int e : {0, 1})
                    for (auto c : {DeltaClass::recip_fixed, DeltaClass::recip0_fixed,
                                   DeltaClass::beta_gamma_fixed}) {
                        if (c == DeltaClass::beta_gamma_fixed && e == 1)
                            continue;
                        one(ts, [=] { return verify_enumeration_agreement(p, e, N, c); });
                    }
            }
            if (p == 3 && N >= 2)
                for (int e : {0, 1})
                    one(ts, [=] { return verify_torsors(p, e, N); });
        }
    }
}

void classcount_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    one(ts, [] { return verify_partition_stats(40); });
    for (unsigned p : cfg.primes) {
        unsigned n = std::min(cfg.n_for(p), 8u);
        for (unsigned N = 2; N <= n; N += 2) {
            one(ts, [=] { return verify_f_totals(p, N); });
            one(ts, [=] { return verify_double_a(p, N); });
        }
        one(ts, [=] { return alpha_check(p, n, AlphaMethod::direct); });
        if (cfg.n_for(p) > n || p == 3)
            one(ts, [=, m = cfg.n_for(p)] { return alpha_check(p, m, AlphaMethod::census_dp); });
    }
}

void dualcount_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (unsigned p : cfg.primes) {
        for (unsigned N = 0; N <= cfg.n_for(p); N += 2)
            one(ts, [=] { return verify_H_modes(p, N); });
        one(ts, [=, n = cfg.n_for(p)] { return ahat_series_check(p, n); });
    }
}

void oracle_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (unsigned p : cfg.primes) {
        if (!oracle_prime(p))
            continue;
        for (unsigned N : {2u, 4u}) {
            ts.push_back([=] { return compare_counts(N, p); });
            for (auto t : {WittType::plus, WittType::minus})
                one(ts, [=] { return verify_28a(N, p, t); });
        }
    }
}

void identity_tasks(const RunConfig& cfg, std::vector<Task>& ts)
{
    for (unsigned p : cfg.primes) {
        unsigned n = std::min(cfg.n_for(p), 8u);
        one(ts, [=] {
            auto r = final_identity(p, n, EnumMethod::direct);
            r.check_id = "identity.ahat_equals_alpha_direct";
            return r;
        });
        if (!oracle_prime(p))
            continue;
        for (unsigned N : {2u, 4u})
            ts.push_back([=] {
                std::vector<CheckReport> out;
                for (auto& r : compare_counts(N, p))
                    if (r.check_id == "oracle.class_count_difference") {
                        r.check_id = "identity.oracle_difference_equals_alpha";
                        out.push_back(r);
                    }
                return out;
            });
    }
    for (unsigned p : cfg.primes)
        one(ts, [=, n = cfg.n_for(p)] {
            auto r = final_identity(p, n, EnumMethod::census_dp);
            r.check_id = "ahat_equals_alpha";
            return r;
        });
}

std::vector<std::string> expand_suites(const std::vector<std::string>& names)
{
    std::vector<std::string> out;
    auto add = [&](const std::string& s) {
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    };
    for (const auto& s : names) {
        if (s == "selftest") {
            for (const auto& t : suite_names())
                if (t != "selftest")
                    add(t);
        } else {
            add(s);
        }
    }
    return out;
}

}  // namespace

std::vector<CheckReport> run_suites(const RunConfig& cfg)
{
    validate(cfg);
    std::vector<Task> ts;
    for (const auto& s : expand_suites(cfg.suites)) {
        if (s == "series") series_tasks(cfg, ts);
        else if (s == "orbits") orbits_tasks(cfg, ts);
        else if (s == "delta") delta_tasks(cfg, ts);
        else if (s == "classcount") classcount_tasks(cfg, ts);
        else if (s == "dualcount") dualcount_tasks(cfg, ts);
        else if (s == "oracle") oracle_tasks(cfg, ts);
        else if (s == "identity") identity_tasks(cfg, ts);
    }
    std::vector<std::vector<CheckReport>> slots(ts.size());
    int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t i = 0; i < ts.size(); ++i) {
        try {
            slots[i] = ts[i]();
        } catch (const std::exception& e) {
            CheckReport r;
            r.check_id = "error";
            r.status = Status::fail;
            r.detail = e.what();
            slots[i] = {r};
        }
    }
    std::vector<CheckReport> out;
    for (auto& s : slots)
        for (auto& r : s)
            out.push_back(std::move(r));
    return out;
}

nlohmann::json config_json(const RunConfig& cfg)
{
    nlohmann::json n = nlohmann::json::object(), d = nlohmann::json::object();
    for (unsigned p : cfg.primes) {
        n[std::to_string(p)] = cfg.n_for(p);
        d[std::to_string(p)] = cfg.d_for(p);
    }
    return {{"q", cfg.primes}, {"n_max", n}, {"d_cap", d}, {"trunc", cfg.trunc},
            {"suites", cfg.suites}};
}

nlohmann::json report_json(const RunConfig& cfg, const std::vector<CheckReport>& checks)
{
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& r : checks)
        cs.push_back(to_json(r));
    return {{"version", kReportVersion}, {"config", config_json(cfg)}, {"checks", cs}};
}

void write_atomic(const std::string& path, const std::string& text)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write " + tmp);
        f << text;
        f.flush();
        if (!f)
            throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace spinc
