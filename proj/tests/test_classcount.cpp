#include <doctest.h>

#include "spinc/classcount.hpp"

using namespace spinc;

namespace {

Delta delta_of(u32 p, const FpPoly& f) { return delta_from_poly(p, 0, DeltaClass::recip_fixed, f); }

FpPoly lin(u32 p, long r) { return FpPoly::linear(p, static_cast<u32>(((r % p) + p) % p)); }

}  // namespace

TEST_CASE("partition statistics")
{
    const auto& s = partition_stats(40);
    CHECK(s.tau[2] == 1);
    CHECK(s.ttilde[2] == 0);
    CHECK(s.eta[4] == 1);
    CHECK(s.tau[0] == 0);
    CHECK(s.ttilde[0] == 0);
    // n = 4: (3,1), (2,2), (1,1,1,1) admissible; (4), (2,1,1) not
    CHECK(s.admissible[4].size() == 3);
    CHECK(s.tau[4] == 2 + 1);
    CHECK(s.ttilde[4] == 1);
    CHECK(s.T0(4) == 2);
    auto r = verify_partition_stats(40);
    INFO(r.detail);
    CHECK(r.passed());
}

TEST_CASE("f_delta cases and totals")
{
    for (u32 p : {3u, 5u}) {
        for (unsigned N : {2u, 4u, 6u, 8u}) {
            auto r = verify_f_totals(p, N);
            INFO(p << " " << N << " " << r.expected << " | " << r.actual);
            CHECK(r.passed());
        }
        // sum of differences: -2 at N = 2 and 0 beyond
        for (unsigned N : {2u, 4u, 6u}) {
            long long s = 0;
            for_each_delta(p, 0, N, DeltaClass::recip_fixed, EnumMethod::census_dp,
                           [&](const Delta& d) { s += f_delta_diff(d); });
            CHECK(s == (N == 2 ? -2 : 0));
        }
    }
    // both +-1 present: a single class for either form
    auto d = delta_of(3, pow(lin(3, 1), 2) * pow(lin(3, -1), 2));
    CHECK(f_delta(d, 0) == 1);
    CHECK(f_delta(d, 1) == 1);
    CHECK(f_delta_diff(d) == 0);
    CHECK_THROWS_AS(f_delta(delta_from_poly(3, 1, DeltaClass::recip_fixed, pm_one_poly(3, 1)), 0),
                    std::invalid_argument);
}

TEST_CASE("double_a examples")
{
    auto a = delta_of(3, pow(lin(3, -1), 2));
    CHECK(double_a_diff(a) == -2);
    CHECK(double_a_e(a, 0) - double_a_e(a, 1) == -2);
    auto b = delta_of(5, pow(lin(5, -1), 2));
    CHECK(double_a_diff(b) == 2);
    CHECK(double_a_diff(delta_of(3, pow(lin(3, 1), 2))) == 0);
    CHECK(double_a_diff(delta_of(5, pow(lin(5, 1), 2))) == 0);
    auto c = delta_of(5, FpPoly(5, {1, 1, 1}));
    CHECK(invariants_of(c).j0 == 1);
    CHECK(invariants_of(c).eps == 0);
    CHECK(double_a_diff(c) == -4);
    // N = 0: the empty Delta gives 4 + 4
    CHECK(double_a_diff(delta_of(3, FpPoly::constant(3, 1))) == 8);
}

TEST_CASE("h-term sums agree with the printed differences")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{
             {3, 2}, {3, 4}, {3, 6}, {3, 8}, {3, 10}, {5, 4}, {5, 6}, {5, 8}, {7, 6}}) {
        auto r = verify_double_a(p, N);
        INFO(p << " " << N << " " << r.detail);
        CHECK(r.passed());
    }
}

TEST_CASE("alpha against the closed form")
{
    CHECK(alpha(3, 0, AlphaMethod::direct) == 8);
    for (u32 p : {3u, 5u}) {
        CHECK(alpha(p, 2, AlphaMethod::direct) == -2);
        CHECK(alpha(p, 4, AlphaMethod::direct) == 8 * p + 12);
        auto r = alpha_check(p, 8, AlphaMethod::direct);
        INFO(r.expected << " | " << r.actual);
        CHECK(r.passed());
    }
    CHECK(alpha(7, 4, AlphaMethod::census_dp) == 68);
    auto r = alpha_check(3, 12, AlphaMethod::census_dp);
    INFO(r.expected << " | " << r.actual);
    CHECK(r.passed());
    auto r5 = alpha_check(5, 10, AlphaMethod::census_dp);
    CHECK(r5.passed());
    for (unsigned N = 0; N <= 8; N += 2)
        CHECK(alpha(3, N, AlphaMethod::direct) == alpha(3, N, AlphaMethod::census_dp));
}

TEST_CASE("literal reading of the fourth h-term breaks the closed form")
{
    // with |P_n| in place of |P_n/2| the per-e sums no longer match the printed
    // difference, and alpha departs from the closed form
    bool differs = false;
    for (unsigned N = 2; N <= 8; N += 2)
        if (alpha(3, N, AlphaMethod::direct, H4Reading::literal) != alpha(3, N, AlphaMethod::direct))
            differs = true;
    CHECK(differs);
}

TEST_CASE("breakdown export")
{
    auto j = alpha_breakdown_json(3, 2);
    REQUIRE(j.size() == 3);
    long long s = 0;
    for (auto& x : j)
        s += x["diff"].get<long long>();
    CHECK(s == -2);
}
