#include <doctest.h>

#include <set>

#include "spinc/delta.hpp"

using namespace spinc;

namespace {

long count(u32 p, int e, unsigned N, DeltaClass c, EnumMethod m = EnumMethod::census_dp)
{
    long n = 0;
    for_each_delta(p, e, N, c, m, [&](const Delta&) { ++n; });
    return n;
}

}  // namespace

TEST_CASE("small class sizes")
{
    // monic degree 2 polynomials over F_3 with nonzero constant term
    CHECK(count(3, 0, 2, DeltaClass::monic_fixed) == 6);
    CHECK(count(3, 0, 2, DeltaClass::monic_fixed, EnumMethod::direct) == 6);
    CHECK(count(3, 0, 4, DeltaClass::recip_fixed) == 9);
    CHECK(count(3, 0, 6, DeltaClass::beta_gamma_fixed) == 3);
    CHECK(count(3, 0, 6, DeltaClass::beta_gamma_fixed, EnumMethod::direct) == 3);
    for (auto c : {DeltaClass::recip_fixed, DeltaClass::recip0_fixed, DeltaClass::beta_gamma_fixed})
        CHECK(count(3, 0, 5, c) == 0);
    CHECK(count(5, 0, 3, DeltaClass::monic_fixed) == 100);
    CHECK(count(3, 0, 0, DeltaClass::recip0_fixed) == 1);
    CHECK(*class_size_closed(5, 8, DeltaClass::recip_fixed) == 625);
    CHECK(*class_size_closed(3, 10, DeltaClass::beta_gamma_fixed) == 9);
    CHECK(!class_size_closed(3, 4, DeltaClass::recip0_fixed));
}

TEST_CASE("class counts against closed forms")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{
             {3, 0}, {3, 2}, {3, 4}, {3, 6}, {3, 8}, {5, 4}, {5, 6}, {7, 4}}) {
        auto r = verify_class_counts(p, N);
        INFO(p << " " << N << " " << r.detail << " | " << r.expected << " | " << r.actual);
        CHECK(r.passed());
    }
}

TEST_CASE("direct and census enumeration agree")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{{3, 4}, {3, 6}, {3, 8}, {5, 4}, {5, 6}, {7, 4}})
        for (int e : {0, 1})
            for (auto c : {DeltaClass::recip_fixed, DeltaClass::recip0_fixed, DeltaClass::beta_gamma_fixed,
                           DeltaClass::monic_fixed}) {
                if (c == DeltaClass::beta_gamma_fixed && e == 1)
                    continue;
                if (c == DeltaClass::monic_fixed && N > 4)
                    continue;
                auto r = verify_enumeration_agreement(p, e, N, c);
                INFO(p << " " << N << " " << e << " " << to_string(c) << " " << r.expected << " | "
                       << r.actual);
                CHECK(r.passed());
            }
}

TEST_CASE("invariants of simple Deltas")
{
    // (X^2 + 1)^2 over F_3: J with multiplicity 2
    auto d = delta_from_poly(3, 0, DeltaClass::recip_fixed, pow(FpPoly(3, {1, 0, 1}), 2));
    auto i = invariants_of(d);
    CHECK(i.j0 == 0);
    CHECK(i.eps == 0);
    CHECK(i.nJ == 2);
    CHECK(expand(d) == pow(FpPoly(3, {1, 0, 1}), 2));

    // X^2 + 1 alone: J is O' at q = 3, epsilon 1
    auto d1 = delta_from_poly(3, 0, DeltaClass::recip_fixed, FpPoly(3, {1, 0, 1}));
    CHECK(invariants_of(d1).j0 == 1);
    CHECK(invariants_of(d1).eps == 1);

    // (X - 1)^2 (X + 1)^2: epsilon = (q - 1)/2 mod 2
    for (u32 p : {3u, 5u, 7u, 11u}) {
        FpPoly f = pow(FpPoly::linear(p, 1), 2) * pow(FpPoly::linear(p, p - 1), 2);
        auto dd = delta_from_poly(p, 0, DeltaClass::recip_fixed, f);
        CHECK(dd.n1 == 2);
        CHECK(dd.nm1 == 2);
        CHECK(invariants_of(dd).eps == static_cast<int>((p - 1) / 2 % 2));
        CHECK(invariants_of(dd).j0 == 0);
    }

    CHECK_THROWS_AS(delta_from_poly(3, 0, DeltaClass::recip_fixed, FpPoly(3, {2, 1})),
                    std::invalid_argument);  // X + 2 = X - 1, odd multiplicity
    CHECK_THROWS_AS(delta_from_poly(3, 0, DeltaClass::recip0_fixed, pow(FpPoly::linear(3, 1), 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(delta_from_poly(5, 0, DeltaClass::recip_fixed, FpPoly(5, {3, 1})),
                    std::invalid_argument);  // X + 3 is not alpha-fixed
}

TEST_CASE("beta-gamma fixed Deltas satisfy the j congruence")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{{3, 4}, {3, 6}, {3, 8}, {5, 4}, {5, 8}, {7, 8}})
        for_each_delta(p, 0, N, DeltaClass::beta_gamma_fixed, EnumMethod::census_dp, [&](const Delta& d) {
            auto i = invariants_of(d);
            CHECK(i.j0 == static_cast<int>((N / 2) * ((p - 1) / 2) % 2));
            CHECK(i.j1 == static_cast<int>((N / 2) * ((p + 1) / 2) % 2));
        });
}

TEST_CASE("signed sums")
{
    for (u32 p : {3u, 5u, 7u, 11u, 13u})
        for (unsigned N = 0; N <= std::min(8u, delta_degree_cap(p)); N += 2) {
            auto r = verify_signed_sums(p, N);
            INFO(p << " " << N << " " << r.expected << " | " << r.actual);
            CHECK(r.passed());
        }
    auto s = signed_sums_closed(3, 2);
    CHECK(s.x0 == 0);
    CHECK(s.x1 == -1);
    CHECK(s.x == 1);
    s = signed_sums_closed(5, 2);
    CHECK(s.x0 == -1);
    CHECK(s.x1 == 0);
    CHECK(s.x == -1);
}

TEST_CASE("beta invariance of j")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{{3, 6}, {3, 8}, {5, 6}, {7, 4}}) {
        auto r = verify_beta_invariance(p, N);
        INFO(p << " " << N << " " << r.detail);
        CHECK(r.passed());
    }
    auto d = delta_from_poly(5, 0, DeltaClass::recip_fixed,
                             FpPoly(5, {1, 1, 1}) * pow(FpPoly::linear(5, 1), 2));
    auto b = beta_twist(d);
    CHECK(expand(b) == FpPoly(5, {1, 4, 1}) * pow(FpPoly::linear(5, 4), 2));
    CHECK(beta_twist(b) == d);
}

TEST_CASE("torsor transports")
{
    for (auto [p, N] : std::vector<std::pair<u32, unsigned>>{{3, 4}, {3, 6}, {3, 8}, {5, 4}, {5, 6}, {7, 4}})
        for (int e : {0, 1}) {
            auto r = verify_torsors(p, e, N);
            INFO(p << " " << N << " " << e << " " << r.detail);
            CHECK(r.passed());
        }
}

TEST_CASE("torsor transports with perturbed multiplicities")
{
    // multiplicities that are alpha-invariant but not Frobenius-invariant
    for (u32 p : {3u, 5u}) {
        std::vector<Delta> ds;
        for (unsigned N : {4u, 6u})
            for (int e : {0, 1})
                for_each_delta(p, e, N, DeltaClass::recip0_fixed, EnumMethod::census_dp,
                               [&](const Delta& d) { ds.push_back(d); });
        long perturbed = 0;
        for (const auto& d : ds) {
            RootModel m = root_model(d);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m.n[i] == 0 || m.gam[0][i] == static_cast<int>(i))
                    continue;
                RootModel m2 = m;
                m2.n[i] += 1;
                m2.n[m.alpha[i]] += 1;
                auto r = torsor_checks(m2);
                INFO(expand(d).str() << " " << r.detail);
                CHECK(r.passed());
                ++perturbed;
                break;
            }
        }
        CHECK(perturbed > 0);
    }
}

TEST_CASE("root model structure")
{
    auto d = delta_from_poly(3, 0, DeltaClass::recip0_fixed, pow(FpPoly(3, {1, 0, 1}), 2));
    RootModel m = root_model(d);
    REQUIRE(m.size() == 2);
    CHECK(m.n[0] == 2);
    CHECK(m.alpha[0] == 1);
    CHECK(m.gam[0][0] == 1);
    CHECK(m.gam[1][0] == 0);  // gamma_1 fixes i and -i
    CHECK(m.beta[0] == 1);
}
