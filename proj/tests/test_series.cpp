#include <doctest.h>

#include <functional>
#include <random>

#include "spinc/series.hpp"

using namespace spinc;

namespace {

// Count partitions of n by brute recursion over the largest part.
long long count_partitions(int n, int max_part)
{
    if (n == 0)
        return 1;
    long long c = 0;
    for (int k = std::min(n, max_part); k >= 1; --k)
        c += count_partitions(n - k, k);
    return c;
}

TSeries random_series(std::mt19937& rng, std::size_t T)
{
    std::uniform_int_distribution<int> d(-5, 5), deg(0, 2);
    TSeries s(T);
    for (std::size_t n = 0; n <= T; ++n) {
        std::vector<BigInt> c;
        int dd = deg(rng);
        for (int i = 0; i <= dd; ++i)
            c.emplace_back(d(rng));
        s[n] = CoeffPoly(c);
    }
    return s;
}

}  // namespace

TEST_CASE("coeff poly arithmetic and printing")
{
    CoeffPoly q = CoeffPoly::q_power(1);
    CoeffPoly p = q * q + q;
    CHECK(p.str() == "q^2 + q");
    CHECK(p.eval(3) == 12);
    CHECK((p - p).is_zero());
    CHECK(CoeffPoly(-7).str() == "-7");
    CHECK((q.shifted(2)).degree() == 3);
    CHECK_THROWS(CoeffPoly(3).divexact(2));
    CHECK(CoeffPoly(std::vector<BigInt>{4, 8}).divexact(4) == CoeffPoly(std::vector<BigInt>{1, 2}));
}

TEST_CASE("inversion, substitution and their errors")
{
    const std::size_t T = 10;
    TSeries g = series_inv(TSeries::binomial(T, 1, 1));
    for (std::size_t n = 0; n <= T; ++n)
        CHECK(g[n] == CoeffPoly(1));

    TSeries s = series_subst(TSeries::one(T) + TSeries::monomial(T, 1, 1), -1, 2);
    CHECK(s == TSeries::binomial(T, 2, 1));

    CHECK_THROWS_AS(series_inv(TSeries::monomial(T, 0, 2)), std::domain_error);
    CHECK_THROWS_AS(series_subst(s, 1, 0), std::invalid_argument);
}

TEST_CASE("inverse of Psi matches the pentagonal expansion by naive convolution")
{
    const std::size_t T = 40;
    TSeries psi = make_psi(T);
    // naive inverse: solve psi * b = 1 term by term without the library inverse
    std::vector<long long> b(T + 1, 0);
    b[0] = 1;
    for (std::size_t n = 1; n <= T; ++n) {
        long long acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            acc += count_partitions(static_cast<int>(i), static_cast<int>(i)) * b[n - i];
        b[n] = -acc;
    }
    TSeries inv = series_inv(psi);
    for (std::size_t n = 0; n <= T; ++n)
        CHECK(inv[n] == CoeffPoly(b[n]));
    std::vector<long long> head{1, -1, -1, 0, 0, 1, 0, 1};
    for (std::size_t n = 0; n < head.size(); ++n)
        CHECK(inv[n] == CoeffPoly(head[n]));
    CHECK(series_mul(psi, inv) == TSeries::one(T));
}

TEST_CASE("builders")
{
    TSeries psi = make_psi(30);
    for (int n = 0; n <= 30; ++n)
        CHECK(psi[n] == CoeffPoly(count_partitions(n, n)));
    CHECK(psi[5] == CoeffPoly(7));

    TSeries pq = make_psi_q(12);
    CoeffPoly q = CoeffPoly::q_power(1);
    CHECK(pq[1] == q);
    CHECK(pq[2] == q * q + q);
    for (int n = 0; n <= 12; ++n)
        CHECK(pq[n].degree() == n);
    // at q = 1 Psi_q becomes Psi
    CHECK(pq.evaluated(1) == make_psi(12));

    TSeries th = make_theta(4);
    std::vector<long> t{1, 2, 0, 0, 2};
    for (int n = 0; n <= 4; ++n)
        CHECK(th[n] == CoeffPoly(t[n]));
}

TEST_CASE("substitution is a ring homomorphism")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TSeries a = random_series(rng, 24), b = random_series(rng, 24);
        for (int sign : {1, -1})
            for (unsigned k : {1u, 2u, 3u})
                CHECK(series_subst(series_mul(a, b), sign, k) ==
                      series_mul(series_subst(a, sign, k), series_subst(b, sign, k)));
    }
}

TEST_CASE("serial and parallel multiplication kernels agree")
{
    std::mt19937 rng(11);
    TSeries a = random_series(rng, 64), b = random_series(rng, 64);
    CHECK(series_mul(a, b, Kernel::serial) == series_mul(a, b, Kernel::parallel));
}

TEST_CASE("closed form for alpha: low coefficients")
{
    CoeffPoly q = CoeffPoly::q_power(1);
    for (int u : {1, -1}) {
        TSeries a = rhs_build("alpha_closed", u, 8);
        CHECK(a[0] == CoeffPoly(8));
        CHECK(a[2] == CoeffPoly(-2));
        CHECK(a[4] == q * CoeffPoly(8) + CoeffPoly(12));
        CHECK(a[1].is_zero());
        CHECK(a[3].is_zero());
    }
    CHECK_THROWS_AS(rhs_build("no_such_tag", 1, 4), std::invalid_argument);
}

TEST_CASE("series identities")
{
    for (auto name : series_identity_names())
        for (int u : {1, -1}) {
            CheckReport r = verify_series_identity(name, u, 96);
            INFO(r.check_id << " " << r.detail);
            CHECK(r.passed());
        }
}

TEST_CASE("xi and eta table")
{
    auto xe = xi_eta(16);
    CHECK(xe[0].xi == 0);
    CHECK(xe[0].eta == 1);
    CHECK(xe[2].xi == 1);
    CHECK(xe[2].eta == 0);
    CHECK(xe[4].eta == 1);
    for (std::size_t n = 0; n <= 16; n += 2)
        CHECK(xe[n].xi >= 0);
    CHECK_THROWS(xi_eta(3));
}
