#include <doctest.h>

#include <random>
#include <set>

#include "spinc/fqpoly.hpp"

using namespace spinc;

namespace {

// Irreducibility by trial division over all monic polynomials of lower degree.
bool irreducible_by_trial(const FpPoly& f)
{
    int d = f.degree();
    for (int a = 1; a <= d / 2; ++a) {
        u64 n = 1;
        for (int i = 0; i < a; ++i)
            n *= f.p();
        for (u64 i = 0; i < n; ++i)
            if ((f % FpPoly::from_index(f.p(), a, i)).is_zero())
                return false;
    }
    return d >= 1;
}

FpPoly random_poly(std::mt19937& rng, u32 p, int deg)
{
    std::uniform_int_distribution<u32> c(0, p - 1);
    std::vector<u32> v(deg + 1);
    for (auto& x : v)
        x = c(rng);
    v[deg] = 1;
    return FpPoly(p, v);
}

}  // namespace

TEST_CASE("prime field")
{
    PrimeField F(7);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.from_int(-1) == 6);
    CHECK(F.is_square(2));
    CHECK_FALSE(F.is_square(3));
    CHECK(F.least_nonsquare() == 3);
    CHECK(PrimeField(3).least_nonsquare() == 2);
    CHECK(PrimeField(5).least_nonsquare() == 2);
    CHECK_THROWS(PrimeField(9));
    CHECK_THROWS(PrimeField(2));
}

TEST_CASE("polynomial arithmetic")
{
    FpPoly f(3, {1, 0, 1});  // X^2 + 1
    FpPoly g(3, {2, 1});     // X + 2
    auto [q, r] = divmod(f * g + FpPoly::constant(3, 1), g);
    CHECK(q == f);
    CHECK(r == FpPoly::constant(3, 1));
    CHECK(gcd(f * g, g * g) == g);
    CHECK(f.str() == "X^2 + 1");
    CHECK(FpPoly::from_index(3, 2, f.index()) == f);
    CHECK(f.eval(1) == 2);
    CHECK(FpPoly(5, {0, 0, 0}).is_zero());
    CHECK(reciprocal(FpPoly(5, {2, 1})) == FpPoly(5, {3, 1}));  // root 3 -> 1/3 = 2
    CHECK(negated(FpPoly(5, {2, 1})) == FpPoly(5, {3, 1}));
    CHECK(twisted_reciprocal(FpPoly(5, {4, 1}), 2) == FpPoly(5, {2, 1}));  // root 1 -> 1/2 = 3
    CHECK(g < f);
    CHECK_THROWS(divmod(f, FpPoly(3)));
}

TEST_CASE("irreducible counts match the necklace formula")
{
    CHECK(irreducible_count(3, 2) == 3);
    CHECK(irreducible_count(3, 3) == 8);
    CHECK(irreducible_count(5, 2) == 10);
    for (u32 p : {3u, 5u, 7u})
        for (unsigned d = 1; d <= 5; ++d)
            CHECK(irreducible_codes(p, d).size() == irreducible_count(p, d));
    CHECK(irreducible_codes(3, 10).size() == irreducible_count(3, 10));
}

TEST_CASE("sieve agrees with trial division and with Rabin")
{
    for (unsigned d = 1; d <= 4; ++d) {
        std::set<u64> s;
        for (u64 c : irreducible_codes(3, d))
            s.insert(c);
        u64 n = 1;
        for (unsigned i = 0; i < d; ++i)
            n *= 3;
        for (u64 i = 0; i < n; ++i) {
            FpPoly f = FpPoly::from_index(3, d, i);
            CHECK(s.count(i) == (irreducible_by_trial(f) ? 1u : 0u));
            CHECK(is_irreducible_rabin(f) == irreducible_by_trial(f));
        }
    }
    CHECK(irreducible_codes(5, 6, 0, IrrMethod::rabin) ==
          irreducible_codes(5, 6, 0, IrrMethod::sieve));
}

TEST_CASE("serial and parallel sieve kernels agree")
{
    std::vector<std::vector<u64>> lower(4);
    for (unsigned a = 1; a <= 3; ++a)
        lower[a] = irreducible_codes(5, a);
    CHECK(sieve_irreducibles(5, 7, lower, Kernel::serial) ==
          sieve_irreducibles(5, 7, lower, Kernel::parallel));
}

TEST_CASE("degree caps are enforced")
{
    CHECK(default_degree_cap(3) == 12);
    CHECK(default_degree_cap(5) == 10);
    CHECK(default_degree_cap(7) == 8);
    CHECK(default_degree_cap(13) == 6);
    CHECK_THROWS_AS(irreducible_codes(3, 13), CapExceeded);
    CHECK_THROWS_AS(irreducible_codes(3, 5, 4), CapExceeded);
}

TEST_CASE("factorization recovers random products")
{
    std::mt19937 rng(3);
    for (u32 p : {3u, 5u, 7u})
        for (int trial = 0; trial < 30; ++trial) {
            FpPoly f = FpPoly::constant(p, 1);
            int parts = 1 + trial % 4;
            for (int i = 0; i < parts; ++i)
                f = f * random_poly(rng, p, 1 + (trial + i) % 4);
            if (trial % 5 == 0)
                f = f * pow(FpPoly::x(p), p);  // exercise the p-th power branch
            auto fac = factor(f);
            FpPoly prod = FpPoly::constant(p, 1);
            for (auto& [g, m] : fac) {
                CHECK(irreducible_by_trial(g));
                CHECK(g.is_monic());
                prod = prod * pow(g, m);
            }
            CHECK(prod == f.monic());
        }
}

TEST_CASE("quotient ring: Frobenius, inverse, minimal polynomial")
{
    FpPoly f(3, {2, 2, 0, 1});  // X^3 + 2X + 2, irreducible over F_3
    REQUIRE(is_irreducible_rabin(f));
    QuotientRing K(f);
    FpPoly x = K.gen();
    FpPoly y = x;
    for (int i = 0; i < 3; ++i)
        y = K.frob(y);
    CHECK(y == x);
    CHECK(K.mul(x, K.inv(x)) == K.one());
    CHECK(K.pow(x, 26) == K.one());
    CHECK(K.pow(x, -1) == K.inv(x));
    CHECK(K.min_poly(x) == f);
    CHECK(K.min_poly(K.constant(2)) == FpPoly(3, {1, 1}));
    FpPoly z = K.add(x, K.one());
    CHECK(K.min_poly(z).degree() == 3);
    CHECK(K.min_poly(z).eval(0) != 0);
    CHECK_THROWS(K.inv(FpPoly(3)));
}

TEST_CASE("field with nine elements")
{
    QuotientRing K(FpPoly(3, {1, 0, 1}));  // X^2 + 1
    FpPoly i = K.gen();
    CHECK(K.min_poly(i) == K.modulus());
    CHECK(K.frob(i) == K.neg(i));
    CHECK(K.pow(i, 4) == K.one());
    CHECK(K.pow(i, (9 - 1) / 2) == K.one());
    // a generator of the multiplicative group is a nonsquare
    FpPoly g = K.add(i, K.one());
    CHECK(K.pow(g, (9 - 1) / 2) == K.constant(-1));
    auto lin = irreducibles(3, 1);
    REQUIRE(lin.size() == 3);
    CHECK(lin[0] == FpPoly::x(3));
    CHECK(lin[1] == FpPoly(3, {1, 1}));
    CHECK(lin[2] == FpPoly(3, {2, 1}));
}

TEST_CASE("Frobenius is additive and minimal degrees divide the field degree")
{
    std::mt19937 rng(5);
    for (u32 p : {3u, 5u, 7u})
        for (unsigned d : {2u, 3u, 4u, 6u}) {
            const auto& codes = irreducible_codes(p, d);
            QuotientRing K(FpPoly::from_index(p, d, codes[codes.size() / 2]));
            for (int t = 0; t < 5; ++t) {
                FpPoly r = K.reduce(random_poly(rng, p, d + 1)), s = K.reduce(random_poly(rng, p, d));
                CHECK(K.frob(K.add(r, s)) == K.add(K.frob(r), K.frob(s)));
                CHECK(K.frob(K.mul(r, s)) == K.mul(K.frob(r), K.frob(s)));
                CHECK(d % K.min_poly(r).degree() == 0);
            }
        }
}
