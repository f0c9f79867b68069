#include <doctest.h>

#include <map>
#include <set>

#include "spinc/orbits.hpp"

using namespace spinc;

namespace {

// All elements of F_p[X]/(f).
std::vector<FpPoly> field_elements(const QuotientRing& K)
{
    std::vector<FpPoly> out;
    u64 n = 1;
    for (unsigned i = 0; i < K.degree(); ++i)
        n *= K.p();
    for (u64 i = 0; i < n; ++i) {
        std::vector<u32> c(K.degree());
        u64 x = i;
        for (auto& v : c) {
            v = static_cast<u32>(x % K.p());
            x /= K.p();
        }
        out.emplace_back(K.p(), c);
    }
    return out;
}

FpPoly sqrt_in(const QuotientRing& K, u32 a)
{
    for (const auto& r : field_elements(K))
        if (K.mul(r, r) == K.constant(a))
            return r;
    throw std::logic_error("no square root");
}

struct Tally {
    std::map<std::tuple<unsigned, int, int>, long> by_sig;  // (size, kind, eps)
    std::set<std::vector<u32>> polys;
};

// Exhaustive orbit following over every element of a field of degree L (independent of the census).
Tally brute_force(u32 p, unsigned L, int e)
{
    const auto& codes = irreducible_codes(p, L);
    QuotientRing K(FpPoly::from_index(p, L, codes.front()));
    std::optional<FpPoly> t;
    if (e)
        t = sqrt_in(K, scale_nonsquare(p));
    std::set<FpPoly> seen;
    Tally out;
    for (const auto& r : field_elements(K)) {
        if (r.is_zero() || r == K.one() || r == K.constant(-1) || seen.count(r))
            continue;
        auto o = orbit_follow(K, r, kAlpha | (e ? kGamma1 : kGamma), t);
        for (const auto& x : o.elements)
            seen.insert(x);
        int eps = e ? -1 : epsilon_of(K, o);
        ++out.by_sig[{static_cast<unsigned>(o.elements.size()), static_cast<int>(o.kind), eps}];
        REQUIRE(o.canonical.has_value());
        out.polys.insert(o.canonical->coeffs());
    }
    return out;
}

Tally from_census(u32 p, unsigned L, int e)
{
    Tally out;
    const auto& c = orbit_census_cached(p, e ? OrbitGroup::alpha_gamma1 : OrbitGroup::alpha_gamma, L);
    for (const auto& o : c.orbits) {
        unsigned d = static_cast<unsigned>(o.factors.front().degree());
        if (L % d)
            continue;
        ++out.by_sig[{o.sig.size, static_cast<int>(o.sig.kind), o.sig.eps}];
        out.polys.insert(o.poly.coeffs());
    }
    return out;
}

}  // namespace

TEST_CASE("orbit following: small examples")
{
    QuotientRing F9(FpPoly(3, {1, 0, 1}));
    auto J = orbit_follow(F9, F9.gen(), kAlpha | kGamma);
    CHECK(J.elements.size() == 2);
    CHECK(J.kind == Kind::prime);
    CHECK(*J.canonical == FpPoly(3, {1, 0, 1}));
    CHECK(epsilon_of(F9, J) == 1);

    // 1 + i has multiplicative order 8
    FpPoly g = F9.add(F9.gen(), F9.one());
    REQUIRE(F9.pow(g, 4) == F9.constant(-1));
    auto o8 = orbit_follow(F9, g, kAlpha | kGamma);
    CHECK(o8.elements.size() == 4);
    CHECK(o8.kind == Kind::double_prime);
    CHECK(o8.gamma_cycle == 2);

    QuotientRing F5(FpPoly(5, {0, 1}));
    auto o2 = orbit_follow(F5, FpPoly::constant(5, 2), kAlpha | kGamma);
    CHECK(o2.elements.size() == 2);
    CHECK(o2.kind == Kind::double_prime);
    CHECK(*o2.canonical == FpPoly(5, {1, 0, 1}));  // (X - 2)(X - 3)
    CHECK(epsilon_of(F5, o2) == 1);

    QuotientRing F25(FpPoly(5, {1, 1, 1}));
    auto o3 = orbit_follow(F25, F25.gen(), kAlpha | kGamma);
    CHECK(epsilon_of(F25, o3) == 0);

    auto cyc = orbit_follow(F9, g, kGamma);
    REQUIRE(cyc.elements.size() == 2);
    CHECK(cyc.elements[1] == F9.frob(g));

    CHECK_THROWS_AS(orbit_follow(F9, F9.one(), kAlpha), std::invalid_argument);
    CHECK_THROWS_AS(orbit_follow(F9, FpPoly(3), kAlpha), std::invalid_argument);
    CHECK_THROWS_AS(orbit_follow(F9, F9.constant(-1), kGamma), std::invalid_argument);
}

TEST_CASE("census for q = 3 up to degree 6")
{
    const auto& c = orbit_census_cached(3, OrbitGroup::alpha_gamma, 6);
    auto cnt = [&](unsigned size, Kind k) {
        long n = 0;
        for (const auto& o : c.orbits)
            n += o.sig.size == size && o.sig.kind == k;
        return n;
    };
    CHECK(cnt(2, Kind::prime) == 1);
    CHECK(c.find_J()->sig.size == 2);
    CHECK(cnt(4, Kind::double_prime) == 1);
    CHECK(cnt(6, Kind::double_prime) == 4);
    // self-inverse Frobenius orbits: orders 5, 10 in F_81 and 7, 14, 28 in F_729
    CHECK(cnt(4, Kind::prime) == 2);
    CHECK(cnt(6, Kind::prime) == 4);
    CHECK(cnt(2, Kind::double_prime) == 0);

    const auto& abg = orbit_census_cached(3, OrbitGroup::alpha_beta_gamma, 2);
    REQUIRE(abg.find_J() != nullptr);
    CHECK(abg.find_J()->sig.size == 2);

    CHECK(orbit_census_cached(3, OrbitGroup::alpha_gamma, 1).orbits.empty());
    CHECK_THROWS_AS(orbit_census(3, OrbitGroup::alpha_gamma, 13), CapExceeded);
}

TEST_CASE("census agrees with exhaustive following in a fixed field")
{
    for (auto [p, L] : std::vector<std::pair<u32, unsigned>>{{3, 4}, {3, 6}, {5, 4}, {7, 2}, {5, 2}})
        for (int e : {0, 1}) {
            INFO("p=" << p << " L=" << L << " e=" << e);
            Tally b = brute_force(p, L, e), c = from_census(p, L, e);
            CHECK(b.by_sig == c.by_sig);
            CHECK(b.polys == c.polys);
        }
}

TEST_CASE("census structure")
{
    for (u32 p : {3u, 5u, 7u})
        for (auto g : {OrbitGroup::gamma, OrbitGroup::gamma1, OrbitGroup::alpha_gamma,
                       OrbitGroup::alpha_gamma1, OrbitGroup::alpha_beta_gamma}) {
            const auto& c = orbit_census_cached(p, g, 6);
            auto r = census_completeness(c);
            INFO(r.check_id << " " << to_string(g) << " " << r.detail);
            CHECK(r.passed());
            const int e = twist_of(g);
            const u32 n = scale_nonsquare(p);
            for (const auto& o : c.orbits) {
                CHECK(o.poly.degree() == static_cast<int>(o.sig.size));
                if (o.sig.kind == Kind::prime) {
                    CHECK(o.sig.size % 2 == 0);
                    CHECK(o.sig.j == 1);
                    CHECK((e ? twisted_reciprocal(o.poly, n) : reciprocal(o.poly)) == o.poly);
                }
                if (o.sig.kind == Kind::double_prime) {
                    CHECK(o.sig.j == 0);
                    REQUIRE(o.factors.size() == 2);
                    CHECK((e ? twisted_reciprocal(o.factors[0], n) : reciprocal(o.factors[0])) ==
                          o.factors[1]);
                    CHECK(o.sig.size == 2 * static_cast<unsigned>(o.factors[0].degree()));
                }
            }
        }
}

TEST_CASE("epsilon does not depend on the representative")
{
    const auto& c = orbit_census_cached(5, OrbitGroup::alpha_gamma, 4);
    for (const auto& o : c.orbits) {
        QuotientRing K(o.factors.front());
        FpPoly r = K.gen();
        // the alpha-image and a Frobenius image give other representatives
        for (const FpPoly& s : {K.frob(r), K.inv(r)}) {
            if (o.sig.kind == Kind::double_prime && s == K.inv(r))
                continue;  // the inverse is a root of the other factor
            CHECK(epsilon_at(K, s, o.sig.size, o.sig.kind) == o.sig.eps);
        }
        if (o.sig.kind == Kind::double_prime) {
            QuotientRing K2(o.factors.back());
            CHECK(epsilon_at(K2, K2.gen(), o.sig.size, o.sig.kind) == o.sig.eps);
        }
    }
}

TEST_CASE("serial and parallel census kernels agree")
{
    auto a = orbit_census(5, OrbitGroup::alpha_gamma1, 5, Kernel::serial);
    auto b = orbit_census(5, OrbitGroup::alpha_gamma1, 5, Kernel::parallel);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
        CHECK(a.orbits[i].poly == b.orbits[i].poly);
        CHECK(a.orbits[i].sig == b.orbits[i].sig);
    }
    CHECK(census_to_json(a) == census_to_json(b));
    auto back = census_from_json(census_to_json(a));
    CHECK(census_to_json(back) == census_to_json(a));
}

TEST_CASE("J kind for all configured q")
{
    for (u32 p : {3u, 5u, 7u, 11u, 13u}) {
        auto r = verify_J_kind(p, 2);
        INFO(p << " " << r.expected << " / " << r.actual);
        CHECK(r.passed());
    }
}

TEST_CASE("orbit product identities")
{
    for (auto [p, T] : std::vector<std::pair<u32, std::size_t>>{{3, 12}, {5, 10}, {7, 8}})
        for (const auto& tag : orbit_product_tags()) {
            auto r = verify_orbit_products(p, tag, T);
            INFO(r.check_id << " q=" << p << " " << r.detail << " exp " << r.expected << " got "
                            << r.actual);
            CHECK(r.passed());
        }
    auto r = verify_orbit_products(3, "orbit_epsprod", 12);
    CHECK(r.passed());
    CHECK(rhs_build("orbit_epsprod", -1, 4).evaluated(3)[2] == CoeffPoly(1));
    CHECK_THROWS_AS(verify_orbit_products(3, "bogus", 4), std::invalid_argument);
}

TEST_CASE("census epsilon matches exponentiation at a root")
{
    for (u32 p : {3u, 5u, 7u, 11u}) {
        const auto& c = orbit_census_cached(p, OrbitGroup::alpha_gamma, 4);
        for (const auto& o : c.orbits) {
            QuotientRing K(o.factors.front());
            CHECK(epsilon_at(K, K.gen(), o.sig.size, o.sig.kind) == o.sig.eps);
        }
    }
}
