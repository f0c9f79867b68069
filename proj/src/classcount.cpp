#include "spinc/classcount.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace spinc {

// ---------------------------------------------------------------- partitions

namespace {

void partitions_into(int n, int max_part, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& f)
{
    if (n == 0) {
        f(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions_into(n - k, k, cur, f);
        cur.pop_back();
    }
}

PartitionStats build_stats(unsigned n_max)
{
    PartitionStats s;
    s.n_max = n_max;
    s.tau.assign(n_max + 1, 0);
    s.ttilde.assign(n_max + 1, 0);
    s.eta.assign(n_max + 1, 0);
    s.admissible.resize(n_max + 1);
    for (unsigned n = 0; n <= n_max; n += 2) {
        s.eta[n] = pi_frac(n, 4);
        if (n == 0)
            continue;  // tau_0 = ttilde_0 = 0
        std::vector<int> cur;
        partitions_into(static_cast<int>(n), static_cast<int>(n), cur, [&](const std::vector<int>& p) {
            std::map<int, int> mult;
            for (int k : p)
                ++mult[k];
            int odd = 0;
            bool distinct_odd = true;
            for (auto [k, m] : mult) {
                if (k % 2 == 0 && m % 2)
                    return;
                if (k % 2) {
                    ++odd;
                    distinct_odd = distinct_odd && m == 1;
                }
            }
            s.admissible[n].push_back(p);
            if (odd == 0)
                return;
            s.tau[n] += 1LL << (odd - 1);
            if (distinct_odd)
                ++s.ttilde[n];
        });
    }
    return s;
}

}  // namespace

const PartitionStats& partition_stats(unsigned n_max)
{
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<PartitionStats>> cache;
    if (n_max % 2)
        throw std::invalid_argument("partition_stats: n_max must be even");
    std::lock_guard lock(mu);
    auto it = cache.lower_bound(n_max);
    if (it != cache.end())
        return *it->second;
    auto& slot = cache[n_max];
    slot = std::make_unique<PartitionStats>(build_stats(n_max));
    return *slot;
}

CheckReport verify_partition_stats(unsigned n_max)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "classcount.partition_stats";
    r.ref = "sum (2 tau_n + pi(n/4)) X^n = Psi(X^2)^2 Psi(-X^4)^-2 Psi(X^8) and "
            "2 sum (ttilde_n + pi(n/4)) X^n = Psi(X^4) Psi(X^2) (Psi(-X)^-1 + Psi(X)^-1)";
    r.params = {{"n_max", n_max}};
    const auto& s = partition_stats(n_max);
    TSeries ts = rhs_build("tau_series", 1, n_max);
    TSeries tt = rhs_build("ttilde_series", 1, n_max);
    std::string detail;
    for (unsigned n = 0; n <= n_max && detail.empty(); ++n) {
        long long a = n % 2 ? 0 : 2 * s.tau[n] + s.eta[n];
        long long b = n % 2 ? 0 : 2 * (s.ttilde[n] + s.eta[n]);
        if (ts[n] != CoeffPoly(a))
            detail = "tau differs at n = " + std::to_string(n);
        else if (tt[n] != CoeffPoly(b))
            detail = "ttilde differs at n = " + std::to_string(n);
    }
    settle(r, detail.empty(), "coefficient-wise equality to n = " + std::to_string(n_max),
           detail.empty() ? "equal" : detail, detail);
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------- f_Delta

namespace {

struct Inv {
    int j, eps, c;  // c = (n1 + nm1)(q - 1)/4 mod 2
};

Inv inv_of(const Delta& d)
{
    if (d.e != 0 || (d.cls != DeltaClass::recip_fixed && d.cls != DeltaClass::recip0_fixed))
        throw std::invalid_argument("expected a Frobenius-fixed reciprocal Delta (twist 0)");
    auto i = invariants_of(d);
    int c = static_cast<int>((static_cast<long>(d.n1 + d.nm1) / 2 * ((d.p - 1) / 2)) % 2);
    return {i.j0, i.eps, c};
}

long long sgn(int parity) { return parity % 2 ? -1 : 1; }

}  // namespace

long long f_delta(const Delta& d, int e)
{
    Inv v = inv_of(d);
    if (d.n1 && d.nm1)
        return 1;
    if (d.n1)
        return v.eps == 0 ? 2 : 0;
    if (d.nm1)
        return (e + v.j + v.eps) % 2 == 0 ? 2 : 0;
    return (e == v.j && v.eps == 0) ? 4 : 0;
}

long long f_delta_diff(const Delta& d) { return f_delta(d, 0) - f_delta(d, 1); }

CheckReport verify_f_totals(u32 p, unsigned N)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "classcount.f_totals";
    r.ref = "semisimple class counts of the spin group summed over Delta give q^{N/2} "
            "(N >= 4) and q - (-1)^e (N = 2)";
    r.params = {{"q", p}, {"N", N}};
    long long tot[2] = {0, 0};
    for_each_delta(p, 0, N, DeltaClass::recip_fixed, EnumMethod::census_dp, [&](const Delta& d) {
        tot[0] += f_delta(d, 0);
        tot[1] += f_delta(d, 1);
    });
    long long want[2];
    for (int e : {0, 1}) {
        if (N == 2)
            want[e] = static_cast<long long>(p) - (e ? -1 : 1);
        else {
            want[e] = 1;
            for (unsigned k = 0; k < N / 2; ++k)
                want[e] *= p;
        }
    }
    settle(r, tot[0] == want[0] && tot[1] == want[1],
           std::to_string(want[0]) + ", " + std::to_string(want[1]),
           std::to_string(tot[0]) + ", " + std::to_string(tot[1]));
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------- delta-moved classes

namespace {

// products over the alpha-gamma orbits of pi(n_O) and pi(n_O / 2)
std::pair<long long, long long> orbit_products(const Delta& d)
{
    long long P = 1, Pt = 1;
    for (auto [i, m] : d.mults) {
        P *= partitions_ll(m);
        Pt *= pi_frac(m, 2);
    }
    return {P, Pt};
}

}  // namespace

HTerms double_a_terms(const Delta& d, int e, H4Reading reading)
{
    Inv v = inv_of(d);
    const auto& s = partition_stats(std::max(2u, d.N + d.N % 2));
    auto [P, Pt] = orbit_products(d);
    const int n1 = d.n1, nm1 = d.nm1;
    const bool je = e == (v.j + v.eps) % 2;  // e = j + eps
    const bool ce = e == v.c;
    const bool e0 = v.eps == 0;
    HTerms t;
    auto& h = t.h;
    if (n1 && nm1) {
        t.case_id = 1;
        t.count = 7;
        h[0] = je ? 2 * P * s.T0bar(n1) * s.tau[nm1] : 0;
        h[1] = ce ? 4 * Pt * s.T0bar(n1) * s.ttilde[nm1] : 0;
        h[2] = e0 ? 2 * P * s.tau[n1] * s.T0bar(nm1) : 0;
        h[3] = ce ? 4 * Pt * s.ttilde[n1] * s.T0bar(nm1) : 0;
        // pairs of classes with I empty, up to the simultaneous involution
        long long pairs = s.T0(n1) * s.T0(nm1) / 2;
        h[4] = (e0 && e == v.j) ? 2 * P * pairs : 0;
        h[5] = e == 0 ? 2 * Pt * pairs : 0;
        h[6] = ce ? 4 * Pt * s.ttilde[n1] * s.ttilde[nm1] : 0;
    } else if (n1) {
        t.case_id = 2;
        t.count = 4;
        h[0] = (e0 && je) ? 2 * P * s.T0(n1) : 0;
        h[1] = (e0 && ce) ? 2 * Pt * s.T0(n1) : 0;
        h[2] = e0 ? 2 * P * s.tau[n1] : 0;
        long long h4_prod = reading == H4Reading::literal ? P : Pt;
        h[3] = (e0 && ce) ? 4 * h4_prod * s.ttilde[n1] : 0;
    } else if (nm1) {
        t.case_id = 3;
        t.count = 4;
        h[0] = (e0 && je) ? 2 * P * s.T0(nm1) : 0;
        h[1] = ce ? 2 * Pt * s.T0(nm1) : 0;
        h[2] = je ? 2 * P * s.tau[nm1] : 0;
        h[3] = ce ? 4 * Pt * s.ttilde[nm1] : 0;
    } else {
        t.case_id = 4;
        t.count = 2;
        h[0] = (e0 && je) ? 4 * P : 0;
        h[1] = (e0 && ce) ? 4 * Pt : 0;
    }
    return t;
}

long long double_a_e(const Delta& d, int e, H4Reading r)
{
    HTerms t = double_a_terms(d, e, r);
    long long s = 0;
    for (int i = 0; i < t.count; ++i)
        s += t.h[i];
    return s;
}

long long double_a_diff(const Delta& d)
{
    Inv v = inv_of(d);
    const auto& s = partition_stats(std::max(2u, d.N + d.N % 2));
    auto [P, Pt] = orbit_products(d);
    const int n1 = d.n1, nm1 = d.nm1;
    const long long sj = sgn(v.j + v.eps), sc = sgn(v.c);
    const long long d0 = v.eps == 0;
    const auto& et = s.eta;
    const auto& tt = s.ttilde;
    if (n1 && nm1)
        return 2 * P * et[n1] * s.tau[nm1] * sj + 4 * d0 * P * et[n1] * et[nm1] * sj +
               4 * Pt * et[n1] * tt[nm1] * sc + 4 * Pt * tt[n1] * et[nm1] * sc +
               4 * Pt * et[n1] * et[nm1] * sc + 4 * Pt * tt[n1] * tt[nm1] * sc;
    if (n1)
        return 4 * d0 * P * et[n1] * sj + 4 * d0 * Pt * (et[n1] + tt[n1]) * sc;
    if (nm1)
        return 2 * P * s.tau[nm1] * sj + 4 * d0 * P * et[nm1] * sj + 4 * Pt * (et[nm1] + tt[nm1]) * sc;
    return 4 * d0 * P * sj + 4 * d0 * Pt * sc;
}

std::string to_string(AlphaMethod m) { return m == AlphaMethod::direct ? "direct" : "census_dp"; }

// ---------------------------------------------------------------- alpha

namespace {

// Aggregated orbit weights: A[n][j][eps] = sum of prod pi(n_O) over multiplicity
// assignments of total degree n with the given parities of sum n_O j(O) and
// sum n_O eps(O); B[n] = sum of prod pi(n_O / 2).
struct OrbitWeights {
    std::vector<std::array<std::array<BigInt, 2>, 2>> A;
    std::vector<BigInt> B;
};

OrbitWeights orbit_weights(u32 p, unsigned N)
{
    const auto& c = orbit_census_cached(p, OrbitGroup::alpha_gamma, std::max(2u, N));
    OrbitWeights w;
    w.A.resize(N + 1);
    w.B.assign(N + 1, 0);
    w.A[0][0][0] = 1;
    w.B[0] = 1;
    // orbits with equal signature contribute identical factors; fold them by count
    std::map<std::tuple<unsigned, int, int>, int> sigs;
    for (const auto& o : c.orbits)
        if (o.sig.size <= N)
            ++sigs[{o.sig.size, o.sig.j, o.sig.eps}];
    for (auto& [sig, count] : sigs) {
        auto [size, j, eps] = sig;
        for (int rep = 0; rep < count; ++rep) {
            auto A2 = w.A;
            auto B2 = w.B;
            for (unsigned n = 0; n <= N; ++n) {
                for (unsigned m = 1; n + m * size <= N; ++m) {
                    BigInt pm = partition_number(m);
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            if (w.A[n][a][b] == 0)
                                continue;
                            A2[n + m * size][(a + m * j) % 2][(b + m * eps) % 2] += pm * w.A[n][a][b];
                        }
                    if (m % 2 == 0 && w.B[n] != 0)
                        B2[n + m * size] += partition_number(m / 2) * w.B[n];
                }
            }
            w.A = std::move(A2);
            w.B = std::move(B2);
        }
    }
    return w;
}

BigInt alpha_dp(u32 p, unsigned N)
{
    if (N % 2)
        return 0;
    OrbitWeights w = orbit_weights(p, N);
    const auto& s = partition_stats(std::max(2u, N));
    const int h = (p - 1) / 2;
    BigInt total = 0;
    for (unsigned n1 = 0; n1 <= N; n1 += 2)
        for (unsigned nm1 = 0; n1 + nm1 <= N; nm1 += 2) {
            unsigned rest = N - n1 - nm1;
            const long long sc = sgn(static_cast<int>((n1 + nm1) / 2 * h % 2));
            const long long eps_pm = (nm1 / 2 * h) % 2;
            const auto& et = s.eta;
            const auto& tt = s.ttilde;
            for (int jp = 0; jp < 2; ++jp)
                for (int ep = 0; ep < 2; ++ep) {
                    const BigInt& a = w.A[rest][jp][ep];
                    if (a == 0)
                        continue;
                    int eps = static_cast<int>((ep + eps_pm) % 2);
                    long long sj = sgn(jp + eps), d0 = eps == 0;
                    long long k;
                    if (n1 && nm1)
                        k = 2 * et[n1] * s.tau[nm1] * sj + 4 * d0 * et[n1] * et[nm1] * sj;
                    else if (n1)
                        k = 4 * d0 * et[n1] * sj;
                    else if (nm1)
                        k = 2 * s.tau[nm1] * sj + 4 * d0 * et[nm1] * sj;
                    else
                        k = 4 * d0 * sj;
                    total += a * static_cast<long>(k);
                }
            // B-part: every n_O even, so the orbit part of eps vanishes
            const BigInt& b = w.B[rest];
            if (b == 0)
                continue;
            long long d0 = eps_pm == 0;
            long long k;
            if (n1 && nm1)
                k = 4 * sc * (et[n1] * tt[nm1] + tt[n1] * et[nm1] + et[n1] * et[nm1] + tt[n1] * tt[nm1]);
            else if (n1)
                k = 4 * d0 * (et[n1] + tt[n1]) * sc;
            else if (nm1)
                k = 4 * (et[nm1] + tt[nm1]) * sc;
            else
                k = 4 * d0 * sc;
            total += b * static_cast<long>(k);
        }
    return total;
}

}  // namespace

BigInt alpha(u32 p, unsigned N, AlphaMethod m, H4Reading reading)
{
    if (N == 0)
        return 8;
    if (N % 2)
        return 0;
    if (m == AlphaMethod::census_dp) {
        if (reading == H4Reading::literal)
            throw std::invalid_argument("alpha: the literal reading is per-Delta only");
        return alpha_dp(p, N);
    }
    BigInt total = 0;
    for_each_delta(p, 0, N, DeltaClass::recip_fixed, EnumMethod::direct, [&](const Delta& d) {
        total += static_cast<long>(double_a_e(d, 0, reading) - double_a_e(d, 1, reading));
    });
    return total;
}

CheckReport alpha_check(u32 p, unsigned n_max, AlphaMethod m)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "classcount.alpha";
    r.ref = "alpha_n assembled over Delta equals the coefficient of X^n in "
            "3 Psi_q(X^4) Psi(uX^2) Psi(-X^4)^-2 Psi(X^8) + 3 Psi_q(X^4) Psi(uX^2)^-1 Psi(X^4) "
            "+ 2 Psi_q(X^4) Psi(X^2)^-1 Psi(X^4)";
    r.params = {{"q", p}, {"n_max", n_max}, {"method", to_string(m)}};
    const int u = p % 4 == 1 ? 1 : -1;
    TSeries closed = rhs_build("alpha_closed", u, n_max).evaluated(p);
    std::string exp, act, detail;
    for (unsigned n = 0; n <= n_max; n += 2) {
        BigInt a = alpha(p, n, m);
        BigInt c = closed[n].coeff(0);
        exp += (n ? " " : "") + c.get_str();
        act += (n ? " " : "") + a.get_str();
        if (a != c && detail.empty())
            detail = "first difference at n = " + std::to_string(n);
    }
    settle(r, detail.empty(), exp, act, detail);
    r.runtime_ms = sw.ms();
    return r;
}

CheckReport verify_double_a(u32 p, unsigned N)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "classcount.double_a";
    r.ref = "per-case h-term sums are nonnegative and their difference over the two forms "
            "equals the printed difference formula";
    r.params = {{"q", p}, {"N", N}};
    long count = 0;
    std::string detail;
    for_each_delta(p, 0, N, DeltaClass::recip_fixed, EnumMethod::census_dp, [&](const Delta& d) {
        ++count;
        long long a0 = double_a_e(d, 0), a1 = double_a_e(d, 1);
        if (detail.empty() && (a0 < 0 || a1 < 0 || f_delta(d, 0) < 0 || f_delta(d, 1) < 0))
            detail = "negative count at " + expand(d).str();
        if (detail.empty() && a0 - a1 != double_a_diff(d))
            detail = "difference mismatch at " + expand(d).str() + ": " + std::to_string(a0 - a1) +
                     " vs " + std::to_string(double_a_diff(d));
    });
    settle(r, detail.empty(), std::to_string(count) + " consistent",
           detail.empty() ? std::to_string(count) + " consistent" : "inconsistent", detail);
    r.runtime_ms = sw.ms();
    return r;
}

nlohmann::json alpha_breakdown_json(u32 p, unsigned N)
{
    nlohmann::json out = nlohmann::json::array();
    for_each_delta(p, 0, N, DeltaClass::recip_fixed, EnumMethod::census_dp, [&](const Delta& d) {
        auto i = invariants_of(d);
        out.push_back({{"delta", expand(d).str()},
                       {"n1", d.n1},
                       {"nm1", d.nm1},
                       {"j", i.j0},
                       {"eps", i.eps},
                       {"f0", f_delta(d, 0)},
                       {"f1", f_delta(d, 1)},
                       {"double_a0", double_a_e(d, 0)},
                       {"double_a1", double_a_e(d, 1)},
                       {"diff", double_a_diff(d)}});
    });
    return out;
}

}  // namespace spinc
