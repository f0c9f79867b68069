#include "spinc/dualcount.hpp"

#include "spinc/classcount.hpp"

namespace spinc {

std::string to_string(PairCase c)
{
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
    return names[static_cast<int>(c) - 1];
}

std::string to_string(HMode m)
{
    switch (m) {
    case HMode::casewise: return "casewise";
    case HMode::unified: return "unified";
    case HMode::printed: return "printed";
    }
    return "?";
}

// ---------------------------------------------------------------- pairs

namespace {

PairCase classify(bool equal, int k, unsigned N)
{
    if (!equal)
        return k == 0 ? PairCase::I : k == 1 ? PairCase::II : PairCase::III;
    bool n4 = N % 4 == 0;
    if (k == 0)
        return n4 ? PairCase::V : PairCase::IV;
    return n4 ? PairCase::VII : PairCase::VI;
}

DeltaPair make_pair_of(const Delta& d, bool equal)
{
    DeltaPair pr;
    pr.delta = d;
    pr.equal = equal;
    pr.k = (d.n1 != 0) + (d.nm1 != 0);
    if (!equal)
        pr.twist = d.e;
    pr.pcase = classify(equal, pr.k, d.N);
    if (equal && pr.k == 1)
        throw std::logic_error("beta-fixed Delta with exactly one of +-1");
    if (!equal && pr.k == 1 && d.e == 1)
        throw std::logic_error("gamma_1-fixed Delta with exactly one of +-1");
    return pr;
}

}  // namespace

std::vector<DeltaPair> enumerate_pairs(u32 p, unsigned N, EnumMethod m)
{
    std::vector<DeltaPair> out;
    if (N % 2)
        return out;
    for (int e : {0, 1})
        for_each_delta(p, e, N, DeltaClass::recip_fixed, m, [&](const Delta& d) {
            Delta b = beta_twist(d);
            if (d < b)
                out.push_back(make_pair_of(d, false));
        });
    for_each_delta(p, 0, N, DeltaClass::beta_gamma_fixed, m,
                   [&](const Delta& d) { out.push_back(make_pair_of(d, true)); });
    return out;
}

long long phi(const Delta& d, int e)
{
    AgMults a = ag_multiplicities(d, e);
    long long r = 1;
    for (auto [i, n] : a.mults)
        r *= partitions_ll(n);
    return r;
}

long long phi_abg(const Delta& d)
{
    if (d.cls != DeltaClass::beta_gamma_fixed)
        throw std::invalid_argument("phi_abg: Delta must be fixed by beta and gamma");
    long long r = 1;
    for (auto [i, n] : d.mults)
        r *= partitions_ll(n);
    return r;
}

long long irr_equivariant_count(long long m, const std::map<long long, long long>& z)
{
    if (m <= 0)
        throw std::invalid_argument("irr_equivariant_count: group order must be positive");
    long long s = 0;
    for (auto [n, c] : z) {
        if (c < 0)
            throw std::logic_error("irr_equivariant_count: negative z_" + std::to_string(n));
        if (n <= 0 || m % n)
            throw std::logic_error("irr_equivariant_count: stabilizer order " + std::to_string(n) +
                                   " does not divide " + std::to_string(m));
        s += n * n * c;
    }
    if (s % m)
        throw std::logic_error("irr_equivariant_count: non-integral count");
    return s / m;
}

// ---------------------------------------------------------------- H

namespace {

struct PairData {
    long long phi0 = 0, phi1 = 0, phi = 0;
    int j0 = 0, j1 = 0, nJ = 0;
    long long xi = 0, eta = 0;    // at n1
    long long xim = 0, etam = 0;  // at n-1
    long long xis = 0, etas = 0;  // at n1 + n-1
};

PairData pair_data(const DeltaPair& pr)
{
    const Delta& d = pr.delta;
    PairData r;
    auto xe = xi_eta(std::max<unsigned>(d.N, 2));
    r.xi = xe[d.n1].xi, r.eta = xe[d.n1].eta;
    r.xim = xe[d.nm1].xi, r.etam = xe[d.nm1].eta;
    r.xis = xe[d.n1 + d.nm1].xi, r.etas = xe[d.n1 + d.nm1].eta;
    DeltaInvariants inv = invariants_of(d);
    r.nJ = inv.nJ;
    if (pr.equal) {
        r.phi0 = phi(d, 0);
        r.phi1 = phi(d, 1);
        r.phi = phi_abg(d);
        r.j0 = inv.j0, r.j1 = inv.j1;
    } else if (*pr.twist == 0) {
        r.phi0 = phi(d, 0);
        r.j0 = inv.j0;
    } else {
        r.phi1 = phi(d, 1);
        r.j1 = inv.j1;
    }
    return r;
}

long long sgn(long long k) { return k % 2 ? -1 : 1; }

// |Phi^a_{n/2}|
long long phi_sym(long long xi, long long eta, int a) { return xi + (a % 2 ? 0 : 2 * eta); }

// Z/2 acting by nu x nu on Phi^a x Phi^a'
long long irr_nu_nu(long long xi, long long eta, int a, long long xi2, long long eta2, int a2)
{
    long long fixed = xi * xi2;
    long long total = phi_sym(xi, eta, a) * phi_sym(xi2, eta2, a2);
    return irr_equivariant_count(2, {{2, fixed}, {1, total - fixed}});
}

// Z/2 acting by nu on Phi^a
long long irr_nu(long long xi, long long eta, int a)
{
    return irr_equivariant_count(2, {{2, xi}, {1, phi_sym(xi, eta, a) - xi}});
}

std::pair<long long, long long> casewise(const DeltaPair& pr, const PairData& v, u32 q)
{
    long long h[2] = {0, 0};
    const int uq = static_cast<int>((q - 1) / 2 % 2);  // (q-1)/2 mod 2
    const long long P = v.phi, P0 = v.phi0, P1 = v.phi1, x = v.xi, t = v.eta;
    for (int e : {0, 1}) {
        switch (pr.pcase) {
        case PairCase::I: {
            int ep = *pr.twist;
            int j = ep ? v.j1 : v.j0;
            // two classes, trivial component group
            h[e] = e == j ? 2 * (ep ? P1 : P0) : 0;
            break;
        }
        case PairCase::II:
            h[e] = P0 * phi_sym(v.xis, v.etas, v.j0 + e);
            break;
        case PairCase::III:
            if (*pr.twist == 0) {
                long long s = 0;
                for (int a : {0, 1}) {
                    int a2 = (e + v.j0 + a) % 2;
                    s += irr_nu_nu(v.xi, v.eta, a, v.xim, v.etam, a2);
                }
                h[e] = P0 * s;
            } else {
                // both choices of (a, a') give Phi^{e + j}
                h[e] = P1 * 2 * irr_nu(x, t, e + v.j1);
            }
            break;
        case PairCase::IV: {
            // e' with (q - (-1)^e') / 2 = e
            int ep = (uq == e) ? 0 : 1;
            h[e] = ep ? P1 : P0;
            break;
        }
        case PairCase::V:
            if (e == 0)
                for (long long Pe : {P0, P1})
                    h[e] += 2 * irr_equivariant_count(2, {{2, P}, {1, Pe - P}});
            break;
        case PairCase::VI:
            if (e == uq) {
                auto u00 = irr_equivariant_count(
                    4, {{4, P * x}, {2, -P * x + P0 * x * x}, {1, 4 * P0 * (t * t + x * t)}});
                auto u011 = irr_equivariant_count(4, {{4, P * x}, {2, -P * x + P0 * x * x}});
                auto u11 = irr_equivariant_count(4, {{4, P * x}, {2, P1 * x - P * x}});
                h[e] = u00 + u011 + 2 * u11;
            } else {
                h[e] = P0 * irr_nu_nu(x, t, 0, x, t, 1) + P1 * irr_nu(x, t, 0);
            }
            break;
        case PairCase::VII:
            if (e == 0) {
                auto u00 = irr_equivariant_count(
                    4, {{4, P * x},
                        {2, P * (-x + 4 * t) + P0 * x * x},
                        {1, 4 * P0 * (t * t + x * t) - 4 * P * t}});
                auto u011 = irr_equivariant_count(4, {{4, P * x}, {2, -P * x + P0 * x * x}});
                auto u10 = irr_equivariant_count(
                    4, {{4, P * x}, {2, P * (-x + 2 * t) + P1 * x}, {1, -2 * P * t + 2 * P1 * t}});
                h[e] = u00 + u011 + 2 * u10;
            } else {
                // trivial action on U_1 x Phi^1
                h[e] = P0 * irr_nu_nu(x, t, 0, x, t, 1) + irr_equivariant_count(2, {{2, P1 * x}});
            }
            break;
        }
    }
    return {h[0], h[1]};
}

long long unified(const DeltaPair& pr, const PairData& v)
{
    const Delta& d = pr.delta;
    long long hat0 = v.phi0 * v.eta * v.etam;
    long long hat1 = v.phi1 * v.eta;
    long long hat = 0;
    if (pr.equal)
        hat = v.phi * (2 * v.xi + (v.nJ % 2 ? 0 : v.eta));
    long long u = pr.equal ? 1 : 2;
    long long s = 0;
    if (pr.equal || *pr.twist == 0)
        s += sgn(v.j0) * hat0;
    if (pr.equal || *pr.twist == 1)
        s += sgn(v.j1) * hat1;
    return sgn(static_cast<long long>(v.nJ) * ((d.p - 1) / 2)) * 6 * hat + u * s;
}

long long printed(const DeltaPair& pr, const PairData& v, u32 q)
{
    const long long uq = sgn((q - 1) / 2);
    const long long P = v.phi, P0 = v.phi0, P1 = v.phi1, x = v.xi, t = v.eta;
    switch (pr.pcase) {
    case PairCase::I:
        return *pr.twist ? sgn(v.j1) * 2 * P1 : sgn(v.j0) * 2 * P0;
    case PairCase::II: return sgn(v.j0) * 2 * P0 * v.etas;
    case PairCase::III:
        return *pr.twist ? sgn(v.j1) * 2 * P1 * t : sgn(v.j0) * 2 * P0 * t * v.etam;
    case PairCase::IV: return uq * (P0 - P1);
    case PairCase::V: return 6 * P + P0 + P1;
    case PairCase::VI: return uq * (12 * P * x + P0 * t * t - P1 * t);
    case PairCase::VII: return 6 * P * (2 * x + t) + P0 * t * t + P1 * t;
    }
    return 0;
}

}  // namespace

HValue H_pair(const DeltaPair& pr, HMode mode)
{
    PairData v = pair_data(pr);
    HValue r;
    switch (mode) {
    case HMode::casewise: {
        auto [a, b] = casewise(pr, v, pr.delta.p);
        r.h0 = a, r.h1 = b, r.diff = a - b;
        break;
    }
    case HMode::unified: r.diff = unified(pr, v); break;
    case HMode::printed: r.diff = printed(pr, v, pr.delta.p); break;
    }
    return r;
}

// ---------------------------------------------------------------- ahat

BigInt ahat(u32 p, unsigned N, EnumMethod m)
{
    BigInt s = 0;
    for (const auto& pr : enumerate_pairs(p, N, m))
        s += static_cast<long>(H_pair(pr, HMode::casewise).diff);
    return s;
}

std::pair<BigInt, BigInt> ahat_e(u32 p, unsigned N, EnumMethod m)
{
    BigInt a0 = 0, a1 = 0;
    for (const auto& pr : enumerate_pairs(p, N, m)) {
        HValue h = H_pair(pr, HMode::casewise);
        a0 += static_cast<long>(h.h0);
        a1 += static_cast<long>(h.h1);
    }
    return {a0, a1};
}

AhatSplit ahat_split(u32 p, unsigned N, EnumMethod m)
{
    AhatSplit s;
    if (N % 2)
        return s;
    auto xe = xi_eta(std::max<unsigned>(N, 2));
    // a_{e'}: every gamma_{e'}-fixed Delta, beta-fixed or not
    for (int e : {0, 1})
        for_each_delta(p, e, N, DeltaClass::recip_fixed, m, [&](const Delta& d) {
            DeltaInvariants inv = invariants_of(d);
            long long hat = phi(d, e) * xe[d.n1].eta * (e ? 1 : xe[d.nm1].eta);
            int j = e ? inv.j1 : inv.j0;
            (e ? s.a1 : s.a0) += static_cast<long>(sgn(j) * hat);
        });
    for_each_delta(p, 0, N, DeltaClass::beta_gamma_fixed, m, [&](const Delta& d) {
        DeltaInvariants inv = invariants_of(d);
        long long hat = phi_abg(d) * (2 * xe[d.n1].xi + (inv.nJ % 2 ? 0 : xe[d.n1].eta));
        s.d += static_cast<long>(sgn(static_cast<long long>(inv.nJ) * ((p - 1) / 2)) * hat);
    });
    return s;
}

CheckReport verify_H_modes(u32 p, unsigned N)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "dualcount.h_modes";
    r.ref = "for every Frobenius-stable pair the case-by-case count, the unified formula in "
            "phi-hat and the printed difference agree; per-form counts are nonnegative";
    r.params = {{"q", p}, {"N", N}};
    std::string detail;
    auto pairs = enumerate_pairs(p, N);
    std::map<std::string, int> per_case;
    for (const auto& pr : pairs) {
        ++per_case[to_string(pr.pcase)];
        HValue c;
        long long u = 0, pp = 0;
        try {
            c = H_pair(pr, HMode::casewise);
            u = H_pair(pr, HMode::unified).diff;
            pp = H_pair(pr, HMode::printed).diff;
        } catch (const std::logic_error& ex) {
            if (detail.empty())
                detail = std::string(ex.what()) + " at " + expand(pr.delta).str();
            continue;
        }
        if (detail.empty() && (c.h0 < 0 || c.h1 < 0))
            detail = "negative count at " + expand(pr.delta).str();
        if (detail.empty() && (c.diff != u || c.diff != pp))
            detail = "case " + to_string(pr.pcase) + " at " + expand(pr.delta).str() +
                     ": casewise " + std::to_string(c.diff) + ", unified " + std::to_string(u) +
                     ", printed " + std::to_string(pp);
    }
    std::string cases;
    for (auto& [k, v] : per_case)
        cases += (cases.empty() ? "" : " ") + k + ":" + std::to_string(v);
    settle(r, detail.empty(), std::to_string(pairs.size()) + " pairs agree",
           std::to_string(pairs.size()) + " pairs (" + cases + ")", detail);
    r.runtime_ms = sw.ms();
    return r;
}

CheckReport ahat_series_check(u32 p, unsigned n_max, EnumMethod m)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "dualcount.ahat";
    r.ref = "ahat_n summed over pairs, and the split a_0 + a_1 + 6 d summed over Deltas, equal "
            "the coefficients of the dual-side closed forms; a_0 = a_1 = "
            "Psi(X^2)^-1 Psi(X^4) Psi_q(X^4)";
    r.params = {{"q", p}, {"n_max", n_max}, {"method", to_string(m)}};
    const int u = p % 4 == 1 ? 1 : -1;
    TSeries tot = rhs_build("ahat_closed", u, n_max).evaluated(p);
    TSeries ac = rhs_build("a_closed", u, n_max).evaluated(p);
    TSeries dc = rhs_build("d_closed", u, n_max).evaluated(p);
    std::string exp, act, detail;
    for (unsigned n = 0; n <= n_max; n += 2) {
        BigInt a = ahat(p, n, m);
        AhatSplit s = ahat_split(p, n, m);
        BigInt c = tot[n].coeff(0);
        exp += (n ? " " : "") + c.get_str();
        act += (n ? " " : "") + a.get_str();
        if (!detail.empty())
            continue;
        if (a != c)
            detail = "ahat differs at n = " + std::to_string(n);
        else if (s.a0 + s.a1 + 6 * s.d != a)
            detail = "split does not add up at n = " + std::to_string(n);
        else if (s.a0 != ac[n].coeff(0) || s.a1 != ac[n].coeff(0))
            detail = "a_0 = " + s.a0.get_str() + ", a_1 = " + s.a1.get_str() + ", closed " +
                     ac[n].coeff(0).get_str() + " at n = " + std::to_string(n);
        else if (s.d != dc[n].coeff(0))
            detail = "d = " + s.d.get_str() + ", closed " + dc[n].coeff(0).get_str() +
                     " at n = " + std::to_string(n);
    }
    settle(r, detail.empty(), exp, act, detail);
    r.runtime_ms = sw.ms();
    return r;
}

CheckReport final_identity(u32 p, unsigned n_max, EnumMethod m)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "dualcount.final_identity";
    r.ref = "ahat_n (dual side, pairs) equals alpha_n (spin side, Deltas)";
    r.params = {{"q", p}, {"n_max", n_max}, {"method", to_string(m)}};
    AlphaMethod am = m == EnumMethod::direct ? AlphaMethod::direct : AlphaMethod::census_dp;
    std::string exp, act, detail;
    for (unsigned n = 0; n <= n_max; n += 2) {
        BigInt a = alpha(p, n, am), h = ahat(p, n, m);
        exp += (n ? " " : "") + a.get_str();
        act += (n ? " " : "") + h.get_str();
        if (a != h && detail.empty())
            detail = "first difference at n = " + std::to_string(n);
    }
    settle(r, detail.empty(), exp, act, detail);
    r.runtime_ms = sw.ms();
    return r;
}

nlohmann::json pairs_json(u32 p, unsigned N)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& pr : enumerate_pairs(p, N)) {
        HValue c = H_pair(pr, HMode::casewise);
        nlohmann::json j = to_json(pr.delta);
        j["poly"] = expand(pr.delta).coeffs();
        j["case"] = to_string(pr.pcase);
        j["equal"] = pr.equal;
        j["k"] = pr.k;
        j["twist"] = pr.twist ? nlohmann::json(*pr.twist) : nlohmann::json(nullptr);
        j["H0"] = c.h0;
        j["H1"] = c.h1;
        j["H"] = c.diff;
        j["H_unified"] = H_pair(pr, HMode::unified).diff;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace spinc
