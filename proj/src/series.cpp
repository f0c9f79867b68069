#include "spinc/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace spinc {

// ---------------------------------------------------------------- CoeffPoly

CoeffPoly::CoeffPoly(long c)
{
    if (c != 0)
        c_.emplace_back(c);
}

CoeffPoly::CoeffPoly(const BigInt& c)
{
    if (c != 0)
        c_.push_back(c);
}

CoeffPoly::CoeffPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

CoeffPoly CoeffPoly::q_power(unsigned k, const BigInt& c)
{
    CoeffPoly p;
    if (c != 0) {
        p.c_.assign(k + 1, BigInt(0));
        p.c_[k] = c;
    }
    return p;
}

void CoeffPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

BigInt CoeffPoly::eval(const BigInt& q) const
{
    BigInt r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * q + *it;
    return r;
}

CoeffPoly CoeffPoly::shifted(unsigned k) const
{
    if (is_zero())
        return {};
    CoeffPoly p;
    p.c_.assign(k, BigInt(0));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

CoeffPoly CoeffPoly::divexact(const BigInt& d) const
{
    CoeffPoly p = *this;
    for (auto& x : p.c_) {
        if (mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) == 0)
            throw std::domain_error("CoeffPoly::divexact: coefficient " + x.get_str() +
                                    " not divisible by " + d.get_str());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    return p;
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

CoeffPoly& CoeffPoly::operator*=(const BigInt& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_)
        x *= s;
    return *this;
}

void CoeffPoly::add_product(const CoeffPoly& a, const CoeffPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return;
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (c_.size() < n)
        c_.resize(n);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    trim();
}

CoeffPoly operator-(const CoeffPoly& a)
{
    CoeffPoly p = a;
    for (auto& x : p.c_)
        x = -x;
    return p;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b)
{
    CoeffPoly p;
    p.add_product(a, b);
    return p;
}

std::string CoeffPoly::str() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& x = c_[i];
        if (x == 0)
            continue;
        BigInt m = abs(x);
        if (first)
            os << (x < 0 ? "-" : "");
        else
            os << (x < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || m != 1)
            os << m.get_str();
        if (i >= 1)
            os << "q";
        if (i >= 2)
            os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- TSeries

TSeries TSeries::one(std::size_t T)
{
    TSeries s(T);
    s.a_[0] = CoeffPoly(1);
    return s;
}

TSeries TSeries::monomial(std::size_t T, std::size_t n, const CoeffPoly& c)
{
    TSeries s(T);
    if (n <= T)
        s.a_[n] = c;
    return s;
}

TSeries TSeries::binomial(std::size_t T, std::size_t k, const CoeffPoly& c)
{
    TSeries s = one(T);
    if (k <= T)
        s.a_[k] -= c;
    return s;
}

TSeries TSeries::truncated(std::size_t T) const
{
    TSeries s(T);
    for (std::size_t n = 0; n <= std::min(T, trunc()); ++n)
        s.a_[n] = a_[n];
    return s;
}

TSeries TSeries::evaluated(const BigInt& q) const
{
    TSeries s(trunc());
    for (std::size_t n = 0; n < a_.size(); ++n)
        s.a_[n] = CoeffPoly(a_[n].eval(q));
    return s;
}

TSeries TSeries::scaled(const CoeffPoly& c) const
{
    TSeries s(trunc());
    for (std::size_t n = 0; n < a_.size(); ++n)
        s.a_[n] = a_[n] * c;
    return s;
}

TSeries TSeries::divexact(const BigInt& d) const
{
    TSeries s(trunc());
    for (std::size_t n = 0; n < a_.size(); ++n)
        s.a_[n] = a_[n].divexact(d);
    return s;
}

TSeries& TSeries::operator+=(const TSeries& o)
{
    if (o.trunc() < trunc())
        a_.resize(o.a_.size());
    for (std::size_t n = 0; n < a_.size(); ++n)
        a_[n] += o.a_[n];
    return *this;
}

TSeries& TSeries::operator-=(const TSeries& o)
{
    if (o.trunc() < trunc())
        a_.resize(o.a_.size());
    for (std::size_t n = 0; n < a_.size(); ++n)
        a_[n] -= o.a_[n];
    return *this;
}

TSeries operator+(const TSeries& a, const TSeries& b)
{
    TSeries s = a;
    return s += b;
}

TSeries operator-(const TSeries& a, const TSeries& b)
{
    TSeries s = a;
    return s -= b;
}

TSeries operator-(const TSeries& a)
{
    TSeries s(a.trunc());
    for (std::size_t n = 0; n <= a.trunc(); ++n)
        s[n] = -a[n];
    return s;
}

TSeries operator*(const TSeries& a, const TSeries& b) { return series_mul(a, b); }

bool operator==(const TSeries& a, const TSeries& b)
{
    return a.trunc() == b.trunc() && !first_difference(a, b);
}

std::string TSeries::str(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t n = 0; n < a_.size() && shown < max_terms; ++n) {
        if (a_[n].is_zero())
            continue;
        if (shown++)
            os << " + ";
        os << "(" << a_[n].str() << ")X^" << n;
    }
    if (shown == 0)
        os << "0";
    os << " + O(X^" << a_.size() << ")";
    return os.str();
}

// ---------------------------------------------------------------- kernels

namespace {

std::vector<std::size_t> support(const TSeries& a)
{
    std::vector<std::size_t> s;
    for (std::size_t n = 0; n <= a.trunc(); ++n)
        if (!a[n].is_zero())
            s.push_back(n);
    return s;
}

// b *= (1 - c X^m), in place
void mul_binomial(TSeries& b, std::size_t m, const CoeffPoly& c)
{
    std::size_t T = b.trunc();
    if (m > T)
        return;
    for (std::size_t n = T; n >= m; --n) {
        if (!b[n - m].is_zero())
            b[n] -= b[n - m] * c;
        if (n == m)
            break;
    }
}

// b *= (1 - c X^m)^-1, in place
void div_binomial(TSeries& b, std::size_t m, const CoeffPoly& c)
{
    std::size_t T = b.trunc();
    if (m > T || m == 0)
        return;
    for (std::size_t n = m; n <= T; ++n)
        if (!b[n - m].is_zero())
            b[n] += b[n - m] * c;
}

}  // namespace

TSeries series_mul(const TSeries& a, const TSeries& b, Kernel k)
{
    std::size_t T = std::min(a.trunc(), b.trunc());
    TSeries c(T);
    std::vector<std::size_t> sa = support(a);
    std::vector<char> nzb(T + 1);
    for (std::size_t n = 0; n <= T; ++n)
        nzb[n] = !b[n].is_zero();

    auto coeff = [&](std::size_t n) {
        CoeffPoly acc;
        for (std::size_t i : sa) {
            if (i > n)
                break;
            if (nzb[n - i])
                acc.add_product(a[i], b[n - i]);
        }
        return acc;
    };

    if (k == Kernel::serial) {
        for (std::size_t n = 0; n <= T; ++n)
            c[n] = coeff(n);
    } else {
        const long long TT = static_cast<long long>(T);
#pragma omp parallel for schedule(dynamic, 4)
        for (long long n = 0; n <= TT; ++n)
            c[n] = coeff(static_cast<std::size_t>(n));
    }
    return c;
}

TSeries series_inv(const TSeries& a)
{
    const CoeffPoly& c0 = a[0];
    if (!(c0 == CoeffPoly(1) || c0 == CoeffPoly(-1)))
        throw std::domain_error("series_inv: constant term " + c0.str() + " is not a unit");
    const BigInt u = c0.coeff(0);  // u^-1 == u
    std::size_t T = a.trunc();
    TSeries b(T);
    b[0] = c0;
    std::vector<std::size_t> sa = support(a);
    for (std::size_t n = 1; n <= T; ++n) {
        CoeffPoly acc;
        for (std::size_t i : sa) {
            if (i == 0)
                continue;
            if (i > n)
                break;
            acc.add_product(a[i], b[n - i]);
        }
        acc *= -u;
        b[n] = std::move(acc);
    }
    return b;
}

TSeries series_subst(const TSeries& a, int sign, unsigned k, std::optional<std::size_t> out_T)
{
    if (k == 0)
        throw std::invalid_argument("series_subst: k must be positive");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("series_subst: sign must be +1 or -1");
    std::size_t T = out_T.value_or(a.trunc());
    TSeries s(T);
    for (std::size_t n = 0; n <= a.trunc() && n * k <= T; ++n)
        s[n * k] = (sign < 0 && (n & 1)) ? -a[n] : a[n];
    return s;
}

TSeries series_pow(const TSeries& a, int e)
{
    TSeries base = e < 0 ? series_inv(a) : a;
    unsigned m = static_cast<unsigned>(e < 0 ? -e : e);
    TSeries r = TSeries::one(a.trunc());
    while (m) {
        if (m & 1)
            r = series_mul(r, base);
        m >>= 1;
        if (m)
            base = series_mul(base, base);
    }
    return r;
}

std::optional<std::size_t> first_difference(const TSeries& a, const TSeries& b)
{
    std::size_t T = std::min(a.trunc(), b.trunc());
    for (std::size_t n = 0; n <= T; ++n)
        if (!(a[n] == b[n]))
            return n;
    return std::nullopt;
}

TSeries make_psi(std::size_t T)
{
    TSeries s = TSeries::one(T);
    for (std::size_t k = 1; k <= T; ++k)
        div_binomial(s, k, CoeffPoly(1));
    return s;
}

TSeries make_psi_q(std::size_t T)
{
    TSeries s = TSeries::one(T);
    const CoeffPoly q = CoeffPoly::q_power(1);
    for (std::size_t k = 1; k <= T; ++k)
        div_binomial(s, k, q);
    return s;
}

TSeries make_theta(std::size_t T)
{
    TSeries s(T);
    s[0] = CoeffPoly(1);
    for (std::size_t j = 1; j * j <= T; ++j)
        s[j * j] = CoeffPoly(2);
    return s;
}

TSeries psi_at(std::size_t T, int sign, unsigned k)
{
    return series_subst(make_psi(T / k), sign, k, T);
}

TSeries psi_q_at(std::size_t T, unsigned k)
{
    return series_subst(make_psi_q(T / k), 1, k, T);
}

// ---------------------------------------------------------------- partitions

namespace {

std::vector<BigInt>& partition_cache()
{
    static std::vector<BigInt> cache{1};
    return cache;
}

std::mutex& partition_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

BigInt partition_number(long n)
{
    if (n < 0)
        return 0;
    std::lock_guard<std::mutex> lock(partition_mutex());
    auto& p = partition_cache();
    while (static_cast<long>(p.size()) <= n) {
        long m = static_cast<long>(p.size());
        BigInt acc = 0;
        // Euler's pentagonal recurrence
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m)
                break;
            int sgn = (k & 1) ? 1 : -1;
            acc += sgn * p[m - g1];
            if (g2 <= m)
                acc += sgn * p[m - g2];
        }
        p.push_back(acc);
    }
    return p[n];
}

long long partitions_ll(long n)
{
    BigInt v = partition_number(n);
    if (!v.fits_slong_p())
        throw std::overflow_error("partitions_ll: pi(n) exceeds 64 bits");
    return v.get_si();
}

long long pi_frac(long n, long d)
{
    if (n < 0 || n % d != 0)
        return 0;
    return partitions_ll(n / d);
}

// ---------------------------------------------------------------- closed forms

namespace {

using Builder = TSeries (*)(int u, std::size_t T);

CoeffPoly Q() { return CoeffPoly::q_power(1); }

TSeries one_minus(std::size_t T, std::size_t k, const CoeffPoly& c = 1)
{
    return TSeries::binomial(T, k, c);
}

// (1 - qX^a)^-1 * prod (1 - X^k)^{m}
TSeries rational(std::size_t T, std::size_t a, std::vector<std::pair<std::size_t, int>> f)
{
    TSeries s = TSeries::one(T);
    div_binomial(s, a, Q());
    for (auto [k, m] : f) {
        for (int i = 0; i < std::abs(m); ++i) {
            if (m > 0)
                mul_binomial(s, k, 1);
            else
                div_binomial(s, k, 1);
        }
    }
    return s;
}

TSeries y_plus(std::size_t T)
{
    return series_mul(series_pow(psi_at(T, -1, 4), -2), psi_at(T, 1, 8));
}

TSeries y_minus(std::size_t T)
{
    return series_mul(series_pow(psi_at(T, 1, 4), -2), psi_at(T, 1, 8));
}

TSeries alpha_closed(int u, std::size_t T)
{
    TSeries pq4 = psi_q_at(T, 4);
    TSeries pu2 = psi_at(T, u, 2);
    TSeries t1 = series_mul(series_mul(pq4, pu2), y_plus(T));
    TSeries t2 = series_mul(series_mul(pq4, series_inv(pu2)), psi_at(T, 1, 4));
    TSeries t3 = series_mul(series_mul(pq4, series_inv(psi_at(T, 1, 2))), psi_at(T, 1, 4));
    return t1.scaled(3) + t2.scaled(3) + t3.scaled(2);
}

TSeries a_closed(std::size_t T)
{
    return series_mul(series_mul(series_inv(psi_at(T, 1, 2)), psi_at(T, 1, 4)),
                      psi_q_at(T, 4));
}

TSeries d_closed(int u, std::size_t T)
{
    TSeries pq4 = psi_q_at(T, 4);
    TSeries pu2 = psi_at(T, u, 2);
    TSeries twice = series_mul(series_mul(pq4, pu2), y_plus(T)) +
                    series_mul(series_mul(pq4, series_inv(pu2)), psi_at(T, 1, 4));
    return twice.divexact(2);
}

// Dual-side total assembled from the orbit-product forms of the two
// a-series and from the d' series with theta-defined y's, i.e. without
// using the final simplifications.
TSeries ahat_closed(int u, std::size_t T)
{
    // a_0: prod_{k odd}(1-X^{2k}) prod_{k even}(1-qX^{2k})^-1(1-X^{2k})^2 Psi(X^4)^2
    TSeries a0 = series_pow(psi_at(T, 1, 4), 2);
    // a_1: prod_{k odd}(1-X^{2k}) prod_{k even}(1-qX^{2k})^-1(1-X^{4k}) Psi(X^8)
    TSeries a1 = psi_at(T, 1, 8);
    for (std::size_t k = 1; 2 * k <= T; ++k) {
        if (k & 1) {
            mul_binomial(a0, 2 * k, 1);
            mul_binomial(a1, 2 * k, 1);
        } else {
            div_binomial(a0, 2 * k, Q());
            mul_binomial(a0, 2 * k, 1);
            mul_binomial(a0, 2 * k, 1);
            div_binomial(a1, 2 * k, Q());
            mul_binomial(a1, 4 * k, 1);
        }
    }
    // 2d' = Psi(uX^2) Psi(X^4)^2 y_+ + Psi(-uX^2) Psi(X^4)^2 y_-, y_{+-} = theta(+-X^4)
    TSeries theta = make_theta(T / 4);
    TSeries yp = series_subst(theta, 1, 4, T);
    TSeries ym = series_subst(theta, -1, 4, T);
    TSeries p4sq = series_pow(psi_at(T, 1, 4), 2);
    TSeries d2p = series_mul(series_mul(psi_at(T, u, 2), p4sq), yp) +
                  series_mul(series_mul(psi_at(T, -u, 2), p4sq), ym);
    // 2d = Psi_q(X^4) Psi(X^4)^-2 (2d')
    TSeries d2 = series_mul(series_mul(psi_q_at(T, 4), series_pow(psi_at(T, 1, 4), -2)), d2p);
    return a0 + a1 + d2.scaled(3);
}

const std::map<std::string, Builder, std::less<>>& registry()
{
    static const std::map<std::string, Builder, std::less<>> r = {
        {"gamma_prod_e0", [](int, std::size_t T) { return rational(T, 1, {{1, 1}}); }},
        {"gamma_prod_e1", [](int, std::size_t T) { return rational(T, 1, {{1, 1}}); }},
        {"reciprocal_prod_e0", [](int, std::size_t T) { return rational(T, 2, {}); }},
        {"reciprocal_prod_e1", [](int, std::size_t T) { return rational(T, 2, {}); }},
        {"orbit_halfprod_e0", [](int, std::size_t T) { return rational(T, 1, {{1, 3}}); }},
        {"orbit_halfprod_e1",
         [](int, std::size_t T) { return rational(T, 1, {{1, 1}, {2, 1}}); }},
        {"orbit_fullprod_e0", [](int, std::size_t T) { return rational(T, 2, {{2, 2}}); }},
        {"orbit_fullprod_e1", [](int, std::size_t T) { return rational(T, 2, {{4, 1}}); }},
        {"orbit_signedprod_e0", [](int, std::size_t T) { return one_minus(T, 2); }},
        {"orbit_signedprod_e1", [](int, std::size_t T) { return one_minus(T, 2); }},
        {"orbit_epsprod", [](int u, std::size_t T) { return one_minus(T, 2, u); }},
        {"orbit_abg_prod", [](int, std::size_t T) { return rational(T, 4, {{4, 2}}); }},
        {"jacobi_product",
         [](int, std::size_t T) {
             return series_mul(series_pow(psi_at(T, -1, 1), -2), psi_at(T, 1, 2));
         }},
        {"psi_pm_product",
         [](int, std::size_t T) {
             return series_mul(series_pow(psi_at(T, 1, 2), 3), series_inv(psi_at(T, 1, 4)));
         }},
        {"tau_series",
         [](int, std::size_t T) {
             return series_mul(series_pow(psi_at(T, 1, 2), 2), y_plus(T));
         }},
        {"ttilde_series",
         [](int, std::size_t T) {
             TSeries s = series_inv(psi_at(T, -1, 1)) + series_inv(psi_at(T, 1, 1));
             return series_mul(series_mul(psi_at(T, 1, 4), psi_at(T, 1, 2)), s);
         }},
        {"alpha_closed", alpha_closed},
        {"ahat_closed", ahat_closed},
        {"a_closed", [](int, std::size_t T) { return a_closed(T); }},
        {"d_closed", d_closed},
        {"y_plus", [](int, std::size_t T) { return y_plus(T); }},
        {"y_minus", [](int, std::size_t T) { return y_minus(T); }},
        {"xi_eta_sum",
         [](int, std::size_t T) {
             TSeries s = y_plus(T) + y_minus(T).scaled(3);
             return series_mul(series_pow(psi_at(T, 1, 4), 2), s).divexact(4);
         }},
        {"eta_sum",
         [](int, std::size_t T) {
             return series_mul(series_pow(psi_at(T, 1, 4), 2), y_minus(T));
         }},
        {"xi_half_eta_x2",
         [](int, std::size_t T) {
             return series_mul(series_pow(psi_at(T, 1, 4), 2), y_plus(T));
         }},
    };
    return r;
}

}  // namespace

TSeries rhs_build(std::string_view name, int u, std::size_t T)
{
    if (u != 1 && u != -1)
        throw std::invalid_argument("rhs_build: u must be +1 or -1");
    auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("rhs_build: unknown identity tag '" + std::string(name) + "'");
    return it->second(u, T);
}

std::vector<std::string> rhs_names()
{
    std::vector<std::string> v;
    for (const auto& [k, _] : registry())
        v.push_back(k);
    return v;
}

// ---------------------------------------------------------------- xi, eta

std::vector<XiEta> xi_eta(std::size_t n_max)
{
    if (n_max % 2)
        throw std::invalid_argument("xi_eta: n_max must be even");
    // coefficient of X^{2n} in Psi(X^4)^2 y_+ is 4 xi_n + eta_n
    TSeries c = rhs_build("xi_half_eta_x2", 1, 2 * n_max);
    std::vector<XiEta> out(n_max + 1, XiEta{0, 0});
    for (std::size_t n = 0; n <= n_max; n += 2) {
        long long eta = pi_frac(static_cast<long>(n), 4);
        BigInt v = c[2 * n].coeff(0) - BigInt(static_cast<long>(eta));
        if (v % 4 != 0 || v < 0)
            throw std::domain_error("xi_eta: non-integral or negative xi at n=" +
                                    std::to_string(n));
        out[n] = XiEta{BigInt(v / 4).get_si(), eta};
    }
    return out;
}

// ---------------------------------------------------------------- checks

std::vector<std::string> series_identity_names()
{
    return {"jacobi_theta", "psi_pm_product", "ahat_closed_equals_alpha_closed", "xi_eta_sum",
            "eta_sum"};
}

CheckReport verify_series_identity(std::string_view name, int u, std::size_t T)
{
    Stopwatch sw;
    CheckReport r;
    r.check_id = "series." + std::string(name);
    r.params = {{"u", u}, {"T", T}};
    TSeries lhs, rhs;
    if (name == "jacobi_theta") {
        r.ref = "theta series sum_j X^{j^2} equals Psi(-X)^-2 Psi(X^2) (Jacobi)";
        lhs = make_theta(T);
        rhs = rhs_build("jacobi_product", u, T);
    } else if (name == "psi_pm_product") {
        r.ref = "Psi(-X) Psi(X) equals Psi(X^2)^3 Psi(X^4)^-1";
        lhs = series_mul(psi_at(T, -1, 1), psi_at(T, 1, 1));
        rhs = rhs_build("psi_pm_product", u, T);
    } else if (name == "ahat_closed_equals_alpha_closed") {
        r.ref = "dual-side generating function a_0 + a_1 + 6d equals the spin-side "
                "closed form for alpha, symbolically in q";
        lhs = rhs_build("ahat_closed", u, T);
        rhs = rhs_build("alpha_closed", u, T);
    } else if (name == "xi_eta_sum" || name == "eta_sum") {
        std::size_t nm = T / 2 - (T / 2) % 2;
        auto xe = xi_eta(nm);
        lhs = TSeries(2 * nm);
        bool with_xi = name == "xi_eta_sum";
        for (std::size_t n = 0; n <= nm; n += 2)
            lhs[2 * n] = CoeffPoly(static_cast<long>((with_xi ? xe[n].xi : 0) + xe[n].eta));
        if (with_xi)
            r.ref = "sum (xi_n + eta_n) X^{2n} equals (1/4) Psi(X^4)^2 (y_+ + 3 y_-)";
        else
            r.ref = "sum eta_n X^{2n} with eta_n = pi(n/4) equals Psi(X^4)^2 y_-";
        rhs = rhs_build(name, u, 2 * nm);
    } else {
        throw std::invalid_argument("verify_series_identity: unknown identity '" +
                                    std::string(name) + "'");
    }
    auto d = first_difference(lhs, rhs);
    if (d)
        settle(r, false, rhs[*d].str(), lhs[*d].str(), "first difference at X^" + std::to_string(*d));
    else
        settle(r, true, "equal to X^" + std::to_string(rhs.trunc()),
               "equal to X^" + std::to_string(lhs.trunc()));
    r.runtime_ms = sw.ms();
    return r;
}

}  // namespace spinc
