#include "spinc/fqpoly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <tuple>

namespace spinc {

// ---------------------------------------------------------------- PrimeField

bool is_prime(u32 n)
{
    if (n < 2)
        return false;
    for (u32 d = 2; u64(d) * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(u32 p) : p_(p)
{
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("p must be an odd prime");
}

u32 PrimeField::pow(u32 a, u64 e) const
{
    u64 r = 1, b = a % p_;
    while (e) {
        if (e & 1)
            r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

u32 PrimeField::inv(u32 a) const
{
    if (a % p_ == 0)
        throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

u32 PrimeField::from_int(long long v) const
{
    long long r = v % static_cast<long long>(p_);
    return static_cast<u32>(r < 0 ? r + p_ : r);
}

bool PrimeField::is_square(u32 a) const
{
    a %= p_;
    return a == 0 || pow(a, (p_ - 1) / 2) == 1;
}

u32 PrimeField::least_nonsquare() const
{
    for (u32 a = 2; a < p_; ++a)
        if (!is_square(a))
            return a;
    throw std::logic_error("no nonsquare");
}

// ---------------------------------------------------------------- FpPoly

FpPoly::FpPoly(u32 p, std::vector<u32> c) : p_(p), c_(std::move(c))
{
    for (auto& x : c_)
        x %= p_;
    trim();
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

FpPoly FpPoly::constant(u32 p, u32 c) { return FpPoly(p, {c}); }
FpPoly FpPoly::x(u32 p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::monomial(u32 p, unsigned k, u32 c)
{
    std::vector<u32> v(k + 1, 0);
    v[k] = c;
    return FpPoly(p, std::move(v));
}

FpPoly FpPoly::linear(u32 p, u32 root) { return FpPoly(p, {root ? p - root % p : 0, 1}); }

FpPoly FpPoly::from_index(u32 p, unsigned d, u64 idx)
{
    std::vector<u32> v(d + 1);
    for (unsigned i = 0; i < d; ++i) {
        v[i] = static_cast<u32>(idx % p);
        idx /= p;
    }
    v[d] = 1;
    return FpPoly(p, std::move(v));
}

u64 FpPoly::index() const
{
    u64 r = 0;
    for (int i = degree() - 1; i >= 0; --i)
        r = r * p_ + c_[i];
    return r;
}

FpPoly FpPoly::scaled(u32 s) const
{
    std::vector<u32> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        v[i] = static_cast<u32>(u64(c_[i]) * s % p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::monic() const
{
    if (c_.empty())
        return *this;
    return scaled(PrimeField(p_).inv(c_.back()));
}

FpPoly FpPoly::derivative() const
{
    std::vector<u32> v;
    for (std::size_t i = 1; i < c_.size(); ++i)
        v.push_back(static_cast<u32>(u64(c_[i]) * (i % p_) % p_));
    return FpPoly(p_, std::move(v));
}

u32 FpPoly::eval(u32 x) const
{
    u64 r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = (r * x + *it) % p_;
    return static_cast<u32>(r);
}

FpPoly operator+(const FpPoly& a, const FpPoly& b)
{
    std::vector<u32> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (a[i] + b[i]) % a.p_;
    return FpPoly(a.p_, std::move(v));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b)
{
    std::vector<u32> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (a[i] + a.p_ - b[i]) % a.p_;
    return FpPoly(a.p_, std::move(v));
}

FpPoly operator-(const FpPoly& a) { return FpPoly(a.p_) - a; }

FpPoly operator*(const FpPoly& a, const FpPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return FpPoly(a.p_);
    std::vector<u64> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i])
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            acc[i + j] = (acc[i + j] + u64(a.c_[i]) * b.c_[j]) % a.p_;
    }
    std::vector<u32> v(acc.begin(), acc.end());
    return FpPoly(a.p_, std::move(v));
}

bool operator<(const FpPoly& a, const FpPoly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::string FpPoly::str() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        u32 c = c_[i];
        if (!c)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c != 1)
            os << c;
        if (i >= 1)
            os << "X";
        if (i >= 2)
            os << "^" << i;
    }
    return os.str();
}

std::size_t FpPolyHash::operator()(const FpPoly& f) const
{
    std::size_t h = f.p() * 1000003u;
    for (u32 c : f.coeffs())
        h = h * 1315423911u + c + 1;
    return h;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    const u32 p = a.p();
    if (a.degree() < b.degree())
        return {FpPoly(p), a};
    PrimeField F(p);
    u32 li = F.inv(b.lead());
    std::vector<u32> r = a.coeffs();
    const auto& bc = b.coeffs();
    int db = b.degree();
    std::vector<u32> q(a.degree() - db + 1, 0);
    for (int i = a.degree(); i >= db; --i) {
        u32 c = F.mul(r[i], li);
        q[i - db] = c;
        if (!c)
            continue;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly gcd(const FpPoly& a, const FpPoly& b)
{
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod)
{
    if (e < 0)
        throw std::invalid_argument("negative exponent");
    FpPoly r = FpPoly::constant(base.p(), 1) % mod, b = base % mod;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = (r * b) % mod;
    }
    return r;
}

FpPoly pow(const FpPoly& base, unsigned e)
{
    FpPoly r = FpPoly::constant(base.p(), 1);
    for (unsigned i = 0; i < e; ++i)
        r = r * base;
    return r;
}

FpPoly reciprocal(const FpPoly& f)
{
    if (f[0] == 0)
        throw std::domain_error("reciprocal of a polynomial divisible by X");
    std::vector<u32> v(f.coeffs().rbegin(), f.coeffs().rend());
    return FpPoly(f.p(), std::move(v)).monic();
}

FpPoly scale_roots_down(const FpPoly& f, u32 c)
{
    // g(X) = f(cX): roots r/c
    PrimeField F(f.p());
    std::vector<u32> v(f.coeffs().size());
    u32 ck = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = F.mul(f[i], ck);
        ck = F.mul(ck, c);
    }
    return FpPoly(f.p(), std::move(v)).monic();
}

FpPoly twisted_reciprocal(const FpPoly& f, u32 c)
{
    return scale_roots_down(reciprocal(f), c);
}

FpPoly negated(const FpPoly& f) { return scale_roots_down(f, f.p() - 1); }

// ---------------------------------------------------------------- irreducibles

namespace {

std::vector<unsigned> prime_divisors(unsigned n)
{
    std::vector<unsigned> r;
    for (unsigned d = 2; d <= n; ++d)
        if (n % d == 0) {
            r.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    return r;
}

int mobius(unsigned n)
{
    int m = 1;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            n /= d;
            if (n % d == 0)
                return 0;
            m = -m;
        }
    if (n > 1)
        m = -m;
    return m;
}

FpPoly frobenius_power(const FpPoly& f, unsigned k)
{
    // X^{p^k} mod f
    FpPoly r = FpPoly::x(f.p()) % f;
    BigInt p = f.p();
    for (unsigned i = 0; i < k; ++i)
        r = powmod(r, p, f);
    return r;
}

}  // namespace

bool is_irreducible_rabin(const FpPoly& f)
{
    int d = f.degree();
    if (d < 1)
        return false;
    if (d == 1)
        return true;
    FpPoly g = f.monic();
    FpPoly X = FpPoly::x(f.p());
    if (frobenius_power(g, d) != X % g)
        return false;
    for (unsigned l : prime_divisors(d)) {
        FpPoly h = frobenius_power(g, d / l) - X;
        if (gcd(h, g).degree() != 0)
            return false;
    }
    return true;
}

u64 irreducible_count(u32 p, unsigned d)
{
    if (d == 0)
        return 0;
    BigInt s = 0;
    for (unsigned k = 1; k <= d; ++k)
        if (d % k == 0) {
            BigInt t;
            mpz_ui_pow_ui(t.get_mpz_t(), p, k);
            s += mobius(d / k) * t;
        }
    s /= d;
    return s.get_ui();
}

unsigned default_degree_cap(u32 p)
{
    if (p == 3)
        return 12;
    if (p == 5)
        return 10;
    if (p == 7)
        return 8;
    return 6;
}

std::vector<u64> sieve_irreducibles(u32 p, unsigned d,
                                    const std::vector<std::vector<u64>>& lower, Kernel k)
{
    if (d == 0)
        return {};
    if (d == 1) {
        std::vector<u64> all(p);
        for (u32 i = 0; i < p; ++i)
            all[i] = i;
        return all;
    }
    std::vector<u64> pw(d + 1, 1);
    for (unsigned i = 1; i <= d; ++i)
        pw[i] = pw[i - 1] * p;
    const u64 N = pw[d];
    std::vector<unsigned char> reducible(N, 0);

    // flatten the (degree, factor) work list
    std::vector<std::pair<unsigned, u64>> work;
    for (unsigned a = 1; a <= d / 2; ++a) {
        if (a >= lower.size())
            throw std::invalid_argument("sieve needs irreducibles of all degrees up to d/2");
        for (u64 c : lower[a])
            work.emplace_back(a, c);
    }

    auto mark_multiples = [&](unsigned a, u64 code) {
        std::vector<u32> f(a + 1), h(d, 0), g(d - a, 0);
        u64 c = code;
        for (unsigned i = 0; i < a; ++i) {
            f[i] = static_cast<u32>(c % p);
            c /= p;
        }
        f[a] = 1;
        u64 idx = 0;
        for (unsigned i = 0; i < a; ++i) {
            h[d - a + i] = f[i];
            idx += f[i] * pw[d - a + i];
        }
        const u64 count = pw[d - a];
        for (u64 step = 0; step < count; ++step) {
            std::atomic_ref<unsigned char>(reducible[idx]).store(1, std::memory_order_relaxed);
            for (unsigned kk = 0; kk < d - a; ++kk) {
                for (unsigned i = 0; i <= a; ++i) {
                    unsigned pos = kk + i;
                    u32 old = h[pos];
                    u32 nw = (old + f[i]) % p;
                    h[pos] = nw;
                    idx = idx - old * pw[pos] + nw * pw[pos];
                }
                if (++g[kk] < p)
                    break;
                g[kk] = 0;
            }
        }
    };

    const long W = static_cast<long>(work.size());
    if (k == Kernel::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long w = 0; w < W; ++w)
            mark_multiples(work[w].first, work[w].second);
    } else {
        for (long w = 0; w < W; ++w)
            mark_multiples(work[w].first, work[w].second);
    }

    std::vector<u64> out;
    for (u64 i = 0; i < N; ++i)
        if (!reducible[i])
            out.push_back(i);
    return out;
}

namespace {

struct IrrCache {
    std::mutex m;
    std::map<std::tuple<u32, unsigned, int>, std::shared_ptr<const std::vector<u64>>> data;
};

IrrCache& irr_cache()
{
    static IrrCache c;
    return c;
}

}  // namespace

const std::vector<u64>& irreducible_codes(u32 p, unsigned d, unsigned cap, IrrMethod m)
{
    PrimeField F(p);
    if (cap == 0)
        cap = default_degree_cap(p);
    if (d > cap)
        throw CapExceeded("degree " + std::to_string(d) + " exceeds the cap " +
                          std::to_string(cap) + " for p = " + std::to_string(p));
    u64 N = 1;
    for (unsigned i = 0; i < d; ++i)
        N *= p;
    if (m == IrrMethod::automatic)
        m = N <= kSieveLimit ? IrrMethod::sieve : IrrMethod::rabin;
    auto key = std::make_tuple(p, d, static_cast<int>(m));
    auto& cache = irr_cache();
    {
        std::lock_guard<std::mutex> lk(cache.m);
        auto it = cache.data.find(key);
        if (it != cache.data.end())
            return *it->second;
    }
    std::vector<u64> codes;
    if (m == IrrMethod::sieve) {
        if (N > kSieveLimit)
            throw CapExceeded("sieve table too large");
        std::vector<std::vector<u64>> lower(d / 2 + 1);
        for (unsigned a = 1; a <= d / 2; ++a)
            lower[a] = irreducible_codes(p, a, cap);
        codes = sieve_irreducibles(p, d, lower, Kernel::parallel);
    } else {
        std::vector<unsigned char> ok(N, 0);
        const long long NN = static_cast<long long>(N);
#pragma omp parallel for schedule(dynamic, 256)
        for (long long i = 0; i < NN; ++i)
            ok[i] = is_irreducible_rabin(FpPoly::from_index(p, d, static_cast<u64>(i)));
        for (u64 i = 0; i < N; ++i)
            if (ok[i])
                codes.push_back(i);
    }
    std::lock_guard<std::mutex> lk(cache.m);
    auto [it, inserted] =
        cache.data.emplace(key, std::make_shared<const std::vector<u64>>(std::move(codes)));
    return *it->second;
}

std::vector<FpPoly> irreducibles(u32 p, unsigned d, unsigned cap)
{
    std::vector<FpPoly> r;
    for (u64 c : irreducible_codes(p, d, cap))
        r.push_back(FpPoly::from_index(p, d, c));
    return r;
}

// ---------------------------------------------------------------- factoring

namespace {

FpPoly exact_div(const FpPoly& a, const FpPoly& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw std::logic_error("inexact polynomial division");
    return q;
}

// f = sum c_i X^{ip}  ->  sum c_i X^i  (coefficients are fixed by Frobenius on F_p)
FpPoly pth_root(const FpPoly& f)
{
    std::vector<u32> v;
    for (std::size_t i = 0; i < f.coeffs().size(); i += f.p())
        v.push_back(f.coeffs()[i]);
    return FpPoly(f.p(), std::move(v));
}

void squarefree(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out)
{
    const FpPoly one = FpPoly::constant(f.p(), 1);
    FpPoly c = gcd(f, f.derivative());
    FpPoly w = exact_div(f, c);
    int i = 1;
    while (w != one) {
        FpPoly y = gcd(w, c);
        FpPoly z = exact_div(w, y);
        if (z.degree() > 0)
            out.emplace_back(z, i * mult);
        ++i;
        w = y;
        c = exact_div(c, y);
    }
    if (c != one)
        squarefree(pth_root(c), mult * static_cast<int>(f.p()), out);
}

void equal_degree(const FpPoly& g, unsigned i, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    if (static_cast<unsigned>(g.degree()) == i) {
        out.push_back(g);
        return;
    }
    const u32 p = g.p();
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, i);
    e = (e - 1) / 2;
    std::uniform_int_distribution<u32> dist(0, p - 1);
    for (;;) {
        std::vector<u32> v(g.degree());
        for (auto& x : v)
            x = dist(rng);
        FpPoly a(p, std::move(v));
        if (a.degree() < 1)
            continue;
        FpPoly b = powmod(a, e, g) - FpPoly::constant(p, 1);
        FpPoly c = gcd(b, g);
        if (c.degree() > 0 && c.degree() < g.degree()) {
            equal_degree(c, i, rng, out);
            equal_degree(exact_div(g, c), i, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f)
{
    if (f.degree() < 1)
        return {};
    std::vector<std::pair<FpPoly, int>> sqf, out;
    squarefree(f.monic(), 1, sqf);
    std::mt19937_64 rng(0x5eed);
    const u32 p = f.p();
    const FpPoly X = FpPoly::x(p);
    for (auto& [g0, mult] : sqf) {
        FpPoly g = g0;
        FpPoly h = X % g;
        for (unsigned i = 1; g.degree() >= 2 * static_cast<int>(i); ++i) {
            h = powmod(h, BigInt(p), g);
            FpPoly c = gcd(h - X, g);
            if (c.degree() > 0) {
                std::vector<FpPoly> parts;
                equal_degree(c, i, rng, parts);
                for (auto& q : parts)
                    out.emplace_back(q, mult);
                g = exact_div(g, c);
                h = h % g;
            }
        }
        if (g.degree() > 0)
            out.emplace_back(g, mult);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    // merge equal factors coming from different squarefree parts
    std::vector<std::pair<FpPoly, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

// ---------------------------------------------------------------- QuotientRing

QuotientRing::QuotientRing(FpPoly f) : f_(std::move(f))
{
    if (!f_.is_monic() || f_.degree() < 1)
        throw std::invalid_argument("modulus must be monic of positive degree");
}

FpPoly QuotientRing::gen() const { return FpPoly::x(p()) % f_; }

FpPoly QuotientRing::constant(long long c) const
{
    return FpPoly::constant(p(), PrimeField(p()).from_int(c));
}

FpPoly QuotientRing::pow(const FpPoly& a, const BigInt& e) const
{
    if (e < 0)
        return powmod(inv(a), -e, f_);
    return powmod(a, e, f_);
}

FpPoly QuotientRing::frob(const FpPoly& a) const { return powmod(a, BigInt(p()), f_); }

FpPoly QuotientRing::inv(const FpPoly& a) const
{
    // extended Euclid on (a, f)
    FpPoly r0 = f_, r1 = a % f_;
    FpPoly s0(p()), s1 = one();
    if (r1.is_zero())
        throw std::domain_error("inverse of zero in quotient ring");
    while (r1.degree() > 0) {
        auto [q, r] = divmod(r0, r1);
        FpPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        if (r1.is_zero())
            throw std::domain_error("element is not invertible");
    }
    PrimeField F(p());
    return (s1.scaled(F.inv(r1[0]))) % f_;
}

FpPoly QuotientRing::min_poly(const FpPoly& a0) const
{
    FpPoly a = a0 % f_;
    std::vector<FpPoly> conj{a};
    for (FpPoly b = frob(a); b != a; b = frob(b))
        conj.push_back(b);
    // coefficients in the ring, lowest first
    std::vector<FpPoly> c{one()};
    for (const auto& r : conj) {
        std::vector<FpPoly> n(c.size() + 1, FpPoly(p()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] = n[i + 1] + c[i];
            n[i] = n[i] - mul(c[i], r);
        }
        c = std::move(n);
    }
    std::vector<u32> out;
    for (auto& x : c) {
        if (x.degree() > 0)
            throw std::logic_error("minimal polynomial has non-constant coefficients");
        out.push_back(x[0]);
    }
    return FpPoly(p(), std::move(out));
}

}  // namespace spinc
