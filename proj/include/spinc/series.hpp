#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spinc/report.hpp"

namespace spinc {

using BigInt = mpz_class;

// Dense polynomial in the formal symbol q with integer coefficients.
// Index i holds the coefficient of q^i; the zero polynomial is empty.
class CoeffPoly {
public:
    CoeffPoly() = default;
    CoeffPoly(long c);
    CoeffPoly(const BigInt& c);
    explicit CoeffPoly(std::vector<BigInt> coeffs);

    static CoeffPoly q_power(unsigned k, const BigInt& c = 1);

    const std::vector<BigInt>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    BigInt eval(const BigInt& q) const;
    CoeffPoly shifted(unsigned k) const;  // times q^k
    // Exact division by an integer; throws if some coefficient is not divisible.
    CoeffPoly divexact(const BigInt& d) const;

    CoeffPoly& operator+=(const CoeffPoly& o);
    CoeffPoly& operator-=(const CoeffPoly& o);
    CoeffPoly& operator*=(const BigInt& s);
    void add_product(const CoeffPoly& a, const CoeffPoly& b);  // *this += a*b

    friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
    friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
    friend CoeffPoly operator-(const CoeffPoly& a);
    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
    friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.c_ == b.c_; }

    std::string str() const;  // e.g. "8q + 12"

private:
    void trim();
    std::vector<BigInt> c_;
};

enum class Kernel { serial, parallel };

// Truncated power series sum_{n<=T} a_n X^n over Z[q].
class TSeries {
public:
    explicit TSeries(std::size_t T = 0) : a_(T + 1) {}

    static TSeries one(std::size_t T);
    static TSeries monomial(std::size_t T, std::size_t n, const CoeffPoly& c);
    // 1 - c X^k
    static TSeries binomial(std::size_t T, std::size_t k, const CoeffPoly& c);

    std::size_t trunc() const { return a_.size() - 1; }
    const CoeffPoly& operator[](std::size_t n) const { return a_[n]; }
    CoeffPoly& operator[](std::size_t n) { return a_[n]; }
    const std::vector<CoeffPoly>& coeffs() const { return a_; }

    TSeries truncated(std::size_t T) const;
    TSeries evaluated(const BigInt& q) const;  // constant coefficients
    TSeries scaled(const CoeffPoly& c) const;
    TSeries divexact(const BigInt& d) const;

    TSeries& operator+=(const TSeries& o);
    TSeries& operator-=(const TSeries& o);
    friend TSeries operator+(const TSeries& a, const TSeries& b);
    friend TSeries operator-(const TSeries& a, const TSeries& b);
    friend TSeries operator-(const TSeries& a);
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    friend bool operator==(const TSeries& a, const TSeries& b);

    std::string str(std::size_t max_terms = 8) const;

private:
    std::vector<CoeffPoly> a_;
};

TSeries series_mul(const TSeries& a, const TSeries& b, Kernel k = Kernel::parallel);
TSeries series_inv(const TSeries& a);
// Result has truncation out_T (default: that of a); coefficients of a beyond
// its truncation are unknown, so out_T should not exceed k*(a.trunc()+1)-1.
TSeries series_subst(const TSeries& a, int sign, unsigned k,
                     std::optional<std::size_t> out_T = std::nullopt);
TSeries series_pow(const TSeries& a, int e);  // negative e uses the inverse

// First index where the series differ (over the common truncation).
std::optional<std::size_t> first_difference(const TSeries& a, const TSeries& b);

TSeries make_psi(std::size_t T);    // prod (1 - X^k)^-1
TSeries make_psi_q(std::size_t T);  // prod (1 - q X^k)^-1
TSeries make_theta(std::size_t T);  // sum_{j in Z} X^{j^2}
// Psi(sign * X^k), Psi_q(X^k)
TSeries psi_at(std::size_t T, int sign, unsigned k);
TSeries psi_q_at(std::size_t T, unsigned k);

// Closed-form right-hand sides by tag; see rhs_names() for the list.
// u is the sign (-1)^{(q-1)/2}; it enters only where the closed form has u X^2.
TSeries rhs_build(std::string_view name, int u, std::size_t T);
std::vector<std::string> rhs_names();

// Checks of identities built purely from series primitives:
//   jacobi_theta, psi_pm_product, ahat_closed_equals_alpha_closed,
//   xi_eta_sum, eta_sum
CheckReport verify_series_identity(std::string_view name, int u, std::size_t T);
std::vector<std::string> series_identity_names();

struct XiEta {
    long long xi;
    long long eta;
};
// Indexed by n (entries at odd n are zero).
std::vector<XiEta> xi_eta(std::size_t n_max);

// Partition number pi(n); pi of a non-integer (n % d != 0 in pi_frac) is 0.
BigInt partition_number(long n);
long long partitions_ll(long n);
long long pi_frac(long n, long d);  // pi(n/d)

}  // namespace spinc
