#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "spinc/series.hpp"

namespace spinc {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic in F_p for a small odd prime p.
class PrimeField {
public:
    explicit PrimeField(u32 p);
    u32 p() const { return p_; }
    u32 add(u32 a, u32 b) const { return (a + b) % p_; }
    u32 sub(u32 a, u32 b) const { return (a + p_ - b) % p_; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>((u64(a) * b) % p_); }
    u32 neg(u32 a) const { return a ? p_ - a : 0; }
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    u32 from_int(long long v) const;
    bool is_square(u32 a) const;  // 0 counts as a square
    u32 least_nonsquare() const;

private:
    u32 p_;
};

bool is_prime(u32 n);

// Polynomial over F_p, lowest degree first, no trailing zeros.
class FpPoly {
public:
    explicit FpPoly(u32 p = 3) : p_(p) {}
    FpPoly(u32 p, std::vector<u32> c);

    static FpPoly constant(u32 p, u32 c);
    static FpPoly x(u32 p);
    static FpPoly monomial(u32 p, unsigned k, u32 c = 1);
    static FpPoly linear(u32 p, u32 root);  // X - root
    // monic polynomial of degree d whose lower coefficients are the base-p digits of idx
    static FpPoly from_index(u32 p, unsigned d, u64 idx);

    u32 p() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    u32 lead() const { return c_.empty() ? 0 : c_.back(); }
    u32 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<u32>& coeffs() const { return c_; }
    u64 index() const;  // inverse of from_index for monic polynomials

    FpPoly monic() const;
    FpPoly derivative() const;
    u32 eval(u32 x) const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    FpPoly scaled(u32 s) const;
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
    // canonical order: degree first, then coefficients from the top down
    friend bool operator<(const FpPoly& a, const FpPoly& b);

    std::string str() const;

private:
    void trim();
    u32 p_;
    std::vector<u32> c_;
};

struct FpPolyHash {
    std::size_t operator()(const FpPoly& f) const;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);  // monic (or zero)
FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod);
FpPoly pow(const FpPoly& base, unsigned e);

// X^d f(1/X), made monic: roots are the inverses of the roots of f (f(0) != 0).
FpPoly reciprocal(const FpPoly& f);
// Monic polynomial whose roots are 1/(c r) for the roots r of f.
FpPoly twisted_reciprocal(const FpPoly& f, u32 c);
// Monic polynomial whose roots are the negatives of the roots of f.
FpPoly negated(const FpPoly& f);
// f(c X) / c^deg, roots divided by c.
FpPoly scale_roots_down(const FpPoly& f, u32 c);

bool is_irreducible_rabin(const FpPoly& f);

// Number of monic irreducibles of degree d over F_p (necklace formula).
u64 irreducible_count(u32 p, unsigned d);

enum class IrrMethod { automatic, sieve, rabin };

// Degree caps per prime; enumeration beyond them is refused.
unsigned default_degree_cap(u32 p);
inline constexpr u64 kSieveLimit = 10'000'000;

// Monic irreducibles of degree d as from_index codes, ascending.
// Memoized; thread-safe.
const std::vector<u64>& irreducible_codes(u32 p, unsigned d, unsigned cap = 0,
                                          IrrMethod m = IrrMethod::automatic);
std::vector<FpPoly> irreducibles(u32 p, unsigned d, unsigned cap = 0);

// Sieve kernel without memoization: codes of monic irreducibles of degree d,
// given the irreducibles of all degrees <= d/2.
std::vector<u64> sieve_irreducibles(u32 p, unsigned d,
                                    const std::vector<std::vector<u64>>& lower, Kernel k);

// Full factorization into monic irreducibles with multiplicities, sorted.
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f);

// F_p[X]/(f) for monic irreducible f; elements are reduced FpPolys.
class QuotientRing {
public:
    explicit QuotientRing(FpPoly f);

    const FpPoly& modulus() const { return f_; }
    u32 p() const { return f_.p(); }
    unsigned degree() const { return static_cast<unsigned>(f_.degree()); }

    FpPoly gen() const;  // residue of X
    FpPoly one() const { return FpPoly::constant(p(), 1); }
    FpPoly constant(long long c) const;
    FpPoly reduce(const FpPoly& a) const { return a % f_; }

    FpPoly add(const FpPoly& a, const FpPoly& b) const { return a + b; }
    FpPoly sub(const FpPoly& a, const FpPoly& b) const { return a - b; }
    FpPoly neg(const FpPoly& a) const { return -a; }
    FpPoly mul(const FpPoly& a, const FpPoly& b) const { return (a * b) % f_; }
    FpPoly inv(const FpPoly& a) const;
    FpPoly pow(const FpPoly& a, const BigInt& e) const;
    FpPoly frob(const FpPoly& a) const;  // a^p

    bool is_const(const FpPoly& a, long long c) const { return a == constant(c); }
    FpPoly min_poly(const FpPoly& a) const;

private:
    FpPoly f_;
};

}  // namespace spinc
