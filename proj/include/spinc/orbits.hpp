#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spinc/fqpoly.hpp"
#include "spinc/report.hpp"

namespace spinc {

// Map groups acting on the punctured closure k - {0, 1, -1}.
enum class OrbitGroup { gamma, gamma1, alpha_gamma, alpha_gamma1, alpha_beta_gamma };

std::string to_string(OrbitGroup g);
OrbitGroup orbit_group_from_string(const std::string& s);
// twist e of the group (gamma1 variants have e = 1)
int twist_of(OrbitGroup g);

// Generator bit mask for orbit_follow.
enum Gen : unsigned { kAlpha = 1, kBeta = 2, kGamma = 4, kGamma1 = 8 };

// prime: a single gamma_e-orbit (O'); double_prime: a union of two (O'').
// other: groups where the distinction is not used.
enum class Kind { prime, double_prime, other };

struct OrbitSig {
    unsigned size = 0;
    Kind kind = Kind::other;
    int j = 0;
    int eps = -1;  // -1 where undefined (twist 1, or non alpha-gamma groups)
    bool contains_J = false;

    auto tie() const { return std::tie(size, kind, j, eps, contains_J); }
    friend bool operator<(const OrbitSig& a, const OrbitSig& b) { return a.tie() < b.tie(); }
    friend bool operator==(const OrbitSig& a, const OrbitSig& b) { return a.tie() == b.tie(); }
};

// One orbit of a census.  For twist 1 groups all polynomials are written in the
// scaled coordinate Y = X/t with t^2 = n (n the least nonsquare mod p): there
// gamma_1 becomes the Frobenius and alpha becomes Y -> 1/(nY), so every orbit
// polynomial has coefficients in F_p.
struct Orbit {
    FpPoly poly;                  // product of (X - r) over the orbit, canonical key
    std::vector<FpPoly> factors;  // its irreducible factors (the Frobenius orbits), sorted
    OrbitSig sig;
};

struct OrbitCensus {
    u32 p = 3;
    OrbitGroup group = OrbitGroup::alpha_gamma;
    unsigned D = 0;               // cap on the degree of the irreducible factors
    std::vector<Orbit> orbits;    // sorted by (size, poly)
    std::unordered_map<FpPoly, std::size_t, FpPolyHash> factor_index;

    std::map<OrbitSig, long> counts() const;
    // largest orbit size s such that every orbit of size <= s is present
    unsigned complete_size() const;
    const Orbit* find_J() const;
};

// The least quadratic nonsquare used for the scaled coordinate.
u32 scale_nonsquare(u32 p);
// Polynomial in the scaled coordinate that represents the eigenvalues +1, -1 (Y^2 - 1/n),
// and the set J (Y^2 + 1/n); for twist 0 these are X^2 - 1 and X^2 + 1.
FpPoly pm_one_poly(u32 p, int e);
FpPoly j_poly(u32 p, int e);

struct FollowedOrbit {
    std::vector<FpPoly> elements;        // BFS order; for one generator, the cycle in order
    std::vector<FpPoly> ring_poly;       // coefficients of prod (X - r), lowest first, in the ring
    std::optional<FpPoly> canonical;     // F_p polynomial when the coefficients are constants
    unsigned gamma_cycle = 0;            // length of the gamma (or gamma_1) cycle through the seed
    Kind kind = Kind::other;             // for {alpha, gamma_e}
};

// Follows the orbit of seed under the given generators inside K.
// If scale (an element with scale^2 = n) is given, the canonical polynomial is the one
// of {r / scale}, which is how twist 1 orbits are keyed in a census.
FollowedOrbit orbit_follow(const QuotientRing& K, const FpPoly& seed, unsigned gens,
                           const std::optional<FpPoly>& scale = std::nullopt);

// epsilon of an alpha-gamma orbit, evaluated at two representatives (asserted equal).
int epsilon_of(const QuotientRing& K, const FollowedOrbit& o);
// epsilon at a single representative r of an orbit of the given size and kind
int epsilon_at(const QuotientRing& K, const FpPoly& r, unsigned size, Kind kind);

OrbitCensus orbit_census(u32 p, OrbitGroup g, unsigned D, Kernel k = Kernel::parallel);
// memoized census (thread-safe); optionally backed by a directory of JSON files
const OrbitCensus& orbit_census_cached(u32 p, OrbitGroup g, unsigned D);
void set_census_cache_dir(const std::string& dir);

nlohmann::json census_counts_json(const OrbitCensus& c);
nlohmann::json census_to_json(const OrbitCensus& c);
OrbitCensus census_from_json(const nlohmann::json& j);

// Sum over Frobenius-orbit sizes d of d * count against the number of elements
// of k - {0, 1, -1} of degree d, for all d <= D.
CheckReport census_completeness(const OrbitCensus& c);

// Orbit-product identities; tag is one of the rhs_build names
// gamma_prod_e0/e1, reciprocal_prod_e0/e1, orbit_halfprod_e0/e1,
// orbit_fullprod_e0/e1, orbit_signedprod_e0/e1, orbit_epsprod, orbit_abg_prod.
CheckReport verify_orbit_products(u32 p, const std::string& tag, std::size_t T);
std::vector<std::string> orbit_product_tags();

// J is an O' orbit of <alpha, gamma_e> exactly when q = -(-1)^e mod 4.
CheckReport verify_J_kind(u32 p, unsigned D);

}  // namespace spinc
