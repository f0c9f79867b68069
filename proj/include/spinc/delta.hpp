#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "spinc/orbits.hpp"

namespace spinc {

// Classes of Delta enumerated for a twist e:
//   monic_fixed      monic, Delta(0) != 0, fixed by gamma_e
//   recip_fixed      additionally alpha-fixed with even multiplicities at +-1
//   recip0_fixed     recip_fixed with no roots +-1
//   beta_gamma_fixed recip_fixed and fixed by beta and gamma (the twist plays no role)
enum class DeltaClass { monic_fixed, recip_fixed, recip0_fixed, beta_gamma_fixed };
enum class EnumMethod { direct, census_dp };

std::string to_string(DeltaClass c);
std::string to_string(EnumMethod m);

// The census group whose orbits carry the multiplicities of a class.
OrbitGroup delta_group(int e, DeltaClass c);

// Delta stored by orbit multiplicities.  For e = 1 all polynomials are in the
// scaled coordinate of the orbit census.
struct Delta {
    u32 p = 3;
    int e = 0;
    DeltaClass cls = DeltaClass::recip_fixed;
    unsigned N = 0;
    const OrbitCensus* census = nullptr;
    std::vector<std::pair<std::size_t, int>> mults;  // (orbit index, multiplicity), sorted
    int n1 = 0;
    int nm1 = 0;

    auto key() const { return std::tie(e, cls, N, mults, n1, nm1); }
    friend bool operator==(const Delta& a, const Delta& b) { return a.key() == b.key(); }
    friend bool operator<(const Delta& a, const Delta& b) { return a.key() < b.key(); }
};

// Expanded polynomial (scaled coordinate when e = 1).
FpPoly expand(const Delta& d);
// Factorizes f and reads off the orbit multiplicities; throws if f is not in the class.
Delta delta_from_poly(u32 p, int e, DeltaClass cls, const FpPoly& f);

// Largest N accepted for a class; direct enumeration of monic_fixed is refused above 2e6 vectors.
unsigned delta_degree_cap(u32 p);

void for_each_delta(u32 p, int e, unsigned N, DeltaClass cls, EnumMethod m,
                    const std::function<void(const Delta&)>& f);
std::vector<Delta> enumerate_delta(u32 p, int e, unsigned N, DeltaClass cls, EnumMethod m);

// Closed-form sizes: q^N - q^{N-1}, q^{N/2}, q^{N/4} or q^{(N-2)/4}; nullopt for recip0_fixed.
std::optional<BigInt> class_size_closed(u32 p, unsigned N, DeltaClass cls);

struct DeltaInvariants {
    int j0 = -1;   // j for twist 0, where defined
    int j1 = -1;   // j for twist 1, where defined
    int eps = -1;  // epsilon (twist-0 context)
    int nJ = 0;    // multiplicity at J
};

DeltaInvariants invariants_of(const Delta& d);

// Multiplicities over the <alpha, gamma_e> census of the same cap: the Delta's own
// orbits for a reciprocal class of twist e, a decomposition for beta_gamma_fixed.
struct AgMults {
    const OrbitCensus* census = nullptr;
    std::vector<std::pair<std::size_t, int>> mults;
};
AgMults ag_multiplicities(const Delta& d, int e);

struct DeltaProfile {
    int j0, j1, eps, n1, nm1, nJ;
    unsigned N;
    auto tie() const { return std::tie(j0, j1, eps, n1, nm1, nJ, N); }
    friend bool operator<(const DeltaProfile& a, const DeltaProfile& b) { return a.tie() < b.tie(); }
    friend bool operator==(const DeltaProfile& a, const DeltaProfile& b) { return a.tie() == b.tie(); }
};
DeltaProfile profile_of(const Delta& d);
nlohmann::json to_json(const Delta& d);

// beta-twist of a recip class Delta (roots negated).
Delta beta_twist(const Delta& d);

struct SignedSums {
    long x0 = 0;  // sum over eps = 0 of (-1)^j, twist-0 recip0 class
    long x1 = 0;  // sum over eps = 1
    long x = 0;   // sum of (-1)^{j + eps}
    long g0 = 0;  // sum of (-1)^{j_0} over the twist-0 recip0 class
    long g1 = 0;  // sum of (-1)^{j_1} over the twist-1 recip0 class
};
SignedSums signed_sums(u32 p, unsigned N);
SignedSums signed_sums_closed(u32 p, unsigned N);

CheckReport verify_signed_sums(u32 p, unsigned N);
CheckReport verify_class_counts(u32 p, unsigned N);
// direct and census-DP enumeration produce the same Deltas (hence the same profiles)
CheckReport verify_enumeration_agreement(u32 p, int e, unsigned N, DeltaClass cls);
// j is unchanged by the beta-twist, for both twists
CheckReport verify_beta_invariance(u32 p, unsigned N);

// Roots of a Delta with the maps alpha, beta, gamma_0, gamma_1 as permutations and
// the multiplicity function n.  Indices are positions in the root list.
struct RootModel {
    std::vector<int> alpha, beta;
    std::vector<int> gam[2];
    std::vector<long> n;
    std::size_t size() const { return n.size(); }
};

// Root model of a recip0 class Delta, built from the concrete <alpha, beta, gamma>
// closure of each factor inside its own quotient field.
RootModel root_model(const Delta& d);

// (i) cocycle identity for all triples of choice sets, (ii) the beta-transport is
// independent of U, (iii) the gamma_e-transport is independent of U, for e = 0, 1.
CheckReport torsor_checks(const RootModel& m);
CheckReport torsor_checks(const Delta& d);
CheckReport verify_torsors(u32 p, int e, unsigned N);

}  // namespace spinc
