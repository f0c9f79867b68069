#pragma once

#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "spinc/delta.hpp"

namespace spinc {

// Cases of a Frobenius-stable pair (Delta, beta Delta):
//   I    distinct, no +-1      II  distinct, one of +-1     III distinct, both +-1
//   IV   equal, no +-1, N = 2 mod 4                       V   equal, no +-1, N = 0 mod 4
//   VI   equal, both +-1, N = 2 mod 4                     VII equal, both +-1, N = 0 mod 4
enum class PairCase { I = 1, II, III, IV, V, VI, VII };
std::string to_string(PairCase c);

struct DeltaPair {
    Delta delta;               // representative; for equal pairs a beta_gamma_fixed Delta
    bool equal = false;
    int k = 0;                 // number of nonzero among n1, n-1
    std::optional<int> twist;  // the e' with gamma_{e'} Delta = Delta, for distinct pairs
    PairCase pcase = PairCase::I;
};

// Every Frobenius-stable pair exactly once.
std::vector<DeltaPair> enumerate_pairs(u32 p, unsigned N, EnumMethod m = EnumMethod::census_dp);

// prod over <alpha, gamma_e> orbits of pi(n_O)
long long phi(const Delta& d, int e);
// prod over <alpha, beta, gamma> orbits of pi(n_O); beta_gamma_fixed Deltas only
long long phi_abg(const Delta& d);

// |A|^{-1} sum n^2 z_n for a commutative group of order m; z maps a stabilizer
// order to the number of points with that stabilizer.  Throws if not integral
// or if some z_n is negative.
long long irr_equivariant_count(long long m, const std::map<long long, long long>& z);

struct HValue {
    long long h0 = 0, h1 = 0;  // per-form values (casewise mode)
    long long diff = 0;
};

enum class HMode { casewise, unified, printed };
std::string to_string(HMode m);
// casewise: per-e counts assembled from stabilizer profiles; unified: the single
// formula in phi-hat; printed: the per-case difference formulas.
HValue H_pair(const DeltaPair& pr, HMode mode);

struct AhatSplit {
    BigInt a0, a1, d;  // the three summands; ahat = a0 + a1 + 6 d
};

BigInt ahat(u32 p, unsigned N, EnumMethod m = EnumMethod::census_dp);
// per-form totals (sums of H^e over pairs)
std::pair<BigInt, BigInt> ahat_e(u32 p, unsigned N, EnumMethod m = EnumMethod::census_dp);
AhatSplit ahat_split(u32 p, unsigned N, EnumMethod m = EnumMethod::census_dp);

// all three H modes agree on every pair
CheckReport verify_H_modes(u32 p, unsigned N);
// ahat_n and the split against the closed forms for even n <= n_max
CheckReport ahat_series_check(u32 p, unsigned n_max, EnumMethod m = EnumMethod::census_dp);
// ahat_n = alpha_n for even n <= n_max
CheckReport final_identity(u32 p, unsigned n_max, EnumMethod m = EnumMethod::census_dp);

nlohmann::json pairs_json(u32 p, unsigned N);

}  // namespace spinc
