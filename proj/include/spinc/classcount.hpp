#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "spinc/delta.hpp"

namespace spinc {

// Unipotent class statistics for special orthogonal groups, even n <= n_max.
// A partition is admissible when every even part has even multiplicity; I is
// the set of distinct odd parts.
struct PartitionStats {
    unsigned n_max = 0;
    std::vector<long long> tau;     // sum of 2^{|I|-1} over admissible partitions with I nonempty
    std::vector<long long> ttilde;  // admissible, I nonempty, odd parts of multiplicity <= 1
    std::vector<long long> eta;     // pi(n/4): classes with I empty, up to the involution
    std::vector<std::vector<std::vector<int>>> admissible;  // indexed by n, parts descending

    // classes with I empty (2 pi(n/4) for n > 0, one class for n = 0)
    long long T0(unsigned n) const { return n == 0 ? 1 : 2 * eta.at(n); }
    long long T0bar(unsigned n) const { return eta.at(n); }
};

const PartitionStats& partition_stats(unsigned n_max);
// tau and ttilde against their generating functions
CheckReport verify_partition_stats(unsigned n_max);

// Semisimple class counts over the twist-0 reciprocal class.  e is the Witt class of the form.
long long f_delta(const Delta& d, int e);
long long f_delta_diff(const Delta& d);
// sum over Delta of f_delta(d, e) against q^{N/2} (N >= 4) or q - (-1)^e (N = 2)
CheckReport verify_f_totals(u32 p, unsigned N);

// Reading of the fourth h-term when only +1 occurs as an eigenvalue with
// multiplicity: the corrected form uses pi(n_O/2) like the printed difference.
enum class H4Reading { corrected, literal };

struct HTerms {
    std::array<long long, 7> h{};
    int count = 0;  // number of terms used by the case
    int case_id = 0;  // 1: both +-1, 2: only +1, 3: only -1, 4: neither
};

HTerms double_a_terms(const Delta& d, int e, H4Reading r = H4Reading::corrected);
// number of delta-moved classes over Delta in the spin group for the form of class e
long long double_a_e(const Delta& d, int e, H4Reading r = H4Reading::corrected);
// the printed difference formula for the case
long long double_a_diff(const Delta& d);

enum class AlphaMethod { direct, census_dp };
std::string to_string(AlphaMethod m);

// Class-count difference alpha_N; alpha_0 = 8.
BigInt alpha(u32 p, unsigned N, AlphaMethod m, H4Reading r = H4Reading::corrected);
// alpha_n against the closed-form coefficient for even n <= n_max
CheckReport alpha_check(u32 p, unsigned n_max, AlphaMethod m);
// per-Delta h-term sums against the printed differences, and nonnegativity
CheckReport verify_double_a(u32 p, unsigned N);

// Per-Delta breakdown keyed by the expanded polynomial.
nlohmann::json alpha_breakdown_json(u32 p, unsigned N);

}  // namespace spinc
