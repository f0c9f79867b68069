#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spinc/delta.hpp"

namespace spinc {

// Brute-force ground truth in dimensions 2 and 4 over F_3, F_5.

enum class WittType { plus, minus };
std::string to_string(WittType t);
inline int witt_class(WittType t) { return t == WittType::plus ? 0 : 1; }

// Diagonal form sum a_i x_i^2.
struct QuadForm {
    unsigned N = 4;
    u32 p = 3;
    std::vector<u32> a;
    WittType type = WittType::plus;

    u32 value(const std::vector<u32>& v) const;
    u32 bilinear(const std::vector<u32>& v, const std::vector<u32>& w) const;  // Q(v+w)-Q(v)-Q(w)
};

// Diagonal realization of the type; the type is recomputed and asserted.
QuadForm make_form(unsigned N, u32 p, WittType t);
// plus iff there is a totally isotropic subspace of dimension N/2
WittType witt_type_of(const QuadForm& f);

// Elements of C(Q) (coefficients by blade bitmask) and N x N matrices (row-major)
// share this storage; unused entries are zero.
using Elem = std::array<std::uint8_t, 16>;

struct ElemHash {
    std::size_t operator()(const Elem& e) const;
};

class Clifford {
public:
    explicit Clifford(const QuadForm& f);
    const QuadForm& form() const { return f_; }
    unsigned dim() const { return 1u << f_.N; }

    Elem mul(const Elem& x, const Elem& y) const;
    Elem reverse(const Elem& x) const;  // the anti-automorphism fixing V
    Elem scalar(u32 c) const;
    Elem vec(const std::vector<u32>& v) const;
    bool is_vector(const Elem& x) const;
    std::vector<u32> vector_part(const Elem& x) const;

private:
    QuadForm f_;
    PrimeField F_;
    std::vector<std::uint8_t> coef_;  // sign * prod a_i for blade products, mod p
};

// Matrices over F_p of size n, stored in an Elem.
struct MatOps {
    unsigned n;
    u32 p;
    Elem identity() const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem pow(const Elem& x, u64 e) const;
    u32 at(const Elem& m, unsigned i, unsigned j) const { return m[i * n + j]; }
    unsigned rank(const Elem& m) const;
    u32 det(const Elem& m) const;
    FpPoly charpoly(const Elem& m) const;
    std::vector<std::vector<u32>> kernel(const Elem& m) const;  // basis of {v : m v = 0}
    Elem add_scalar(const Elem& m, u32 c) const;               // m + c I
    std::vector<u32> apply(const Elem& m, const std::vector<u32>& v) const;
};

// Finite group given by canonical (sorted) elements and generators.
struct GroupTable {
    QuadForm form;
    std::vector<Elem> elems;
    std::unordered_map<Elem, int, ElemHash> index;
    std::vector<int> gens;
    std::vector<int> class_of;    // class id per element
    std::vector<int> class_rep;   // smallest element index per class
    int identity = -1;
    int delta = -1;               // the scalar -1

    std::size_t order() const { return elems.size(); }
    std::size_t class_count() const { return class_rep.size(); }
    int find(const Elem& e) const;
};

// Order of the spin group and of SO for the form: q^2 (q^2-1)^2, q^2 (q^4-1), q -+ 1.
std::size_t expected_order(unsigned N, u32 p, WittType t);

using ElemMul = std::function<Elem(const Elem&, const Elem&)>;
// Closure of a generating set under right multiplication (breadth first), sorted.
// The parallel kernel computes each frontier's products with OpenMP.  Throws
// once more than limit elements are found.
std::vector<Elem> closure(const Elem& one, const std::vector<Elem>& gens, const ElemMul& mul,
                          std::size_t limit, Kernel k);

// Spin group of the form; generators v w / c with Q(v) = Q(w) = c, classes by
// union-find over conjugation by generators.
GroupTable build_spin(unsigned N, u32 p, WittType t, Kernel k = Kernel::parallel);
// SO of the form: kappa of the spin generators and one reflection pair of nonsquare norm.
GroupTable build_so(unsigned N, u32 p, WittType t, Kernel k = Kernel::parallel);
// memoized build_spin / build_so (parallel kernel); thread-safe
const GroupTable& spin_group(unsigned N, u32 p, WittType t);
const GroupTable& so_group(unsigned N, u32 p, WittType t);

struct Classification {
    Elem kappa{};                 // matrix of v -> g v g^-1
    bool semisimple = false;
    std::size_t order = 0;
    Elem kappa_s{};               // kappa of the semisimple part
    FpPoly delta;                 // characteristic polynomial of kappa_s
    std::vector<int> jordan_p1;   // Jordan block sizes of the unipotent part on V_1(y_s)
    std::vector<int> jordan_m1;   // on V_-1(y_s)
    std::vector<int> I_p1, I_m1;  // the odd sizes occurring
};

Elem kappa(const Clifford& C, const Elem& g);
Classification kappa_and_classify(const GroupTable& G, int idx);
// Same data for a matrix in SO (kappa = y).
Classification classify_matrix(const QuadForm& f, const Elem& y);

// Classical spinor norm: product of Q(w_i) over a reflection factorization, 0 if a square.
int spinor_norm(const QuadForm& f, const Elem& y);
// the reflection vectors of a factorization (hard failure if none is found)
std::vector<std::vector<u32>> reflection_factorization(const QuadForm& f, const Elem& y);
// Witt class of the restriction of the form to a subspace with the given basis
int witt_class_of(const QuadForm& f, const std::vector<std::vector<u32>>& basis);

// group order, kappa 2-to-1 with kernel {1, delta}, delta central, classes stable
CheckReport verify_group(const GroupTable& G);
// (-1)^N(y) = (-1)^{e' + eps_Delta} for every y in SO, and image(kappa) = ker(N)
CheckReport verify_28a(unsigned N, u32 p, WittType t);

// Per-Delta tallies for one group.
struct DeltaTally {
    int semisimple = 0;
    int delta_fixed = 0;
    int delta_moved = 0;
};
std::map<FpPoly, DeltaTally> tally_by_delta(const GroupTable& G);

// Oracle class counts against the formula modules at (N, q): totals against alpha,
// per-Delta semisimple counts against f, delta-moved counts against the h-sums,
// equal delta-fixed counts, and the delta-fixedness criterion via Jordan data.
std::vector<CheckReport> compare_counts(unsigned N, u32 p);

nlohmann::json group_json(const GroupTable& G);

}  // namespace spinc
