// One line per acceptance criterion; exit status 0 iff all pass.

#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spinc/classcount.hpp"
#include "spinc/delta.hpp"
#include "spinc/dualcount.hpp"
#include "spinc/oracle.hpp"
#include "spinc/orbits.hpp"
#include "spinc/series.hpp"

using namespace spinc;

namespace {

// runtime limits, seconds
constexpr double kSeriesLimit = 5;
constexpr double kOrbitLimit = 60;
constexpr double kAlphaLimit = 180;
constexpr double kOracleLimit = 120;
constexpr int kMinActions = 50;

struct Outcome {
    bool ok = true;
    std::string note;
    void need(bool c, const std::string& what)
    {
        if (!c && ok) {
            ok = false;
            note = what;
        }
    }
    void need(const CheckReport& r)
    {
        std::string what = r.check_id + " " + r.params.dump();
        if (!r.detail.empty())
            what += ": " + r.detail;
        need(r.passed(), what);
    }
};

int failures = 0;

void criterion(int k, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body)
{
    Stopwatch sw;
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note = std::string("exception: ") + e.what();
    }
    double s = sw.ms() / 1000.0;
    if (limit_s > 0)
        o.need(s < limit_s, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
    failures += !o.ok;
    std::printf("%s %2d %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", k, title.c_str(), s,
                o.note.empty() ? "" : " -- ", o.note.c_str());
    std::fflush(stdout);
}

// Irreducible equivariant local systems of Z/a x Z/b acting on the cosets of H, by
// restricting every character to the stabilizer.
long long direct_irr(int a, int b, const std::vector<std::set<std::pair<int, int>>>& stabs)
{
    long long total = 0;
    for (const auto& H : stabs) {
        std::set<std::vector<int>> restr;
        for (int s = 0; s < a; ++s)
            for (int t = 0; t < b; ++t) {
                std::vector<int> v;
                for (auto [x, y] : H)
                    v.push_back((s * x * b + t * y * a) % (a * b));
                restr.insert(v);
            }
        total += static_cast<long long>(restr.size());
    }
    return total;
}

}  // namespace

int main()
{
    criterion(1, "series identities to X^256, u = +-1", kSeriesLimit, [](Outcome& o) {
        for (const auto& name : series_identity_names())
            for (int u : {1, -1})
                o.need(verify_series_identity(name, u, 256));
    });

    criterion(2, "orbit-product identities (q=3 to X^12, q=5 to X^10)", kOrbitLimit, [](Outcome& o) {
        for (auto [p, T] : std::vector<std::pair<u32, unsigned>>{{3, 12}, {5, 10}})
            for (const auto& tag : orbit_product_tags())
                o.need(verify_orbit_products(p, tag, T));
    });

    criterion(3, "Frobenius-fixed Delta counts, q in {3,5,7}, n <= 8", 0, [](Outcome& o) {
        for (u32 p : {3u, 5u, 7u})
            for (unsigned N = 0; N <= 8; N += 2)
                o.need(verify_class_counts(p, N));
    });

    criterion(4, "signed sums, q in {3,5,7}, even n <= 8", 0, [](Outcome& o) {
        for (u32 p : {3u, 5u, 7u})
            for (unsigned N = 0; N <= 8; N += 2)
                o.need(verify_signed_sums(p, N));
    });

    criterion(5, "torsor transports, q=3, N <= 8", 0, [](Outcome& o) {
        for (unsigned N = 2; N <= 8; N += 2)
            for (int e : {0, 1})
                o.need(verify_torsors(3, e, N));
    });

    criterion(6, "semisimple class totals, q in {3,5}, N in {2,4,6,8}", 0, [](Outcome& o) {
        for (u32 p : {3u, 5u})
            for (unsigned N : {2u, 4u, 6u, 8u})
                o.need(verify_f_totals(p, N));
    });

    criterion(7, "alpha_n against the closed coefficient", kAlphaLimit, [](Outcome& o) {
        for (u32 p : {3u, 5u}) {
            o.need(alpha_check(p, 8, AlphaMethod::direct));
            o.need(alpha(p, 0, AlphaMethod::direct) == 8, "alpha_0");
            o.need(alpha(p, 2, AlphaMethod::direct) == -2, "alpha_2");
            o.need(alpha(p, 4, AlphaMethod::direct) == 8 * static_cast<long>(p) + 12, "alpha_4");
        }
        o.need(alpha_check(3, 12, AlphaMethod::census_dp));
    });

    criterion(8, "dual side: H modes, ahat = alpha, partition statistics to 40", 0, [](Outcome& o) {
        for (u32 p : {3u, 5u}) {
            for (unsigned N = 0; N <= 8; N += 2)
                o.need(verify_H_modes(p, N));
            o.need(final_identity(p, 8, EnumMethod::direct));
        }
        for (unsigned N = 10; N <= 12; N += 2)
            o.need(verify_H_modes(3, N));
        o.need(final_identity(3, 12, EnumMethod::census_dp));
        o.need(verify_partition_stats(40));
    });

    criterion(9, "oracle: Spin_4 and Spin_2 ground truth, per-Delta tallies, spinor norm", kOracleLimit,
              [](Outcome& o) {
                  struct Row {
                      unsigned N;
                      u32 p;
                      WittType t;
                      std::size_t order, classes;
                  };
                  for (auto r : {Row{4, 3, WittType::plus, 576, 49}, Row{4, 3, WittType::minus, 720, 13},
                                 Row{4, 5, WittType::plus, 14400, 81},
                                 Row{4, 5, WittType::minus, 15600, 29}}) {
                      const auto& G = spin_group(r.N, r.p, r.t);
                      o.need(G.order() == r.order && G.class_count() == r.classes,
                             "Spin_4 order/classes at q=" + std::to_string(r.p));
                  }
                  for (auto [p, want] : std::vector<std::pair<u32, long>>{{3, 36}, {5, 52}}) {
                      long d = static_cast<long>(spin_group(4, p, WittType::plus).class_count()) -
                               static_cast<long>(spin_group(4, p, WittType::minus).class_count());
                      o.need(d == want && BigInt(d) == alpha(p, 4, AlphaMethod::direct),
                             "Spin_4 difference at q=" + std::to_string(p));
                  }
                  for (u32 p : {3u, 5u}) {
                      long d = static_cast<long>(spin_group(2, p, WittType::plus).class_count()) -
                               static_cast<long>(spin_group(2, p, WittType::minus).class_count());
                      o.need(d == -2, "Spin_2 difference at q=" + std::to_string(p));
                  }
                  for (u32 p : {3u, 5u})
                      for (unsigned N : {2u, 4u})
                          for (const auto& r : compare_counts(N, p))
                              o.need(r);
                  for (unsigned N : {2u, 4u})
                      for (auto t : {WittType::plus, WittType::minus})
                          o.need(verify_28a(N, 3, t));
              });

    criterion(10, "equivariant count on random commutative group actions", 0, [](Outcome& o) {
        std::mt19937 rng(4061);
        int done = 0;
        for (; done < 64; ++done) {
            int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 4);
            auto add = [&](std::pair<int, int> x, std::pair<int, int> y) {
                return std::pair{(x.first + y.first) % a, (x.second + y.second) % b};
            };
            std::vector<std::set<std::pair<int, int>>> stabs;
            std::map<long long, long long> z;
            int orbits = 1 + static_cast<int>(rng() % 4);
            for (int k = 0; k < orbits; ++k) {
                std::pair<int, int> g{static_cast<int>(rng() % a), static_cast<int>(rng() % b)};
                std::pair<int, int> h{static_cast<int>(rng() % a), static_cast<int>(rng() % b)};
                std::set<std::pair<int, int>> H{{0, 0}};
                for (bool grew = true; grew;) {
                    grew = false;
                    for (auto x : std::vector<std::pair<int, int>>(H.begin(), H.end()))
                        for (auto s : {g, h})
                            grew |= H.insert(add(x, s)).second;
                }
                // all |A/H| points of the orbit have stabilizer H
                z[static_cast<long long>(H.size())] += a * b / static_cast<long long>(H.size());
                stabs.push_back(H);
            }
            long long got = irr_equivariant_count(a * b, z), want = direct_irr(a, b, stabs);
            o.need(got == want, "action Z/" + std::to_string(a) + " x Z/" + std::to_string(b) + ": " +
                                    std::to_string(got) + " vs " + std::to_string(want));
        }
        o.need(done >= kMinActions, "too few actions");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
