#include <doctest.h>

#include "spinc/oracle.hpp"

using namespace spinc;

namespace {

Elem reflect(const QuadForm& f, const std::vector<u32>& w)
{
    PrimeField F(f.p);
    MatOps M{f.N, f.p};
    Elem r{};
    u32 qi = F.inv(f.value(w));
    for (unsigned j = 0; j < f.N; ++j) {
        std::vector<u32> z(f.N, 0);
        z[j] = 1;
        u32 b = F.mul(f.bilinear(z, w), qi);
        for (unsigned i = 0; i < f.N; ++i)
            r[i * f.N + j] = static_cast<std::uint8_t>(F.sub(z[i], F.mul(b, w[i])));
    }
    return r;
}

}  // namespace

TEST_CASE("forms and Witt types")
{
    for (u32 p : {3u, 5u})
        for (unsigned N : {2u, 4u})
            for (auto t : {WittType::plus, WittType::minus}) {
                auto f = make_form(N, p, t);
                CHECK(witt_type_of(f) == t);
                CHECK(f.a.size() == N);
            }
    CHECK_THROWS(make_form(6, 3, WittType::plus));
    CHECK_THROWS(make_form(4, 7, WittType::plus));
}

TEST_CASE("Clifford relations")
{
    auto f = make_form(4, 3, WittType::minus);
    Clifford C(f);
    std::vector<u32> v{1, 2, 0, 1}, w{0, 1, 1, 2};
    Elem vv = C.mul(C.vec(v), C.vec(v));
    CHECK(vv == C.scalar(f.value(v)));
    // v w + w v = B(v, w)
    Elem s = C.mul(C.vec(v), C.vec(w));
    Elem t = C.mul(C.vec(w), C.vec(v));
    Elem sum{};
    for (unsigned i = 0; i < 16; ++i)
        sum[i] = static_cast<std::uint8_t>((s[i] + t[i]) % 3);
    CHECK(sum == C.scalar(f.bilinear(v, w)));
    CHECK(C.reverse(s) == t);
}

TEST_CASE("group orders and class counts")
{
    struct Row {
        unsigned N;
        u32 p;
        WittType t;
        std::size_t order, classes;
    };
    for (auto r : {Row{4, 3, WittType::plus, 576, 49}, Row{4, 3, WittType::minus, 720, 13},
                   Row{4, 5, WittType::plus, 14400, 81}, Row{4, 5, WittType::minus, 15600, 29},
                   Row{2, 3, WittType::minus, 4, 4}, Row{2, 3, WittType::plus, 2, 2}}) {
        const auto& G = spin_group(r.N, r.p, r.t);
        INFO(r.N << " " << r.p << " " << to_string(r.t));
        CHECK(G.order() == r.order);
        CHECK(G.class_count() == r.classes);
        CHECK(so_group(r.N, r.p, r.t).order() == r.order);
    }
}

TEST_CASE("identity and delta classification")
{
    const auto& G = spin_group(4, 3, WittType::plus);
    auto one = kappa_and_classify(G, G.identity);
    CHECK(one.semisimple);
    CHECK(one.order == 1);
    CHECK(one.delta == pow(FpPoly::linear(3, 1), 4));
    CHECK(one.jordan_p1 == std::vector<int>{1, 1, 1, 1});
    CHECK(one.I_p1 == std::vector<int>{1});
    CHECK(one.I_m1.empty());
    auto d = kappa_and_classify(G, G.delta);
    CHECK(d.order == 2);
    CHECK(d.kappa == MatOps{4, 3}.identity());
    CHECK(G.class_of[G.delta] != G.class_of[G.identity]);
}

TEST_CASE("matrix helpers")
{
    MatOps M{4, 5};
    Elem y{};
    // a single Jordan block of size 3 at 1, plus -1
    y[0] = 1, y[1] = 1, y[5] = 1, y[6] = 1, y[10] = 1, y[15] = 4;
    CHECK(M.rank(M.add_scalar(y, 4)) == 3);
    CHECK(M.det(y) == 4);
    CHECK(M.charpoly(y) == pow(FpPoly::linear(5, 1), 3) * FpPoly::linear(5, 4));
    CHECK(M.kernel(M.add_scalar(y, 4)).size() == 1);
}

TEST_CASE("group structure")
{
    for (u32 p : {3u, 5u})
        for (unsigned N : {2u, 4u})
            for (auto t : {WittType::plus, WittType::minus}) {
                auto r = verify_group(spin_group(N, p, t));
                INFO(N << " " << p << " " << to_string(t) << ": " << r.detail);
                CHECK(r.passed());
            }
}

TEST_CASE("spinor norm against e' + eps")
{
    for (u32 p : {3u, 5u})
        for (unsigned N : {2u, 4u})
            for (auto t : {WittType::plus, WittType::minus}) {
                auto r = verify_28a(N, p, t);
                INFO(N << " " << p << " " << to_string(t) << ": " << r.detail);
                CHECK(r.passed());
            }
}

TEST_CASE("reflection factorization reproduces the element")
{
    auto f = make_form(4, 3, WittType::minus);
    const auto& SO = so_group(4, 3, WittType::minus);
    MatOps M{4, 3};
    for (std::size_t i = 0; i < SO.order(); i += 37) {
        auto ws = reflection_factorization(f, SO.elems[i]);
        CHECK(ws.size() % 2 == 0);
        CHECK(ws.size() <= 16);
        Elem prod = M.identity();
        for (const auto& w : ws)
            prod = M.mul(prod, reflect(f, w));
        CHECK(prod == SO.elems[i]);
    }
}

TEST_CASE("oracle against the formula modules")
{
    for (u32 p : {3u, 5u})
        for (unsigned N : {2u, 4u})
            for (const auto& r : compare_counts(N, p)) {
                INFO(r.check_id << " " << N << " " << p << ": " << r.expected << " | " << r.actual
                                << " | " << r.detail);
                CHECK(r.passed());
            }
}

TEST_CASE("serial and parallel closure agree")
{
    auto a = build_spin(4, 3, WittType::minus, Kernel::serial);
    auto b = build_spin(4, 3, WittType::minus, Kernel::parallel);
    CHECK(a.elems == b.elems);
    CHECK(a.class_of == b.class_of);
    CHECK_THROWS(closure(a.elems[a.identity], {a.elems[a.gens[0]], a.elems[a.gens[1]]},
                         [C = Clifford(a.form)](const Elem& x, const Elem& y) { return C.mul(x, y); },
                         3, Kernel::serial));
}

TEST_CASE("group json")
{
    auto j = group_json(spin_group(4, 3, WittType::minus));
    CHECK(j["order"] == 720);
    CHECK(j["class_count"] == 13);
    int total = 0;
    for (const auto& e : j["per_delta"])
        total += e["deltafixed_classes"].get<int>() + e["deltamoved_classes"].get<int>();
    CHECK(total == 13);
}
