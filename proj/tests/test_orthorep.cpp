#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swhw/error.hpp"
#include "swhw/orthorep.hpp"

#include <random>

using namespace swhw;

namespace {

const BaseField Q = BaseField::Q();

SquareClass sq(long a, const BaseField& f = BaseField::Q()) { return sqclass(f, mpq_class(a)); }

long nz(std::mt19937_64& rng, long b) {
    std::uniform_int_distribution<long> d(-b, b);
    long x = 0;
    while (x == 0) x = d(rng);
    return x;
}

OrthRep random_rep(std::mt19937_64& rng, const BaseField& f) {
    OrthRep V;
    V.field = f;
    int nc = static_cast<int>(rng() % 5), nh = static_cast<int>(rng() % 3);
    for (int i = 0; i < nc; ++i) V.chars.push_back(sqclass(f, nz(rng, 60)));
    for (int i = 0; i < nh; ++i)
        V.hyps.push_back({CharClass{sqclass(f, nz(rng, 60)), static_cast<long>(rng() % 5) - 2, 5},
                          1 + static_cast<long>(rng() % 3)});
    return V;
}

// Pairwise expansion of the Whitney product.
H2Class sw2_pairwise(const OrthRep& V) {
    H2Class x = H2Class::zero(V.field);
    for (size_t i = 0; i < V.chars.size(); ++i)
        for (size_t j = i + 1; j < V.chars.size(); ++j) x = x + cup(V.chars[i], V.chars[j]);
    for (const auto& h : V.hyps) x = x + cup(h.det.eps, SquareClass::minus_one(V.field)) + h2_times(h.det.k, c_ell(h.det.ell, V.field));
    return x;
}

}  // namespace

TEST_CASE("sw1 and sw2 examples") {
    OrthRep V;
    V.chars = {sq(2), sq(3)};
    CHECK(sw1(V) == sq(6));
    CHECK(sw2(V) == cup(sq(2), sq(3)));
    CHECK(sw_total(V) == TruncClass::linear(sq(2)) * TruncClass::linear(sq(3)));

    OrthRep H;
    H.hyps.push_back({CharClass{sq(-1), 0, 2}, 1});
    CHECK(sw1(H).is_trivial());
    H.hyps[0].det = CharClass{sq(1), 1, 7};
    CHECK(sw2(H) == c_ell(7, Q));

    OrthRep E;
    CHECK(sw1(E).is_trivial());
    CHECK(h2_is_zero(sw2(E)));
    CHECK(h2_is_zero(sw2(OrthRep::trivial(Q, 9))));
}

TEST_CASE("Whitney product against pairwise expansion") {
    std::mt19937_64 rng(10);
    for (const BaseField& f : {BaseField::Q(), BaseField::Qp(5), BaseField::Qp(2), BaseField::R()}) {
        for (int it = 0; it < 50; ++it) {
            auto V = random_rep(rng, f), W = random_rep(rng, f);
            CHECK(sw2(V) == sw2_pairwise(V));
            CHECK(sw_total(direct_sum(V, W)) == sw_total(V) * sw_total(W));
            for (const auto& h : V.hyps) {
                OrthRep one;
                one.field = f;
                one.hyps.push_back(h);
                CHECK(sw2(one) == cbar1(h.det));
                CHECK(sw1(one).is_trivial());
            }
        }
    }
}

TEST_CASE("twisting") {
    OrthRep V = OrthRep::trivial(Q, 2);
    CHECK(sw2(twist(V, sq(1))) == sw2(V));
    CHECK(twist_sw2_formula(V, sq(1)) == sw2(V));
    auto T = twist(V, sq(-1));
    CHECK(T.chars == std::vector<SquareClass>{sq(-1), sq(-1)});
    CHECK(sw2(T) == cup(sq(-1), sq(-1)));
    CHECK(twist_sw2_formula(V, sq(-1)) == cup(sq(-1), sq(-1)));

    std::mt19937_64 rng(11);
    for (const BaseField& f : {BaseField::Q(), BaseField::Qp(3), BaseField::R()}) {
        for (int it = 0; it < 100; ++it) {
            auto U = random_rep(rng, f);
            auto chi = sqclass(f, nz(rng, 60));
            auto Ut = twist(U, chi);
            CHECK(sw2(Ut) == twist_sw2_formula(U, chi));
            CHECK(sw1(Ut) == sw1(U) + sq_times(U.dim(), chi));
            CHECK(Ut.dim() == U.dim());
        }
    }
}

TEST_CASE("graded sw2") {
    OrthRep V0 = OrthRep::trivial(Q, 3);
    CHECK(graded_sw2(V0, {}) == sw2(V0));
    CHECK(graded_sw2(V0, {{-1, CharClass{sq(1), 1, 5}}}) == c_ell(5, Q));
    CharClass a{sq(3), 1, 5}, b{sq(-2), 2, 5};
    CHECK(graded_sw2(V0, {{-1, a}, {-2, b}}) == graded_sw2(V0, {{-1, a}}) + graded_sw2(V0, {{-2, b}}));
    CHECK_THROWS_AS(graded_sw2(V0, {{0, a}}), Error);
}

TEST_CASE("tame boundary of sw2") {
    const BaseField K = BaseField::Qp(5);
    const BaseField F = BaseField::Fp(5);
    OrthRep V0 = OrthRep::trivial(K, 2), V1;
    V1.field = K;
    CHECK(tame_boundary_sw2(V0, V1, sq(5, K)).is_trivial());
    CHECK(tame_boundary_sw2_direct(V0, V1, sq(5, K)).is_trivial());
    // r = 2, det V1 = {u}: {-1} + {u}
    V1.chars = {sq(2, K), sq(1, K)};
    CHECK(tame_boundary_sw2(V0, V1, sq(5, K)) == sq(-2, F));
    CHECK(tame_boundary_sw2_direct(V0, V1, sq(5, K)) == sq(-2, F));

    std::mt19937_64 rng(12);
    for (long p : {3L, 5L, 7L, 11L}) {
        const BaseField Kp = BaseField::Qp(p);
        long u = 2;
        while (sq(u, Kp).is_trivial()) ++u;
        std::vector<long> units{1, u};
        for (int it = 0; it < 60; ++it) {
            OrthRep A, B;
            A.field = B.field = Kp;
            for (int i = static_cast<int>(rng() % 4); i > 0; --i) A.chars.push_back(sq(units[rng() % 2] * (rng() % 2 ? -1 : 1), Kp));
            for (int i = static_cast<int>(rng() % 5); i > 0; --i) B.chars.push_back(sq(units[rng() % 2] * (rng() % 2 ? -1 : 1), Kp));
            if (rng() % 2) B.hyps.push_back({CharClass{sq(units[rng() % 2], Kp), static_cast<long>(rng() % 3), 2}, 1 + static_cast<long>(rng() % 2)});
            if (rng() % 2) A.hyps.push_back({CharClass{sq(units[rng() % 2], Kp), 2, p}, 1});
            auto chi = sq(p * units[rng() % 2], Kp);
            CHECK(tame_boundary_sw2(A, B, chi) == tame_boundary_sw2_direct(A, B, chi));
        }
    }
    OrthRep bad;
    bad.field = K;
    bad.chars = {sq(5, K)};
    CHECK_THROWS_AS(tame_boundary_sw2(bad, V1, sq(5, K)), Error);
    CHECK_THROWS_AS(tame_boundary_sw2(V0, V1, sq(2, K)), Error);
    OrthRep two = OrthRep::trivial(BaseField::Qp(2), 1);
    CHECK_THROWS_AS(tame_boundary_sw2(two, two, sq(2, BaseField::Qp(2))), Error);
}

TEST_CASE("tame boundary of hw2") {
    const long p = 7;
    const BaseField F = BaseField::Fp(p);
    CHECK(tame_boundary_hw2(std::vector<mpq_class>{1, 3, -1}, p).is_trivial());
    // <u, p u'>: r = 1
    std::vector<mpq_class> d{3, 7 * 5};
    CHECK(tame_boundary_hw2(d, p) == tame_boundary_hw2_direct(d, p));
    CHECK(tame_boundary_hw2(d, p) == sq(3, F));
    CHECK_THROWS_AS(tame_boundary_hw2(std::vector<mpq_class>{49}, p), Error);

    std::mt19937_64 rng(13);
    for (long q : {3L, 5L, 7L}) {
        for (int it = 0; it < 100; ++it) {
            std::vector<mpq_class> v;
            for (int i = 1 + static_cast<int>(rng() % 6); i > 0; --i) {
                long x = 0;
                while (x == 0 || x % q == 0) x = nz(rng, 50);
                v.push_back(rng() % 2 ? mpq_class(x * q) : mpq_class(x));
            }
            CHECK(tame_boundary_hw2(v, q) == tame_boundary_hw2_direct(v, q));
        }
        // arbitrary forms over Q, normalized by squares
        for (int it = 0; it < 30; ++it) {
            int n = 1 + static_cast<int>(rng() % 4);
            QMatrix g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) g(i, j) = g(j, i) = nz(rng, 30);
            if (g.det() == 0) continue;
            QuadSpace D(g);
            auto vals = diagonalize_exact(g).values;
            CHECK(tame_boundary_hw2(D, q) == tame_boundary_hw2_direct(vals, q));
        }
    }
}
