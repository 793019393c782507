#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swhw/error.hpp"
#include "swhw/quadform.hpp"

#include <random>

using namespace swhw;

namespace {

const BaseField Q = BaseField::Q();

SquareClass sq(long a, const BaseField& f = BaseField::Q()) { return sqclass(f, mpq_class(a)); }

QMatrix random_gram(std::mt19937_64& rng, int n, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    for (;;) {
        QMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) g(i, j) = g(j, i) = d(rng);
        if (g.det() != 0) return g;
    }
}

QMatrix random_invertible(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> d(-3, 3);
    for (;;) {
        QMatrix p(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) = d(rng);
        if (p.det() != 0) return p;
    }
}

DiagForm diag_of(std::initializer_list<long> v, const BaseField& f = BaseField::Q()) {
    std::vector<mpq_class> w;
    for (long x : v) w.push_back(x);
    return DiagForm::of(f, w);
}

void check_diagonalization(const QMatrix& g, Pivot s) {
    auto d = diagonalize_exact(g, s);
    QMatrix D = d.P.transpose() * g * d.P;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.rows(); ++j) {
            if (i == j)
                CHECK(D(i, i) == d.values[static_cast<size_t>(i)]);
            else
                CHECK(D(i, j) == 0);
        }
    CHECK(d.P.det() != 0);
}

}  // namespace

TEST_CASE("diagonalize examples with explicit transforms") {
    auto d = diagonalize(QuadSpace(QMatrix::identity(2)));
    CHECK(d.entries == std::vector<SquareClass>{sq(1), sq(1)});

    QMatrix h{{0, 1}, {1, 0}};
    check_diagonalization(h, Pivot::Forward);
    check_diagonalization(h, Pivot::MinAbs);
    auto dh = diagonalize(QuadSpace(h));
    CHECK(disc(dh) == sq(-1));
    CHECK(h2_is_zero(hw2(dh)));

    auto d24 = diagonalize(QuadSpace(QMatrix{{2, 0}, {0, 4}}));
    CHECK(d24.entries == std::vector<SquareClass>{sq(2), sq(1)});
    CHECK(disc(d24) == sq(8));

    CHECK_THROWS_AS(diagonalize(QuadSpace(QMatrix{{1, 1}, {1, 1}})), Error);
    CHECK_THROWS_AS(QuadSpace(QMatrix{{1, 2}, {0, 1}}), Error);

    std::mt19937_64 rng(1);
    for (int it = 0; it < 50; ++it) {
        auto g = random_gram(rng, 1 + static_cast<int>(rng() % 6), 5);
        check_diagonalization(g, Pivot::Forward);
        check_diagonalization(g, Pivot::MinAbs);
    }
    // zero diagonal throughout forces the pairing step
    QMatrix z{{0, 1, 2}, {1, 0, 3}, {2, 3, 0}};
    check_diagonalization(z, Pivot::Forward);
    check_diagonalization(z, Pivot::MinAbs);
}

TEST_CASE("disc and hw2 of diagonal forms") {
    CHECK(disc(diag_of({1, -1})) == sq(-1));
    CHECK(disc(diag_of({2, 3})) == sq(6));
    CHECK(h2_is_zero(hw2(diag_of({1, 1, 1, 1}))));
    CHECK(hw2(diag_of({-1, -1})) == cup(sq(-1), sq(-1)));
    // <2, 2a, 2, 2b> with a=2, b=3 expands to {2, ab} + {a, b}
    auto d = diag_of({2, 4, 2, 6});
    CHECK(hw2(d) == cup(sq(2), sq(6)) + cup(sq(2), sq(3)));
    // explicit pair sum oracle
    H2Class s = H2Class::zero(Q);
    std::vector<long> a{2, 4, 2, 6};
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j) s = s + cup(sq(a[i]), sq(a[j]));
    CHECK(hw2(d) == s);
    CHECK(hw_total(d).s2 == hw2(d));
    CHECK(hw_total(d).s1 == disc(d));
}

TEST_CASE("hw is independent of pivot strategy and of the basis") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; ++it) {
        int n = 1 + static_cast<int>(rng() % 5);
        auto g = random_gram(rng, n, 20);
        auto a = diagonalize(QuadSpace(g), Pivot::Forward);
        auto b = diagonalize(QuadSpace(g), Pivot::MinAbs);
        CHECK(disc(a) == disc(b));
        CHECK(hw2(a) == hw2(b));
        CHECK(disc(a) == sqclass(Q, g.det()));
        auto P = random_invertible(rng, n);
        auto c = diagonalize(QuadSpace(P.transpose() * g * P));
        CHECK(hw2(c) == hw2(a));
        CHECK(signature(QuadSpace(P.transpose() * g * P)) == signature(QuadSpace(g)));
    }
}

TEST_CASE("Whitney multiplicativity of hw") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        auto g1 = random_gram(rng, 1 + static_cast<int>(rng() % 3), 9);
        auto g2 = random_gram(rng, 1 + static_cast<int>(rng() % 3), 9);
        auto sum = orthogonal_sum(QuadSpace(g1), QuadSpace(g2));
        CHECK(hw_total(diagonalize(sum)) == hw_total(diagonalize(QuadSpace(g1))) * hw_total(diagonalize(QuadSpace(g2))));
    }
}

TEST_CASE("isotropic reduction") {
    {
        auto r = isotropic_reduce(hyperbolic(1), QMatrix{{1}, {0}});
        CHECK(r.r == 1);
        CHECK(r.D0.dim() == 0);
        CHECK(h2_is_zero(isotropic_hw2_rhs(diagonalize(r.D0), 1)));
    }
    {
        QuadSpace D = QuadSpace::diagonal({1, 1, -1});
        auto r = isotropic_reduce(D, QMatrix{{1}, {0}, {1}});
        CHECK(r.D0.dim() == 1);
        CHECK(isometric(r.D0, QuadSpace::diagonal({1})));
        CHECK(hw2(diagonalize(D)) == isotropic_hw2_rhs(diagonalize(r.D0), r.r));
    }
    CHECK_THROWS_AS(isotropic_reduce(QuadSpace::diagonal({1, 1}), QMatrix{{1}, {0}}), Error);
    CHECK_THROWS_AS(isotropic_reduce(hyperbolic(1), QMatrix{{1, 2}, {0, 0}}), Error);

    std::mt19937_64 rng(4);
    for (int it = 0; it < 40; ++it) {
        int n = 1 + static_cast<int>(rng() % 3), r = 1 + static_cast<int>(rng() % 3);
        auto g = random_gram(rng, n, 8);
        QuadSpace D = orthogonal_sum(QuadSpace(g), hyperbolic(r));
        QMatrix W(n + 2 * r, r);
        for (int i = 0; i < r; ++i) W(n + 2 * i, i) = 1;
        // hide the structure behind a change of basis
        auto P = random_invertible(rng, n + 2 * r);
        auto Pinv = *P.inverse();
        QuadSpace D2(P.transpose() * D.gram * P);
        QMatrix W2 = Pinv * W;
        auto red = isotropic_reduce(D2, W2);
        CHECK(red.r == r);
        CHECK(isometric(red.D0, QuadSpace(g)));
        CHECK(hw2(diagonalize(D2)) == isotropic_hw2_rhs(diagonalize(red.D0), r));
    }
}

TEST_CASE("scaling formula") {
    auto d = diag_of({1, 1});
    CHECK(scale_hw(d, sq(1)) == hw_total(d));
    auto t = scale_hw(d, sq(-1));
    CHECK(t.s1.is_trivial());
    CHECK(t.s2 == cup(sq(-1), sq(-1)));
    CHECK(t == hw_total(diag_of({-1, -1})));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> e(-40, 40);
    for (int it = 0; it < 50; ++it) {
        int n = static_cast<int>(rng() % 6);
        std::vector<mpq_class> v;
        for (int i = 0; i < n; ++i) {
            long x = 0;
            while (x == 0) x = e(rng);
            v.push_back(x);
        }
        long a = 0;
        while (a == 0) a = e(rng);
        for (const BaseField& f : {BaseField::Q(), BaseField::Qp(2), BaseField::Qp(3), BaseField::R()}) {
            auto df = DiagForm::of(f, v);
            CHECK(scale_hw(df, sqclass(f, a)) == scale_hw_direct(df, sqclass(f, a)));
        }
    }
}

TEST_CASE("graded hw") {
    QuadSpace one = QuadSpace::diagonal({1});
    auto g0 = graded_hw(GradedQuadSpace{one, {}});
    CHECK(g0.hw1.is_trivial());
    CHECK(h2_is_zero(g0.hw2));
    auto g1 = graded_hw(GradedQuadSpace{one, {{-1, 1}}});
    CHECK(g1.hw1 == sq(-1));
    CHECK(g1.hw2 == cup(sq(-1), sq(-1)));

    std::mt19937_64 rng(6);
    for (int it = 0; it < 100; ++it) {
        int n = 1 + static_cast<int>(rng() % 4);
        QuadSpace mid(random_gram(rng, n, 12));
        std::vector<std::pair<int, long>> off;
        int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) off.push_back({-1 - static_cast<int>(rng() % 5), static_cast<long>(rng() % 6)});
        auto a = graded_hw(GradedQuadSpace{mid, off});
        auto b = graded_hw_product(hw_total(diagonalize(mid)), off);
        CHECK(a.hw1 == b.s1);
        CHECK(a.hw2 == b.s2);
    }
    CHECK_THROWS_AS(graded_rank({{0, 1}}), Error);
}

TEST_CASE("signature") {
    CHECK(signature(QuadSpace(QMatrix::identity(3))) == Signature{3, 0});
    CHECK(signature(hyperbolic(1)) == Signature{1, 1});
    QuadSpace d = QuadSpace::diagonal({2, -3, -5});
    CHECK(signature(d) == Signature{1, 2});
    auto R = BaseField::R();
    QuadSpace dr = QuadSpace::diagonal({2, -3, -5}, R);
    CHECK(hw2(diagonalize(dr)).bit());
    CHECK(hw_total(diagonalize(dr)) == real_hw(2));
    for (long m = 0; m <= 8; ++m) {
        std::vector<mpq_class> v;
        for (long i = 0; i < 8; ++i) v.push_back(i < m ? -1 - i : 1 + i);
        auto t = hw_total(diagonalize(QuadSpace::diagonal(v, R)));
        CHECK(t.s1 == sq_times(m, sq(-1, R)));
        CHECK(t.s2.bit() == ((m * (m - 1) / 2) % 2 == 1));
    }
}
