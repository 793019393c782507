#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swhw/error.hpp"
#include "swhw/traceform.hpp"

#include <chrono>
#include <random>

using namespace swhw;

namespace {

const BaseField Q = BaseField::Q();

SquareClass sq(long a) { return sqclass(Q, mpq_class(a)); }

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat zmul(const ZMat& A, const ZMat& B) {
    size_t n = A.size();
    ZMat C(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (A[i][k] != 0)
                for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

// tr(C^k) for the companion matrix C of monic f
std::vector<mpz_class> companion_traces(const ZPoly& f, int count) {
    size_t n = static_cast<size_t>(f.degree());
    ZMat C(n, std::vector<mpz_class>(n)), P(n, std::vector<mpz_class>(n));
    for (size_t i = 1; i < n; ++i) C[i][i - 1] = 1;
    for (size_t i = 0; i < n; ++i) C[i][n - 1] = -f.coeff(static_cast<int>(i));
    for (size_t i = 0; i < n; ++i) P[i][i] = 1;
    std::vector<mpz_class> out;
    for (int k = 0; k < count; ++k) {
        mpz_class t = 0;
        for (size_t i = 0; i < n; ++i) t += P[i][i];
        out.push_back(t);
        P = zmul(P, C);
    }
    return out;
}

// Bareiss fraction-free determinant
mpz_class bareiss(ZMat M) {
    size_t n = M.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && M[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') for monic f, via the Sylvester matrix
mpz_class sylvester_disc(const ZPoly& f) {
    ZPoly g = f.derivative();
    int n = f.degree(), m = g.degree();
    if (n == 1) return 1;
    size_t N = static_cast<size_t>(n + m);
    ZMat S(N, std::vector<mpz_class>(N));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) S[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.coeff(n - j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S[static_cast<size_t>(m + i)][static_cast<size_t>(i + j)] = g.coeff(m - j);
    mpz_class r = bareiss(S);
    return ((n * (n - 1) / 2) % 2) ? mpz_class(-r) : r;
}

ZPoly random_monic(std::mt19937_64& rng, int n) {
    std::vector<mpz_class> c(static_cast<size_t>(n + 1));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = static_cast<long>(rng() % 21) - 10;
    c[static_cast<size_t>(n)] = 1;
    return ZPoly(c);
}

}  // namespace

TEST_CASE("polynomial parsing") {
    CHECK(parse_poly("x^2-2") == ZPoly(std::vector<mpz_class>{-2, 0, 1}));
    CHECK(parse_poly("(x^2-2)(x^2-3)") == parse_poly("x^4-5x^2+6"));
    CHECK(parse_poly("x^4 - 10*x^2 + 1").str() == "x^4-10x^2+1");
    CHECK(parse_poly("-x+3").str() == "-x+3");
    CHECK(parse_poly("2(x+1)^3") == parse_poly("2x^3+6x^2+6x+2"));
    CHECK(parse_poly("x").degree() == 1);
    CHECK_THROWS_AS(parse_poly("x^"), Error);
    CHECK_THROWS_AS(parse_poly("x+"), Error);
    CHECK_THROWS_AS(parse_poly("(x"), Error);
    CHECK_THROWS_AS(parse_poly("y"), Error);
}

TEST_CASE("etale algebra validation") {
    CHECK_NOTHROW(EtaleAlgebra::parse("x^3-3x-1"));
    CHECK_THROWS_AS(EtaleAlgebra::parse("(x-1)^2"), Error);
    try {
        EtaleAlgebra::parse("(x^2-2)^2(x+1)");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSquarefree);
    }
    CHECK_THROWS_AS(EtaleAlgebra::parse("2x^2-1"), Error);
    CHECK_THROWS_AS(EtaleAlgebra::parse("7"), Error);
    CHECK_THROWS_AS(EtaleAlgebra::parse("x^25+1"), Error);
    CHECK_NOTHROW(EtaleAlgebra::parse("x^25+1", 30));
}

TEST_CASE("trace gram examples") {
    CHECK(trace_gram(EtaleAlgebra::parse("x^2-2")).gram == QMatrix{{2, 0}, {0, 4}});
    CHECK(trace_gram(EtaleAlgebra::parse("x^2+1")).gram == QMatrix{{2, 0}, {0, -2}});
    CHECK(trace_gram(EtaleAlgebra::parse("x")).gram == QMatrix{{1}});
}

TEST_CASE("power sums against companion traces, disc against Sylvester") {
    std::mt19937_64 rng(20);
    int tested = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 1 + static_cast<int>(rng() % 7);
        ZPoly f = random_monic(rng, n);
        CHECK(power_sums(f, 2 * n + 2) == companion_traces(f, 2 * n + 2));
        if (gcd_degree(f, f.derivative()) != 0) continue;
        ++tested;
        auto A = EtaleAlgebra::from(f);
        auto G = trace_gram(A);
        mpz_class D = sylvester_disc(f);
        CHECK(G.gram.det() == mpq_class(D));
        CHECK(disc(diagonalize(G)) == sqclass(Q, mpq_class(D)));
    }
    CHECK(tested > 150);
}

TEST_CASE("splittings and the sw2 oracle") {
    auto s = AbelianSplitting::parse("q2,q-3,o3");
    CHECK(s.dim() == 7);
    CHECK(s.str() == "q2,q-3,o3");
    CHECK_THROWS_AS(AbelianSplitting::parse("q4"), Error);
    CHECK_THROWS_AS(AbelianSplitting::parse("o2"), Error);
    CHECK_THROWS_AS(AbelianSplitting::parse("z3"), Error);
    CHECK_THROWS_AS(AbelianSplitting::parse(""), Error);

    CHECK(h2_is_zero(perm_sw2_oracle(AbelianSplitting::parse("q5"))));
    CHECK(perm_sw2_oracle(AbelianSplitting::parse("q2,q3")) == cup(sq(2), sq(3)));
    CHECK(h2_is_zero(perm_sw2_oracle(AbelianSplitting::parse("o3"))));
    CHECK(perm_sw2_oracle(AbelianSplitting::parse("q-1,q-1")) == cup(sq(-1), sq(-1)));
}

TEST_CASE("serre check examples") {
    auto r = serre_check(EtaleAlgebra::parse("x^2-2"), AbelianSplitting::parse("q2"));
    CHECK(h2_is_zero(*r.lhs));
    CHECK(h2_is_zero(r.rhs));
    CHECK(r.status() == "EQUAL");

    r = serre_check(EtaleAlgebra::parse("x^2+1"), AbelianSplitting::parse("q-1"));
    CHECK(r.status() == "EQUAL");

    r = serre_check(EtaleAlgebra::parse("(x^2-2)(x^2-3)"), AbelianSplitting::parse("q2,q3"));
    CHECK(*r.lhs == cup(sq(2), sq(3)));
    CHECK(r.rhs == cup(sq(2), sq(3)));
    CHECK(r.rhs.str() == "{2, 3}");

    r = serre_check(EtaleAlgebra::parse("x^3-3x-1"), AbelianSplitting::parse("o3"));
    CHECK(r.status() == "EQUAL");

    r = serre_check(EtaleAlgebra::parse("x^3-2"), std::nullopt);
    CHECK(r.status() == "oracle-unavailable");
    CHECK_FALSE(r.lhs.has_value());

    CHECK_THROWS_AS(serre_check(EtaleAlgebra::parse("x^2-2"), AbelianSplitting::parse("q2,q3")), Error);
    CHECK_THROWS_AS(serre_check(EtaleAlgebra::parse("x^2-2"), AbelianSplitting::parse("q3")), Error);
}

TEST_CASE("serre check on small quadratic corpus") {
    auto corpus = quadratic_corpus(12, 3);
    for (const auto& [A, s] : corpus) {
        auto r = serre_check(A, s);
        CHECK_MESSAGE(r.equal.value(), A.f.str());
    }
}
