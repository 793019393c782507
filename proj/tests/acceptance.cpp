// One PASS/FAIL line per acceptance criterion. Exit status 1 if any line fails.

#include "oracles.hpp"

#include "swhw/cli.hpp"
#include "swhw/coh.hpp"
#include "swhw/error.hpp"
#include "swhw/profile.hpp"
#include "swhw/quadform.hpp"
#include "swhw/symcx.hpp"
#include "swhw/traceform.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace swhw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const std::string& id, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << (pass ? "PASS " : "FAIL ") << id << " " << what << ": " << detail << std::endl;
}

std::string fmt_time(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::set<long> prime_divisors(long n) {
    std::set<long> ps;
    n = std::labs(n);
    for (long d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ps.insert(d);
            n /= d;
        }
    if (n > 1) ps.insert(n);
    return ps;
}

long nonzero(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    long x = 0;
    while (x == 0) x = d(rng);
    return x;
}

void hilbert_reciprocity() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    int bad = 0;
    for (int it = 0; it < 1000; ++it) {
        long a = nonzero(rng, 10000), b = nonzero(rng, 10000);
        std::set<long> ps = prime_divisors(2 * a * b);
        int prod = hilbert_symbol(a, b, Place::real());
        for (long p : ps) prod *= hilbert_symbol(a, b, Place::finite(p));
        if (prod != 1) ++bad;
    }
    double s = seconds_since(t0);
    report("1", bad == 0 && s < 5, "Hilbert reciprocity", "1000 pairs, " + std::to_string(bad) + " violations, " + fmt_time(s));
}

void symbol_oracle() {
    auto t0 = Clock::now();
    const long primes[] = {0, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    // the brute-force oracle only sees squarefree parts
    std::map<std::tuple<long, long, long>, int> memo;
    long checked = 0, bad = 0;
    for (long a = -30; a <= 30; ++a)
        for (long b = -30; b <= 30; ++b) {
            if (a == 0 || b == 0) continue;
            long sa = oracle::squarefree_part(a), sb = oracle::squarefree_part(b);
            for (long p : primes) {
                auto key = std::make_tuple(sa, sb, p);
                auto it = memo.find(key);
                if (it == memo.end()) it = memo.emplace(key, oracle::solvable_symbol(sa, sb, p)).first;
                Place v = p ? Place::finite(p) : Place::real();
                ++checked;
                if (hilbert_symbol(a, b, v) != it->second) ++bad;
            }
        }
    double s = seconds_since(t0);
    report("2", bad == 0 && s < 30, "symbol against solvability oracle",
           std::to_string(checked) + " symbols, " + std::to_string(bad) + " disagreements, " + fmt_time(s));
}

void pivot_invariance() {
    std::mt19937_64 rng(1003);
    int done = 0, bad = 0;
    while (done < 200) {
        int n = 1 + static_cast<int>(rng() % 6);
        QMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                long x = static_cast<long>(rng() % 41) - 20;
                g(i, j) = g(j, i) = x;
            }
        if (g.det() == 0) continue;
        ++done;
        QuadSpace D(g);
        auto f = diagonalize(D, Pivot::Forward), m = diagonalize(D, Pivot::MinAbs);
        if (disc(f) != disc(m) || hw2(f) != hw2(m)) ++bad;
    }
    report("3", bad == 0, "hw invariance under pivot strategy", "200 Gram matrices, " + std::to_string(bad) + " disagreements");
}

void serre_corpus() {
    auto t0 = Clock::now();
    auto corpus = quadratic_corpus(50, 3);
    long bad = 0;
    for (const auto& [A, split] : corpus) {
        auto r = serre_check(A, split);
        if (!r.equal || !*r.equal) ++bad;
    }
    auto cubic = serre_check(EtaleAlgebra::parse("x^3-3x-1"), AbelianSplitting::parse("o3"));
    if (!cubic.equal || !*cubic.equal) ++bad;
    double s = seconds_since(t0);
    report("4", bad == 0 && s < 60, "trace form against permutation representation",
           std::to_string(corpus.size() + 1) + " algebras, " + std::to_string(bad) + " mismatches, " + fmt_time(s));
}

void example_reproduction() {
    int bad = 0;
    long cases = 0;
    for (long p : {5L, 7L, 11L, 13L}) {
        const BaseField K = BaseField::Qp(p);
        H2Class same = solve_sw2(abelian_surface_profile(p, K));
        ++cases;
        if (same != restrict(c_ell(p, BaseField::Q()), K) || h2_is_zero(same)) ++bad;
        for (long l : {3L, 5L, 7L, 11L, 13L}) {
            if (l == p) continue;
            ++cases;
            if (!h2_is_zero(solve_sw2(abelian_surface_profile(l, K)))) ++bad;
        }
    }
    report("5a", bad == 0, "abelian surface over Q_p, p > 3",
           std::to_string(cases) + " (p, l) pairs: c_p for l = p, 0 otherwise; " + std::to_string(bad) + " mismatches");

    const BaseField R = BaseField::R();
    CohomProfile P = abelian_surface_profile(5, R);
    H2Class solved = solve_sw2(P);
    bool hw2_zero = P.hw2_in && h2_is_zero(*P.hw2_in);
    report("5b", !h2_is_zero(solved) && hw2_zero, "abelian surface over R",
           "hw2=" + (P.hw2_in ? P.hw2_in->str() : std::string("?")) + " solve_sw2=" + solved.str() +
               " (expected nonzero with hw2 = 0)");
    // the real identity forces solve_sw2 = hw2_in for this profile
    bool tracks = true;
    for (bool bit : {false, true}) {
        CohomProfile Q = P;
        Q.hw2_in = H2Class::from_bit(R, bit);
        tracks = tracks && solve_sw2(Q) == *Q.hw2_in;
    }
    QuadSpace plucker = QuadSpace::diagonal({1, 1, 1, -1, -1, -1}, R);
    std::cout << "     note: solve_sw2 equals hw2 for both values of hw2: " << (tracks ? "yes" : "no")
              << "; signature (3,3) form over R has hw2=" << hw2(diagonalize(plucker)).str() << std::endl;
}

void three_formulations() {
    std::mt19937_64 rng(1006);
    int bad = 0, holds = 0;
    for (int it = 0; it < 100; ++it) {
        auto P = random_profile(rng);
        auto a = conjecture_sides(P, Form::Plain);
        auto b = conjecture_sides(P, Form::Primed);
        auto c = conjecture_sides(P, Form::Graded);
        if (a.holds() != b.holds() || a.holds() != c.holds() || a.difference() != b.difference() ||
            a.difference() != c.difference())
            ++bad;
        holds += a.holds();
    }
    report("6", bad == 0, "plain, primed and graded formulations",
           "100 profiles (" + std::to_string(holds) + " satisfy the identity), " + std::to_string(bad) + " disagreements");
}

void congruences() {
    int bad = 0;
    for (int n : {2, 4})
        for (int d = 2; d <= 6; ++d)
            if (!congruence_checks(hypersurface_profile(n, d, 5, BaseField::Q())).all_pass()) ++bad;
    auto K3 = hypersurface_profile(2, 4, 5, BaseField::Q());
    bool quartic = K3.h(2, 0) == 1 && K3.h(1, 1) == 20 && K3.b(2) == 22;
    report("7", bad == 0 && quartic, "congruences on hypersurfaces",
           "10 profiles, " + std::to_string(bad) + " failing; quartic h20=" + std::to_string(K3.h(2, 0)) +
               " h11=" + std::to_string(K3.h(1, 1)) + " b2=" + std::to_string(K3.b(2)));
}

void boundary_two_paths() {
    auto cases = cli::boundary_selftest(1008, 100);
    int bad = 0, nontrivial = 0;
    for (const auto& c : cases) {
        bad += !c.equal();
        nontrivial += c.formula != "1";
    }
    report("8", bad == 0, "tame boundary formula against direct boundary",
           std::to_string(cases.size()) + " inputs over Q_3, Q_5, Q_7 (" + std::to_string(nontrivial) +
               " nontrivial), " + std::to_string(bad) + " mismatches");
}

void crystalline() {
    int bad = 0, cases = 0, skipped = 0;
    for (long p : {5L, 7L, 11L, 13L}) {
        const BaseField K = BaseField::Qp(p);
        ++cases;
        bad += !crystalline_boundary_check(abelian_surface_profile(p, K)).holds();
        for (int n : {2, 4})
            for (int d = 2; d <= 6; ++d) {
                if (p <= n + 1) continue;
                CohomProfile H = hypersurface_profile(n, d, p, K, std::nullopt, H2Class::zero(K));
                try {
                    ++cases;
                    bad += !crystalline_boundary_check(H).holds();
                } catch (const Error& e) {
                    // Hodge vanishing fails for this (n, d, p): outside the identity's hypotheses
                    if (e.kind() != ErrorKind::HodgeConditionViolated) throw;
                    --cases;
                    ++skipped;
                }
            }
    }
    report("9", bad == 0, "boundary of sw2 equals h times boundary of c_p",
           std::to_string(cases) + " good-reduction profiles (" + std::to_string(skipped) +
               " outside the Hodge vanishing range), " + std::to_string(bad) + " failures");
}

void real_identity() {
    std::mt19937_64 rng(1010);
    int bad = 0;
    for (int it = 0; it < 100; ++it) {
        auto L = random_real_lefschetz(rng, 2 * static_cast<int>(rng() % 4));
        bad += !real_identity_check(L).holds();
    }
    report("10", bad == 0, "real identity", "100 synthesized polarized structures, " + std::to_string(bad) + " failures");
}

void law_suite_run() {
    auto t0 = Clock::now();
    long lines = 0, bad = 0;
    for (unsigned long seed = 0; seed < 200; ++seed) {
        auto r = law_suite(seed, 12);
        lines += static_cast<long>(r.lines.size());
        for (const auto& l : r.lines) bad += !l.pass;
    }
    double s = seconds_since(t0);
    report("11", bad == 0 && s < 60, "symmetric complex law suite",
           "200 seeds, " + std::to_string(lines) + " checks, " + std::to_string(bad) + " failures, " + fmt_time(s));
}

}  // namespace

int main() {
    hilbert_reciprocity();
    symbol_oracle();
    pivot_invariance();
    serre_corpus();
    example_reproduction();
    three_formulations();
    congruences();
    boundary_two_paths();
    crystalline();
    real_identity();
    law_suite_run();
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failures ? 1 : 0;
}
