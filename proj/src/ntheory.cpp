#include "swhw/ntheory.hpp"

#include "swhw/error.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace swhw {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::CharacteristicClash: return "CharacteristicClash";
        case ErrorKind::EvenResidueChar: return "EvenResidueChar";
        case ErrorKind::NotInField: return "NotInField";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::NotIsotropic: return "NotIsotropic";
        case ErrorKind::NotIndependent: return "NotIndependent";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SplittingMismatch: return "SplittingMismatch";
        case ErrorKind::BadValuation: return "BadValuation";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::MissingInput: return "MissingInput";
        case ErrorKind::ParityViolation: return "ParityViolation";
        case ErrorKind::HodgeConditionViolated: return "HodgeConditionViolated";
        case ErrorKind::InconsistentSynthesis: return "InconsistentSynthesis";
        case ErrorKind::NotHomotopy: return "NotHomotopy";
        case ErrorKind::NotQuasiIso: return "NotQuasiIso";
        case ErrorKind::NotSymmetricHomotopy: return "NotSymmetricHomotopy";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace swhw

namespace swhw::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 gcd64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's variant of Pollard rho on 64-bit moduli.
u64 rho64(u64 n, u64 c) {
    if (n % 2 == 0) return 2;
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        do {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd64(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

mpz_class rho_big(const mpz_class& n, unsigned long c) {
    mpz_class y = 2, x = 2, g = 1, q = 1, ys = 2, t;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](mpz_class& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) f(y);
        unsigned long k = 0;
        do {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                f(y);
                t = abs(x - y);
                q = q * t;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            f(ys);
            t = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

mpz_class find_factor(const mpz_class& n) {
    for (unsigned long c = 1;; ++c) {
        mpz_class g;
        if (mpz_fits_ulong_p(n.get_mpz_t()) && sizeof(unsigned long) == 8) {
            g = static_cast<unsigned long>(rho64(n.get_ui(), c));
        } else {
            g = rho_big(n, c);
        }
        if (g != 1 && g != n) return g;
    }
}

void factor_into(const mpz_class& n, std::map<mpz_class, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    mpz_class d = find_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> ps = [] {
        const unsigned long lim = 20000;
        std::vector<bool> sieve(lim + 1, true);
        std::vector<unsigned long> v;
        for (unsigned long i = 2; i <= lim; ++i) {
            if (!sieve[i]) continue;
            v.push_back(i);
            for (unsigned long j = i * i; j <= lim; j += i) sieve[j] = false;
        }
        return v;
    }();
    return ps;
}

}  // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(long n) { return is_prime(mpz_class(n)); }

std::map<mpz_class, int> factor(const mpz_class& n0) {
    if (n0 == 0) throw Error(ErrorKind::ZeroInput, "cannot factor 0");
    static std::mutex mu;
    static std::unordered_map<std::string, std::map<mpz_class, int>> cache;
    mpz_class n = abs(n0);
    const std::string key = n.get_str(16);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::map<mpz_class, int> out;
    for (unsigned long p : small_primes()) {
        if (n == 1) break;
        if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) {
            break;
        }
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e) out[mpz_class(p)] = e;
    }
    if (n != 1) factor_into(n, out);
    std::lock_guard<std::mutex> lk(mu);
    if (cache.size() > 200000) cache.clear();
    cache.emplace(key, out);
    return out;
}

std::vector<mpz_class> odd_primes(const mpz_class& n) {
    std::vector<mpz_class> v;
    for (const auto& [p, e] : factor(n))
        if (e % 2) v.push_back(p);
    return v;
}

int valuation(mpz_class& n, const mpz_class& p) {
    if (n == 0) throw Error(ErrorKind::ZeroInput, "valuation of 0");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation_of(const mpz_class& n, const mpz_class& p) {
    mpz_class m = n;
    return valuation(m, p);
}

int legendre(const mpz_class& a, const mpz_class& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

long least_nonsquare(long p) {
    for (long u = 2; u < p; ++u)
        if (legendre(mpz_class(u), mpz_class(p)) == -1) return u;
    throw Error(ErrorKind::InvalidArgument, "no nonsquare mod " + std::to_string(p));
}

mpz_class parse_integer(const std::string& s) {
    mpz_class z;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || z.set_str(t, 10) != 0)
        throw Error(ErrorKind::ParseError, "not an integer: '" + s + "'");
    return z;
}

mpq_class parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(parse_integer(s));
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace swhw::nt
