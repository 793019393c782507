#pragma once
// Integer helpers on GMP values: factoring, valuations, Legendre symbols.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace swhw::nt {

bool is_prime(const mpz_class& n);
bool is_prime(long n);

/// Prime factorization of |n| (n != 0). Trial division, then Pollard-Brent.
std::map<mpz_class, int> factor(const mpz_class& n);

/// Primes dividing |n| to an odd power, ascending.
std::vector<mpz_class> odd_primes(const mpz_class& n);

/// p-adic valuation of n != 0. The first form divides n by p^v in place.
int valuation(mpz_class& n, const mpz_class& p);
int valuation_of(const mpz_class& n, const mpz_class& p);

/// Legendre symbol (a/p) for odd prime p, result in {-1, 0, 1}.
int legendre(const mpz_class& a, const mpz_class& p);

/// Least positive quadratic nonresidue mod odd prime p.
long least_nonsquare(long p);

mpz_class parse_integer(const std::string& s);
mpq_class parse_rational(const std::string& s);
std::string to_string(const mpq_class& q);

/// C(r,2) mod 2 with the polynomial extension r(r-1)/2 for negative r.
inline int binom2_mod2(long r) {
    long v = r * (r - 1) / 2;
    return static_cast<int>(((v % 2) + 2) % 2);
}
inline int mod2(long r) { return static_cast<int>(((r % 2) + 2) % 2); }

}  // namespace swhw::nt
