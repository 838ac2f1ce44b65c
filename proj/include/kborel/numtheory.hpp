#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <vector>

namespace kborel {

using Int = mpz_class;

bool is_prime(long n);

// Distinct prime divisors, ascending. n >= 1.
std::vector<long> prime_factors(long n);

// Full factorization, prime -> exponent. n >= 1. Throws UnsupportedError when a
// cofactor resists the desk-scale factoring budget.
std::map<long, long> factorize(Int const& n);

// Largest e with p^e | n. n != 0.
long p_valuation(Int const& n, long p);

// n with every power of every p in ps divided out. n >= 1.
Int coprime_part(Int n, std::set<long> const& ps);

} // namespace kborel
