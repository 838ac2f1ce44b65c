#include "kborel/numtheory.hpp"

#include "kborel/errors.hpp"

#include <algorithm>

namespace kborel {

bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    if (n < 1) throw InputError("prime_factors: argument must be positive");
    std::vector<long> ps;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

namespace {

// Pollard rho with Brent cycling; inputs are odd composites with no small factors.
Int pollard_rho(Int const& n) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eedul);
    while (true) {
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = rng.get_z_range(n);
        Int y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(Int n, std::map<long, long>& out, int depth) {
    if (n == 1) return;
    if (depth > 64) throw UnsupportedError("factorize: recursion budget exhausted");
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        if (!n.fits_slong_p())
            throw UnsupportedError("factorize: prime factor exceeds machine range");
        out[n.get_si()] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out, depth + 1);
    factor_into(n / d, out, depth + 1);
}

} // namespace

std::map<long, long> factorize(Int const& n) {
    if (n < 1) throw InputError("factorize: argument must be positive");
    std::map<long, long> out;
    Int m = n;
    for (long d = 2; d < 100000 && Int(d) * d <= m; d == 2 ? d += 1 : d += 2) {
        while (m % d == 0) {
            out[d] += 1;
            m /= d;
        }
    }
    factor_into(m, out, 0);
    return out;
}

long p_valuation(Int const& n, long p) {
    if (n == 0) throw InputError("p_valuation: argument must be nonzero");
    if (p < 2) throw InputError("p_valuation: p must be at least 2");
    Int m = n < 0 ? Int(-n) : n;
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

Int coprime_part(Int n, std::set<long> const& ps) {
    if (n < 1) throw InputError("coprime_part: argument must be positive");
    for (long p : ps)
        while (n % p == 0) n /= p;
    return n;
}

} // namespace kborel
