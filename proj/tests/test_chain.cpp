#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kborel/chain.hpp"

#include <random>

using namespace kborel;

namespace {

// Oracle: Euler characteristic two ways. Sum of (-1)^n rank C_n must equal the
// alternating sum of Betti numbers, and homology free ranks must equal Betti numbers.
long euler_from_ranks(ChainComplex const& c) {
    long e = 0;
    for (long n = 0; n <= c.top_dim(); ++n) e += (n % 2 ? -1 : 1) * c.rank(n);
    return e;
}

ChainComplex random_complex(std::mt19937& rng) {
    // build a 3-term complex with guaranteed d1 d2 = 0: take d2 with columns from
    // the kernel lattice of a random d1 (multiples of kernel basis vectors)
    std::uniform_int_distribution<long> dim(1, 4), entry(-4, 4), mult(-2, 2);
    long r0 = dim(rng), r1 = dim(rng), r2 = dim(rng);
    IntMatrix d1 = IntMatrix::build(r0, r1, [&](long, long) { return Int(entry(rng)); });
    SnfResult s = smith_normal_form(d1);
    // columns of R past the rank span ker d1 as a direct summand (L d1 R = D)
    IntMatrix kernel = s.right.cols_slice(s.rank, r1);
    std::vector<std::vector<long>> coeff(r2, std::vector<long>(kernel.cols()));
    for (auto& row : coeff)
        for (auto& v : row) v = mult(rng);
    IntMatrix d2 = IntMatrix::build(r1, r2, [&](long i, long j) {
        Int v = 0;
        for (long k = 0; k < kernel.cols(); ++k) v += Int(coeff[j][k]) * kernel.at(i, k);
        return v;
    });
    return ChainComplex({r0, r1, r2}, {d1, d2});
}

} // namespace

TEST_CASE("chain complex validation") {
    CHECK(ChainComplex().empty());
    IntMatrix d1 = IntMatrix::from_rows({{Int(0), Int(0)}});
    ChainComplex c({1, 2}, {d1});
    CHECK(c.top_dim() == 1);
    CHECK(c.rank(0) == 1);
    CHECK(c.rank(5) == 0);
    // shape mismatch
    CHECK_THROWS_AS(ChainComplex({1, 2}, {IntMatrix(2, 2)}), InputError);
    CHECK_THROWS_AS(ChainComplex({1, 2}, {}), InputError);
    // d d != 0: d2 = [1,0]^T lands outside ker d1 = ker [1 1]
    IntMatrix e1 = IntMatrix::from_rows({{Int(1), Int(1)}});
    IntMatrix e2 = IntMatrix::from_rows({{Int(1)}, {Int(0)}});
    CHECK_THROWS_AS(ChainComplex({1, 2, 1}, {e1, e2}), InputError);
}

TEST_CASE("homology of pinned cell structures") {
    // projective plane: ranks [1,1,1], d1 = 0, d2 = [2]
    ChainComplex rp2({1, 1, 1}, {IntMatrix(1, 1), IntMatrix::from_rows({{Int(2)}})});
    auto h = homology(rp2);
    CHECK(h[0] == FgAbGroup::free(1));
    CHECK(h[1] == FgAbGroup::cyclic(2));
    CHECK(h[2] == FgAbGroup());

    // 2-sphere: ranks [1,0,1]
    ChainComplex s2({1, 0, 1}, {IntMatrix(1, 0), IntMatrix(0, 1)});
    auto hs = homology(s2);
    CHECK(hs[0] == FgAbGroup::free(1));
    CHECK(hs[1] == FgAbGroup());
    CHECK(hs[2] == FgAbGroup::free(1));

    // torus: ranks [1,2,1], all boundaries zero
    ChainComplex t2({1, 2, 1}, {IntMatrix(1, 2), IntMatrix(2, 1)});
    auto ht = homology(t2);
    CHECK(ht[0] == FgAbGroup::free(1));
    CHECK(ht[1] == FgAbGroup::free(2));
    CHECK(ht[2] == FgAbGroup::free(1));

    // klein bottle: ranks [1,2,1], d2 = (0, 2)^T
    ChainComplex kb({1, 2, 1},
                    {IntMatrix(1, 2), IntMatrix::from_rows({{Int(0)}, {Int(2)}})});
    auto hk = homology(kb);
    CHECK(hk[0] == FgAbGroup::free(1));
    CHECK(hk[1] == FgAbGroup(1, {Int(2)}));
    CHECK(hk[2] == FgAbGroup());

    // circle as 2 vertices, 2 edges
    IntMatrix dc = IntMatrix::from_rows({{Int(-1), Int(1)}, {Int(1), Int(-1)}});
    auto hc = homology(ChainComplex({2, 2}, {dc}));
    CHECK(hc[0] == FgAbGroup::free(1));
    CHECK(hc[1] == FgAbGroup::free(1));
}

TEST_CASE("betti numbers agree with homology free ranks and the euler count") {
    std::mt19937 rng(314159);
    for (int trial = 0; trial < 120; ++trial) {
        ChainComplex c = random_complex(rng);
        auto h = homology(c);
        auto b = betti(c);
        REQUIRE(h.size() == b.size());
        long euler_b = 0;
        for (size_t n = 0; n < b.size(); ++n) {
            CHECK(h[n].free_rank() == b[n]);
            euler_b += (n % 2 ? -1 : 1) * b[n];
        }
        CHECK(euler_b == euler_from_ranks(c));
        // mod-p betti dominates rational betti; equality off torsion primes
        std::set<long> tp;
        for (auto const& g : h)
            for (long p : g.torsion_primes()) tp.insert(p);
        for (long p : {2L, 97L}) {
            auto bp = betti_mod_p(c, p);
            long euler_p = 0;
            for (size_t n = 0; n < bp.size(); ++n) {
                CHECK(bp[n] >= b[n]);
                euler_p += (n % 2 ? -1 : 1) * bp[n];
            }
            CHECK(euler_p == euler_from_ranks(c)); // field euler char is rank euler char
            if (!tp.count(p))
                for (size_t n = 0; n < bp.size(); ++n) CHECK(bp[n] == b[n]);
        }
    }
}

TEST_CASE("cokernel presentations") {
    // Z^2 / <(2,0)> = Z/2 + Z, generators: torsion first, then free
    IntMatrix rel = IntMatrix::from_rows({{Int(2)}, {Int(0)}});
    CokernelPresentation p = cokernel_presentation(rel);
    CHECK(p.group == FgAbGroup(1, {Int(2)}));
    CHECK(p.to_canonical.rows() == 2);
    CHECK(p.to_canonical.cols() == 2);
    CHECK(p.section.rows() == 2);

    // to_canonical kills relations (mod torsion orders), and section is a right inverse
    std::mt19937 rng(77);
    std::uniform_int_distribution<long> dim(1, 5), entry(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        long a = dim(rng), r = dim(rng) - 1;
        IntMatrix m = IntMatrix::build(a, r, [&](long, long) { return Int(entry(rng)); });
        CokernelPresentation q = cokernel_presentation(m);
        long t = static_cast<long>(q.group.torsion().size());
        long gens = t + q.group.free_rank();
        REQUIRE(q.to_canonical.rows() == gens);
        REQUIRE(q.to_canonical.cols() == a);
        REQUIRE(q.section.rows() == a);
        REQUIRE(q.section.cols() == gens);
        // relations map to 0 in canonical coordinates
        IntMatrix image = q.to_canonical.mul(m);
        for (long i = 0; i < image.rows(); ++i)
            for (long j = 0; j < image.cols(); ++j) {
                if (i < t) CHECK(image.at(i, j) % q.group.torsion()[i] == 0);
                else CHECK(image.at(i, j) == 0);
            }
        // round trip on canonical generators
        IntMatrix rt = q.to_canonical.mul(q.section);
        for (long i = 0; i < gens; ++i)
            for (long j = 0; j < gens; ++j) {
                Int expect = i == j ? 1 : 0;
                Int diff = rt.at(i, j) - expect;
                if (i < t) CHECK(diff % q.group.torsion()[i] == 0);
                else CHECK(diff == 0);
            }
    }

    // empty relation set: free cokernel
    CokernelPresentation f = cokernel_presentation(IntMatrix(3, 0));
    CHECK(f.group == FgAbGroup::free(3));
    CHECK(f.to_canonical == IntMatrix::identity(3));
}
