#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kborel/groups.hpp"
#include "kborel/rep_ring.hpp"

#include <random>

using namespace kborel;

namespace {

// Q8 = {1,-1,i,-i,j,-j,k,-k}
std::vector<std::vector<long>> q8_table() {
    return {{0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6}, {2, 3, 1, 0, 6, 7, 5, 4},
            {3, 2, 0, 1, 7, 6, 4, 5}, {4, 5, 7, 6, 1, 0, 2, 3}, {5, 4, 6, 7, 0, 1, 3, 2},
            {6, 7, 4, 5, 3, 2, 1, 0}, {7, 6, 5, 4, 2, 3, 0, 1}};
}

// latin square with two-sided identity 0 and two-sided inverses, but (1*1)*2 != 1*(1*2)
std::vector<std::vector<long>> nonassociative_loop() {
    return {{0, 1, 2, 3, 4},
            {1, 0, 3, 4, 2},
            {2, 4, 0, 1, 3},
            {3, 2, 4, 0, 1},
            {4, 3, 1, 2, 0}};
}

} // namespace

TEST_CASE("cyclic groups and element orders") {
    FiniteGroup g = FiniteGroup::cyclic(6);
    CHECK(g.order() == 6);
    CHECK(g.identity() == 0);
    CHECK(g.mul(4, 5) == 3);
    CHECK(g.inverse(2) == 4);
    CHECK(g.element_order(0) == 1);
    CHECK(g.element_order(1) == 6);
    CHECK(g.element_order(2) == 3);
    CHECK(g.element_order(3) == 2);
    CHECK_THROWS_AS(FiniteGroup::cyclic(0), InputError);
}

TEST_CASE("table validation rejects non-groups") {
    CHECK_THROWS_AS(FiniteGroup::from_table({}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}}), InputError); // not square
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 0}, {1, 1}}), InputError); // not latin
    // latin but no two-sided identity: a*b = a-b mod 3 (0 is only a right identity)
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}), InputError);
    // loop (identity + inverses + latin) that fails associativity: Light's test must fire
    CHECK_THROWS_AS(FiniteGroup::from_table(nonassociative_loop()), InputError);
    // valid group passes
    CHECK(FiniteGroup::from_table(q8_table()).order() == 8);
}

TEST_CASE("permutation closure") {
    // S_3 from a transposition and a 3-cycle, acting on 3 points
    FiniteGroup s3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3);
    CHECK(s3.order() == 6);
    auto classes = conjugacy_classes(s3);
    REQUIRE(classes.size() == 3);
    std::multiset<size_t> sizes;
    for (auto const& c : classes) sizes.insert(c.members.size());
    CHECK(sizes == std::multiset<size_t>{1, 2, 3});

    // identity-only generator set
    CHECK(FiniteGroup::from_permutations({{0, 1}}, 2).order() == 1);

    // cap enforcement: Z/12 as a 12-cycle under a cap of 10
    std::vector<long> cyc(12);
    for (long i = 0; i < 12; ++i) cyc[i] = (i + 1) % 12;
    CHECK_THROWS_AS(FiniteGroup::from_permutations({cyc}, 12, 10), InputError);
    CHECK(FiniteGroup::from_permutations({cyc}, 12, 12).order() == 12);

    CHECK_THROWS_AS(FiniteGroup::from_permutations({{0, 0, 1}}, 3), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations({{0, 1, 2}}, 2), InputError);
}

TEST_CASE("conjugacy classes partition the group and centralize correctly") {
    for (auto const& table : {q8_table()}) {
        FiniteGroup g = FiniteGroup::from_table(table);
        auto classes = conjugacy_classes(g);
        std::set<long> seen;
        long total = 0;
        for (auto const& c : classes) {
            CHECK(c.rep == c.members.front()); // least-index representative
            for (long m : c.members) CHECK(seen.insert(m).second);
            total += static_cast<long>(c.members.size());
        }
        CHECK(total == g.order());
    }
}

TEST_CASE("con_p tables") {
    // Z/4 at p = 2: every nontrivial element is its own class, centralizer everything
    auto c4 = con_p(FiniteGroup::cyclic(4), 2);
    REQUIRE(c4.size() == 3);
    for (auto const& c : c4) {
        CHECK(c.class_size == 1);
        CHECK(c.centralizer.order() == 4);
    }
    CHECK(c4[0].rep_order == 4); // element 1 generates
    CHECK(c4[1].rep_order == 2); // element 2
    CHECK(con_p(FiniteGroup::cyclic(4), 3).empty());

    // S_3: one class of transpositions (centralizer Z/2), classes of 3-cycles merge
    FiniteGroup s3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3);
    auto s3c2 = con_p(s3, 2);
    REQUIRE(s3c2.size() == 1);
    CHECK(s3c2[0].class_size == 3);
    CHECK(s3c2[0].centralizer.order() == 2);
    auto s3c3 = con_p(s3, 3);
    REQUIRE(s3c3.size() == 1);
    CHECK(s3c3[0].class_size == 2);
    CHECK(s3c3[0].centralizer.order() == 3);

    // Q8 at p = 2: {-1}, {+-i}, {+-j}, {+-k}
    auto q = con_p(FiniteGroup::from_table(q8_table()), 2);
    REQUIRE(q.size() == 4);
    CHECK(q[0].class_size == 1);
    CHECK(q[0].centralizer.order() == 8);
    for (int i = 1; i < 4; ++i) {
        CHECK(q[i].class_size == 2);
        CHECK(q[i].centralizer.order() == 4);
    }

    CHECK(primes_of_group(FiniteGroup::from_table(q8_table())) == std::vector<long>{2});
    CHECK(primes_of_group(s3) == std::vector<long>{2, 3});
    CHECK_THROWS_AS(con_p(s3, 4), InputError);
}

TEST_CASE("subgroups") {
    FiniteGroup q8 = FiniteGroup::from_table(q8_table());
    FiniteGroup z4 = subgroup_from_members(q8, {0, 1, 2, 3}); // {1,-1,i,-i}
    CHECK(z4.order() == 4);
    CHECK(z4.element_order(2) == 4);
    CHECK_THROWS_AS(subgroup_from_members(q8, {0, 2}), InputError); // i*i = -1 missing
}

TEST_CASE("representation ring of a cyclic group") {
    RepRing r2 = RepRing::cyclic(2);
    CHECK(r2.basis_size() == 2);
    // t * t = 1
    CHECK(r2.mul({Int(0), Int(1)}, {Int(0), Int(1)}) == std::vector<Int>{Int(1), Int(0)});
    CHECK(r2.augment({Int(3), Int(-1)}) == 2);

    RepRing r3 = RepRing::cyclic(3);
    CHECK(r3.mul({Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}) ==
          std::vector<Int>{Int(1), Int(0), Int(0)});

    // augmentation is multiplicative on random elements
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> e(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> a(3), b(3);
        for (auto& x : a) x = e(rng);
        for (auto& x : b) x = e(rng);
        CHECK(r3.augment(r3.mul(a, b)) == r3.augment(a) * r3.augment(b));
    }
}

TEST_CASE("rep ring table validation") {
    // break commutativity: e1*e1 = e0 vs asymmetric structure
    std::vector<std::vector<std::vector<Int>>> bad = {
        {{Int(1), Int(0)}, {Int(0), Int(1)}},
        {{Int(1), Int(0)}, {Int(1), Int(0)}}}; // e1*e0 = e0 but e0*e1 = e1
    CHECK_THROWS_AS(RepRing::from_table(bad, {Int(1), Int(1)}, {Int(1), Int(0)}, "bad"),
                    InputError);
    // break augmentation multiplicativity: t*t = 1 but aug(t) = 2
    std::vector<std::vector<std::vector<Int>>> c2 = {
        {{Int(1), Int(0)}, {Int(0), Int(1)}},
        {{Int(0), Int(1)}, {Int(1), Int(0)}}};
    CHECK_THROWS_AS(RepRing::from_table(c2, {Int(1), Int(2)}, {Int(1), Int(0)}, "bad"),
                    InputError);
    // the honest table round-trips
    RepRing ok = RepRing::from_table(c2, {Int(1), Int(1)}, {Int(1), Int(0)}, "Z[Z/2]");
    CHECK(ok.basis_size() == 2);
}

TEST_CASE("ideal powers") {
    RepRing r = RepRing::cyclic(4);
    CHECK(r.ideal_power(0) == IntMatrix::identity(4));
    IntMatrix i1 = r.ideal_power(1);
    CHECK(i1.cols() == 3); // kernel of augmentation has corank 1
    for (long j = 0; j < i1.cols(); ++j) CHECK(r.augment(i1.col(j)) == 0);
    // containment I^2 <= I^1 via the quotient: equal cokernels force equal lattices
    IntMatrix i2 = r.ideal_power(2);
    for (long j = 0; j < i2.cols(); ++j) CHECK(r.augment(i2.col(j)) == 0);
    CHECK(cokernel_presentation(i1.hstack(i2)).group == cokernel_presentation(i1).group);
    // proper descent: I^2 is strictly smaller
    CHECK(cokernel_presentation(i2).group != cokernel_presentation(i1).group);
}

TEST_CASE("quotients by ideal powers of Z[Z/2]") {
    // I = <t-1>, I^n = <2^{n-1}(1-t)>: R/I^n = Z + Z/2^{n-1}
    RepRing r = RepRing::cyclic(2);
    CHECK(rep_quotient(r, 1).group == FgAbGroup::free(1));
    CHECK(rep_quotient(r, 2).group == FgAbGroup(1, {Int(2)}));
    for (long n = 2; n <= 7; ++n) {
        Int order = 1;
        order <<= (n - 1);
        CHECK(rep_quotient(r, n).group == FgAbGroup(1, {order}));
    }
}

TEST_CASE("completion rank detector against the class-counting oracle") {
    for (long m : {2L, 3L, 4L, 5L, 6L, 8L, 9L, 12L}) {
        RepRing r = RepRing::cyclic(m);
        FiniteGroup g = FiniteGroup::cyclic(m);
        for (long p : {2L, 3L, 5L}) {
            CompletionReport rep = completion_rank(r, p, 12);
            long oracle = static_cast<long>(con_p(g, p).size());
            INFO("m = ", m, ", p = ", p);
            CHECK(rep.stabilized);
            CHECK(rep.rank == oracle);
            CHECK(rep.stable_at <= 12);
        }
    }
    CHECK_THROWS_AS(completion_rank(RepRing::cyclic(2), 4, 12), InputError);
}
