#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kborel/abelian.hpp"

#include <random>

using namespace kborel;

namespace {

// Oracle: multiset of prime-power components of a torsion list. Invariant factor
// canonicalization must preserve this multiset exactly.
std::multiset<std::pair<long, long>> primary_components(std::vector<Int> const& torsion) {
    std::multiset<std::pair<long, long>> out;
    for (auto const& d : torsion)
        for (auto [p, e] : factorize(d)) out.insert({p, e});
    return out;
}

} // namespace

TEST_CASE("invariant factor canonicalization") {
    FgAbGroup g(1, {Int(4), Int(6)});
    CHECK(g.free_rank() == 1);
    CHECK(g.torsion() == std::vector<Int>{Int(2), Int(12)});

    CHECK(FgAbGroup(0, {Int(2), Int(3)}) == FgAbGroup::cyclic(6));
    CHECK(FgAbGroup(0, {Int(1), Int(1)}) == FgAbGroup());
    CHECK(FgAbGroup(2, {}) == FgAbGroup::free(2));
    CHECK(FgAbGroup(0, {Int(6), Int(4)}) == FgAbGroup(0, {Int(4), Int(6)}));
    CHECK_THROWS_AS(FgAbGroup(-1, {}), InputError);
    CHECK_THROWS_AS(FgAbGroup(0, {Int(0)}), InputError);

    // canonical form preserves primary decomposition and satisfies the divisibility chain
    std::mt19937 rng(42);
    std::uniform_int_distribution<long> d(1, 400);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Int> t;
        for (int i = 0; i < trial % 5; ++i) t.push_back(Int(d(rng)));
        FgAbGroup h(0, t);
        CHECK(primary_components(h.torsion()) == primary_components(t));
        for (size_t i = 1; i < h.torsion().size(); ++i)
            CHECK(h.torsion()[i] % h.torsion()[i - 1] == 0);
        for (auto const& f : h.torsion()) CHECK(f >= 2);
    }
}

TEST_CASE("order and torsion primes") {
    CHECK(FgAbGroup(0, {Int(4), Int(6)}).order() == 24);
    CHECK(FgAbGroup().order() == 1);
    CHECK_THROWS_AS(FgAbGroup::free(1).order(), InputError);
    CHECK(FgAbGroup(3, {Int(12), Int(10)}).torsion_primes() == std::set<long>{2, 3, 5});
    CHECK(FgAbGroup::free(3).torsion_primes().empty());
}

TEST_CASE("direct sums") {
    CHECK(direct_sum(FgAbGroup(1, {Int(2)}), FgAbGroup(2, {Int(4)})) ==
          FgAbGroup(3, {Int(2), Int(4)}));
    AdicGroup a(1, {{2, 3}}, {5});
    AdicGroup b(0, {{2, 1}, {3, 2}}, {5, 7});
    AdicGroup s = direct_sum(a, b);
    CHECK(s.z_rank() == 1);
    CHECK(s.p_ranks() == std::map<long, long>{{2, 4}, {3, 2}});
    CHECK(s.ambiguity() == std::set<long>{5, 7});
    CHECK_THROWS_AS(direct_sum(a, invert_primes(b, {2})), InputError);

    DivisibleGroup da(0, {{2, 1}}, {});
    DivisibleGroup db(2, {{2, 2}, {5, 1}}, {3});
    DivisibleGroup ds = direct_sum(da, db);
    CHECK(ds.z_rank() == 2);
    CHECK(ds.prufer_ranks() == std::map<long, long>{{2, 3}, {5, 1}});
    CHECK(ds.ambiguity() == std::set<long>{3});
}

TEST_CASE("hom and ext to Z") {
    // hom kills torsion, ext keeps exactly the torsion: both are componentwise rules
    FgAbGroup g(2, {Int(3), Int(9)});
    CHECK(hom_to_Z(g) == FgAbGroup::free(2));
    CHECK(ext_to_Z(g) == FgAbGroup(0, {Int(3), Int(9)}));
    CHECK(hom_to_Z(FgAbGroup()) == FgAbGroup());
    CHECK(ext_to_Z(FgAbGroup::free(5)) == FgAbGroup());
    CHECK(ext_to_Z(FgAbGroup::cyclic(12)) == FgAbGroup::cyclic(12));
}

TEST_CASE("universal coefficients in both directions") {
    // K^0 = Z + Z/2, K^1 = Z^2 (pinned: K-groups of a genus-1-like input)
    FgAbGroup k0(1, {Int(2)}), k1 = FgAbGroup::free(2);
    auto [h0, h1] = uct_cohomology_to_homology(k0, k1);
    CHECK(h0 == FgAbGroup::free(1));          // hom(K^0) + ext(K^1) = Z + 0
    CHECK(h1 == FgAbGroup(2, {Int(2)}));      // hom(K^1) + ext(K^0) = Z^2 + Z/2
    auto [c0, c1] = uct_homology_to_cohomology(h0, h1);
    // round trip is identity exactly when torsion sits where the dual slot expects it
    CHECK(c0 == FgAbGroup(1, {Int(2)}));
    CHECK(c1 == FgAbGroup::free(2));

    // shape property on random inputs: free ranks transfer on the nose, torsion crosses
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> fr(0, 3), tor(2, 50);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> t0, t1;
        for (int i = 0; i < trial % 3; ++i) t0.push_back(Int(tor(rng)));
        for (int i = 0; i < (trial / 3) % 3; ++i) t1.push_back(Int(tor(rng)));
        FgAbGroup a(fr(rng), t0), b(fr(rng), t1);
        auto [x0, x1] = uct_cohomology_to_homology(a, b);
        CHECK(x0 == FgAbGroup(a.free_rank(), b.torsion()));
        CHECK(x1 == FgAbGroup(b.free_rank(), a.torsion()));
    }
}

TEST_CASE("adic and divisible construction") {
    AdicGroup a(2, {{2, 1}, {3, 0}}, {2});
    CHECK(a.p_ranks() == std::map<long, long>{{2, 1}}); // zero ranks dropped
    CHECK(!a.rationalized());
    CHECK(AdicGroup().is_trivial());
    CHECK_THROWS_AS(AdicGroup(0, {{4, 1}}, {}), InputError);
    CHECK_THROWS_AS(AdicGroup(0, {{2, -1}}, {}), InputError);
    CHECK_THROWS_AS(AdicGroup(-1, {}, {}), InputError);
    CHECK_THROWS_AS(DivisibleGroup(0, {{6, 2}}, {}), InputError);
}

TEST_CASE("dim hat p calculus") {
    // table: Z -> 1, Z_p^ -> 1, Z_q^ -> 0, finite -> 0, Z/p^infty -> 0, ambiguity -> 0
    CHECK(dim_hat_p(FgAbGroup::free(1), 2) == 1);
    CHECK(dim_hat_p(FgAbGroup::cyclic(8), 2) == 0);
    CHECK(dim_hat_p(FgAbGroup(3, {Int(2), Int(4)}), 2) == 3);
    CHECK(dim_hat_p(AdicGroup(1, {{2, 5}, {3, 1}}, {7}), 2) == 6);
    CHECK(dim_hat_p(AdicGroup(1, {{2, 5}, {3, 1}}, {7}), 3) == 2);
    CHECK(dim_hat_p(AdicGroup(1, {{2, 5}, {3, 1}}, {7}), 7) == 1);
    CHECK(dim_hat_p(DivisibleGroup(2, {{2, 9}}, {}), 2) == 2);
    // inverted p: Z[1/p] and Q_p^ both have vanishing p-completion dim
    CHECK(dim_hat_p(invert_primes(AdicGroup(1, {{2, 5}}, {}), {2}), 2) == 0);
    // Z[1/2] still 3-completes to Z_3^, so the z part survives at p = 3
    CHECK(dim_hat_p(invert_primes(AdicGroup(1, {{2, 5}, {3, 2}}, {}), {2}), 3) == 3);
    CHECK(dim_hat_p(GroupValue(SymbolicValue{AdicGroup(0, {{2, 3}}, {}), std::nullopt,
                                             FgAbGroup::cyclic(4)}),
                    2) == 3);
}

TEST_CASE("inverting primes") {
    CHECK(invert_primes(FgAbGroup(2, {Int(12)}), {2}) == FgAbGroup(2, {Int(3)}));
    CHECK(invert_primes(FgAbGroup(0, {Int(8)}), {2}) == FgAbGroup());
    AdicGroup a = invert_primes(AdicGroup(1, {{2, 2}, {3, 1}}, {2, 5}), {2});
    CHECK(a.rationalized());
    CHECK(a.inverted() == std::set<long>{2});
    CHECK(a.p_ranks() == std::map<long, long>{{2, 2}, {3, 1}}); // ranks persist, label moves
    CHECK(a.ambiguity() == std::set<long>{5});
    DivisibleGroup d = invert_primes(DivisibleGroup(1, {{2, 2}, {3, 1}}, {}), {2});
    CHECK(d.prufer_ranks() == std::map<long, long>{{3, 1}}); // inverted Prufer ranks die
    CHECK(d.z_rank() == 1);
}

TEST_CASE("pontryagin duality swaps adic and prufer ranks") {
    AdicGroup a(2, {{2, 3}, {5, 1}}, {3});
    DivisibleGroup d = pontryagin_dual(a);
    CHECK(d.z_rank() == 2);
    CHECK(d.prufer_ranks() == std::map<long, long>{{2, 3}, {5, 1}});
    CHECK(d.ambiguity() == std::set<long>{3});
    CHECK(pontryagin_dual(d) == a); // involution
    CHECK_THROWS_AS(pontryagin_dual(invert_primes(a, {2})), UnsupportedError);
}

TEST_CASE("group value equality") {
    GroupValue a = FgAbGroup::cyclic(4);
    GroupValue b = FgAbGroup(0, {Int(4)});
    CHECK(group_value_equal(a, b));
    CHECK(!group_value_equal(a, GroupValue(FgAbGroup::cyclic(2))));
    CHECK(!group_value_equal(a, GroupValue(AdicGroup(0, {{2, 1}}, {}))));
    // symbolic with empty parts reduces to its finite part
    GroupValue s = SymbolicValue{std::nullopt, std::nullopt, FgAbGroup::cyclic(4)};
    CHECK(group_value_equal(s, a));
}

TEST_CASE("rendering") {
    CHECK(render(FgAbGroup(), false) == "0");
    CHECK(render(FgAbGroup(1, {Int(2)}), false) == "ℤ ⊕ ℤ/2");
    CHECK(render(FgAbGroup(2, {Int(2), Int(2)}), true) == "Z^2 + (Z/2)^2");
    CHECK(render(FgAbGroup(0, {Int(4)}), true) == "Z/4");
    CHECK(render(AdicGroup(1, {{2, 1}, {3, 2}}, {}), true) == "Z + Z_2^ + (Z_3^)^2");
    CHECK(render(AdicGroup(0, {{2, 1}}, {2, 3}), true) ==
          "Z_2^ (up to finite {2,3}-torsion)");
    CHECK(render(DivisibleGroup(0, {{2, 3}}, {}), true) == "(Z/2^inf)^3");
    CHECK(render(DivisibleGroup(0, {{2, 1}}, {}), false) == "ℤ/2^∞");
    CHECK(render(invert_primes(AdicGroup(1, {{2, 1}}, {}), {2}), true) == "Z[1/2] + Q_2^");
    CHECK(render(AdicGroup(), true) == "0");
    CHECK(render(GroupValue(SymbolicValue{AdicGroup(0, {{2, 1}}, {}), std::nullopt,
                                          FgAbGroup::cyclic(2)}),
                 true) == "Z_2^ + Z/2");
}
