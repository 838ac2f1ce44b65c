#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kborel/complexes.hpp"

#include <functional>
#include <numeric>

using namespace kborel;

namespace {

// interval [-1,1] as three 0-cells and two 1-cells, with the Z/2 reflection:
// vertices 0<->2, 1 fixed; edges swap with orientation reversal
CwComplex interval_complex() {
    IntMatrix d1 = IntMatrix::from_rows(
        {{Int(-1), Int(0)}, {Int(1), Int(-1)}, {Int(0), Int(1)}});
    return CwComplex(ChainComplex({3, 2}, {d1}), {{"-1", "0", "1"}, {"[-1,0]", "[0,1]"}});
}

GCwComplex interval_with_flip() {
    std::map<long, std::vector<SignedPerm>> act;
    act[1] = {SignedPerm{{2, 1, 0}, {1, 1, 1}}, SignedPerm{{1, 0}, {-1, -1}}};
    return GCwComplex(interval_complex(), FiniteGroup::cyclic(2), act);
}

// S^1 as a square (4 vertices, 4 edges), antipodal Z/2 shifting by two
GCwComplex circle_with_antipode() {
    IntMatrix d1 = IntMatrix::from_rows({{Int(-1), Int(0), Int(0), Int(1)},
                                         {Int(1), Int(-1), Int(0), Int(0)},
                                         {Int(0), Int(1), Int(-1), Int(0)},
                                         {Int(0), Int(0), Int(1), Int(-1)}});
    CwComplex square(ChainComplex({4, 4}, {d1}));
    std::map<long, std::vector<SignedPerm>> act;
    act[1] = {SignedPerm{{2, 3, 0, 1}, {1, 1, 1, 1}}, SignedPerm{{2, 3, 0, 1}, {1, 1, 1, 1}}};
    return GCwComplex(std::move(square), FiniteGroup::cyclic(2), act);
}

// cone over k free orbits of vertices: apex + k|G| spokes; contractible, G acts freely
// away from the apex
GCwComplex star_complex(FiniteGroup const& g, long k) {
    long n = g.order() * k;
    // vertex 0 = apex; base vertex (o, a) at index 1 + o*|G| + a; edge i joins apex
    // to base vertex i+1 so d(e_i) = v_{i+1} - v_0
    IntMatrix d1 = IntMatrix::build(n + 1, n, [&](long i, long j) {
        if (i == 0) return Int(-1);
        return Int(i == j + 1 ? 1 : 0);
    });
    CwComplex base(ChainComplex({n + 1, n}, {d1}));
    std::map<long, std::vector<SignedPerm>> act;
    for (long h = 0; h < g.order(); ++h) {
        SignedPerm v0, e0;
        v0.image.push_back(0);
        v0.sign.push_back(1);
        for (long o = 0; o < k; ++o)
            for (long a = 0; a < g.order(); ++a) {
                v0.image.push_back(1 + o * g.order() + g.mul(h, a));
                v0.sign.push_back(1);
                e0.image.push_back(o * g.order() + g.mul(h, a));
                e0.sign.push_back(1);
            }
        act[h] = {v0, e0};
    }
    return GCwComplex(std::move(base), g, act);
}

std::vector<long> all_members(FiniteGroup const& g) {
    std::vector<long> m(g.order());
    std::iota(m.begin(), m.end(), 0);
    return m;
}

// independent orbit counter for the euler cross-check
long orbit_count(GCwComplex const& x, std::vector<long> const& members, long dim) {
    long n = x.base().chain().rank(dim);
    std::vector<long> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<long(long)> find = [&](long a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (long h : members)
        for (long i = 0; i < n; ++i) parent[find(i)] = find(x.rho(h, dim).image[i]);
    long count = 0;
    for (long i = 0; i < n; ++i)
        if (find(i) == i) ++count;
    return count;
}

} // namespace

TEST_CASE("surface complexes") {
    CHECK(betti(surface_complex(0).chain()) == std::vector<long>{1, 0, 1});
    CHECK(betti(surface_complex(1).chain()) == std::vector<long>{1, 2, 1});
    CHECK(betti(surface_complex(2).chain()) == std::vector<long>{1, 4, 1});
    CHECK(surface_complex(3).labels(1).size() == 6);
    CHECK_THROWS_AS(surface_complex(-1), InputError);
}

TEST_CASE("action validation") {
    // the honest flip passes
    CHECK(interval_with_flip().group().order() == 2);

    // flipping edges without reversing orientation breaks boundary equivariance
    std::map<long, std::vector<SignedPerm>> bad_sign;
    bad_sign[1] = {SignedPerm{{2, 1, 0}, {1, 1, 1}}, SignedPerm{{1, 0}, {1, 1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(2), bad_sign),
                    InputError);

    // fixed middle vertex with sign -1 is inadmissible
    std::map<long, std::vector<SignedPerm>> bad_fix;
    bad_fix[1] = {SignedPerm{{2, 1, 0}, {1, -1, 1}}, SignedPerm{{1, 0}, {-1, -1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(2), bad_fix),
                    InputError);

    // not a permutation
    std::map<long, std::vector<SignedPerm>> not_perm;
    not_perm[1] = {SignedPerm{{2, 1, 1}, {1, 1, 1}}, SignedPerm{{1, 0}, {-1, -1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(2), not_perm),
                    InputError);

    // nontrivial action assigned to the identity
    std::map<long, std::vector<SignedPerm>> bad_id;
    bad_id[0] = {SignedPerm{{2, 1, 0}, {1, 1, 1}}, SignedPerm{{1, 0}, {-1, -1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(2), bad_id),
                    InputError);

    // generator action inconsistent with the group law: on Z/4, let the generator's
    // square disagree with the explicitly supplied action of element 2
    std::map<long, std::vector<SignedPerm>> incons;
    incons[1] = {SignedPerm::id(3), SignedPerm::id(2)};
    incons[2] = {SignedPerm{{2, 1, 0}, {1, 1, 1}}, SignedPerm{{1, 0}, {-1, -1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(4), incons),
                    InputError);

    // action missing a dimension
    std::map<long, std::vector<SignedPerm>> short_act;
    short_act[1] = {SignedPerm{{2, 1, 0}, {1, 1, 1}}};
    CHECK_THROWS_AS(GCwComplex(interval_complex(), FiniteGroup::cyclic(2), short_act),
                    InputError);
}

TEST_CASE("fixed subcomplexes") {
    GCwComplex x = interval_with_flip();
    // identity fixes everything
    GCwComplex all = fixed_subcomplex(x, 0);
    CHECK(all.base().chain().ranks() == std::vector<long>{3, 2});
    // the flip fixes exactly the midpoint
    GCwComplex mid = fixed_subcomplex(x, 1);
    CHECK(mid.base().chain().ranks() == std::vector<long>{1});
    CHECK(mid.base().labels(0) == std::vector<std::string>{"0"});
    CHECK(mid.group().order() == 2); // centralizer in an abelian group is everything

    // free action: empty fixed part
    GCwComplex free_fixed = fixed_subcomplex(circle_with_antipode(), 1);
    CHECK(free_fixed.base().empty());

    // fixed edge whose endpoints swap: boundary leaves the fixed part
    IntMatrix d1 = IntMatrix::from_rows({{Int(1)}, {Int(1)}});
    CwComplex weird(ChainComplex({2, 1}, {d1}));
    std::map<long, std::vector<SignedPerm>> act;
    act[1] = {SignedPerm{{1, 0}, {1, 1}}, SignedPerm{{0}, {1}}};
    GCwComplex w(std::move(weird), FiniteGroup::cyclic(2), act);
    CHECK_THROWS_AS(fixed_subcomplex(w, 1), HypothesisError);

    CHECK_THROWS_AS(fixed_subcomplex(x, 5), InputError);
}

TEST_CASE("rational quotient cohomology") {
    GCwComplex x = interval_with_flip();
    // trivial subgroup: plain betti numbers of the interval
    CHECK(rational_quotient_cohomology(x, {0}) == std::vector<long>{1, 0});
    // full flip: quotient is again contractible
    CHECK(rational_quotient_cohomology(x, {0, 1}) == std::vector<long>{1, 0});

    // antipodal quotient of S^1 is S^1
    GCwComplex c = circle_with_antipode();
    CHECK(rational_quotient_cohomology(c, {0, 1}) == std::vector<long>{1, 1});
    // oracle: explicit quotient cell structure (2 vertices, 2 edges)
    IntMatrix qd = IntMatrix::from_rows({{Int(-1), Int(1)}, {Int(1), Int(-1)}});
    CHECK(betti(ChainComplex({2, 2}, {qd})) == std::vector<long>{1, 1});

    CHECK_THROWS_AS(rational_quotient_cohomology(x, {1}), InputError); // not a subgroup
}

TEST_CASE("coinvariant euler characteristic equals the orbit count euler sum") {
    std::vector<GCwComplex> corpus;
    corpus.push_back(interval_with_flip());
    corpus.push_back(circle_with_antipode());
    for (long k : {1L, 2L}) {
        corpus.push_back(star_complex(FiniteGroup::cyclic(4), k));
        corpus.push_back(star_complex(FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3), k));
    }
    for (auto const& x : corpus) {
        auto members = all_members(x.group());
        auto b = rational_quotient_cohomology(x, members);
        long euler_b = 0, euler_o = 0;
        for (long n = 0; n < static_cast<long>(b.size()); ++n) {
            euler_b += (n % 2 ? -1 : 1) * b[n];
            euler_o += (n % 2 ? -1 : 1) * orbit_count(x, members, n);
        }
        CHECK(euler_b == euler_o);
    }
}

TEST_CASE("acyclicity checks") {
    // a point
    CwComplex pt(ChainComplex({1}, {}));
    CHECK(check_acyclicity(pt, CoeffField::integers()).acyclic);
    CHECK(check_acyclicity(pt, CoeffField::rationals()).acyclic);
    CHECK(check_acyclicity(pt, CoeffField::mod_p(2)).acyclic);

    // the empty complex is not acyclic: reduced degree -1 sees Z
    AcyclicityReport empty_rep = check_acyclicity(CwComplex(), CoeffField::integers());
    CHECK(!empty_rep.acyclic);
    CHECK(empty_rep.degree == -1);
    CHECK(empty_rep.witness == "Z");

    // S^2 fails in degree 2 over Z
    CwComplex s2(ChainComplex({1, 0, 1}, {IntMatrix(1, 0), IntMatrix(0, 1)}));
    AcyclicityReport s2_rep = check_acyclicity(s2, CoeffField::integers());
    CHECK(!s2_rep.acyclic);
    CHECK(s2_rep.degree == 2);
    CHECK(s2_rep.witness == "Z");

    // projective plane: acyclic over F_3 and Q, not over F_2, not over Z
    CwComplex rp2(ChainComplex({1, 1, 1}, {IntMatrix(1, 1), IntMatrix::from_rows({{Int(2)}})}));
    CHECK(check_acyclicity(rp2, CoeffField::mod_p(3)).acyclic);
    CHECK(check_acyclicity(rp2, CoeffField::rationals()).acyclic);
    AcyclicityReport rp2_f2 = check_acyclicity(rp2, CoeffField::mod_p(2));
    CHECK(!rp2_f2.acyclic);
    CHECK(rp2_f2.degree == 1);
    AcyclicityReport rp2_z = check_acyclicity(rp2, CoeffField::integers());
    CHECK(!rp2_z.acyclic);
    CHECK(rp2_z.witness == "Z/2");

    // two points: connected components show up in reduced degree 0
    CwComplex two(ChainComplex({2}, {}));
    AcyclicityReport two_rep = check_acyclicity(two, CoeffField::rationals());
    CHECK(!two_rep.acyclic);
    CHECK(two_rep.degree == 0);
}

TEST_CASE("smith consistency") {
    // interval with flip at p = 2: contractible ambient, fixed point
    SmithReport ok = smith_consistency(interval_with_flip(), 1, 2);
    CHECK(ok.hypothesis_met);
    CHECK(ok.fixed_nonempty);
    CHECK(ok.fixed_acyclic);
    CHECK(ok.pass);

    // S^1 with the antipode is not F_2-acyclic: hypothesis not met, no conclusion
    SmithReport bad = smith_consistency(circle_with_antipode(), 1, 2);
    CHECK(!bad.hypothesis_met);
    CHECK(!bad.pass);
    CHECK(!bad.fixed_nonempty);

    // property: every p-power element of every acyclic corpus member passes
    std::vector<GCwComplex> corpus;
    corpus.push_back(interval_with_flip());
    corpus.push_back(star_complex(FiniteGroup::cyclic(4), 2));
    corpus.push_back(star_complex(FiniteGroup::cyclic(9), 1));
    corpus.push_back(star_complex(FiniteGroup::from_table({{0, 1, 2, 3},
                                                           {1, 0, 3, 2},
                                                           {2, 3, 0, 1},
                                                           {3, 2, 1, 0}}),
                                  2)); // Z/2 x Z/2
    for (auto const& x : corpus)
        for (long p : {2L, 3L})
            for (long g = 0; g < x.group().order(); ++g) {
                long ord = x.group().element_order(g), o = ord;
                while (o % p == 0) o /= p;
                if (o != 1) continue;
                SmithReport rep = smith_consistency(x, g, p);
                INFO("element ", g, " order ", ord, " p ", p);
                CHECK(rep.pass);
            }

    // wrong order: a 3-element at p = 2
    GCwComplex z6 = star_complex(FiniteGroup::cyclic(6), 1);
    CHECK_THROWS_AS(smith_consistency(z6, 2, 2), InputError); // element 2 has order 3
    CHECK_THROWS_AS(smith_consistency(z6, 1, 5), InputError); // order 6 is not a 5-power
}
