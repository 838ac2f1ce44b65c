#pragma once

#include "kborel/abelian.hpp"
#include "kborel/complexes.hpp"
#include "kborel/groups.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kborel {

// One conjugacy class of nontrivial p-power-order elements, carrying the rational
// Betti numbers of the orbit space of the centralizer's classifying complex.
struct ClassRecord {
    long p = 0;
    std::string label;
    std::vector<long> betti;
};

// K-theory input for the orbit space: either rational Betti numbers together with the
// promise that integral cohomology is torsion free (then K is the parity sum of Betti
// numbers), or the two K-groups directly.
struct QuotientData {
    std::optional<std::vector<long>> betti;
    bool torsion_free = false;
    std::optional<FgAbGroup> k0;
    std::optional<FgAbGroup> k1;

    static QuotientData from_betti(std::vector<long> betti, bool torsion_free);
    static QuotientData from_k(FgAbGroup k0, FgAbGroup k1);
    static QuotientData point();

    // K^0, K^1 of the orbit space. Betti route requires the torsion-free promise.
    std::pair<FgAbGroup, FgAbGroup> k_groups() const;
    bool point_like() const; // K^0 = Z, K^1 = 0
};

// Everything the assembly needs about one group: the prime set, the p-singular
// conjugacy class data, the orbit-space K-theory, and a cell-dimension bound.
// finite_sharp marks input extracted from an actual finite group; only then (and with
// point-like orbit space) do the presentations collapse to resolved values.
class GroupPackage {
public:
    GroupPackage(std::string name, std::set<long> primes, std::vector<ClassRecord> classes,
                 QuotientData quotient, long dimension_bound, bool finite_sharp = false);

    std::string const& name() const { return name_; }
    std::set<long> const& primes() const { return primes_; }
    std::vector<ClassRecord> const& classes() const { return classes_; }
    QuotientData const& quotient() const { return quotient_; }
    long dimension_bound() const { return dimension_bound_; }
    bool finite_sharp() const { return finite_sharp_; }

private:
    std::string name_;
    std::set<long> primes_;
    std::vector<ClassRecord> classes_;
    QuotientData quotient_;
    long dimension_bound_ = 0;
    bool finite_sharp_ = false;
};

// Sum of the parity-k Betti entries over the classes at p; 0 when p is not in the
// package's prime set. k is taken mod 2.
long r_pk(GroupPackage const& pkg, long p, long k);

// p -> {r_p^0, r_p^1} over the package's primes.
std::map<long, std::array<long, 2>> r_table(GroupPackage const& pkg);

// Geometric route: same rank from a finite group acting on a complex, via fixed
// subcomplexes of class representatives and their centralizer orbit spaces.
long r_pk(FiniteGroup const& g, GCwComplex const& x, long p, long k);

// K^0, K^1 of a space from its integral homology, via the universal coefficient
// description of integral cohomology. Exact for dimension <= 3 or for torsion-free
// cohomology; otherwise the answer is not determined by homology and this throws
// UnsupportedError.
std::pair<FgAbGroup, FgAbGroup> k_from_homology(std::vector<FgAbGroup> const& h);

// The package of a finite group acting on a point.
GroupPackage package_from_finite_group(FiniteGroup const& g);

// The package extracted from a finite group acting on a complex. The complex must be
// integrally acyclic (reduced homology zero); assume_acyclic skips the check. The
// orbit-space K-groups come from integral homology, which pins K only for complexes of
// dimension at most 3 or with torsion-free cohomology.
GroupPackage package_from_complex(FiniteGroup const& g, GCwComplex const& x,
                                  bool assume_acyclic = false);

enum class PresKind { Cohomology, Homology };

struct PresSlot {
    std::string name;
    GroupValue value;
};

// One exact-sequence presentation in degree k: five slots in sequence order between the
// outer zeros, the same slots in reduced form, and the resolved value of the unknown
// when the sequence collapses (empty prime set, or sharp finite input).
struct KPresentation {
    long k = 0;
    PresKind kind = PresKind::Cohomology;
    std::string source;
    std::set<long> primes;
    std::map<long, std::array<long, 2>> r;
    std::vector<PresSlot> slots;
    std::optional<GroupValue> resolved;
    std::vector<PresSlot> reduced;
    std::optional<GroupValue> reduced_resolved;
};

// 0 -> A -> K^k(quotient) -> K^k(BG) -> B x prod_p (Z_p-hat)^{r_p^k} -> C -> 0
KPresentation assemble_cohomology(GroupPackage const& pkg, long k);

// 0 -> C' -> coprod_p (Z/p^inf)^{r_p^{k+1}} x B' -> K_k(BG) -> K_k(quotient) -> A' -> 0
KPresentation assemble_homology(GroupPackage const& pkg, long k);

// The two presentations for a verified acyclic complex.
KPresentation assemble_cohomology(FiniteGroup const& g, GCwComplex const& x, long k,
                                  bool assume_acyclic = false);
KPresentation assemble_homology(FiniteGroup const& g, GCwComplex const& x, long k,
                                bool assume_acyclic = false);

// K^k(BG) (x) Z[1/P] =~ K^k(quotient) (x) Z[1/P] x prod_p (Q_p-hat)^{r_p^k}, and the
// homological analogue without the completed factor. left is the unknown slot with the
// primes inverted; right is assembled from the theorem's product form; consistent
// compares them rank by rank.
struct RationalizedForm {
    long k = 0;
    PresKind kind = PresKind::Cohomology;
    std::set<long> inverted;
    GroupValue left;
    GroupValue right;
    bool consistent = false;
};

RationalizedForm rationalize(KPresentation const& pres);

struct DualityReport {
    bool pass = false;
    std::vector<std::string> diffs;
};

// Pontryagin duality between the cohomology sequence in degree k and the homology
// sequence in degree k+1: matching primes and r-tables, dual middle terms, dual
// refined markers, and a vanishing Euler characteristic on both sides.
DualityReport duality_check(KPresentation const& coh, KPresentation const& hom);

// Alternating sum of dim_hat_p over the five slots; zero for every exact sequence.
long euler_dim_hat(KPresentation const& pres, long p);

// Homology derived from the cohomology presentations through the continuous universal
// coefficient sequence, compared with the directly assembled homology.
struct UctReport {
    GroupValue derived_k0;
    GroupValue derived_k1;
    KPresentation assembled_k0;
    KPresentation assembled_k1;
    bool consistent = false;
    std::vector<std::string> diffs;
};

UctReport borel_uct(GroupPackage const& pkg);

// Maximal-subgroup assembly: reduced K of the orbit space and of each maximal
// subgroup's classifying space; when the orbit-space K-groups are torsion free the
// sequence splits and the reduced unknown resolves to the direct sum.
struct MnmReport {
    long k = 0;
    GroupValue quotient_term;
    std::vector<GroupValue> subgroup_terms;
    bool split = false;
    std::optional<GroupValue> resolved;
};

MnmReport mnm_assemble(std::vector<FiniteGroup> const& subgroups, QuotientData const& quotient,
                       long k);

// Cocompact planar signature (genus; periods): orbit space is the genus-g surface, and
// K^k(BG) resolves to K^k(surface) plus the reduced K of each period's cyclic group.
struct FuchsianReport {
    long genus = 0;
    std::vector<long> periods;
    long k = 0;
    FgAbGroup surface_k;
    std::vector<GroupValue> period_terms;
    GroupValue resolved;
    GroupValue resolved_reduced;
};

FuchsianReport fuchsian_pipeline(long genus, std::vector<long> const& periods, long k);

// "sl3z" and "trivial".
GroupPackage builtin_package(std::string const& name);

} // namespace kborel
