#pragma once

#include "kborel/errors.hpp"
#include "kborel/numtheory.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace kborel {

// Finitely generated abelian group in invariant factor form:
// Z^free + Z/d_1 + ... + Z/d_t with 2 <= d_1 | d_2 | ... | d_t.
class FgAbGroup {
public:
    FgAbGroup() = default; // trivial group

    // Canonicalizes an arbitrary torsion list (entries >= 1; 1s are dropped).
    FgAbGroup(long free_rank, std::vector<Int> torsion);

    static FgAbGroup free(long rank) { return FgAbGroup(rank, {}); }
    static FgAbGroup cyclic(Int n) { return FgAbGroup(0, {std::move(n)}); }

    long free_rank() const { return free_rank_; }
    std::vector<Int> const& torsion() const { return torsion_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    Int order() const; // finite groups only
    std::set<long> torsion_primes() const;

    bool operator==(FgAbGroup const& o) const = default;

private:
    long free_rank_ = 0;
    std::vector<Int> torsion_;
};

FgAbGroup direct_sum(FgAbGroup const& a, FgAbGroup const& b);
FgAbGroup hom_to_Z(FgAbGroup const& a);
FgAbGroup ext_to_Z(FgAbGroup const& a);
FgAbGroup invert_primes(FgAbGroup const& a, std::set<long> const& ps);
long dim_hat_p(FgAbGroup const& a, long p);

// Z-rank plus per-prime Z_p-hat ranks plus a finite-ambiguity prime set: models "abelian
// group up to finite torsion supported on ambiguity". After invert_primes the inverted
// set records which adic summands turned into Q_p-hat and the z part into Z[1/P].
class AdicGroup {
public:
    AdicGroup() = default;
    AdicGroup(long z_rank, std::map<long, long> p_ranks, std::set<long> ambiguity,
              std::set<long> inverted = {});

    long z_rank() const { return z_rank_; }
    std::map<long, long> const& p_ranks() const { return p_ranks_; }
    std::set<long> const& ambiguity() const { return ambiguity_; }
    std::set<long> const& inverted() const { return inverted_; }
    bool rationalized() const { return !inverted_.empty(); }
    bool is_trivial() const { return z_rank_ == 0 && p_ranks_.empty() && ambiguity_.empty(); }

    bool operator==(AdicGroup const& o) const = default;

private:
    long z_rank_ = 0;
    std::map<long, long> p_ranks_;
    std::set<long> ambiguity_;
    std::set<long> inverted_;
};

// Z-rank plus per-prime Prufer (Z/p^infty) ranks plus ambiguity; Pontryagin-dual shape
// to AdicGroup.
class DivisibleGroup {
public:
    DivisibleGroup() = default;
    DivisibleGroup(long z_rank, std::map<long, long> prufer_ranks, std::set<long> ambiguity,
                   std::set<long> inverted = {});

    long z_rank() const { return z_rank_; }
    std::map<long, long> const& prufer_ranks() const { return prufer_ranks_; }
    std::set<long> const& ambiguity() const { return ambiguity_; }
    std::set<long> const& inverted() const { return inverted_; }
    bool rationalized() const { return !inverted_.empty(); }
    bool is_trivial() const { return z_rank_ == 0 && prufer_ranks_.empty() && ambiguity_.empty(); }

    bool operator==(DivisibleGroup const& o) const = default;

private:
    long z_rank_ = 0;
    std::map<long, long> prufer_ranks_;
    std::set<long> ambiguity_;
    std::set<long> inverted_;
};

AdicGroup direct_sum(AdicGroup const& a, AdicGroup const& b);
DivisibleGroup direct_sum(DivisibleGroup const& a, DivisibleGroup const& b);
AdicGroup invert_primes(AdicGroup const& a, std::set<long> const& ps);
DivisibleGroup invert_primes(DivisibleGroup const& a, std::set<long> const& ps);

// dim^_p calculus: dim of the p-completion tensored with Q_p^. Z and Z_p^ count 1,
// Z_q^ (q != p) and finite groups count 0; additive over direct sums. On DivisibleGroup
// only the z part counts (Z/p^infty is p-divisible, its p-completion vanishes).
long dim_hat_p(AdicGroup const& a, long p);
long dim_hat_p(DivisibleGroup const& a, long p);

DivisibleGroup pontryagin_dual(AdicGroup const& a);
AdicGroup pontryagin_dual(DivisibleGroup const& a);

// K_k = hom(K^k, Z) + ext(K^{k+1}, Z) with indices mod 2; the same shape transfers
// homology to cohomology. Pair order is (degree 0, degree 1).
std::pair<FgAbGroup, FgAbGroup> uct_cohomology_to_homology(FgAbGroup const& k0,
                                                           FgAbGroup const& k1);
std::pair<FgAbGroup, FgAbGroup> uct_homology_to_cohomology(FgAbGroup const& k0,
                                                           FgAbGroup const& k1);

// Value that a K-theory slot can take: exact f.g. group, adic, divisible, or a known
// mixed direct sum (adic-or-divisible part plus a known finite summand).
struct SymbolicValue {
    std::optional<AdicGroup> adic;
    std::optional<DivisibleGroup> divisible;
    FgAbGroup finite;

    bool operator==(SymbolicValue const& o) const = default;
};

using GroupValue = std::variant<FgAbGroup, AdicGroup, DivisibleGroup, SymbolicValue>;

bool group_value_equal(GroupValue const& a, GroupValue const& b);
long dim_hat_p(GroupValue const& v, long p);

// Collapse a value to its simplest representation (symbolic with one live part becomes
// that part, adic/divisible with no p-content becomes a plain free group).
GroupValue normalize_value(GroupValue const& v);

// Rendering used by both report formats. ascii = false prints Z-hat/Prufer glyphs.
std::string render(FgAbGroup const& g, bool ascii);
std::string render(AdicGroup const& g, bool ascii);
std::string render(DivisibleGroup const& g, bool ascii);
std::string render(GroupValue const& g, bool ascii);

} // namespace kborel
