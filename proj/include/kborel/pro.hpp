#pragma once

#include "kborel/abelian.hpp"
#include "kborel/matrix.hpp"
#include "kborel/rep_ring.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace kborel {

// Homomorphism calculus between groups in canonical presentation. Generators are the
// torsion generators in invariant-factor order followed by the free generators; a map
// is an integer matrix in those bases. Entry (i, j) is subject to the congruence
// d_i | m_ij * d_j (with d = 0 read as Z), and entries are only meaningful mod d_i.
long generator_count(FgAbGroup const& g);
std::vector<Int> generator_orders(FgAbGroup const& g); // torsion orders then 0s
IntMatrix presentation_relations(FgAbGroup const& g);  // gens x torsion, diagonal
bool map_well_defined(FgAbGroup const& src, FgAbGroup const& tgt, IntMatrix const& m);
IntMatrix reduce_map(FgAbGroup const& tgt, IntMatrix m);
bool maps_equal(FgAbGroup const& tgt, IntMatrix const& a, IntMatrix const& b);
bool is_zero_map(FgAbGroup const& tgt, IntMatrix const& m);
// Columns generate {x : m x = 0 in tgt} as a sublattice of Z^gens(src); the source
// relations are included, so the column span is the full preimage lattice.
IntMatrix kernel_lattice(FgAbGroup const& src, FgAbGroup const& tgt, IntMatrix const& m);
// Subgroup generated by cols(a) contained in the one generated by cols(b), inside tgt.
bool subgroup_contained(FgAbGroup const& tgt, IntMatrix const& a, IntMatrix const& b);

// Tail rules. A tower lists finitely many explicit levels; the tail rule determines
// every deeper level, which keeps pro-triviality and the pro-isomorphism criterion
// decidable. Indexing starts at level 1.
struct ConstantTail {
    FgAbGroup group; // identity maps between tail levels
    bool operator==(ConstantTail const&) const = default;
};
struct EventuallyZeroTail { // zero modules (hence zero maps) beyond the prefix
    bool operator==(EventuallyZeroTail const&) const = default;
};
struct PAdicQuotientTail { // M_n = base / p^n base with the canonical projections
    FgAbGroup base;
    long p = 0;
    bool operator==(PAdicQuotientTail const&) const = default;
};
struct StabilizingTail { // M_n = R / I^n for the ring's augmentation ideal
    RepRing ring;
    bool operator==(StabilizingTail const&) const = default;
};
using TowerTail = std::variant<ConstantTail, EventuallyZeroTail, PAdicQuotientTail,
                               StabilizingTail>;

// Inverse system M_1 <- M_2 <- ... of f.g. abelian groups, maps alpha_n: M_n -> M_{n-1}.
// junction is alpha_{k+1} from the first tail level into the last prefix level; it is
// required exactly when a prefix precedes a Constant or Stabilizing tail.
class Tower {
public:
    Tower(std::vector<FgAbGroup> prefix_groups, std::vector<IntMatrix> prefix_maps,
          TowerTail tail, std::optional<IntMatrix> junction = std::nullopt);

    static Tower constant(FgAbGroup g);
    static Tower p_adic_quotient(FgAbGroup base, long p);

    long prefix_length() const { return static_cast<long>(prefix_groups_.size()); }
    TowerTail const& tail() const { return tail_; }

    FgAbGroup group_at(long n) const;   // n >= 1
    IntMatrix map_at(long n) const;     // alpha_n, n >= 2
    IntMatrix composite(long n, long m) const; // alpha_n^m: M_n -> M_m, m <= n

private:
    std::vector<FgAbGroup> prefix_groups_;
    std::vector<IntMatrix> prefix_maps_;
    TowerTail tail_;
    std::optional<IntMatrix> junction_;
};

Tower augmentation_tower(RepRing const& ring);

// Map tails: levelwise maps beyond the explicit prefix follow the rule.
struct IdentityMapTail {
    bool operator==(IdentityMapTail const&) const = default;
};
struct ZeroMapTail {
    bool operator==(ZeroMapTail const&) const = default;
};
struct ConstantMapTail {
    IntMatrix matrix;
    bool operator==(ConstantMapTail const&) const = default;
};
using MapTail = std::variant<IdentityMapTail, ZeroMapTail, ConstantMapTail>;

// Strict homomorphism of towers: f_{n-1} alpha_n = beta_n f_n at every level.
// Strictness is checked on an expansion window covering all prefixes; beyond it the
// tail rules guarantee the squares for the supported combinations.
class TowerMap {
public:
    TowerMap(Tower source, Tower target, std::vector<IntMatrix> prefix_levels,
             MapTail tail);

    static TowerMap identity(Tower const& t);
    static TowerMap zero(Tower source, Tower target);

    Tower const& source() const { return source_; }
    Tower const& target() const { return target_; }
    long prefix_length() const { return static_cast<long>(prefix_levels_.size()); }
    MapTail const& tail() const { return tail_; }
    IntMatrix level(long n) const;

private:
    Tower source_;
    Tower target_;
    std::vector<IntMatrix> prefix_levels_;
    MapTail tail_;
};

// True iff for every m some composite alpha_n^m vanishes. Tail rules decide: the
// prefix never affects the answer.
bool is_pro_trivial(Tower const& t);

// The im/ker criterion: for each m there is n >= m with im(beta_n^m) within im(f_m)
// and ker(f_n) within ker(alpha_n^m). Decided on an expansion window plus rule-level
// reasoning; combinations the rules cannot close are rejected with UnsupportedError
// rather than answered unsoundly.
bool is_pro_isomorphism(TowerMap const& f);

// lim and lim^1. Every supported tail is Mittag-Leffler or pro-trivial, so lim^1 is
// always the zero group here; non-finitely-generated limits come back as AdicGroup
// parts, never as a fake f.g. group.
struct LimReport {
    GroupValue limit;
    GroupValue lim1;
};
LimReport lim_lim1(Tower const& t);

// colim hom(M_n, Z) and colim ext(M_n, Z) along the dualized structure maps.
struct ColimReport {
    GroupValue hom;
    GroupValue ext;
};
ColimReport colim_hom_ext(Tower const& t);

// For a pro-isomorphism the limit data of source and target must agree; the report
// carries both sides of all four values.
struct PushforwardReport {
    bool pro_isomorphism = false;
    LimReport source_lim, target_lim;
    ColimReport source_colim, target_colim;
    bool lim_agree = false;
    bool lim1_agree = false;
    bool colim_hom_agree = false;
    bool colim_ext_agree = false;
    bool pass = false;
};
PushforwardReport pro_pushforward_check(TowerMap const& f);

} // namespace kborel
