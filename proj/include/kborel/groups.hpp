#pragma once

#include "kborel/errors.hpp"

#include <string>
#include <vector>

namespace kborel {

// Cayley-table closure cap; KBOREL_ORDER_CAP overrides.
long default_order_cap();

// Finite group as a validated Cayley table over element indices 0..n-1.
// Table input is checked to be a genuine group: latin-square prescreen, identity,
// inverses, then Light's associativity test over a greedy generating set (exact;
// the cubic full check is hopeless at the order cap).
class FiniteGroup {
public:
    static FiniteGroup from_table(std::vector<std::vector<long>> table, long order_cap = 0);
    // Generators as images 0..degree-1; closure under composition, capped.
    static FiniteGroup from_permutations(std::vector<std::vector<long>> const& gens, long degree,
                                         long order_cap = 0);
    static FiniteGroup cyclic(long m);

    long order() const { return static_cast<long>(table_.size()); }
    long mul(long a, long b) const { return table_[a][b]; }
    long identity() const { return identity_; }
    long inverse(long a) const { return inverse_[a]; }
    long element_order(long a) const;
    std::vector<std::vector<long>> const& table() const { return table_; }

private:
    FiniteGroup() = default;
    std::vector<std::vector<long>> table_;
    std::vector<long> inverse_;
    long identity_ = 0;

    void finish_validation();
};

struct ConjClass {
    long rep; // least element index in the class
    std::vector<long> members;
};

// Classes ordered by representative index; representatives are least-index members.
std::vector<ConjClass> conjugacy_classes(FiniteGroup const& g);

// Conjugacy class of an element of nontrivial p-power order, with its centralizer.
struct ConPClass {
    long rep = 0;
    long p = 0;
    long rep_order = 0;
    long class_size = 0;
    std::vector<long> centralizer_members; // indices in the ambient group, ascending
    FiniteGroup centralizer;               // reindexed as an abstract group
};

std::vector<ConPClass> con_p(FiniteGroup const& g, long p);

// Primes dividing |G|, ascending.
std::vector<long> primes_of_group(FiniteGroup const& g);

// Subgroup given by ambient indices, reindexed to its own Cayley table.
FiniteGroup subgroup_from_members(FiniteGroup const& g, std::vector<long> const& members);

} // namespace kborel
