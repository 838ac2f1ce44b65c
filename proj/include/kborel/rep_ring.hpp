#pragma once

#include "kborel/chain.hpp"
#include "kborel/matrix.hpp"

#include <string>
#include <vector>

namespace kborel {

// Commutative ring with a finite Z-basis, structure constants, and an augmentation
// character. Cyclic groups get the t^i basis of Z[t]/(t^m - 1); anything else is
// accepted as a user-supplied table.
class RepRing {
public:
    static RepRing cyclic(long m);
    static RepRing from_table(std::vector<std::vector<std::vector<Int>>> structure,
                              std::vector<Int> augmentation, std::vector<Int> one,
                              std::string name);

    long basis_size() const { return k_; }
    std::string const& name() const { return name_; }
    std::vector<Int> const& one() const { return one_; }
    std::vector<Int> const& augmentation() const { return augmentation_; }
    std::vector<Int> mul(std::vector<Int> const& a, std::vector<Int> const& b) const;
    Int augment(std::vector<Int> const& a) const;

    // Columns spanning I^n as a sublattice of Z^k, I = ker(augmentation). Each power is
    // column-reduced to at most k generators before the next product.
    IntMatrix ideal_power(long n) const;

    bool operator==(RepRing const& o) const = default;

private:
    RepRing() = default;
    long k_ = 0;
    // structure_[i][j] = e_i * e_j as a coefficient vector
    std::vector<std::vector<std::vector<Int>>> structure_;
    std::vector<Int> augmentation_;
    std::vector<Int> one_;
    std::string name_;
};

// R / I^n as an abstract group with its canonical coordinates.
CokernelPresentation rep_quotient(RepRing const& r, long n);

struct CompletionStep {
    long depth = 0;
    long factor_count = 0; // invariant factors of R/I^depth divisible by p
    Int total_valuation;   // sum of p-valuations
};

struct CompletionReport {
    long p = 0;
    long rank = -1; // -1 when not stabilized
    bool stabilized = false;
    long stable_at = -1;
    std::vector<CompletionStep> steps;
};

// Stabilized Z_p-hat rank of lim R/I^n, detected from the torsion growth pattern:
// signature(n) = (count of p-divisible invariant factors, total p-valuation delta);
// stable after two consecutive matching signatures. Growing count with positive delta
// contributes rank; a flat delta means the p-part is a finite group, rank 0.
CompletionReport completion_rank(RepRing const& r, long p, long max_depth);

} // namespace kborel
