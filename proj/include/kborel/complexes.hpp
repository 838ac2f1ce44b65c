#pragma once

#include "kborel/chain.hpp"
#include "kborel/groups.hpp"

#include <map>
#include <string>
#include <vector>

namespace kborel {

// Finite CW complex: integer cellular chain complex plus per-dimension cell labels.
class CwComplex {
public:
    CwComplex() = default; // empty complex
    explicit CwComplex(ChainComplex chain, std::vector<std::vector<std::string>> labels = {});

    ChainComplex const& chain() const { return chain_; }
    bool empty() const { return chain_.empty(); }
    long top_dim() const { return chain_.top_dim(); }
    std::vector<std::string> const& labels(long n) const;

private:
    ChainComplex chain_;
    std::vector<std::vector<std::string>> labels_;
};

// cell i maps to sign[i] * cell image[i]
struct SignedPerm {
    std::vector<long> image;
    std::vector<int> sign;

    static SignedPerm id(long n);
    SignedPerm after(SignedPerm const& first) const; // this o first
    bool operator==(SignedPerm const& o) const = default;
};

// Cellular action of a finite group by signed permutations in every dimension.
// Construction validates the G-CW axioms this artifact relies on:
//   - homomorphism: rho(gh) = rho(g) rho(h) on the full table,
//   - boundary equivariance: rho_{n-1}(g) d_n = d_n rho_n(g),
//   - admissibility: a cell mapped to +-itself carries sign +1.
// The action may be given on a generating subset; it is closed over products and
// inconsistencies are rejected.
class GCwComplex {
public:
    GCwComplex(CwComplex base, FiniteGroup group,
               std::map<long, std::vector<SignedPerm>> const& generator_action);

    CwComplex const& base() const { return base_; }
    FiniteGroup const& group() const { return group_; }
    SignedPerm const& rho(long g, long n) const;

private:
    CwComplex base_;
    FiniteGroup group_;
    std::vector<std::vector<SignedPerm>> action_; // [element][dim]
};

// Subcomplex of cells fixed by g (pointwise, sign +1), carrying the restricted action
// of the centralizer of g, reindexed as its own group. Cells whose boundary leaves the
// fixed part mean the input was never an admissible action: rejected.
GCwComplex fixed_subcomplex(GCwComplex const& x, long g);

// Betti numbers over Q of the coinvariant complex (C_*(x) (x) Q)_H for a subgroup H
// given by ambient element indices. Computed by orbit-averaging projectors; equals the
// rational Betti numbers of H\x for admissible actions.
std::vector<long> rational_quotient_cohomology(GCwComplex const& x,
                                               std::vector<long> const& subgroup_members);

// Integral cellular chain complex of the orbit space H\x for a subgroup H given by
// ambient element indices. Basis in dimension n: H-orbits of n-cells, represented by
// their least cell. Admissibility makes the collapse well defined (a cell and its
// translate are identified with the unique connecting sign), so this is the coinvariant
// complex (C_*(x))_H and computes the integral homology of the orbit space.
CwComplex quotient_complex(GCwComplex const& x, std::vector<long> const& subgroup_members);

struct CoeffField {
    enum class Kind { Integers, Rationals, ModP };
    Kind kind = Kind::Integers;
    long p = 0;

    static CoeffField integers() { return {Kind::Integers, 0}; }
    static CoeffField rationals() { return {Kind::Rationals, 0}; }
    static CoeffField mod_p(long p) { return {Kind::ModP, p}; }
};

struct AcyclicityReport {
    bool acyclic = false;
    long degree = 0;       // first nonvanishing reduced degree (may be -1), failures only
    std::string witness;   // rendered group or field dimension, failures only
};

// Reduced homology vanishing in all degrees. The empty complex is not acyclic:
// H~_{-1} = Z is reported with degree -1.
AcyclicityReport check_acyclicity(CwComplex const& x, CoeffField coeff);

struct SmithReport {
    bool hypothesis_met = false; // ambient complex F_p-acyclic
    bool fixed_nonempty = false;
    bool fixed_acyclic = false;
    bool pass = false;
    std::vector<long> ambient_betti_p;
    std::vector<long> fixed_betti_p;
};

// For g of p-power order on an F_p-acyclic complex, the fixed complex must be nonempty
// and F_p-acyclic; a failure with the hypothesis met indicates an inadmissible action
// or an internal inconsistency.
SmithReport smith_consistency(GCwComplex const& x, long g, long p);

// Genus-g closed orientable surface: one 0-cell, 2g 1-cells, one 2-cell, zero cellular
// boundaries (the relator is a product of commutators).
CwComplex surface_complex(long genus);

} // namespace kborel
