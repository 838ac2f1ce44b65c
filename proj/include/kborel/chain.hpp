#pragma once

#include "kborel/abelian.hpp"
#include "kborel/matrix.hpp"

#include <vector>

namespace kborel {

// Bounded chain complex of free Z-modules. boundaries[n-1] holds d_n: C_n -> C_{n-1}
// with shape ranks[n-1] x ranks[n]; all composites d_{n-1} d_n vanish (checked).
class ChainComplex {
public:
    ChainComplex() = default; // empty complex
    ChainComplex(std::vector<long> ranks, std::vector<IntMatrix> boundaries);

    bool empty() const { return ranks_.empty(); }
    long top_dim() const { return static_cast<long>(ranks_.size()) - 1; }
    std::vector<long> const& ranks() const { return ranks_; }
    long rank(long n) const { return n >= 0 && n <= top_dim() ? ranks_[n] : 0; }
    IntMatrix const& boundary(long n) const; // d_n, 1 <= n <= top_dim

private:
    std::vector<long> ranks_;
    std::vector<IntMatrix> boundaries_;
};

// H_n for n = 0..top_dim.
std::vector<FgAbGroup> homology(ChainComplex const& c);

// Betti numbers over Q (fraction-free elimination route, deliberately not SNF).
std::vector<long> betti(ChainComplex const& c);

// Betti numbers over F_p.
std::vector<long> betti_mod_p(ChainComplex const& c, long p);

// Presentation of Z^ambient / column span of relations, with the coordinate change:
// to_canonical maps ambient coordinates to canonical generators (torsion generators in
// invariant-factor order, then free generators); section lifts canonical generators to
// ambient representatives. to_canonical * section = identity modulo the torsion orders.
struct CokernelPresentation {
    FgAbGroup group;
    IntMatrix to_canonical; // (t + f) x ambient
    IntMatrix section;      // ambient x (t + f)
};

CokernelPresentation cokernel_presentation(IntMatrix const& relations);

} // namespace kborel
