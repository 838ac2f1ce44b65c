#include "kborel/chain.hpp"

namespace kborel {

ChainComplex::ChainComplex(std::vector<long> ranks, std::vector<IntMatrix> boundaries)
    : ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
    for (long r : ranks_)
        if (r < 0) throw InputError("ChainComplex: negative rank");
    if (ranks_.empty() ? !boundaries_.empty() : boundaries_.size() + 1 != ranks_.size())
        throw InputError("ChainComplex: need one boundary per positive degree");
    for (size_t i = 0; i < boundaries_.size(); ++i) {
        if (boundaries_[i].rows() != ranks_[i] || boundaries_[i].cols() != ranks_[i + 1])
            throw InputError("ChainComplex: boundary shape mismatch");
        if (i > 0 && !boundaries_[i - 1].mul(boundaries_[i]).is_zero())
            throw InputError("ChainComplex: d d != 0");
    }
}

IntMatrix const& ChainComplex::boundary(long n) const {
    if (n < 1 || n > top_dim()) throw InputError("ChainComplex: boundary degree out of range");
    return boundaries_[n - 1];
}

std::vector<FgAbGroup> homology(ChainComplex const& c) {
    std::vector<FgAbGroup> h;
    if (c.empty()) return h;
    long top = c.top_dim();
    h.reserve(top + 1);
    for (long n = 0; n <= top; ++n) {
        // kernel of d_n as the last columns of the right SNF transform
        long rn = c.rank(n);
        long kdim;
        IntMatrix kernel_coords; // rows: coordinates in ker basis = V^-1 restricted
        if (n == 0) {
            kdim = rn;
            kernel_coords = IntMatrix::identity(rn);
        } else {
            SnfResult s = smith_normal_form(c.boundary(n));
            kdim = rn - s.rank;
            kernel_coords = unimodular_inverse(s.right).rows_slice(s.rank, rn);
        }
        // image of d_{n+1} expressed in the kernel basis
        IntMatrix b(kdim, 0);
        if (n < top) b = kernel_coords.mul(c.boundary(n + 1));
        SnfResult s2 = smith_normal_form(b);
        std::vector<Int> torsion;
        for (auto const& d : s2.factors)
            if (d > 1) torsion.push_back(d);
        h.emplace_back(kdim - s2.rank, std::move(torsion));
    }
    return h;
}

std::vector<long> betti(ChainComplex const& c) {
    std::vector<long> b;
    if (c.empty()) return b;
    long top = c.top_dim();
    std::vector<long> r(top + 2, 0); // rank of d_n over Q, d_{top+1} = 0
    for (long n = 1; n <= top; ++n) r[n] = rational_rank(c.boundary(n));
    for (long n = 0; n <= top; ++n) b.push_back(c.rank(n) - r[n] - r[n + 1]);
    return b;
}

std::vector<long> betti_mod_p(ChainComplex const& c, long p) {
    std::vector<long> b;
    if (c.empty()) return b;
    long top = c.top_dim();
    std::vector<long> r(top + 2, 0);
    for (long n = 1; n <= top; ++n) r[n] = fp_rank(c.boundary(n), p);
    for (long n = 0; n <= top; ++n) b.push_back(c.rank(n) - r[n] - r[n + 1]);
    return b;
}

CokernelPresentation cokernel_presentation(IntMatrix const& relations) {
    long ambient = relations.rows();
    SnfResult s = smith_normal_form(relations);
    IntMatrix linv = unimodular_inverse(s.left);
    std::vector<long> torsion_rows, free_rows;
    std::vector<Int> torsion;
    for (long i = 0; i < s.rank; ++i)
        if (s.factors[i] > 1) {
            torsion_rows.push_back(i);
            torsion.push_back(s.factors[i]);
        }
    for (long i = s.rank; i < ambient; ++i) free_rows.push_back(i);

    std::vector<long> keep = torsion_rows;
    keep.insert(keep.end(), free_rows.begin(), free_rows.end());
    CokernelPresentation out;
    out.group = FgAbGroup(static_cast<long>(free_rows.size()), torsion);
    // invariant_chain cannot reorder: SNF factors already form a chain
    out.to_canonical = s.left.select_rows(keep);
    out.section = linv.select_cols(keep);
    return out;
}

} // namespace kborel
