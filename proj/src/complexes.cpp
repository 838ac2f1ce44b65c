#include "kborel/complexes.hpp"

#include <algorithm>
#include <deque>

namespace kborel {

CwComplex::CwComplex(ChainComplex chain, std::vector<std::vector<std::string>> labels)
    : chain_(std::move(chain)), labels_(std::move(labels)) {
    if (labels_.empty()) {
        for (long n = 0; n <= chain_.top_dim(); ++n) {
            std::vector<std::string> row;
            for (long i = 0; i < chain_.rank(n); ++i)
                row.push_back("c" + std::to_string(n) + "_" + std::to_string(i));
            labels_.push_back(std::move(row));
        }
    }
    if (static_cast<long>(labels_.size()) != chain_.top_dim() + 1)
        throw InputError("CwComplex: one label list per dimension required");
    for (long n = 0; n <= chain_.top_dim(); ++n)
        if (static_cast<long>(labels_[n].size()) != chain_.rank(n))
            throw InputError("CwComplex: label count mismatch");
}

std::vector<std::string> const& CwComplex::labels(long n) const {
    if (n < 0 || n > top_dim()) throw InputError("CwComplex: dimension out of range");
    return labels_[n];
}

SignedPerm SignedPerm::id(long n) {
    SignedPerm s;
    s.image.resize(n);
    s.sign.assign(n, 1);
    for (long i = 0; i < n; ++i) s.image[i] = i;
    return s;
}

SignedPerm SignedPerm::after(SignedPerm const& first) const {
    long n = static_cast<long>(image.size());
    if (static_cast<long>(first.image.size()) != n)
        throw InputError("SignedPerm: size mismatch");
    SignedPerm out;
    out.image.resize(n);
    out.sign.resize(n);
    for (long i = 0; i < n; ++i) {
        out.image[i] = image[first.image[i]];
        out.sign[i] = first.sign[i] * sign[first.image[i]];
    }
    return out;
}

namespace {

void validate_signed_perm(SignedPerm const& s, long n) {
    if (static_cast<long>(s.image.size()) != n || static_cast<long>(s.sign.size()) != n)
        throw InputError("GCwComplex: signed permutation size mismatch");
    std::vector<bool> hit(n, false);
    for (long i = 0; i < n; ++i) {
        if (s.image[i] < 0 || s.image[i] >= n || hit[s.image[i]])
            throw InputError("GCwComplex: action is not a permutation");
        hit[s.image[i]] = true;
        if (s.sign[i] != 1 && s.sign[i] != -1)
            throw InputError("GCwComplex: signs must be +-1");
    }
}

IntMatrix perm_matrix(SignedPerm const& s) {
    long n = static_cast<long>(s.image.size());
    std::vector<std::tuple<long, long, Int>> trip;
    for (long i = 0; i < n; ++i) trip.emplace_back(s.image[i], i, Int(s.sign[i]));
    return IntMatrix::from_triplets(n, n, trip);
}

ChainComplex augmented(ChainComplex const& c) {
    if (c.empty()) return ChainComplex({1}, {});
    std::vector<long> ranks{1};
    std::vector<IntMatrix> boundaries;
    for (long n = 0; n <= c.top_dim(); ++n) ranks.push_back(c.rank(n));
    boundaries.push_back(IntMatrix::build(1, c.rank(0), [](long, long) { return Int(1); }));
    for (long n = 1; n <= c.top_dim(); ++n) boundaries.push_back(c.boundary(n));
    return ChainComplex(std::move(ranks), std::move(boundaries));
}

} // namespace

GCwComplex::GCwComplex(CwComplex base, FiniteGroup group,
                       std::map<long, std::vector<SignedPerm>> const& generator_action)
    : base_(std::move(base)), group_(std::move(group)) {
    long dims = base_.chain().top_dim() + 1;
    long order = group_.order();

    for (auto const& [g, perms] : generator_action) {
        if (g < 0 || g >= order) throw InputError("GCwComplex: action element out of range");
        if (static_cast<long>(perms.size()) != dims && !(dims == 0 && perms.empty()))
            throw InputError("GCwComplex: action must cover every dimension");
        for (long n = 0; n < dims; ++n) validate_signed_perm(perms[n], base_.chain().rank(n));
    }

    // close the generator action over products; reaching an element twice with
    // different signed permutations means the input was inconsistent
    std::vector<SignedPerm> identity_row;
    for (long n = 0; n < dims; ++n) identity_row.push_back(SignedPerm::id(base_.chain().rank(n)));
    std::vector<char> known(order, 0);
    action_.assign(order, {});
    action_[group_.identity()] = identity_row;
    known[group_.identity()] = 1;
    if (auto it = generator_action.find(group_.identity()); it != generator_action.end())
        if (it->second != identity_row)
            throw InputError("GCwComplex: identity must act trivially");

    std::deque<long> queue{group_.identity()};
    for (auto const& [g, perms] : generator_action) {
        if (known[g] && action_[g] != perms)
            throw InputError("GCwComplex: inconsistent action");
        if (!known[g]) {
            action_[g] = perms;
            known[g] = 1;
            queue.push_back(g);
        }
    }
    while (!queue.empty()) {
        long a = queue.front();
        queue.pop_front();
        for (auto const& [g, perms] : generator_action) {
            long prod = group_.mul(g, a);
            std::vector<SignedPerm> composed;
            for (long n = 0; n < dims; ++n) composed.push_back(perms[n].after(action_[a][n]));
            if (known[prod]) {
                if (action_[prod] != composed)
                    throw InputError("GCwComplex: inconsistent action");
            } else {
                action_[prod] = std::move(composed);
                known[prod] = 1;
                queue.push_back(prod);
            }
        }
    }
    for (long g = 0; g < order; ++g)
        if (!known[g]) throw InputError("GCwComplex: action does not cover the group");
    // the closure loop verified rho(g a) = rho(g) rho(a) for every generator g and every
    // element a, which forces the homomorphism law on all pairs by induction on word length

    // boundary equivariance and admissibility
    for (long g = 0; g < order; ++g) {
        for (long n = 1; n < dims; ++n) {
            IntMatrix const& d = base_.chain().boundary(n);
            if (perm_matrix(action_[g][n - 1]).mul(d) != d.mul(perm_matrix(action_[g][n])))
                throw InputError("GCwComplex: action does not commute with boundaries");
        }
        for (long n = 0; n < dims; ++n)
            for (long i = 0; i < base_.chain().rank(n); ++i)
                if (action_[g][n].image[i] == i && action_[g][n].sign[i] != 1)
                    throw InputError(
                        "GCwComplex: cell fixed setwise but not pointwise (inadmissible)");
    }
}

SignedPerm const& GCwComplex::rho(long g, long n) const {
    if (g < 0 || g >= group_.order()) throw InputError("GCwComplex: element out of range");
    if (n < 0 || n > base_.chain().top_dim())
        throw InputError("GCwComplex: dimension out of range");
    return action_[g][n];
}

GCwComplex fixed_subcomplex(GCwComplex const& x, long g) {
    if (g < 0 || g >= x.group().order()) throw InputError("fixed_subcomplex: element out of range");
    long dims = x.base().chain().top_dim() + 1;

    // cells with g c = +c; admissibility was validated, so image == i forces sign +1
    std::vector<std::vector<long>> keep(dims);
    std::vector<std::vector<long>> pos(dims); // ambient index -> fixed index or -1
    for (long n = 0; n < dims; ++n) {
        pos[n].assign(x.base().chain().rank(n), -1);
        for (long i = 0; i < x.base().chain().rank(n); ++i)
            if (x.rho(g, n).image[i] == i) {
                pos[n][i] = static_cast<long>(keep[n].size());
                keep[n].push_back(i);
            }
    }

    // the fixed part must be boundary-closed, or the action never came from a genuine
    // admissible cell structure
    long top = -1;
    for (long n = 0; n < dims; ++n)
        if (!keep[n].empty()) top = n;
    for (long n = 1; n <= top; ++n) {
        IntMatrix const& d = x.base().chain().boundary(n);
        for (long j : keep[n])
            for (long i = 0; i < d.rows(); ++i)
                if (d.at(i, j) != 0 && pos[n - 1][i] < 0)
                    throw HypothesisError(
                        "fixed_subcomplex: boundary of a fixed cell leaves the fixed part");
    }

    std::vector<long> ranks;
    std::vector<IntMatrix> boundaries;
    std::vector<std::vector<std::string>> labels;
    for (long n = 0; n <= top; ++n) {
        ranks.push_back(static_cast<long>(keep[n].size()));
        std::vector<std::string> row;
        for (long i : keep[n]) row.push_back(x.base().labels(n)[i]);
        labels.push_back(std::move(row));
        if (n >= 1)
            boundaries.push_back(
                x.base().chain().boundary(n).select_rows(keep[n - 1]).select_cols(keep[n]));
    }
    CwComplex fixed_base(ChainComplex(std::move(ranks), std::move(boundaries)),
                         std::move(labels));

    // restricted action of the centralizer, reindexed as its own group
    std::vector<long> centralizer;
    for (long h = 0; h < x.group().order(); ++h)
        if (x.group().mul(h, g) == x.group().mul(g, h)) centralizer.push_back(h);
    FiniteGroup cg = subgroup_from_members(x.group(), centralizer);

    std::map<long, std::vector<SignedPerm>> action;
    for (size_t idx = 0; idx < centralizer.size(); ++idx) {
        long h = centralizer[idx];
        std::vector<SignedPerm> perms;
        for (long n = 0; n <= top; ++n) {
            SignedPerm s;
            for (long i : keep[n]) {
                long img = x.rho(h, n).image[i];
                long local = pos[n][img];
                if (local < 0)
                    throw HypothesisError(
                        "fixed_subcomplex: centralizer does not preserve the fixed part");
                s.image.push_back(local);
                s.sign.push_back(x.rho(h, n).sign[i]);
            }
            perms.push_back(std::move(s));
        }
        action[static_cast<long>(idx)] = std::move(perms);
    }
    return GCwComplex(std::move(fixed_base), std::move(cg), action);
}

std::vector<long> rational_quotient_cohomology(GCwComplex const& x,
                                               std::vector<long> const& subgroup_members) {
    // validates closure; the reindexed group itself is not needed
    subgroup_from_members(x.group(), subgroup_members);

    long dims = x.base().chain().top_dim() + 1;
    if (dims == 0) return {};

    // averaging projector (unscaled): P_n = sum_h rho_n(h); rank P_n = dim of the
    // invariant summand, and d_n P_n has the rank of d_n restricted to invariants
    std::vector<IntMatrix> proj;
    for (long n = 0; n < dims; ++n) {
        IntMatrix p(x.base().chain().rank(n), x.base().chain().rank(n));
        for (long h : subgroup_members) p = p.add(perm_matrix(x.rho(h, n)));
        proj.push_back(std::move(p));
    }
    std::vector<long> betti(dims);
    for (long n = 0; n < dims; ++n) {
        long inv = rational_rank(proj[n]);
        long out_rank =
            n >= 1 ? rational_rank(x.base().chain().boundary(n).mul(proj[n])) : 0;
        long in_rank = n + 1 < dims
                           ? rational_rank(x.base().chain().boundary(n + 1).mul(proj[n + 1]))
                           : 0;
        betti[n] = inv - out_rank - in_rank;
    }
    return betti;
}

CwComplex quotient_complex(GCwComplex const& x, std::vector<long> const& subgroup_members) {
    // validates closure; orbits only need the ambient member list
    subgroup_from_members(x.group(), subgroup_members);

    long dims = x.base().chain().top_dim() + 1;
    if (dims == 0) return CwComplex();

    // orbit id and the sign identifying each cell with its orbit representative
    std::vector<std::vector<long>> orb(dims);
    std::vector<std::vector<int>> rel_sign(dims);
    std::vector<std::vector<long>> reps(dims);
    for (long n = 0; n < dims; ++n) {
        long r = x.base().chain().rank(n);
        orb[n].assign(r, -1);
        rel_sign[n].assign(r, 0);
        for (long i = 0; i < r; ++i) {
            if (orb[n][i] >= 0) continue;
            long id = static_cast<long>(reps[n].size());
            reps[n].push_back(i);
            for (long h : subgroup_members) {
                long j = x.rho(h, n).image[i];
                int s = x.rho(h, n).sign[i];
                if (orb[n][j] >= 0 && rel_sign[n][j] != s)
                    throw InputError("quotient_complex: orbit sign conflict, "
                                     "action is not admissible");
                orb[n][j] = id;
                rel_sign[n][j] = s;
            }
        }
    }

    std::vector<long> ranks(dims);
    for (long n = 0; n < dims; ++n) ranks[n] = static_cast<long>(reps[n].size());

    std::vector<IntMatrix> boundaries;
    for (long n = 1; n < dims; ++n) {
        std::vector<std::vector<Int>> d(ranks[n - 1], std::vector<Int>(ranks[n], 0));
        for (long c = 0; c < ranks[n]; ++c) {
            std::vector<Int> col = x.base().chain().boundary(n).col(reps[n][c]);
            for (long i = 0; i < static_cast<long>(col.size()); ++i)
                if (col[i] != 0) d[orb[n - 1][i]][c] += col[i] * rel_sign[n - 1][i];
        }
        // explicit shape: from_rows cannot see the column count of a 0-row matrix
        boundaries.push_back(IntMatrix::build(ranks[n - 1], ranks[n],
                                              [&](long i, long j) -> Int { return d[i][j]; }));
    }

    std::vector<std::vector<std::string>> labels(dims);
    for (long n = 0; n < dims; ++n)
        for (long i : reps[n]) labels[n].push_back(x.base().labels(n)[i]);

    return CwComplex(ChainComplex(std::move(ranks), std::move(boundaries)),
                     std::move(labels));
}

AcyclicityReport check_acyclicity(CwComplex const& x, CoeffField coeff) {
    ChainComplex aug = augmented(x.chain());
    AcyclicityReport rep;
    switch (coeff.kind) {
        case CoeffField::Kind::Integers: {
            auto h = homology(aug);
            for (size_t n = 0; n < h.size(); ++n)
                if (!h[n].is_trivial()) {
                    rep.degree = static_cast<long>(n) - 1;
                    rep.witness = render(h[n], true);
                    return rep;
                }
            break;
        }
        case CoeffField::Kind::Rationals: {
            auto b = betti(aug);
            for (size_t n = 0; n < b.size(); ++n)
                if (b[n] != 0) {
                    rep.degree = static_cast<long>(n) - 1;
                    rep.witness = "Q^" + std::to_string(b[n]);
                    return rep;
                }
            break;
        }
        case CoeffField::Kind::ModP: {
            auto b = betti_mod_p(aug, coeff.p);
            for (size_t n = 0; n < b.size(); ++n)
                if (b[n] != 0) {
                    rep.degree = static_cast<long>(n) - 1;
                    rep.witness = "F_" + std::to_string(coeff.p) + "^" + std::to_string(b[n]);
                    return rep;
                }
            break;
        }
    }
    rep.acyclic = true;
    return rep;
}

SmithReport smith_consistency(GCwComplex const& x, long g, long p) {
    if (!is_prime(p)) throw InputError("smith_consistency: p must be prime");
    long ord = x.group().element_order(g);
    long o = ord;
    while (o % p == 0) o /= p;
    if (o != 1) throw InputError("smith_consistency: element order is not a p-power");

    SmithReport rep;
    rep.ambient_betti_p = betti_mod_p(augmented(x.base().chain()), p);
    rep.hypothesis_met = check_acyclicity(x.base(), CoeffField::mod_p(p)).acyclic;
    GCwComplex fixed = fixed_subcomplex(x, g);
    rep.fixed_nonempty = !fixed.base().empty();
    if (rep.fixed_nonempty)
        rep.fixed_betti_p = betti_mod_p(augmented(fixed.base().chain()), p);
    rep.fixed_acyclic =
        rep.fixed_nonempty && check_acyclicity(fixed.base(), CoeffField::mod_p(p)).acyclic;
    rep.pass = rep.hypothesis_met && rep.fixed_nonempty && rep.fixed_acyclic;
    return rep;
}

CwComplex surface_complex(long genus) {
    if (genus < 0) throw InputError("surface_complex: genus must be nonnegative");
    std::vector<std::string> ones{"v"};
    std::vector<std::string> edges;
    for (long i = 0; i < genus; ++i) {
        edges.push_back("a" + std::to_string(i + 1));
        edges.push_back("b" + std::to_string(i + 1));
    }
    ChainComplex chain({1, 2 * genus, 1},
                       {IntMatrix(1, 2 * genus), IntMatrix(2 * genus, 1)});
    return CwComplex(std::move(chain), {ones, edges, {"f"}});
}

} // namespace kborel
