#include "kborel/rep_ring.hpp"

#include "kborel/numtheory.hpp"

namespace kborel {

RepRing RepRing::cyclic(long m) {
    if (m < 1) throw InputError("RepRing: cyclic order must be positive");
    RepRing r;
    r.k_ = m;
    r.name_ = "Z[Z/" + std::to_string(m) + "]";
    r.structure_.assign(m, std::vector<std::vector<Int>>(m, std::vector<Int>(m, Int(0))));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) r.structure_[i][j][(i + j) % m] = 1;
    r.augmentation_.assign(m, Int(1));
    r.one_.assign(m, Int(0));
    r.one_[0] = 1;
    return r;
}

RepRing RepRing::from_table(std::vector<std::vector<std::vector<Int>>> structure,
                            std::vector<Int> augmentation, std::vector<Int> one,
                            std::string name) {
    RepRing r;
    r.k_ = static_cast<long>(augmentation.size());
    if (r.k_ == 0) throw InputError("RepRing: empty basis");
    if (static_cast<long>(structure.size()) != r.k_ ||
        static_cast<long>(one.size()) != r.k_)
        throw InputError("RepRing: table shape mismatch");
    for (auto const& row : structure) {
        if (static_cast<long>(row.size()) != r.k_) throw InputError("RepRing: table shape mismatch");
        for (auto const& v : row)
            if (static_cast<long>(v.size()) != r.k_)
                throw InputError("RepRing: table shape mismatch");
    }
    r.structure_ = std::move(structure);
    r.augmentation_ = std::move(augmentation);
    r.one_ = std::move(one);
    r.name_ = std::move(name);

    // identity, commutativity, and multiplicativity of the augmentation on the basis
    for (long i = 0; i < r.k_; ++i) {
        std::vector<Int> e(r.k_, Int(0));
        e[i] = 1;
        if (r.mul(r.one_, e) != e || r.mul(e, r.one_) != e)
            throw InputError("RepRing: one is not an identity");
        for (long j = 0; j < r.k_; ++j) {
            std::vector<Int> ej(r.k_, Int(0));
            ej[j] = 1;
            if (r.structure_[i][j] != r.structure_[j][i])
                throw InputError("RepRing: multiplication not commutative");
            if (r.augment(r.structure_[i][j]) != r.augmentation_[i] * r.augmentation_[j])
                throw InputError("RepRing: augmentation not multiplicative");
        }
    }
    if (r.augment(r.one_) != 1) throw InputError("RepRing: augmentation of one must be 1");
    return r;
}

std::vector<Int> RepRing::mul(std::vector<Int> const& a, std::vector<Int> const& b) const {
    if (static_cast<long>(a.size()) != k_ || static_cast<long>(b.size()) != k_)
        throw InputError("RepRing: element length mismatch");
    std::vector<Int> out(k_, Int(0));
    for (long i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < k_; ++j) {
            if (b[j] == 0) continue;
            Int c = a[i] * b[j];
            for (long t = 0; t < k_; ++t)
                if (structure_[i][j][t] != 0) out[t] += c * structure_[i][j][t];
        }
    }
    return out;
}

Int RepRing::augment(std::vector<Int> const& a) const {
    Int s = 0;
    for (long i = 0; i < k_; ++i) s += a[i] * augmentation_[i];
    return s;
}

namespace {

// Basis of the column lattice, at most min(rows, cols) columns: with L A R = D,
// the lattice is spanned by d_i * (L^-1 e_i) over the nonzero diagonal.
IntMatrix column_lattice_basis(IntMatrix const& a) {
    SnfResult s = smith_normal_form(a);
    IntMatrix linv = unimodular_inverse(s.left);
    IntMatrix cols(a.rows(), s.rank);
    std::vector<std::tuple<long, long, Int>> trip;
    for (long j = 0; j < s.rank; ++j)
        for (long i = 0; i < a.rows(); ++i) trip.emplace_back(i, j, linv.at(i, j) * s.factors[j]);
    return IntMatrix::from_triplets(a.rows(), s.rank, trip);
}

} // namespace

IntMatrix RepRing::ideal_power(long n) const {
    if (n < 0) throw InputError("RepRing: negative ideal power");
    if (n == 0) return IntMatrix::identity(k_); // I^0 = R
    // kernel of the augmentation as a column lattice
    IntMatrix eps = IntMatrix::build(1, k_, [&](long, long j) { return augmentation_[j]; });
    SnfResult s = smith_normal_form(eps);
    IntMatrix ker = s.right.cols_slice(s.rank, k_); // k x (k - rank)
    IntMatrix power = ker;
    for (long step = 2; step <= n; ++step) {
        std::vector<std::vector<Int>> cols;
        for (long i = 0; i < ker.cols(); ++i)
            for (long j = 0; j < power.cols(); ++j) cols.push_back(mul(ker.col(i), power.col(j)));
        IntMatrix prod(k_, static_cast<long>(cols.size()));
        std::vector<std::tuple<long, long, Int>> trip;
        for (size_t j = 0; j < cols.size(); ++j)
            for (long i = 0; i < k_; ++i) trip.emplace_back(i, static_cast<long>(j), cols[j][i]);
        power = column_lattice_basis(
            IntMatrix::from_triplets(k_, static_cast<long>(cols.size()), trip));
    }
    return power;
}

CokernelPresentation rep_quotient(RepRing const& r, long n) {
    return cokernel_presentation(r.ideal_power(n));
}

CompletionReport completion_rank(RepRing const& r, long p, long max_depth) {
    if (!is_prime(p)) throw InputError("completion_rank: p must be prime");
    if (max_depth < 3) throw InputError("completion_rank: schedule too short");

    CompletionReport rep;
    rep.p = p;
    Int prev_total = 0;
    std::vector<std::pair<long, Int>> signatures; // (factor count, valuation delta)
    for (long n = 1; n <= max_depth; ++n) {
        FgAbGroup q = rep_quotient(r, n).group;
        CompletionStep step;
        step.depth = n;
        step.total_valuation = 0;
        for (auto const& d : q.torsion())
            if (d % p == 0) {
                step.factor_count += 1;
                step.total_valuation += p_valuation(d, p);
            }
        rep.steps.push_back(step);
        if (n >= 2) {
            signatures.emplace_back(step.factor_count, step.total_valuation - prev_total);
            size_t s = signatures.size();
            if (s >= 2 && signatures[s - 1] == signatures[s - 2]) {
                rep.stabilized = true;
                rep.stable_at = n;
                rep.rank = signatures[s - 1].second > 0 ? signatures[s - 1].first : 0;
                return rep;
            }
        }
        prev_total = step.total_valuation;
    }
    return rep; // not stabilized: rank stays -1
}

} // namespace kborel
