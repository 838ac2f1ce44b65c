#include "kborel/matrix.hpp"

#include "kborel/numtheory.hpp"

#include <algorithm>
#include <cstdlib>

namespace kborel {

IntMatrix::IntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InputError("IntMatrix: negative dimension");
    data_.assign(static_cast<size_t>(rows) * cols, Int(0));
}

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.cell(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<Int>> rows) {
    long r = static_cast<long>(rows.size());
    long c = r == 0 ? 0 : static_cast<long>(rows[0].size());
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c)
            throw InputError("IntMatrix: ragged row lengths");
        for (long j = 0; j < c; ++j) m.cell(i, j) = std::move(rows[i][j]);
    }
    return m;
}

IntMatrix IntMatrix::from_triplets(long rows, long cols,
                                   std::vector<std::tuple<long, long, Int>> const& entries) {
    IntMatrix m(rows, cols);
    for (auto const& [i, j, v] : entries) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw InputError("IntMatrix: triplet index out of range");
        m.cell(i, j) += v;
    }
    return m;
}

IntMatrix IntMatrix::build(long rows, long cols, std::function<Int(long, long)> const& f) {
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.cell(i, j) = f(i, j);
    return m;
}

Int const& IntMatrix::at(long i, long j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw InputError("IntMatrix: index out of range");
    return cell(i, j);
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.cell(j, i) = cell(i, j);
    return m;
}

IntMatrix IntMatrix::mul(IntMatrix const& o) const {
    if (cols_ != o.rows_) throw InputError("IntMatrix: shape mismatch in mul");
    IntMatrix m(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            Int const& a = cell(i, k);
            if (a == 0) continue;
            for (long j = 0; j < o.cols_; ++j) m.cell(i, j) += a * o.cell(k, j);
        }
    return m;
}

IntMatrix IntMatrix::add(IntMatrix const& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("IntMatrix: shape mismatch in add");
    IntMatrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
}

IntMatrix IntMatrix::negate() const {
    IntMatrix m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
}

IntMatrix IntMatrix::hstack(IntMatrix const& o) const {
    if (rows_ != o.rows_) throw InputError("IntMatrix: shape mismatch in hstack");
    IntMatrix m(rows_, cols_ + o.cols_);
    for (long i = 0; i < rows_; ++i) {
        for (long j = 0; j < cols_; ++j) m.cell(i, j) = cell(i, j);
        for (long j = 0; j < o.cols_; ++j) m.cell(i, cols_ + j) = o.cell(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vstack(IntMatrix const& o) const {
    if (cols_ != o.cols_) throw InputError("IntMatrix: shape mismatch in vstack");
    IntMatrix m(rows_ + o.rows_, cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.cell(i, j) = cell(i, j);
    for (long i = 0; i < o.rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.cell(rows_ + i, j) = o.cell(i, j);
    return m;
}

IntMatrix IntMatrix::rows_slice(long from, long to) const {
    if (from < 0 || to < from || to > rows_) throw InputError("IntMatrix: bad row slice");
    IntMatrix m(to - from, cols_);
    for (long i = from; i < to; ++i)
        for (long j = 0; j < cols_; ++j) m.cell(i - from, j) = cell(i, j);
    return m;
}

IntMatrix IntMatrix::cols_slice(long from, long to) const {
    if (from < 0 || to < from || to > cols_) throw InputError("IntMatrix: bad col slice");
    IntMatrix m(rows_, to - from);
    for (long i = 0; i < rows_; ++i)
        for (long j = from; j < to; ++j) m.cell(i, j - from) = cell(i, j);
    return m;
}

IntMatrix IntMatrix::select_rows(std::vector<long> const& idx) const {
    IntMatrix m(static_cast<long>(idx.size()), cols_);
    for (long i = 0; i < m.rows_; ++i) {
        if (idx[i] < 0 || idx[i] >= rows_) throw InputError("IntMatrix: bad row selection");
        for (long j = 0; j < cols_; ++j) m.cell(i, j) = cell(idx[i], j);
    }
    return m;
}

IntMatrix IntMatrix::select_cols(std::vector<long> const& idx) const {
    IntMatrix m(rows_, static_cast<long>(idx.size()));
    for (long j = 0; j < m.cols_; ++j) {
        if (idx[j] < 0 || idx[j] >= cols_) throw InputError("IntMatrix: bad col selection");
        for (long i = 0; i < rows_; ++i) m.cell(i, j) = cell(i, idx[j]);
    }
    return m;
}

std::vector<Int> IntMatrix::col(long j) const {
    if (j < 0 || j >= cols_) throw InputError("IntMatrix: bad column index");
    std::vector<Int> v(rows_);
    for (long i = 0; i < rows_; ++i) v[i] = cell(i, j);
    return v;
}

std::vector<Int> IntMatrix::apply(std::vector<Int> const& v) const {
    if (static_cast<long>(v.size()) != cols_) throw InputError("IntMatrix: length mismatch in apply");
    std::vector<Int> out(rows_, Int(0));
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (cell(i, j) != 0) out[i] += cell(i, j) * v[j];
    return out;
}

bool IntMatrix::is_zero() const {
    for (auto const& v : data_)
        if (v != 0) return false;
    return true;
}

namespace {

// Mutable workspace for the elimination; row ops mirror onto L, col ops onto R,
// preserving L * original * R = A throughout.
struct SnfWork {
    long r, c;
    std::vector<Int> a;
    std::vector<Int> l; // r x r
    std::vector<Int> rt; // c x c

    Int& A(long i, long j) { return a[i * c + j]; }
    Int& L(long i, long j) { return l[i * r + j]; }
    Int& R(long i, long j) { return rt[i * c + j]; }

    void swap_rows(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < c; ++k) std::swap(A(i, k), A(j, k));
        for (long k = 0; k < r; ++k) std::swap(L(i, k), L(j, k));
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < r; ++k) std::swap(A(k, i), A(k, j));
        for (long k = 0; k < c; ++k) std::swap(R(k, i), R(k, j));
    }
    void addmul_row(long dst, long src, Int const& q) { // row_dst += q * row_src
        if (q == 0) return;
        for (long k = 0; k < c; ++k) A(dst, k) += q * A(src, k);
        for (long k = 0; k < r; ++k) L(dst, k) += q * L(src, k);
    }
    void addmul_col(long dst, long src, Int const& q) {
        if (q == 0) return;
        for (long k = 0; k < r; ++k) A(k, dst) += q * A(k, src);
        for (long k = 0; k < c; ++k) R(k, dst) += q * R(k, src);
    }
    void negate_row(long i) {
        for (long k = 0; k < c; ++k) A(i, k) = -A(i, k);
        for (long k = 0; k < r; ++k) L(i, k) = -L(i, k);
    }
};

} // namespace

SnfResult smith_normal_form(IntMatrix const& m) {
    long r = m.rows(), c = m.cols();
    SnfWork w{r, c, {}, {}, {}};
    w.a.resize(static_cast<size_t>(r) * c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) w.A(i, j) = m.at(i, j);
    w.l.assign(static_cast<size_t>(r) * r, Int(0));
    for (long i = 0; i < r; ++i) w.L(i, i) = 1;
    w.rt.assign(static_cast<size_t>(c) * c, Int(0));
    for (long i = 0; i < c; ++i) w.R(i, i) = 1;

    // balanced quotient: a = q*d + s with |s| <= |d|/2, d > 0
    auto balanced_quot = [](Int const& a, Int const& d) {
        Int q, s;
        mpz_fdiv_qr(q.get_mpz_t(), s.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
        if (s * 2 > d) q += 1;
        return q;
    };

    long t = 0;
    long lim = std::min(r, c);
    while (t < lim) {
        while (true) {
            // re-select the globally smallest nonzero entry as pivot every round;
            // fixed pivots let the remainder cascade blow entries up exponentially
            long pi = -1, pj = -1;
            for (long i = t; i < r; ++i)
                for (long j = t; j < c; ++j) {
                    if (w.A(i, j) == 0) continue;
                    if (pi < 0 || cmp(abs(w.A(i, j)), abs(w.A(pi, pj))) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) goto done; // submatrix zero: rank = t
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            if (w.A(t, t) < 0) w.negate_row(t);

            bool dirty = false;
            for (long i = t + 1; i < r; ++i) {
                if (w.A(i, t) == 0) continue;
                w.addmul_row(i, t, -balanced_quot(w.A(i, t), w.A(t, t)));
                if (w.A(i, t) != 0) dirty = true; // smaller remainder; re-pivot
            }
            for (long j = t + 1; j < c; ++j) {
                if (w.A(t, j) == 0) continue;
                w.addmul_col(j, t, -balanced_quot(w.A(t, j), w.A(t, t)));
                if (w.A(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // pivot clears its row and column; enforce that it divides the remaining
            // submatrix so the diagonal forms a chain
            bool fixed = false;
            for (long i = t + 1; i < r && !fixed; ++i)
                for (long j = t + 1; j < c && !fixed; ++j)
                    if (w.A(i, j) % w.A(t, t) != 0) {
                        w.addmul_row(t, i, Int(1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        ++t;
    }
done:;

    SnfResult out;
    out.rank = t;
    out.factors.reserve(t);
    for (long i = 0; i < t; ++i) out.factors.push_back(w.A(i, i));
    out.left = IntMatrix::build(r, r, [&](long i, long j) { return w.L(i, j); });
    out.right = IntMatrix::build(c, c, [&](long i, long j) { return w.R(i, j); });
    return out;
}

IntMatrix unimodular_inverse(IntMatrix const& u) {
    if (u.rows() != u.cols()) throw InputError("unimodular_inverse: matrix not square");
    SnfResult s = smith_normal_form(u);
    if (s.rank != u.rows()) throw InputError("unimodular_inverse: matrix singular");
    for (auto const& d : s.factors)
        if (d != 1) throw InputError("unimodular_inverse: matrix not unimodular");
    // left * u * right = I, hence u^-1 = right * left
    return s.right.mul(s.left);
}

bool solvable(IntMatrix const& a, std::vector<Int> const& b) {
    if (static_cast<long>(b.size()) != a.rows()) throw InputError("solvable: size mismatch");
    SnfResult s = smith_normal_form(a);
    std::vector<Int> c = s.left.apply(b);
    for (long i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.factors[i] != 0) return false;
        } else if (c[i] != 0) {
            return false;
        }
    }
    return true;
}

IntMatrix kernel_basis(IntMatrix const& a) {
    SnfResult s = smith_normal_form(a);
    return s.right.cols_slice(s.rank, a.cols());
}

long rational_rank(IntMatrix const& m) {
    long r = m.rows(), c = m.cols();
    std::vector<Int> a(static_cast<size_t>(r) * c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) a[i * c + j] = m.at(i, j);
    auto at = [&](long i, long j) -> Int& { return a[i * c + j]; };

    Int prev = 1;
    long rank = 0;
    long lim = std::min(r, c);
    for (long k = 0; k < lim; ++k) {
        long pi = -1, pj = -1;
        for (long i = k; i < r && pi < 0; ++i)
            for (long j = k; j < c; ++j)
                if (at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != k)
            for (long j = 0; j < c; ++j) std::swap(at(k, j), at(pi, j));
        if (pj != k)
            for (long i = 0; i < r; ++i) std::swap(at(i, k), at(i, pj));
        for (long i = k + 1; i < r; ++i)
            for (long j = k + 1; j < c; ++j) {
                Int num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        for (long i = k + 1; i < r; ++i) at(i, k) = 0;
        prev = at(k, k);
        ++rank;
    }
    return rank;
}

long fp_rank(IntMatrix const& m, long p) {
    if (!is_prime(p)) throw InputError("fp_rank: modulus must be prime");
    if (p > (1L << 31)) throw InputError("fp_rank: modulus too large"); // keeps products in long range
    long r = m.rows(), c = m.cols();
    std::vector<long> a(static_cast<size_t>(r) * c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            Int v = m.at(i, j) % p;
            if (v < 0) v += p;
            a[i * c + j] = v.get_si();
        }
    auto at = [&](long i, long j) -> long& { return a[i * c + j]; };
    auto inv_mod = [&](long x) {
        long t0 = 0, t1 = 1, r0 = p, r1 = x;
        while (r1 != 0) {
            long q = r0 / r1;
            t0 -= q * t1;
            std::swap(t0, t1);
            r0 -= q * r1;
            std::swap(r0, r1);
        }
        return ((t0 % p) + p) % p;
    };

    long rank = 0;
    for (long col = 0; col < c && rank < r; ++col) {
        long pivot = -1;
        for (long i = rank; i < r; ++i)
            if (at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (long j = 0; j < c; ++j) std::swap(at(rank, j), at(pivot, j));
        long iv = inv_mod(at(rank, col));
        for (long j = col; j < c; ++j) at(rank, j) = (at(rank, j) * iv) % p;
        for (long i = 0; i < r; ++i) {
            if (i == rank || at(i, col) == 0) continue;
            long f = at(i, col);
            for (long j = col; j < c; ++j)
                at(i, j) = ((at(i, j) - f * at(rank, j)) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

} // namespace kborel
