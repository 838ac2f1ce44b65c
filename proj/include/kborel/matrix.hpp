#pragma once

#include "kborel/errors.hpp"

#include <gmpxx.h>

#include <functional>
#include <tuple>
#include <vector>

namespace kborel {

using Int = mpz_class;

// Dense immutable integer matrix. Dense storage is deliberate: every input in scope has
// at most a few hundred cells per dimension, where dense SNF beats any sparse cleverness.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(long rows, long cols);

    static IntMatrix identity(long n);
    static IntMatrix from_rows(std::vector<std::vector<Int>> rows);
    static IntMatrix from_triplets(long rows, long cols,
                                   std::vector<std::tuple<long, long, Int>> const& entries);
    static IntMatrix build(long rows, long cols,
                           std::function<Int(long, long)> const& f);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int const& at(long i, long j) const;

    IntMatrix transpose() const;
    IntMatrix mul(IntMatrix const& o) const;
    IntMatrix add(IntMatrix const& o) const;
    IntMatrix negate() const;
    IntMatrix hstack(IntMatrix const& o) const;
    IntMatrix vstack(IntMatrix const& o) const;
    IntMatrix rows_slice(long from, long to) const; // [from, to)
    IntMatrix cols_slice(long from, long to) const;
    IntMatrix select_rows(std::vector<long> const& idx) const;
    IntMatrix select_cols(std::vector<long> const& idx) const;
    std::vector<Int> col(long j) const;
    std::vector<Int> apply(std::vector<Int> const& v) const; // matrix * column vector

    bool is_zero() const;
    bool operator==(IntMatrix const& o) const = default;

private:
    long rows_ = 0;
    long cols_ = 0;
    std::vector<Int> data_;

    Int& cell(long i, long j) { return data_[i * cols_ + j]; }
    Int const& cell(long i, long j) const { return data_[i * cols_ + j]; }
};

// left * m * right = diag(factors | zeros), factors positive with d_1 | d_2 | ... | d_rank.
// The factor list has length rank and may contain 1s.
struct SnfResult {
    std::vector<Int> factors;
    long rank = 0;
    IntMatrix left;
    IntMatrix right;
};

SnfResult smith_normal_form(IntMatrix const& m);

// Inverse of a unimodular matrix; throws InputError otherwise.
IntMatrix unimodular_inverse(IntMatrix const& u);

// Rank over Q by fraction-free (Bareiss) elimination. Independent of the SNF path on
// purpose: the two are cross-checked against each other.
long rational_rank(IntMatrix const& m);

// Whether a x = b has an integer solution.
bool solvable(IntMatrix const& a, std::vector<Int> const& b);

// Columns form a basis of {x : a x = 0}.
IntMatrix kernel_basis(IntMatrix const& a);

// Rank over F_p, p prime.
long fp_rank(IntMatrix const& m, long p);

} // namespace kborel
