#include "kborel/groups.hpp"

#include "kborel/numtheory.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace kborel {

long default_order_cap() {
    if (char const* env = std::getenv("KBOREL_ORDER_CAP")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 2000;
}

void FiniteGroup::finish_validation() {
    long n = order();
    if (n == 0) throw InputError("FiniteGroup: empty table");

    // latin-square prescreen
    for (long i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (long j = 0; j < n; ++j) {
            long r = table_[i][j], c = table_[j][i];
            if (r < 0 || r >= n || c < 0 || c >= n)
                throw InputError("FiniteGroup: table entry out of range");
            if (seen_row[r] || seen_col[c])
                throw InputError("FiniteGroup: table is not a latin square");
            seen_row[r] = seen_col[c] = true;
        }
    }

    // two-sided identity
    identity_ = -1;
    for (long e = 0; e < n; ++e) {
        bool ok = true;
        for (long a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw InputError("FiniteGroup: no identity element");

    inverse_.assign(n, -1);
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] < 0) throw InputError("FiniteGroup: missing inverse");
    }

    // greedy generating set under the partial closure
    std::vector<long> gens;
    std::vector<bool> closed(n, false);
    closed[identity_] = true;
    long closed_count = 1;
    while (closed_count < n) {
        long pick = -1;
        for (long a = 0; a < n; ++a)
            if (!closed[a]) {
                pick = a;
                break;
            }
        gens.push_back(pick);
        // close: repeatedly multiply known elements by known elements
        std::vector<long> frontier{pick};
        closed[pick] = true;
        ++closed_count;
        while (!frontier.empty()) {
            std::vector<long> next;
            for (long f : frontier)
                for (long a = 0; a < n; ++a) {
                    if (!closed[a]) continue;
                    for (long prod : {table_[f][a], table_[a][f]})
                        if (!closed[prod]) {
                            closed[prod] = true;
                            ++closed_count;
                            next.push_back(prod);
                        }
                }
            frontier = std::move(next);
        }
    }

    // Light's test: g(xy) = (gx)y for every generator g suffices once gens generate
    for (long g : gens)
        for (long x = 0; x < n; ++x)
            for (long y = 0; y < n; ++y)
                if (table_[g][table_[x][y]] != table_[table_[g][x]][y])
                    throw InputError("FiniteGroup: table is not associative");
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<long>> table, long order_cap) {
    if (order_cap <= 0) order_cap = default_order_cap();
    long n = static_cast<long>(table.size());
    if (n > order_cap) throw InputError("FiniteGroup: order exceeds cap");
    for (auto const& row : table)
        if (static_cast<long>(row.size()) != n) throw InputError("FiniteGroup: table not square");
    FiniteGroup g;
    g.table_ = std::move(table);
    g.finish_validation();
    return g;
}

FiniteGroup FiniteGroup::from_permutations(std::vector<std::vector<long>> const& gens, long degree,
                                           long order_cap) {
    if (order_cap <= 0) order_cap = default_order_cap();
    if (degree <= 0) throw InputError("FiniteGroup: degree must be positive");
    for (auto const& p : gens) {
        if (static_cast<long>(p.size()) != degree)
            throw InputError("FiniteGroup: permutation length mismatch");
        std::vector<bool> seen(degree, false);
        for (long v : p) {
            if (v < 0 || v >= degree || seen[v])
                throw InputError("FiniteGroup: not a permutation");
            seen[v] = true;
        }
    }

    std::vector<long> id(degree);
    for (long i = 0; i < degree; ++i) id[i] = i;
    auto compose = [degree](std::vector<long> const& a, std::vector<long> const& b) {
        std::vector<long> c(degree);
        for (long i = 0; i < degree; ++i) c[i] = a[b[i]];
        return c;
    };

    std::vector<std::vector<long>> elems{id};
    std::map<std::vector<long>, long> index{{id, 0}};
    std::vector<long> frontier{0};
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long f : frontier)
            for (auto const& gperm : gens) {
                auto prod = compose(gperm, elems[f]);
                if (index.emplace(prod, static_cast<long>(elems.size())).second) {
                    elems.push_back(prod);
                    if (static_cast<long>(elems.size()) > order_cap)
                        throw InputError("FiniteGroup: closure exceeds order cap");
                    next.push_back(static_cast<long>(elems.size()) - 1);
                }
            }
        frontier = std::move(next);
    }

    long n = static_cast<long>(elems.size());
    FiniteGroup g;
    g.table_.assign(n, std::vector<long>(n));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) g.table_[a][b] = index.at(compose(elems[a], elems[b]));
    // composition of functions is associative; validation still checks everything else
    g.finish_validation();
    return g;
}

FiniteGroup FiniteGroup::cyclic(long m) {
    if (m < 1) throw InputError("FiniteGroup: cyclic order must be positive");
    std::vector<std::vector<long>> t(m, std::vector<long>(m));
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return from_table(std::move(t), std::max(m, default_order_cap()));
}

long FiniteGroup::element_order(long a) const {
    if (a < 0 || a >= order()) throw InputError("FiniteGroup: element out of range");
    long x = a, k = 1;
    while (x != identity_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::vector<ConjClass> conjugacy_classes(FiniteGroup const& g) {
    long n = g.order();
    std::vector<bool> assigned(n, false);
    std::vector<ConjClass> classes;
    for (long a = 0; a < n; ++a) {
        if (assigned[a]) continue;
        std::set<long> cls;
        for (long x = 0; x < n; ++x) cls.insert(g.mul(g.mul(x, a), g.inverse(x)));
        ConjClass c;
        c.rep = *cls.begin();
        c.members.assign(cls.begin(), cls.end());
        for (long m : c.members) assigned[m] = true;
        classes.push_back(std::move(c));
    }
    return classes;
}

FiniteGroup subgroup_from_members(FiniteGroup const& g, std::vector<long> const& members) {
    std::map<long, long> idx;
    for (size_t i = 0; i < members.size(); ++i) idx[members[i]] = static_cast<long>(i);
    std::vector<std::vector<long>> t(members.size(), std::vector<long>(members.size()));
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = 0; b < members.size(); ++b) {
            long prod = g.mul(members[a], members[b]);
            auto it = idx.find(prod);
            if (it == idx.end()) throw InputError("subgroup_from_members: set not closed");
            t[a][b] = it->second;
        }
    return FiniteGroup::from_table(std::move(t), g.order());
}

std::vector<ConPClass> con_p(FiniteGroup const& g, long p) {
    if (!is_prime(p)) throw InputError("con_p: p must be prime");
    std::vector<ConPClass> out;
    for (auto const& cls : conjugacy_classes(g)) {
        if (cls.rep == g.identity()) continue;
        long ord = g.element_order(cls.rep);
        // p-power order, > 1
        long o = ord;
        while (o % p == 0) o /= p;
        if (o != 1) continue;
        std::vector<long> centr;
        for (long x = 0; x < g.order(); ++x)
            if (g.mul(x, cls.rep) == g.mul(cls.rep, x)) centr.push_back(x);
        long size = static_cast<long>(cls.members.size());
        if (size * static_cast<long>(centr.size()) != g.order())
            throw HypothesisError("con_p: orbit-stabilizer bookkeeping failed");
        FiniteGroup z = subgroup_from_members(g, centr);
        out.push_back(ConPClass{cls.rep, p, ord, size, std::move(centr), std::move(z)});
    }
    return out;
}

std::vector<long> primes_of_group(FiniteGroup const& g) { return prime_factors(g.order()); }

} // namespace kborel
