#include "kborel/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace kborel {

namespace {

// Repeated (a, b) -> (gcd, lcm) smoothing turns any multiset of moduli into a
// divisibility chain without factoring anything.
std::vector<Int> invariant_chain(std::vector<Int> t) {
    std::erase_if(t, [](Int const& d) { return d == 1; });
    for (auto const& d : t)
        if (d < 1) throw InputError("FgAbGroup: torsion entries must be positive");
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = i + 1; j < t.size(); ++j) {
                if (t[j] % t[i] == 0) continue;
                Int g, l;
                mpz_gcd(g.get_mpz_t(), t[i].get_mpz_t(), t[j].get_mpz_t());
                l = t[i] / g * t[j];
                t[i] = g;
                t[j] = l;
                changed = true;
            }
    }
    std::erase_if(t, [](Int const& d) { return d == 1; });
    std::sort(t.begin(), t.end());
    return t;
}

void check_prime_map(std::map<long, long> const& m, char const* what) {
    for (auto const& [p, r] : m) {
        if (!is_prime(p)) throw InputError(std::string(what) + ": key is not prime");
        if (r <= 0) throw InputError(std::string(what) + ": rank must be positive");
    }
}

void check_prime_set(std::set<long> const& s, char const* what) {
    for (long p : s)
        if (!is_prime(p)) throw InputError(std::string(what) + ": entry is not prime");
}

std::map<long, long> merge_ranks(std::map<long, long> const& a, std::map<long, long> const& b) {
    std::map<long, long> out = a;
    for (auto const& [p, r] : b) out[p] += r;
    return out;
}

std::set<long> merge_sets(std::set<long> const& a, std::set<long> const& b) {
    std::set<long> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

} // namespace

FgAbGroup::FgAbGroup(long free_rank, std::vector<Int> torsion)
    : free_rank_(free_rank), torsion_(invariant_chain(std::move(torsion))) {
    if (free_rank < 0) throw InputError("FgAbGroup: negative free rank");
}

Int FgAbGroup::order() const {
    if (!is_finite()) throw InputError("FgAbGroup: order of an infinite group");
    Int n = 1;
    for (auto const& d : torsion_) n *= d;
    return n;
}

std::set<long> FgAbGroup::torsion_primes() const {
    std::set<long> out;
    // the largest invariant factor is divisible by every torsion prime
    if (!torsion_.empty())
        for (auto const& [p, e] : factorize(torsion_.back())) {
            (void)e;
            out.insert(p);
        }
    return out;
}

FgAbGroup direct_sum(FgAbGroup const& a, FgAbGroup const& b) {
    std::vector<Int> t = a.torsion();
    t.insert(t.end(), b.torsion().begin(), b.torsion().end());
    return FgAbGroup(a.free_rank() + b.free_rank(), std::move(t));
}

FgAbGroup hom_to_Z(FgAbGroup const& a) { return FgAbGroup::free(a.free_rank()); }

FgAbGroup ext_to_Z(FgAbGroup const& a) { return FgAbGroup(0, a.torsion()); }

FgAbGroup invert_primes(FgAbGroup const& a, std::set<long> const& ps) {
    check_prime_set(ps, "invert_primes");
    std::vector<Int> t;
    for (auto const& d : a.torsion()) t.push_back(coprime_part(d, ps));
    return FgAbGroup(a.free_rank(), std::move(t));
}

long dim_hat_p(FgAbGroup const& a, long p) {
    if (!is_prime(p)) throw InputError("dim_hat_p: p must be prime");
    return a.free_rank();
}

AdicGroup::AdicGroup(long z_rank, std::map<long, long> p_ranks, std::set<long> ambiguity,
                     std::set<long> inverted)
    : z_rank_(z_rank), p_ranks_(std::move(p_ranks)), ambiguity_(std::move(ambiguity)),
      inverted_(std::move(inverted)) {
    if (z_rank < 0) throw InputError("AdicGroup: negative z rank");
    std::erase_if(p_ranks_, [](auto const& kv) { return kv.second == 0; });
    check_prime_map(p_ranks_, "AdicGroup");
    check_prime_set(ambiguity_, "AdicGroup ambiguity");
    check_prime_set(inverted_, "AdicGroup inverted");
}

DivisibleGroup::DivisibleGroup(long z_rank, std::map<long, long> prufer_ranks,
                               std::set<long> ambiguity, std::set<long> inverted)
    : z_rank_(z_rank), prufer_ranks_(std::move(prufer_ranks)), ambiguity_(std::move(ambiguity)),
      inverted_(std::move(inverted)) {
    if (z_rank < 0) throw InputError("DivisibleGroup: negative z rank");
    std::erase_if(prufer_ranks_, [](auto const& kv) { return kv.second == 0; });
    check_prime_map(prufer_ranks_, "DivisibleGroup");
    check_prime_set(ambiguity_, "DivisibleGroup ambiguity");
    check_prime_set(inverted_, "DivisibleGroup inverted");
}

AdicGroup direct_sum(AdicGroup const& a, AdicGroup const& b) {
    if (a.inverted() != b.inverted())
        throw InputError("direct_sum: mixed rationalization state");
    return AdicGroup(a.z_rank() + b.z_rank(), merge_ranks(a.p_ranks(), b.p_ranks()),
                     merge_sets(a.ambiguity(), b.ambiguity()), a.inverted());
}

DivisibleGroup direct_sum(DivisibleGroup const& a, DivisibleGroup const& b) {
    if (a.inverted() != b.inverted())
        throw InputError("direct_sum: mixed rationalization state");
    return DivisibleGroup(a.z_rank() + b.z_rank(), merge_ranks(a.prufer_ranks(), b.prufer_ranks()),
                          merge_sets(a.ambiguity(), b.ambiguity()), a.inverted());
}

AdicGroup invert_primes(AdicGroup const& a, std::set<long> const& ps) {
    check_prime_set(ps, "invert_primes");
    // Z_p^ tensor Z[1/P] with p in P is Q_p^: the rank persists, only the label moves.
    std::set<long> amb;
    for (long p : a.ambiguity())
        if (!ps.count(p)) amb.insert(p);
    return AdicGroup(a.z_rank(), a.p_ranks(), std::move(amb), merge_sets(a.inverted(), ps));
}

DivisibleGroup invert_primes(DivisibleGroup const& a, std::set<long> const& ps) {
    check_prime_set(ps, "invert_primes");
    // Z/p^infty tensor Z[1/p] = 0: inverted Prufer summands die.
    std::map<long, long> ranks;
    for (auto const& [p, r] : a.prufer_ranks())
        if (!ps.count(p)) ranks[p] = r;
    std::set<long> amb;
    for (long p : a.ambiguity())
        if (!ps.count(p)) amb.insert(p);
    return DivisibleGroup(a.z_rank(), std::move(ranks), std::move(amb),
                          merge_sets(a.inverted(), ps));
}

long dim_hat_p(AdicGroup const& a, long p) {
    if (!is_prime(p)) throw InputError("dim_hat_p: p must be prime");
    long r = a.inverted().count(p) ? 0 : a.z_rank();
    auto it = a.p_ranks().find(p);
    if (it != a.p_ranks().end() && !a.inverted().count(p)) r += it->second;
    return r;
}

long dim_hat_p(DivisibleGroup const& a, long p) {
    if (!is_prime(p)) throw InputError("dim_hat_p: p must be prime");
    return a.inverted().count(p) ? 0 : a.z_rank();
}

DivisibleGroup pontryagin_dual(AdicGroup const& a) {
    if (a.rationalized()) throw UnsupportedError("pontryagin_dual: value is rationalized");
    return DivisibleGroup(a.z_rank(), a.p_ranks(), a.ambiguity());
}

AdicGroup pontryagin_dual(DivisibleGroup const& a) {
    if (a.rationalized()) throw UnsupportedError("pontryagin_dual: value is rationalized");
    return AdicGroup(a.z_rank(), a.prufer_ranks(), a.ambiguity());
}

namespace {

std::pair<FgAbGroup, FgAbGroup> uct(FgAbGroup const& k0, FgAbGroup const& k1) {
    return {direct_sum(hom_to_Z(k0), ext_to_Z(k1)), direct_sum(hom_to_Z(k1), ext_to_Z(k0))};
}

} // namespace

std::pair<FgAbGroup, FgAbGroup> uct_cohomology_to_homology(FgAbGroup const& k0,
                                                           FgAbGroup const& k1) {
    return uct(k0, k1);
}

std::pair<FgAbGroup, FgAbGroup> uct_homology_to_cohomology(FgAbGroup const& k0,
                                                           FgAbGroup const& k1) {
    return uct(k0, k1);
}

// Collapse representations that denote the same group: symbolic values with a single
// live part, and adic/divisible values with no p-content (= plain free groups).
GroupValue normalize_value(GroupValue const& v) {
    if (auto const* s = std::get_if<SymbolicValue>(&v)) {
        bool has_adic = s->adic && !s->adic->is_trivial();
        bool has_div = s->divisible && !s->divisible->is_trivial();
        if (!has_adic && !has_div) return normalize_value(s->finite);
        if (s->finite.is_trivial()) {
            if (has_adic && !has_div) return normalize_value(*s->adic);
            if (has_div && !has_adic) return normalize_value(*s->divisible);
        }
        SymbolicValue out;
        if (has_adic) out.adic = *s->adic;
        if (has_div) out.divisible = *s->divisible;
        out.finite = s->finite;
        return out;
    }
    if (auto const* a = std::get_if<AdicGroup>(&v)) {
        if (a->p_ranks().empty() && a->ambiguity().empty() && a->inverted().empty())
            return FgAbGroup::free(a->z_rank());
    }
    if (auto const* d = std::get_if<DivisibleGroup>(&v)) {
        if (d->prufer_ranks().empty() && d->ambiguity().empty() && d->inverted().empty())
            return FgAbGroup::free(d->z_rank());
    }
    return v;
}

bool group_value_equal(GroupValue const& a, GroupValue const& b) {
    return normalize_value(a) == normalize_value(b);
}

long dim_hat_p(GroupValue const& v, long p) {
    return std::visit(
        [&](auto const& g) -> long {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SymbolicValue>) {
                long r = 0;
                if (g.adic) r += dim_hat_p(*g.adic, p);
                if (g.divisible) r += dim_hat_p(*g.divisible, p);
                return r; // known finite part counts 0
            } else {
                return dim_hat_p(g, p);
            }
        },
        v);
}

namespace {

void append_term(std::string& s, std::string const& term, bool ascii) {
    if (!s.empty()) s += ascii ? " + " : " ⊕ ";
    s += term;
}

std::string power(std::string const& base, long r) {
    if (r == 1) return base;
    // parenthesize compound symbols so Z/2^3 cannot be misread as Z/(2^3)
    bool compound = base.find_first_of("/_^[") != std::string::npos;
    return (compound ? "(" + base + ")" : base) + "^" + std::to_string(r);
}

std::string z_symbol(bool ascii) { return ascii ? "Z" : "ℤ"; }

std::string adic_symbol(long p, bool ascii, bool rational) {
    if (ascii) return (rational ? "Q_" : "Z_") + std::to_string(p) + "^";
    return (rational ? "ℚ̂_" : "ℤ̂_") + std::to_string(p);
}

std::string prufer_symbol(long p, bool ascii) {
    if (ascii) return "Z/" + std::to_string(p) + "^inf";
    return "ℤ/" + std::to_string(p) + "^∞";
}

std::string ambiguity_note(std::set<long> const& amb) {
    if (amb.empty()) return "";
    std::string s = " (up to finite {";
    bool first = true;
    for (long p : amb) {
        if (!first) s += ",";
        s += std::to_string(p);
        first = false;
    }
    return s + "}-torsion)";
}

std::string z_part(long rank, std::set<long> const& inverted, bool ascii) {
    std::string base = z_symbol(ascii);
    if (!inverted.empty()) {
        base += "[1/";
        bool first = true;
        for (long p : inverted) {
            if (!first) base += "*";
            base += std::to_string(p);
            first = false;
        }
        base += "]";
    }
    return power(base, rank);
}

} // namespace

std::string render(FgAbGroup const& g, bool ascii) {
    if (g.is_trivial()) return "0";
    std::string s;
    if (g.free_rank() > 0) append_term(s, power(z_symbol(ascii), g.free_rank()), ascii);
    // group equal invariant factors into powers
    auto const& t = g.torsion();
    for (size_t i = 0; i < t.size();) {
        size_t j = i;
        while (j < t.size() && t[j] == t[i]) ++j;
        append_term(s, power(z_symbol(ascii) + "/" + t[i].get_str(), static_cast<long>(j - i)), ascii);
        i = j;
    }
    return s;
}

std::string render(AdicGroup const& g, bool ascii) {
    if (g.is_trivial()) return "0";
    std::string s;
    if (g.z_rank() > 0) append_term(s, z_part(g.z_rank(), g.inverted(), ascii), ascii);
    for (auto const& [p, r] : g.p_ranks())
        append_term(s, power(adic_symbol(p, ascii, g.inverted().count(p) > 0), r), ascii);
    if (s.empty()) s = "0";
    return s + ambiguity_note(g.ambiguity());
}

std::string render(DivisibleGroup const& g, bool ascii) {
    if (g.is_trivial()) return "0";
    std::string s;
    if (g.z_rank() > 0) append_term(s, z_part(g.z_rank(), g.inverted(), ascii), ascii);
    for (auto const& [p, r] : g.prufer_ranks()) append_term(s, power(prufer_symbol(p, ascii), r), ascii);
    if (s.empty()) s = "0";
    return s + ambiguity_note(g.ambiguity());
}

std::string render(GroupValue const& g, bool ascii) {
    return std::visit(
        [&](auto const& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SymbolicValue>) {
                std::string s;
                if (v.adic && !v.adic->is_trivial()) append_term(s, render(*v.adic, ascii), ascii);
                if (v.divisible && !v.divisible->is_trivial())
                    append_term(s, render(*v.divisible, ascii), ascii);
                if (!v.finite.is_trivial()) append_term(s, render(v.finite, ascii), ascii);
                return s.empty() ? "0" : s;
            } else {
                return render(v, ascii);
            }
        },
        g);
}

} // namespace kborel
