#include "kborel/json_io.hpp"
#include "kborel/rep_ring.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

using namespace kborel;

namespace {

struct OutputOptions {
    std::string format = "json";
    bool ascii = false;
};

void emit_json(OrderedJson const& report) { std::cout << report.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

void text_r_table(std::ostream& os, std::map<long, std::array<long, 2>> const& table) {
    os << "r-table:\n";
    if (table.empty()) os << "  (no primes)\n";
    for (auto const& [p, arr] : table)
        os << "  p=" << p << ": r^0=" << arr[0] << " r^1=" << arr[1] << "\n";
}

void text_slots(std::ostream& os, std::vector<PresSlot> const& slots, bool ascii) {
    size_t width = 0;
    for (auto const& s : slots) width = std::max(width, s.name.size());
    for (auto const& s : slots)
        os << "    " << s.name << std::string(width - s.name.size(), ' ') << " = "
           << render(s.value, ascii) << "\n";
}

void text_presentation(std::ostream& os, KPresentation const& pres, bool ascii) {
    bool coh = pres.kind == PresKind::Cohomology;
    os << (coh ? "K^" : "K_") << pres.k << " of BG (source " << pres.source << ")\n";
    os << "  sequence: 0";
    for (auto const& s : pres.slots) os << " -> " << s.name;
    os << " -> 0\n";
    text_slots(os, pres.slots, ascii);
    os << "  reduced:\n";
    text_slots(os, pres.reduced, ascii);
    if (pres.resolved) os << "  resolved: " << render(*pres.resolved, ascii) << "\n";
    if (pres.reduced_resolved)
        os << "  reduced resolved: " << render(*pres.reduced_resolved, ascii) << "\n";
}

void text_package_result(std::ostream& os, GroupPackage const& pkg,
                         std::optional<long> k_filter, bool ascii) {
    os << "source: " << pkg.name() << "\n";
    os << "primes:";
    if (pkg.primes().empty()) os << " (none)";
    for (long p : pkg.primes()) os << " " << p;
    os << "\n";
    text_r_table(os, r_table(pkg));

    auto [q0, q1] = pkg.quotient().k_groups();
    os << "quotient K: K^0 = " << render(q0, ascii) << ", K^1 = " << render(q1, ascii)
       << "\n";

    std::vector<long> degrees =
        k_filter ? std::vector<long>{*k_filter} : std::vector<long>{0, 1};
    for (long k : degrees) text_presentation(os, assemble_cohomology(pkg, k), ascii);
    for (long k : degrees) text_presentation(os, assemble_homology(pkg, k), ascii);

    for (long k : degrees) {
        RationalizedForm form = rationalize(assemble_cohomology(pkg, k));
        os << "rationalized K^" << k << ": " << render(form.left, ascii)
           << (form.consistent ? "  [consistent]" : "  [INCONSISTENT]") << "\n";
    }
    for (long k : {0L, 1L}) {
        DualityReport d =
            duality_check(assemble_cohomology(pkg, k), assemble_homology(pkg, k + 1));
        os << "duality K^" << k << " with K_" << (k + 1) % 2 << ": "
           << (d.pass ? "pass" : "FAIL") << "\n";
        for (auto const& diff : d.diffs) os << "  " << diff << "\n";
    }
}

// ---------------------------------------------------------------------------
// shared report pieces
// ---------------------------------------------------------------------------

OrderedJson con_p_checks(FiniteGroup const& g) {
    OrderedJson by_prime = OrderedJson::object();
    for (long p : primes_of_group(g)) {
        OrderedJson rows = OrderedJson::array();
        for (auto const& cls : con_p(g, p)) {
            OrderedJson row;
            row["rep"] = cls.rep;
            row["order"] = cls.rep_order;
            row["class_size"] = cls.class_size;
            row["centralizer_order"] = cls.centralizer.order();
            rows.push_back(std::move(row));
        }
        by_prime[std::to_string(p)] = std::move(rows);
    }
    return by_prime;
}

OrderedJson uct_check(GroupPackage const& pkg) {
    UctReport rep = borel_uct(pkg);
    OrderedJson j;
    j["consistent"] = rep.consistent;
    j["diffs"] = rep.diffs;
    return j;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_finite_group(std::string const& path, std::optional<long> k_filter,
                     OutputOptions const& out) {
    Json in = load_json_file(path);
    require_schema(in);
    FiniteGroup g = group_from_json(in);
    GroupPackage pkg = package_from_finite_group(g);

    OrderedJson input;
    input["path"] = path;
    input["type"] = "group";
    input["order"] = g.order();
    if (k_filter) input["k"] = *k_filter;

    OrderedJson checks;
    checks["group_validated"] = true;
    checks["con_p"] = con_p_checks(g);
    checks["uct"] = uct_check(pkg);

    OrderedJson report =
        make_report("finite-group", input, checks, package_result(pkg, k_filter));
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << "finite group of order " << g.order() << "\n";
    std::cout << "con_p classes:\n";
    for (long p : primes_of_group(g))
        for (auto const& cls : con_p(g, p))
            std::cout << "  p=" << p << ": rep " << cls.rep << " order " << cls.rep_order
                      << " class size " << cls.class_size << " centralizer order "
                      << cls.centralizer.order() << "\n";
    text_package_result(std::cout, pkg, k_filter, out.ascii);
    return 0;
}

int cmd_package(std::string const& path, std::string const& builtin,
                std::optional<long> k_filter, OutputOptions const& out) {
    GroupPackage pkg = [&] {
        if (!builtin.empty()) return builtin_package(builtin);
        Json in = load_json_file(path);
        require_schema(in);
        return package_from_json(in);
    }();

    OrderedJson input;
    if (!builtin.empty())
        input["builtin"] = builtin;
    else
        input["path"] = path;
    input["type"] = "package";
    if (k_filter) input["k"] = *k_filter;

    OrderedJson checks;
    checks["package_validated"] = true;
    checks["uct"] = uct_check(pkg);

    OrderedJson report =
        make_report("package", input, checks, package_result(pkg, k_filter));
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    text_package_result(std::cout, pkg, k_filter, out.ascii);
    return 0;
}

int cmd_gcw(std::string const& path, std::optional<long> k_filter, bool assume_acyclic,
            OutputOptions const& out) {
    Json in = load_json_file(path);
    require_schema(in);
    GCwComplex x = gcw_from_json(in);
    FiniteGroup const& g = x.group();

    OrderedJson checks;
    OrderedJson acy;
    acy["mode"] = assume_acyclic ? "assumed" : "verified";
    if (!assume_acyclic) {
        AcyclicityReport rep = check_acyclicity(x.base(), CoeffField::integers());
        if (!rep.acyclic)
            throw HypothesisError("complex is not acyclic: reduced homology at degree " +
                                  std::to_string(rep.degree) + " is " + rep.witness);
        acy["acyclic"] = true;
    }
    checks["acyclicity"] = std::move(acy);

    OrderedJson smith = OrderedJson::array();
    for (long p : primes_of_group(g))
        for (auto const& cls : con_p(g, p)) {
            SmithReport rep = smith_consistency(x, cls.rep, p);
            OrderedJson row;
            row["p"] = p;
            row["rep"] = cls.rep;
            row["hypothesis_met"] = rep.hypothesis_met;
            row["fixed_nonempty"] = rep.fixed_nonempty;
            row["fixed_acyclic"] = rep.fixed_acyclic;
            row["pass"] = rep.pass;
            smith.push_back(std::move(row));
        }
    checks["smith_consistency"] = std::move(smith);

    std::vector<long> everyone(g.order());
    for (long i = 0; i < g.order(); ++i) everyone[i] = i;
    OrderedJson qh = OrderedJson::array();
    for (FgAbGroup const& h : homology(quotient_complex(x, everyone).chain()))
        qh.push_back(json_of(h));
    checks["quotient_homology"] = std::move(qh);

    GroupPackage pkg = package_from_complex(g, x, true); // gate already ran above
    checks["uct"] = uct_check(pkg);

    OrderedJson input;
    input["path"] = path;
    input["type"] = "gcw";
    input["order"] = g.order();
    input["top_dim"] = x.base().top_dim();
    input["assume_acyclic"] = assume_acyclic;
    if (k_filter) input["k"] = *k_filter;

    OrderedJson report = make_report("gcw", input, checks, package_result(pkg, k_filter));
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << "G-CW complex: group order " << g.order() << ", top dimension "
              << x.base().top_dim() << "\n";
    std::cout << "acyclicity: " << (assume_acyclic ? "assumed" : "verified") << "\n";
    text_package_result(std::cout, pkg, k_filter, out.ascii);
    return 0;
}

int cmd_fuchsian(long genus, std::vector<long> const& periods, OutputOptions const& out) {
    FuchsianReport rep0 = fuchsian_pipeline(genus, periods, 0);
    FuchsianReport rep1 = fuchsian_pipeline(genus, periods, 1);

    // independent route: amalgam assembly over the genus-g surface quotient
    std::vector<FiniteGroup> cyclics;
    for (long c : periods) cyclics.push_back(FiniteGroup::cyclic(c));
    QuotientData surface =
        QuotientData::from_betti({1, 2 * genus, 1}, true);
    OrderedJson cross = OrderedJson::object();
    for (long k : {0L, 1L}) {
        MnmReport mnm = mnm_assemble(cyclics, surface, k);
        FuchsianReport const& rep = k == 0 ? rep0 : rep1;
        // the amalgam route is reduced, so it drops the unit Z in degree zero
        GroupValue direct = k == 0 ? rep.resolved_reduced : rep.resolved;
        bool agree = mnm.resolved && group_value_equal(direct, *mnm.resolved);
        cross["k" + std::to_string(k) + "_agree"] = agree;
    }

    OrderedJson input;
    input["genus"] = genus;
    input["periods"] = periods;

    OrderedJson checks;
    checks["amalgam_route"] = std::move(cross);

    OrderedJson result;
    result["genus"] = genus;
    result["periods"] = periods;
    for (FuchsianReport const* rep : {&rep0, &rep1}) {
        OrderedJson part;
        part["surface"] = json_of(rep->surface_k);
        OrderedJson terms = OrderedJson::array();
        for (auto const& t : rep->period_terms) terms.push_back(json_of(t));
        part["period_terms"] = std::move(terms);
        part["resolved"] = json_of(rep->resolved);
        part["resolved_reduced"] = json_of(rep->resolved_reduced);
        result["k" + std::to_string(rep->k)] = std::move(part);
    }

    OrderedJson report = make_report("fuchsian", input, checks, result);
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << "fuchsian signature (" << genus << ";";
    for (size_t i = 0; i < periods.size(); ++i)
        std::cout << (i ? "," : " ") << periods[i];
    std::cout << ")\n";
    for (FuchsianReport const* rep : {&rep0, &rep1}) {
        std::cout << "K^" << rep->k << ":\n";
        std::cout << "  surface contribution: " << render(rep->surface_k, out.ascii) << "\n";
        for (size_t i = 0; i < periods.size(); ++i)
            std::cout << "  period " << periods[i] << ": "
                      << render(rep->period_terms[i], out.ascii) << "\n";
        std::cout << "  resolved: " << render(rep->resolved, out.ascii) << "\n";
        std::cout << "  reduced:  " << render(rep->resolved_reduced, out.ascii) << "\n";
    }
    return 0;
}

int cmd_pro_file(std::string const& path, OutputOptions const& out) {
    Json in = load_json_file(path);
    require_schema(in);
    Tower t = tower_from_json(in);

    bool trivial = is_pro_trivial(t);
    LimReport lim = lim_lim1(t);
    ColimReport colim = colim_hom_ext(t);

    OrderedJson input;
    input["path"] = path;
    input["type"] = "tower";
    input["prefix_length"] = t.prefix_length();

    OrderedJson checks;
    checks["tower_validated"] = true;

    OrderedJson result;
    result["pro_trivial"] = trivial;
    result["lim"] = json_of(lim.limit);
    result["lim1"] = json_of(lim.lim1);
    result["colim_hom"] = json_of(colim.hom);
    result["colim_ext"] = json_of(colim.ext);

    OrderedJson report = make_report("pro", input, checks, result);
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << "tower (prefix length " << t.prefix_length() << ")\n";
    std::cout << "pro-trivial: " << (trivial ? "yes" : "no") << "\n";
    std::cout << "lim  = " << render(lim.limit, out.ascii) << "\n";
    std::cout << "lim1 = " << render(lim.lim1, out.ascii) << "\n";
    std::cout << "colim hom = " << render(colim.hom, out.ascii) << "\n";
    std::cout << "colim ext = " << render(colim.ext, out.ascii) << "\n";
    return 0;
}

int cmd_pro_ideal(long m, long depth, OutputOptions const& out) {
    if (m < 2) throw InputError("ideal-tower needs --m >= 2");
    if (depth < 2) throw InputError("ideal-tower needs --depth >= 2");
    RepRing ring = RepRing::cyclic(m);
    FiniteGroup g = FiniteGroup::cyclic(m);

    OrderedJson completions = OrderedJson::array();
    OrderedJson cross = OrderedJson::array();
    for (long p : primes_of_group(g)) {
        CompletionReport rep = completion_rank(ring, p, depth);
        OrderedJson row;
        row["p"] = p;
        row["rank"] = rep.rank;
        row["stabilized"] = rep.stabilized;
        row["stable_at"] = rep.stable_at;
        OrderedJson steps = OrderedJson::array();
        for (auto const& s : rep.steps) {
            OrderedJson e;
            e["depth"] = s.depth;
            e["factor_count"] = s.factor_count;
            e["total_valuation"] = json_of_int(s.total_valuation);
            steps.push_back(std::move(e));
        }
        row["steps"] = std::move(steps);
        completions.push_back(std::move(row));

        long classes = static_cast<long>(con_p(g, p).size());
        OrderedJson c;
        c["p"] = p;
        c["completion_rank"] = rep.rank;
        c["con_p_count"] = classes;
        c["agree"] = rep.stabilized && rep.rank == classes;
        cross.push_back(std::move(c));
    }

    OrderedJson input;
    input["m"] = m;
    input["depth"] = depth;

    OrderedJson checks;
    checks["con_p_cross_check"] = cross;

    OrderedJson result;
    result["ring"] = ring.name();
    result["completions"] = std::move(completions);

    OrderedJson report = make_report("pro ideal-tower", input, checks, result);
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << "augmentation ideal tower of " << ring.name() << ", depth " << depth
              << "\n";
    for (auto const& c : cross)
        std::cout << "  p=" << c["p"].get<long>() << ": completion rank "
                  << c["completion_rank"].get<long>() << ", |con_p| "
                  << c["con_p_count"].get<long>() << " -> "
                  << (c["agree"].get<bool>() ? "agree" : "DISAGREE") << "\n";
    return 0;
}

int cmd_validate(std::string const& path, OutputOptions const& out) {
    Json in = load_json_file(path);
    require_schema(in);
    std::string type = detect_schema_type(in);

    OrderedJson summary;
    if (type == "group") {
        FiniteGroup g = group_from_json(in);
        summary["order"] = g.order();
    } else if (type == "package") {
        GroupPackage pkg = package_from_json(in);
        summary["name"] = pkg.name();
        summary["primes"] = pkg.primes();
        summary["classes"] = pkg.classes().size();
    } else if (type == "gcw") {
        GCwComplex x = gcw_from_json(in);
        summary["order"] = x.group().order();
        summary["top_dim"] = x.base().top_dim();
    } else {
        Tower t = tower_from_json(in);
        summary["prefix_length"] = t.prefix_length();
    }

    OrderedJson input;
    input["path"] = path;

    OrderedJson checks;
    checks["parsed"] = true;

    OrderedJson result;
    result["valid"] = true;
    result["type"] = type;
    result["summary"] = std::move(summary);

    OrderedJson report = make_report("validate", input, checks, result);
    if (out.format == "json") {
        emit_json(report);
        return 0;
    }
    std::cout << path << ": valid " << type << "\n";
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact K-theory of classifying spaces from finite combinatorial input"};
    app.require_subcommand(1);
    // global options remain usable after the subcommand name
    app.fallthrough();

    OutputOptions out;
    app.add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--ascii", out.ascii, "ASCII symbols in text output (Z_p^, Z/p^inf)");

    std::string fg_path;
    long fg_k = -1;
    auto* fg = app.add_subcommand("finite-group", "Full pipeline for a finite group file");
    fg->add_option("file", fg_path, "Group JSON file")->required();
    fg->add_option("--k", fg_k, "Restrict to one degree")->check(CLI::Range(0, 1));

    std::string pkg_path, pkg_builtin;
    long pkg_k = -1;
    auto* pk = app.add_subcommand("package", "Assemble the presentations of a package");
    pk->add_option("file", pkg_path, "Package JSON file");
    pk->add_option("--builtin", pkg_builtin, "Built-in package name (sl3z, trivial)");
    pk->add_option("--k", pkg_k, "Restrict to one degree")->check(CLI::Range(0, 1));

    long fx_genus = 0;
    std::vector<long> fx_periods;
    auto* fx = app.add_subcommand("fuchsian", "Cocompact Fuchsian group pipeline");
    fx->add_option("--genus", fx_genus, "Genus of the quotient surface")->required();
    fx->add_option("--periods", fx_periods, "Cone point orders")->delimiter(',');

    std::string gcw_path;
    long gcw_k = -1;
    bool gcw_assume = false;
    auto* gc = app.add_subcommand("gcw", "Full pipeline for a finite group acting on a complex");
    gc->add_option("file", gcw_path, "G-CW complex JSON file")->required();
    gc->add_option("--k", gcw_k, "Restrict to one degree")->check(CLI::Range(0, 1));
    gc->add_flag("--assume-acyclic", gcw_assume,
                 "Skip the acyclicity check; the report records the assumption");

    std::string pro_path;
    auto* pr = app.add_subcommand("pro", "Pro-module calculus of a tower");
    pr->add_option("file", pro_path, "Tower JSON file");
    long it_m = 0, it_depth = 12;
    auto* it = pr->add_subcommand("ideal-tower",
                                  "Augmentation ideal tower of a cyclic representation ring");
    it->add_option("--m", it_m, "Cyclic group order")->required();
    it->add_option("--depth", it_depth, "Tower depth")->capture_default_str();

    std::string val_path;
    auto* va = app.add_subcommand("validate", "Validate an input file against the schemas");
    va->add_option("file", val_path, "JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fg->parsed()) return cmd_finite_group(fg_path, fg_k >= 0 ? std::optional<long>(fg_k) : std::nullopt, out);
    if (pk->parsed()) {
        if (pkg_path.empty() == pkg_builtin.empty())
            throw InputError("package needs exactly one of a file or --builtin");
        return cmd_package(pkg_path, pkg_builtin,
                           pkg_k >= 0 ? std::optional<long>(pkg_k) : std::nullopt, out);
    }
    if (fx->parsed()) return cmd_fuchsian(fx_genus, fx_periods, out);
    if (gc->parsed())
        return cmd_gcw(gcw_path, gcw_k >= 0 ? std::optional<long>(gcw_k) : std::nullopt,
                       gcw_assume, out);
    if (pr->parsed()) {
        if (it->parsed()) return cmd_pro_ideal(it_m, it_depth, out);
        if (pro_path.empty())
            throw InputError("pro needs a tower file or the ideal-tower subcommand");
        return cmd_pro_file(pro_path, out);
    }
    if (va->parsed()) return cmd_validate(val_path, out);
    throw InputError("no command selected");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (InputError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (HypothesisError const& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 3;
    } catch (UnsupportedError const& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
