#include "kborel/json_io.hpp"

#include <fstream>
#include <sstream>

namespace kborel {

namespace {

[[noreturn]] void bad(std::string const& msg) { throw InputError(msg); }

Json const& field(Json const& j, char const* key) {
    if (!j.is_object()) bad("expected an object with a \"" + std::string(key) + "\" field");
    auto it = j.find(key);
    if (it == j.end()) bad("missing field \"" + std::string(key) + "\"");
    return *it;
}

long long_field(Json const& j, char const* key) {
    Json const& v = field(j, key);
    if (!v.is_number_integer())
        bad("field \"" + std::string(key) + "\" must be an integer");
    return v.get<long>();
}

std::string string_field(Json const& j, char const* key) {
    Json const& v = field(j, key);
    if (!v.is_string()) bad("field \"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
}

std::vector<long> long_array(Json const& j, std::string const& what) {
    if (!j.is_array()) bad(what + " must be an array of integers");
    std::vector<long> out;
    for (Json const& v : j) {
        if (!v.is_number_integer()) bad(what + " must be an array of integers");
        out.push_back(v.get<long>());
    }
    return out;
}

} // namespace

void require_schema(Json const& j) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
        bad("document needs a top-level \"schema\" string");
    std::string s = j["schema"].get<std::string>();
    if (s != "kborel/1") bad("unsupported schema \"" + s + "\", expected \"kborel/1\"");
}

std::string detect_schema_type(Json const& j) {
    if (!j.is_object()) bad("document must be a JSON object");
    if (j.contains("action") || j.contains("boundaries")) return "gcw";
    if (j.contains("tail") || j.contains("prefix")) return "tower";
    if (j.contains("classes") || j.contains("quotient")) return "package";
    if (j.contains("table") || j.contains("perm_gens")) return "group";
    bad("cannot identify the document: none of the schema's distinguishing keys "
        "(table/perm_gens, classes/quotient, boundaries/action, prefix/tail) present");
}

Json load_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (Json::exception const& e) {
        bad(path + ": " + e.what());
    }
    return j;
}

Int int_from_json(Json const& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (std::invalid_argument const&) {
            bad("not a decimal integer string: \"" + j.get<std::string>() + "\"");
        }
    }
    bad("expected an integer (number or decimal string)");
}

OrderedJson json_of_int(Int const& n) {
    if (n.fits_slong_p()) return OrderedJson(n.get_si());
    return OrderedJson(n.get_str());
}

IntMatrix matrix_from_json(Json const& j) {
    if (j.is_array()) {
        std::vector<std::vector<Int>> rows;
        for (Json const& r : j) {
            if (!r.is_array()) bad("dense matrix rows must be arrays");
            std::vector<Int> row;
            for (Json const& v : r) row.push_back(int_from_json(v));
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            bad("a matrix with zero rows needs the shaped form {\"rows\", \"cols\", "
                "\"entries\"}");
        for (auto const& r : rows)
            if (r.size() != rows[0].size()) bad("dense matrix rows differ in length");
        return IntMatrix::from_rows(std::move(rows));
    }
    if (j.is_object()) {
        long rows = long_field(j, "rows");
        long cols = long_field(j, "cols");
        std::vector<std::tuple<long, long, Int>> entries;
        if (j.contains("entries")) {
            if (!j["entries"].is_array()) bad("matrix \"entries\" must be an array");
            for (Json const& e : j["entries"]) {
                if (!e.is_array() || e.size() != 3)
                    bad("matrix entries are [row, col, value] triplets");
                entries.emplace_back(e[0].get<long>(), e[1].get<long>(),
                                     int_from_json(e[2]));
            }
        }
        return IntMatrix::from_triplets(rows, cols, entries);
    }
    bad("a matrix is dense rows or {\"rows\", \"cols\", \"entries\"}");
}

FgAbGroup fg_from_json(Json const& j) {
    long free = long_field(j, "free");
    std::vector<Int> torsion;
    if (j.contains("torsion")) {
        if (!j["torsion"].is_array()) bad("\"torsion\" must be an array");
        for (Json const& v : j["torsion"]) torsion.push_back(int_from_json(v));
    }
    return FgAbGroup(free, std::move(torsion));
}

FiniteGroup group_from_json(Json const& j, long order_cap) {
    if (!j.is_object()) bad("group must be an object");
    if (j.contains("schema")) require_schema(j);
    bool has_table = j.contains("table");
    bool has_perms = j.contains("perm_gens");
    if (has_table == has_perms)
        bad("group needs exactly one of \"table\" or \"perm_gens\"");
    if (has_table) {
        if (!j["table"].is_array()) bad("\"table\" must be an array of rows");
        std::vector<std::vector<long>> table;
        for (Json const& r : j["table"]) table.push_back(long_array(r, "table row"));
        if (j.contains("order") && long_field(j, "order") != static_cast<long>(table.size()))
            bad("declared \"order\" does not match the table size");
        return FiniteGroup::from_table(std::move(table), order_cap);
    }
    if (!j["perm_gens"].is_array()) bad("\"perm_gens\" must be an array of permutations");
    std::vector<std::vector<long>> gens;
    for (Json const& g : j["perm_gens"]) gens.push_back(long_array(g, "permutation"));
    return FiniteGroup::from_permutations(gens, long_field(j, "degree"), order_cap);
}

GroupPackage package_from_json(Json const& j) {
    if (!j.is_object()) bad("package must be an object");
    if (j.contains("schema")) require_schema(j);
    std::string name = string_field(j, "name");
    std::vector<long> ps = long_array(field(j, "primes"), "\"primes\"");
    std::set<long> primes(ps.begin(), ps.end());

    std::vector<ClassRecord> classes;
    if (j.contains("classes")) {
        if (!j["classes"].is_array()) bad("\"classes\" must be an array");
        for (Json const& c : j["classes"])
            classes.push_back({long_field(c, "p"), string_field(c, "label"),
                               long_array(field(c, "betti"), "class betti")});
    }

    Json const& q = field(j, "quotient");
    QuotientData quotient = QuotientData::point();
    if (q.contains("betti")) {
        bool tf = q.contains("torsion_free") && q["torsion_free"].is_boolean() &&
                  q["torsion_free"].get<bool>();
        quotient = QuotientData::from_betti(long_array(q["betti"], "quotient betti"), tf);
    } else if (q.contains("k0") || q.contains("k1")) {
        quotient = QuotientData::from_k(fg_from_json(field(q, "k0")),
                                        fg_from_json(field(q, "k1")));
    } else {
        bad("\"quotient\" needs \"betti\" (with \"torsion_free\") or \"k0\"/\"k1\"");
    }

    return GroupPackage(std::move(name), std::move(primes), std::move(classes),
                        std::move(quotient), long_field(j, "dim_bound"));
}

GCwComplex gcw_from_json(Json const& j, long order_cap) {
    if (!j.is_object()) bad("complex must be an object");
    if (j.contains("schema")) require_schema(j);
    std::vector<long> ranks = long_array(field(j, "ranks"), "\"ranks\"");

    std::vector<IntMatrix> boundaries;
    if (j.contains("boundaries")) {
        if (!j["boundaries"].is_array()) bad("\"boundaries\" must be an array of matrices");
        for (Json const& b : j["boundaries"]) boundaries.push_back(matrix_from_json(b));
    }

    std::vector<std::vector<std::string>> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) bad("\"labels\" must be an array per dimension");
        for (Json const& dim : j["labels"]) {
            if (!dim.is_array()) bad("\"labels\" must be an array per dimension");
            std::vector<std::string> names;
            for (Json const& s : dim) {
                if (!s.is_string()) bad("cell labels must be strings");
                names.push_back(s.get<std::string>());
            }
            labels.push_back(std::move(names));
        }
    }

    FiniteGroup group = group_from_json(field(j, "group"), order_cap);

    std::map<long, std::vector<SignedPerm>> action;
    Json const& act = field(j, "action");
    if (!act.is_array()) bad("\"action\" must be an array of generator actions");
    for (Json const& a : act) {
        long element = long_field(a, "element");
        Json const& perms = field(a, "perms");
        if (!perms.is_array()) bad("\"perms\" must be an array per dimension");
        std::vector<SignedPerm> sp;
        for (Json const& p : perms) {
            SignedPerm s;
            s.image = long_array(field(p, "image"), "\"image\"");
            for (long v : long_array(field(p, "sign"), "\"sign\"")) {
                if (v != 1 && v != -1) bad("signs must be +1 or -1");
                s.sign.push_back(static_cast<int>(v));
            }
            sp.push_back(std::move(s));
        }
        if (action.count(element)) bad("duplicate action entry for element " +
                                       std::to_string(element));
        action[element] = std::move(sp);
    }

    return GCwComplex(CwComplex(ChainComplex(std::move(ranks), std::move(boundaries)),
                                std::move(labels)),
                      std::move(group), action);
}

Tower tower_from_json(Json const& j) {
    if (!j.is_object()) bad("tower must be an object");
    if (j.contains("schema")) require_schema(j);

    std::vector<FgAbGroup> groups;
    std::vector<IntMatrix> maps;
    if (j.contains("prefix")) {
        Json const& p = j["prefix"];
        Json const& gs = field(p, "groups");
        if (!gs.is_array()) bad("prefix \"groups\" must be an array");
        for (Json const& g : gs) groups.push_back(fg_from_json(g));
        if (p.contains("maps")) {
            if (!p["maps"].is_array()) bad("prefix \"maps\" must be an array of matrices");
            for (Json const& m : p["maps"]) maps.push_back(matrix_from_json(m));
        }
    }

    Json const& t = field(j, "tail");
    std::string kind = string_field(t, "kind");
    TowerTail tail = EventuallyZeroTail{};
    if (kind == "constant")
        tail = ConstantTail{fg_from_json(field(t, "group"))};
    else if (kind == "zero")
        tail = EventuallyZeroTail{};
    else if (kind == "p-adic-quotient")
        tail = PAdicQuotientTail{fg_from_json(field(t, "base")), long_field(t, "p")};
    else if (kind == "ideal")
        tail = StabilizingTail{RepRing::cyclic(long_field(t, "m"))};
    else
        bad("unknown tail kind \"" + kind +
            "\" (constant, zero, p-adic-quotient, ideal)");

    std::optional<IntMatrix> junction;
    if (j.contains("junction")) junction = matrix_from_json(j["junction"]);

    return Tower(std::move(groups), std::move(maps), std::move(tail), std::move(junction));
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

OrderedJson json_of(FgAbGroup const& g) {
    OrderedJson j;
    j["kind"] = "fg";
    j["free"] = g.free_rank();
    OrderedJson tors = OrderedJson::array();
    for (Int const& t : g.torsion()) tors.push_back(json_of_int(t));
    j["torsion"] = std::move(tors);
    j["text"] = render(g, true);
    return j;
}

namespace {

OrderedJson prime_rank_map(std::map<long, long> const& ranks) {
    OrderedJson j = OrderedJson::object();
    for (auto const& [p, r] : ranks) j[std::to_string(p)] = r;
    return j;
}

OrderedJson json_of_adic(AdicGroup const& a) {
    OrderedJson j;
    j["kind"] = "adic";
    j["z"] = a.z_rank();
    j["p_ranks"] = prime_rank_map(a.p_ranks());
    j["ambiguity"] = a.ambiguity();
    j["inverted"] = a.inverted();
    j["text"] = render(a, true);
    return j;
}

OrderedJson json_of_divisible(DivisibleGroup const& d) {
    OrderedJson j;
    j["kind"] = "divisible";
    j["z"] = d.z_rank();
    j["prufer_ranks"] = prime_rank_map(d.prufer_ranks());
    j["ambiguity"] = d.ambiguity();
    j["inverted"] = d.inverted();
    j["text"] = render(d, true);
    return j;
}

} // namespace

OrderedJson json_of(GroupValue const& v) {
    if (auto const* f = std::get_if<FgAbGroup>(&v)) return json_of(*f);
    if (auto const* a = std::get_if<AdicGroup>(&v)) return json_of_adic(*a);
    if (auto const* d = std::get_if<DivisibleGroup>(&v)) return json_of_divisible(*d);
    SymbolicValue const& m = std::get<SymbolicValue>(v);
    OrderedJson j;
    j["kind"] = "mixed";
    j["adic"] = m.adic ? json_of_adic(*m.adic) : OrderedJson(nullptr);
    j["divisible"] = m.divisible ? json_of_divisible(*m.divisible) : OrderedJson(nullptr);
    j["finite"] = json_of(m.finite);
    j["text"] = render(v, true);
    return j;
}

namespace {

OrderedJson json_of_slots(std::vector<PresSlot> const& slots) {
    OrderedJson arr = OrderedJson::array();
    for (auto const& s : slots) {
        OrderedJson e;
        e["name"] = s.name;
        e["value"] = json_of(s.value);
        arr.push_back(std::move(e));
    }
    return arr;
}

OrderedJson r_table_json(std::map<long, std::array<long, 2>> const& table) {
    OrderedJson j = OrderedJson::object();
    for (auto const& [p, arr] : table) j[std::to_string(p)] = {arr[0], arr[1]};
    return j;
}

} // namespace

OrderedJson json_of(KPresentation const& pres) {
    OrderedJson j;
    j["k"] = pres.k;
    j["kind"] = pres.kind == PresKind::Cohomology ? "cohomology" : "homology";
    j["source"] = pres.source;
    j["primes"] = pres.primes;
    j["r"] = r_table_json(pres.r);
    j["sequence"] = json_of_slots(pres.slots);
    j["reduced_sequence"] = json_of_slots(pres.reduced);
    j["resolved"] = pres.resolved ? json_of(*pres.resolved) : OrderedJson(nullptr);
    j["reduced_resolved"] =
        pres.reduced_resolved ? json_of(*pres.reduced_resolved) : OrderedJson(nullptr);
    return j;
}

OrderedJson json_of(RationalizedForm const& form) {
    OrderedJson j;
    j["k"] = form.k;
    j["kind"] = form.kind == PresKind::Cohomology ? "cohomology" : "homology";
    j["inverted"] = form.inverted;
    j["left"] = json_of(form.left);
    j["right"] = json_of(form.right);
    j["consistent"] = form.consistent;
    return j;
}

OrderedJson json_of(DualityReport const& rep) {
    OrderedJson j;
    j["pass"] = rep.pass;
    j["diffs"] = rep.diffs;
    return j;
}

OrderedJson package_result(GroupPackage const& pkg, std::optional<long> k_filter) {
    OrderedJson res;
    res["name"] = pkg.name();
    res["primes"] = pkg.primes();
    res["r"] = r_table_json(r_table(pkg));

    auto [q0, q1] = pkg.quotient().k_groups();
    OrderedJson q;
    q["k0"] = json_of(q0);
    q["k1"] = json_of(q1);
    res["quotient"] = std::move(q);

    OrderedJson classes = OrderedJson::array();
    for (auto const& c : pkg.classes()) {
        OrderedJson e;
        e["p"] = c.p;
        e["label"] = c.label;
        e["betti"] = c.betti;
        classes.push_back(std::move(e));
    }
    res["classes"] = std::move(classes);

    std::vector<long> degrees = k_filter ? std::vector<long>{*k_filter}
                                         : std::vector<long>{0, 1};
    OrderedJson coh = OrderedJson::array();
    OrderedJson hom = OrderedJson::array();
    OrderedJson rat_coh = OrderedJson::array();
    OrderedJson rat_hom = OrderedJson::array();
    for (long k : degrees) {
        KPresentation c = assemble_cohomology(pkg, k);
        KPresentation h = assemble_homology(pkg, k);
        coh.push_back(json_of(c));
        hom.push_back(json_of(h));
        rat_coh.push_back(json_of(rationalize(c)));
        rat_hom.push_back(json_of(rationalize(h)));
    }
    res["cohomology"] = std::move(coh);
    res["homology"] = std::move(hom);

    OrderedJson rat;
    rat["cohomology"] = std::move(rat_coh);
    rat["homology"] = std::move(rat_hom);
    res["rationalized"] = std::move(rat);

    // duality always pairs both degrees, independent of the display filter
    OrderedJson duality = OrderedJson::array();
    for (long k : {0L, 1L}) {
        DualityReport d =
            duality_check(assemble_cohomology(pkg, k), assemble_homology(pkg, k + 1));
        OrderedJson e;
        e["cohomology_k"] = k;
        e["homology_k"] = (k + 1) % 2;
        e["pass"] = d.pass;
        e["diffs"] = d.diffs;
        duality.push_back(std::move(e));
    }
    res["duality"] = std::move(duality);
    return res;
}

OrderedJson make_report(std::string const& command, OrderedJson input, OrderedJson checks,
                        OrderedJson result) {
    OrderedJson rep;
    rep["schema"] = "kborel/1";
    rep["command"] = command;
    rep["input"] = std::move(input);
    rep["checks"] = std::move(checks);
    rep["result"] = std::move(result);
    return rep;
}

} // namespace kborel
