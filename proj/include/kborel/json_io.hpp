#pragma once

#include "kborel/assemble.hpp"
#include "kborel/complexes.hpp"
#include "kborel/groups.hpp"
#include "kborel/pro.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace kborel {

// Inputs are parsed from plain json (any key order accepted); outputs use ordered_json
// so identical inputs serialize to byte-identical reports.
using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Top-level documents carry "schema": "kborel/1"; missing or different versions are
// rejected. Embedded objects (a group inside a complex file) may omit it.
void require_schema(Json const& j);

// "group", "package", "gcw" or "tower", detected from the distinguishing keys.
std::string detect_schema_type(Json const& j);

Json load_json_file(std::string const& path);

// Integers are accepted as JSON numbers or as decimal strings (for values beyond
// int64); emitted as numbers when they fit and as strings otherwise.
Int int_from_json(Json const& j);
OrderedJson json_of_int(Int const& n);

// A matrix is either dense rows [[1,0],[0,1]] or the shaped form
// {"rows": r, "cols": c, "entries": [[i, j, value], ...]}; only the shaped form can
// express matrices with zero rows or columns.
IntMatrix matrix_from_json(Json const& j);

// {"free": n, "torsion": [d, ...]}
FgAbGroup fg_from_json(Json const& j);

// {"table": [[...]]} with optional "order" cross-check, or
// {"perm_gens": [[...], ...], "degree": n}. order_cap 0 means the global default.
FiniteGroup group_from_json(Json const& j, long order_cap = 0);

// {"name", "primes", "classes": [{"p", "label", "betti"}], "quotient", "dim_bound"};
// quotient is {"betti": [...], "torsion_free": bool} or {"k0": fg, "k1": fg}.
GroupPackage package_from_json(Json const& j);

// {"ranks", "boundaries": [matrix, ...], "labels"?, "group", "action":
//  [{"element": g, "perms": [{"image", "sign"}, ...]}, ...]}
GCwComplex gcw_from_json(Json const& j, long order_cap = 0);

// {"prefix"?: {"groups": [fg, ...], "maps": [matrix, ...]}, "tail": {"kind": ...},
//  "junction"?: matrix}. Tail kinds: "constant" {"group"}, "zero",
//  "p-adic-quotient" {"base", "p"}, "ideal" {"m"}.
Tower tower_from_json(Json const& j);

// Group values serialize with their structural fields plus an ASCII "text" rendering.
OrderedJson json_of(FgAbGroup const& g);
OrderedJson json_of(GroupValue const& v);
OrderedJson json_of(KPresentation const& pres);
OrderedJson json_of(RationalizedForm const& form);
OrderedJson json_of(DualityReport const& rep);

// The route-independent result subtree shared by the group, complex and package
// commands: name, primes, r-table, class data, quotient K, both presentations in the
// requested degrees, duality verdicts and rationalized forms. Two pipelines that
// extract the same package produce identical subtrees.
OrderedJson package_result(GroupPackage const& pkg, std::optional<long> k_filter = {});

// {"schema", "command", "input", "checks", "result"} in that key order.
OrderedJson make_report(std::string const& command, OrderedJson input, OrderedJson checks,
                        OrderedJson result);

} // namespace kborel
