#include "orbicalc/json_io.hpp"

#include "orbicalc/catalog.hpp"

#include <algorithm>

namespace orbicalc {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

long as_long(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer, got " + j.dump());
    return j.get<long>();
}

int as_int(const Json& j, const char* what) { return static_cast<int>(as_long(j, what)); }

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
    std::vector<int> out;
    for (auto& v : j) out.push_back(as_int(v, what));
    return out;
}

std::vector<std::vector<int>> int_table(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of arrays");
    std::vector<std::vector<int>> out;
    for (auto& row : j) out.push_back(int_list(row, what));
    return out;
}

Json int_vec(const std::vector<int>& v) { return Json(v); }

Json integer_list(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

}  // namespace

Json to_json(const Integer& x) { return to_string(x); }
Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const Cyclotomic& x) {
    Json c = Json::array();
    for (auto& q : x.coeffs()) c.push_back(to_json(q));
    return {{"conductor", x.conductor()}, {"coeffs", c}};
}

Json to_json(const RatMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const IntMat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const RatVec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputError("expected an integer or a rational string, got " + j.dump());
}

Cyclotomic cyclotomic_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_string()) return Cyclotomic(rational_from_json(j));
    const long n = as_long(field(j, "conductor", "cyclotomic"), "cyclotomic conductor");
    if (n < 1) throw InputError("cyclotomic: conductor must be positive");
    const Json& cs = field(j, "coeffs", "cyclotomic");
    if (!cs.is_array()) throw InputError("cyclotomic: coeffs must be an array");
    std::vector<Rational> c;
    for (auto& v : cs) c.push_back(rational_from_json(v));
    return Cyclotomic::from_powers(n, c);
}

FiniteGroup group_from_json(const Json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (!is_catalog_name(name)) throw InputError("unknown catalog group '" + name + "'");
        return catalog_group(name);
    }
    if (!j.is_object()) throw InputError("group: expected a catalog name or an object");
    const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
    if (j.contains("mul")) {
        auto mul = int_table(j.at("mul"), "group mul");
        if (j.contains("order") && as_long(j.at("order"), "group order") != static_cast<long>(mul.size()))
            throw InputError("group: order does not match the table");
        return FiniteGroup::from_table(mul, name);
    }
    if (j.contains("perm_gens")) {
        const int degree = as_int(field(j, "degree", "group"), "group degree");
        return FiniteGroup::from_permutations(degree, int_table(j.at("perm_gens"), "group perm_gens"), name);
    }
    throw InputError("group: need \"mul\" or \"perm_gens\"");
}

Json group_to_json(const FiniteGroup& g) {
    Json j{{"order", g.order()}, {"mul", g.table()}};
    if (!g.name().empty()) j["name"] = g.name();
    return j;
}

GSet gset_from_json(const Json& j) {
    auto g = std::make_shared<const FiniteGroup>(group_from_json(field(j, "group", "gset")));
    return gset_from_json(j, g);
}

GSet gset_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g) {
    if (j.is_object() && j.contains("group") && !(group_from_json(j.at("group")) == *g))
        throw InputError("gset: group does not match");
    const int size = as_int(field(j, "size", "gset"), "gset size");
    auto act = int_table(field(j, "act", "gset"), "gset act");
    if (static_cast<int>(act.size()) != g->order()) throw InputError("gset: act needs one row per group element");
    for (auto& row : act)
        if (static_cast<int>(row.size()) != size) throw InputError("gset: act rows must have length size");
    return GSet::make(g, std::move(act));
}

Json gset_to_json(const GSet& x) {
    Json g = x.group->name().empty() || !is_catalog_name(x.group->name()) ? group_to_json(*x.group) : Json(x.group->name());
    return {{"group", g}, {"size", x.size}, {"act", x.act}};
}

CocycleTable cocycle_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g) {
    const long n = as_long(field(j, "root_order", "cocycle"), "cocycle root_order");
    if (n < 1) throw InputError("cocycle: root_order must be positive");
    const Json& t = field(j, "table", "cocycle");
    if (!t.is_array()) throw InputError("cocycle: table must be an array of arrays");
    std::vector<std::vector<long>> c;
    for (auto& row : t) {
        if (!row.is_array()) throw InputError("cocycle: table must be an array of arrays");
        std::vector<long> r;
        for (auto& v : row) r.push_back(as_long(v, "cocycle entry"));
        c.push_back(std::move(r));
    }
    return CocycleTable::make(std::move(g), n, std::move(c));
}

Json cocycle_to_json(const CocycleTable& c) { return {{"root_order", c.root_order}, {"table", c.c}}; }

FinDimAlgebra algebra_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g) {
    if (!j.is_object()) throw InputError("algebra: expected an object");
    if (j.contains("group")) {
        auto own = std::make_shared<const FiniteGroup>(group_from_json(j.at("group")));
        if (g && !(*g == *own)) throw InputError("algebra: group does not match");
        g = own;
    }
    const int dim = as_int(field(j, "dim", "algebra"), "algebra dim");
    if (dim < 0) throw InputError("algebra: negative dim");
    FinDimAlgebra a = FinDimAlgebra::zero(dim);
    auto index = [&](const Json& v, const char* what) {
        const int i = as_int(v, what);
        if (i < 0 || i >= dim) throw InputError(std::string("algebra: ") + what + " " + std::to_string(i) + " out of range");
        return i;
    };
    if (j.contains("labels")) {
        const Json& l = j.at("labels");
        if (!l.is_array() || static_cast<int>(l.size()) != dim) throw InputError("algebra: labels need one entry per basis element");
        for (int i = 0; i < dim; ++i) a.labels[i] = l[i].is_string() ? l[i].get<std::string>() : l[i].dump();
    }
    std::map<std::pair<int, int>, std::map<int, Cyclotomic>> sc;
    const Json& entries = field(j, "sc", "algebra");
    if (!entries.is_array()) throw InputError("algebra: sc must be an array");
    for (auto& e : entries) {
        if (!e.is_array() || e.size() != 4) throw InputError("algebra: sc entries are [i, j, k, coeff]");
        const int x = index(e[0], "sc index"), y = index(e[1], "sc index"), k = index(e[2], "sc index");
        sc[{x, y}][k] += cyclotomic_from_json(e[3]);
    }
    for (auto& [ij, row] : sc) {
        SparseVec v;
        for (auto& [k, c] : row)
            if (!c.is_zero()) v.emplace_back(k, c);
        a.set_product(ij.first, ij.second, std::move(v));
    }
    const Json& unit = field(j, "unit", "algebra");
    if (unit.is_number_integer()) {
        a.unit = sv_unit(index(unit, "unit index"));
    } else if (unit.is_array() && static_cast<int>(unit.size()) == dim) {
        for (int i = 0; i < dim; ++i) {
            Cyclotomic c = cyclotomic_from_json(unit[i]);
            if (!c.is_zero()) a.unit.emplace_back(i, c);
        }
    } else {
        throw InputError("algebra: unit must be a basis index or a coefficient vector of length dim");
    }
    if (j.contains("support")) {
        a.support = int_list(j.at("support"), "algebra support");
        if (static_cast<int>(a.support.size()) != dim) throw InputError("algebra: support needs one entry per basis element");
    }
    if ((j.contains("grading") || j.contains("action")) && !g) throw InputError("algebra: grading or action without a group");
    a.group = g;
    if (j.contains("grading")) {
        a.grading = int_list(j.at("grading"), "algebra grading");
        if (static_cast<int>(a.grading.size()) != dim) throw InputError("algebra: grading needs one entry per basis element");
    }
    if (j.contains("action")) {
        const Json& act = j.at("action");
        if (!act.is_object()) throw InputError("algebra: action must be an object keyed by group element");
        a.action.assign(g->order(), std::vector<SparseVec>(dim));
        for (int i = 0; i < dim; ++i) a.action[0][i] = sv_unit(i);
        std::vector<char> given(g->order(), 0);
        given[0] = 1;
        for (auto& [key, images] : act.items()) {
            int s = -1;
            try {
                size_t pos = 0;
                s = std::stoi(key, &pos);
                if (pos != key.size()) s = -1;
            } catch (const std::exception&) {
                s = -1;
            }
            if (s < 0 || s >= g->order()) throw InputError("algebra: action key '" + key + "' is not a group element");
            if (!images.is_array()) throw InputError("algebra: action images are [[i, k, coeff]...]");
            std::vector<std::map<int, Cyclotomic>> acc(dim);
            for (auto& e : images) {
                if (!e.is_array() || e.size() != 3) throw InputError("algebra: action entries are [i, k, coeff]");
                acc[index(e[0], "action index")][index(e[1], "action index")] += cyclotomic_from_json(e[2]);
            }
            for (int i = 0; i < dim; ++i) {
                SparseVec v;
                for (auto& [k, c] : acc[i])
                    if (!c.is_zero()) v.emplace_back(k, c);
                a.action[s][i] = std::move(v);
            }
            given[s] = 1;
        }
        for (int s = 0; s < g->order(); ++s)
            if (!given[s]) throw InputError("algebra: action missing for group element " + std::to_string(s));
    }
    a.validate();
    return a;
}

Json algebra_to_json(const FinDimAlgebra& a) {
    Json j{{"dim", a.dim}, {"labels", a.labels}};
    Json sc = Json::array();
    for (int i = 0; i < a.dim; ++i)
        for (auto& [k, v] : a.table[i])
            for (auto& [idx, c] : v) sc.push_back({i, k, idx, to_json(c)});
    j["sc"] = sc;
    Json unit = Json::array();
    for (int i = 0; i < a.dim; ++i) unit.push_back(to_json(sv_get(a.unit, i)));
    j["unit"] = unit;
    if (a.group) j["group"] = group_to_json(*a.group);
    if (!a.grading.empty()) j["grading"] = a.grading;
    if (!a.support.empty()) j["support"] = a.support;
    if (!a.action.empty()) {
        Json act = Json::object();
        for (size_t s = 1; s < a.action.size(); ++s) {
            Json images = Json::array();
            for (int i = 0; i < a.dim; ++i)
                for (auto& [k, c] : a.action[s][i]) images.push_back({i, k, to_json(c)});
            act[std::to_string(s)] = images;
        }
        j["action"] = act;
    }
    return j;
}

Json character_table_to_json(const CharacterTable& t) {
    Json chi = Json::array();
    for (auto& row : t.chi) {
        Json r = Json::array();
        for (auto& v : row) r.push_back(to_json(v));
        chi.push_back(std::move(r));
    }
    return {{"group_order", t.group_order},  {"conductor", t.conductor},         {"class_sizes", t.class_sizes},
            {"class_reps", t.class_reps},    {"class_inverse", t.class_inverse}, {"chi", chi}};
}

Json vistoli_to_json(const VistoliDecomposition& v) {
    Json summands = Json::array();
    for (auto& s : v.summands)
        summands.push_back({{"sigma", s.cls.rep.elements}, {"order", s.order}, {"action", s.action}, {"rank", s.rank()},
                            {"basis", to_json(s.basis)}});
    Json idem = Json::array();
    for (auto& e : v.tilde_idempotents) idem.push_back(to_json(e));
    return {{"mode", to_string(v.mode)},
            {"n", v.group_order},
            {"summand_ranks", v.summand_ranks()},
            {"summands", summands},
            {"map", to_json(v.map.matrix)},
            {"snf_diagonal", integer_list(v.snf_diagonal)},
            {"tilde_idempotents", idem}};
}

Json orbifold_to_json(const OrbifoldDecomposition& d) {
    Json summands = Json::array();
    for (auto& s : d.summands) {
        Json pieces = Json::array();
        for (auto& p : s.pieces)
            pieces.push_back({{"point", p.point}, {"orbit", p.orbit}, {"n_orbit", p.n_orbit}, {"rank", p.rank()}});
        summands.push_back({{"sigma", s.cls.rep.elements}, {"order", s.order}, {"fixed", s.fixed}, {"pieces", pieces}});
    }
    Json snf = Json::array();
    for (auto& b : d.block_snf) snf.push_back(integer_list(b));
    return {{"mode", to_string(d.mode)},
            {"n", to_string(d.map.n)},
            {"k0_rank", d.k0.rank()},
            {"summand_ranks", d.summand_ranks()},
            {"summands", summands},
            {"map", to_json(d.map.matrix)},
            {"block_snf", snf}};
}

Json inertia_to_json(const InertiaDecomposition& d) {
    Json terms = Json::array();
    for (auto& t : d.class_form)
        terms.push_back({{"g", t.g}, {"centralizer_order", t.centralizer.order()}, {"fixed", t.fixed}, {"orbit_reps", t.orbit_reps}});
    Json inv = Json::array();
    for (auto& [g, x] : d.invariant_form) inv.push_back({g, x});
    return {{"k0_rank", d.k0_rank},     {"dimension", d.dimension},       {"class_form", terms},
            {"invariant_form", inv},    {"bijection", int_vec(d.bijection)}, {"bijective", d.bijective},
            {"blocks_are_tables", d.blocks_are_tables}};
}

Json blocks_to_json(const BlockCountReport& r) {
    return {{"base_conductor", r.base_conductor}, {"ext_conductor", r.ext_conductor}, {"dim", r.dim},
            {"radical_dim", r.radical_dim},       {"center_dim", r.center_dim},       {"blocks_base", r.blocks_base},
            {"blocks_ext", r.blocks_ext},         {"base_degrees", r.base_degrees},   {"ext_degrees", r.ext_degrees},
            {"inclusion", to_json(r.inclusion)},  {"injective", r.injective}};
}

}  // namespace orbicalc
