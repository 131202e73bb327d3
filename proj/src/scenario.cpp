#include "indban/scenario.hpp"

#include "indban/error.hpp"
#include "indban/tensor.hpp"

#include <toml.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <random>
#include <map>
#include <set>
#include <sstream>

namespace indban {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- loading

struct Loader {
    std::string path;
    Scenario& s;

    [[noreturn]] void fail(const toml::node& n, const std::string& msg) const {
        const auto& b = n.source().begin;
        throw Error(ErrorKind::ParseError,
                    path + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " + msg);
    }
    [[noreturn]] void unknown(const toml::node& n, const std::string& what, const std::string& name) const {
        const auto& b = n.source().begin;
        throw Error(ErrorKind::UnknownReference, path + ":" + std::to_string(b.line) + ":" +
                                                     std::to_string(b.column) + ": unknown " + what + " '" + name + "'");
    }

    const toml::node& need(const toml::table& t, const std::string& key) const {
        const toml::node* n = t.get(key);
        if (!n) fail(t, "missing key '" + key + "'");
        return *n;
    }

    std::string str(const toml::node& n) const {
        if (auto v = n.value<std::string>()) return *v;
        fail(n, "expected a string");
    }
    std::string str(const toml::table& t, const std::string& key) const { return str(need(t, key)); }
    std::string str_or(const toml::table& t, const std::string& key, const std::string& dflt) const {
        return t.get(key) ? str(*t.get(key)) : dflt;
    }

    long integer(const toml::node& n) const {
        if (auto v = n.value<std::int64_t>()) return static_cast<long>(*v);
        fail(n, "expected an integer");
    }
    long integer(const toml::table& t, const std::string& key) const { return integer(need(t, key)); }
    std::size_t count(const toml::table& t, const std::string& key) const {
        long v = integer(t, key);
        if (v < 0) fail(need(t, key), "expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    Q rational(const toml::node& n) const {
        try {
            if (auto v = n.value<std::int64_t>()) return Q(static_cast<long>(*v));
            if (auto v = n.value<std::string>()) return parse_rational(*v);
        } catch (const std::exception& e) {
            fail(n, e.what());
        }
        fail(n, "expected a rational as \"a/b\" or an integer");
    }

    NormValue norm_value(const toml::node& n, const ValuedField& f) const {
        try {
            if (auto v = n.value<std::int64_t>()) return f.parse(std::to_string(*v));
            if (auto v = n.value<std::string>()) return f.parse(*v);
        } catch (const std::exception& e) {
            fail(n, e.what());
        }
        fail(n, "expected a norm value");
    }

    const toml::array& array(const toml::node& n) const {
        if (const auto* a = n.as_array()) return *a;
        fail(n, "expected an array");
    }
    const toml::table& table(const toml::node& n) const {
        if (const auto* t = n.as_table()) return *t;
        fail(n, "expected a table");
    }

    Vec vec(const toml::node& n) const {
        Vec out;
        for (const auto& x : array(n)) out.push_back(rational(x));
        return out;
    }
    std::vector<std::string> strings(const toml::node& n) const {
        std::vector<std::string> out;
        for (const auto& x : array(n)) out.push_back(str(x));
        return out;
    }
    Matrix rows(const toml::node& n, std::size_t cols_hint = 0) const {
        std::vector<Vec> r;
        for (const auto& x : array(n)) r.push_back(vec(x));
        std::size_t cols = r.empty() ? cols_hint : r[0].size();
        for (const auto& x : r)
            if (x.size() != cols) fail(n, "ragged matrix rows");
        return Matrix::from_rows(r, cols);
    }

    template <class M>
    const typename M::mapped_type& lookup(const M& m, const toml::node& n, const std::string& what) const {
        std::string name = str(n);
        auto it = m.find(name);
        if (it == m.end()) unknown(n, what, name);
        return it->second;
    }

    ValuedField field_block(const toml::table& t) const {
        std::string backend = str_or(t, "backend", "archimedean");
        if (backend == "archimedean") return ValuedField::archimedean();
        if (backend == "padic") {
            long p = integer(t, "prime");
            if (p < 2 || !is_prime(static_cast<unsigned long>(p))) fail(need(t, "prime"), "prime expected");
            return ValuedField::padic(static_cast<unsigned long>(p));
        }
        fail(need(t, "backend"), "backend must be archimedean or padic");
    }

    SpacePtr space(const toml::table& t) const {
        std::vector<NormValue> w;
        for (const auto& x : array(need(t, "weights"))) w.push_back(norm_value(x, s.field));
        std::vector<std::string> labels;
        if (t.get("labels"))
            labels = strings(*t.get("labels"));
        else
            for (std::size_t i = 0; i < w.size(); ++i) labels.push_back("e" + std::to_string(i));
        if (labels.size() != w.size()) fail(t, "labels and weights differ in length");
        std::string flavor = str_or(t, "flavor", s.field.archimedean_backend() ? "sum" : "max");
        Flavor f;
        if (flavor == "sum")
            f = Flavor::Sum;
        else if (flavor == "max")
            f = Flavor::Max;
        else
            fail(need(t, "flavor"), "flavor must be sum or max");
        try {
            return share(DiagSpace::flat(s.field, labels, w, f));
        } catch (const Error& e) {
            fail(t, e.what());
        }
    }

    FiniteGroup group(const toml::table& t) const {
        std::string kind = str(t, "kind");
        auto order = [&]() {
            long n = integer(t, "n");
            if (n < 1) fail(need(t, "n"), "order must be positive");
            return static_cast<std::size_t>(n);
        };
        try {
            if (kind == "trivial") return FiniteGroup::trivial();
            if (kind == "cyclic") return FiniteGroup::cyclic(order());
            if (kind == "dihedral") return FiniteGroup::dihedral(order());
            if (kind == "quaternion") return FiniteGroup::quaternion();
            if (kind == "symmetric3") return FiniteGroup::symmetric3();
            if (kind == "product") {
                const auto& fs = array(need(t, "factors"));
                if (fs.empty()) fail(t, "product needs factors");
                FiniteGroup g = lookup(s.groups, fs[0], "group");
                for (std::size_t i = 1; i < fs.size(); ++i) g = FiniteGroup::direct_product(g, lookup(s.groups, fs[i], "group"));
                return g;
            }
            if (kind == "table") {
                std::vector<std::vector<std::size_t>> tab;
                for (const auto& r : array(need(t, "table"))) {
                    std::vector<std::size_t> row;
                    for (const auto& x : array(r)) row.push_back(static_cast<std::size_t>(integer(x)));
                    tab.push_back(row);
                }
                return FiniteGroup::from_table(str_or(t, "name", "G"), tab);
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownReference) throw;
            fail(t, e.what());
        }
        fail(need(t, "kind"), "unknown group kind '" + kind + "'");
    }

    IndObject chain(const toml::table& t) const {
        std::string kind = str_or(t, "kind", "explicit");
        try {
            if (kind == "scaled") {
                SpacePtr sp = lookup(s.spaces, need(t, "space"), "space");
                Q factor = rational(need(t, "factor"));
                std::size_t len = count(t, "length");
                std::vector<SpacePtr> st(len + 1, sp);
                std::vector<Matrix> tr(len, factor * Matrix::identity(sp->dim()));
                return IndObject::chain(st, tr);
            }
            if (kind == "explicit") {
                std::vector<SpacePtr> st;
                for (const auto& x : array(need(t, "spaces"))) st.push_back(lookup(s.spaces, x, "space"));
                std::vector<Matrix> tr;
                for (const auto& x : array(need(t, "transitions"))) {
                    if (x.is_string()) {
                        tr.push_back(lookup(s.maps, x, "map").matrix());
                    } else {
                        std::size_t i = tr.size();
                        tr.push_back(rows(x, i < st.size() ? st[i]->dim() : 0));
                    }
                }
                return IndObject::chain(st, tr);
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownReference) throw;
            fail(t, e.what());
        }
        fail(need(t, "kind"), "chain kind must be explicit or scaled");
    }

    GradedSpace graded(const toml::table& t) const {
        GradedSpace g;
        g.field = s.field;
        g.window = integer(t, "window");
        for (const auto& x : array(need(t, "summands"))) {
            const auto& st = table(x);
            g.summands.push_back({integer(st, "degree"), lookup(s.spaces, need(st, "space"), "space")});
        }
        std::sort(g.summands.begin(), g.summands.end(),
                  [](const auto& a, const auto& b) { return a.degree < b.degree; });
        return g;
    }

    Representation rep(const toml::table& t) const {
        Representation r{lookup(s.groups, need(t, "group"), "group"), nullptr, {}};
        std::string kind = str_or(t, "kind", "matrices");
        if (kind == "regular") {
            std::vector<std::string> labels;
            for (const auto& n : r.group.element_names()) labels.push_back("e_" + n);
            r.space = t.get("space") ? lookup(s.spaces, need(t, "space"), "space")
                                     : share(DiagSpace::flat(s.field, labels,
                                                             std::vector<NormValue>(r.group.order(), s.field.one()),
                                                             Flavor::Max));
            std::size_t n = r.group.order();
            if (r.space->dim() != n) fail(t, "regular representation needs a space of dimension |G|");
            for (std::size_t g = 0; g < n; ++g) {
                Matrix m(n, n);
                for (std::size_t h = 0; h < n; ++h) m.set(r.group.mul(g, h), h, Q(1));
                r.matrices.push_back(m);
            }
            return r;
        }
        r.space = lookup(s.spaces, need(t, "space"), "space");
        if (kind == "trivial") {
            r.matrices.assign(r.group.order(), Matrix::identity(r.space->dim()));
            return r;
        }
        if (kind != "matrices") fail(need(t, "kind"), "representation kind must be matrices, regular or trivial");
        for (const auto& x : array(need(t, "matrices"))) r.matrices.push_back(rows(x, r.space->dim()));
        if (r.matrices.size() != r.group.order()) fail(t, "one matrix per group element required");
        return r;
    }

    ExtPtr extension(const toml::table& t) const {
        ValuedField f = t.get("backend") ? field_block(t) : s.field;
        Poly minpoly = vec(need(t, "minpoly"));
        std::vector<Vec> gens;
        for (const auto& x : array(need(t, "galois_generators"))) gens.push_back(vec(x));
        try {
            return std::make_shared<const FieldExtension>(FieldExtension::build(f, minpoly, gens));
        } catch (const Error& e) {
            fail(t, e.what());
        }
    }

    void apply_fault(BialgebraData& b, const toml::table& t) const {
        std::string which = str(t, "structure");
        auto entry = [&](Matrix& m) {
            std::size_t r = count(t, "row"), c = count(t, "col");
            if (r >= m.rows() || c >= m.cols()) fail(t, "fault entry outside the matrix");
            m.set(r, c, rational(need(t, "value")));
        };
        auto component = [&](Vec& v) {
            std::size_t i = count(t, "index");
            if (i >= v.size()) fail(t, "fault index outside the vector");
            v[i] = rational(need(t, "value"));
        };
        if (which == "mult")
            entry(b.algebra.mult);
        else if (which == "comult")
            entry(b.coalgebra.comult);
        else if (which == "unit")
            component(b.algebra.unit);
        else if (which == "counit")
            component(b.coalgebra.counit);
        else
            fail(need(t, "structure"), "fault structure must be mult, comult, unit or counit");
        b.name += " (fault: " + which + ")";
        b.notes.push_back("fault injected into " + which);
    }

    void bialgebra(const std::string& name, const toml::table& t) {
        std::string kind = str(t, "kind");
        try {
            if (kind == "window") {
                long n = integer(t, "n");
                s.coalgebras.emplace(name, grading_window_coalgebra(n, s.field));
                return;
            }
            if (kind == "tate") {
                std::size_t nv = t.get("nvars") ? count(t, "nvars") : 1;
                auto rep = tate_coalgebra(nv, static_cast<unsigned>(count(t, "degree")), rational(need(t, "radius")), s.field);
                s.coalgebras.emplace(name, rep.coalgebra);
                return;
            }
            BialgebraData b;
            if (kind == "group") {
                std::string counit = str_or(t, "counit", "grouplike");
                if (counit != "grouplike" && counit != "delta") fail(need(t, "counit"), "counit must be grouplike or delta");
                b = group_bialgebra(lookup(s.groups, need(t, "group"), "group"), s.field,
                                    counit == "delta" ? CounitConvention::Delta : CounitConvention::GroupLike);
            } else if (kind == "grading") {
                b = grading_bialgebra(lookup(s.groups, need(t, "group"), "group"), s.field);
            } else if (kind == "functions") {
                b = function_bialgebra(lookup(s.groups, need(t, "group"), "group"), s.field);
            } else if (kind == "window_group") {
                b = grading_window_bialgebra(integer(t, "n"), s.field);
            } else {
                fail(need(t, "kind"), "unknown bialgebra kind '" + kind + "'");
            }
            if (const auto* f = t.get("fault")) apply_fault(b, table(*f));
            s.coalgebras.emplace(name, b.coalgebra);
            s.bialgebras.emplace(name, std::move(b));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownReference) throw;
            // constructions that are non-examples are reported by the checks that use them
            s.deferred_errors.emplace(name, e.what());
        }
    }
};

json to_json(const toml::node& n) {
    if (const auto* t = n.as_table()) {
        json o = json::object();
        for (auto&& [k, v] : *t) o[std::string(k.str())] = to_json(v);
        return o;
    }
    if (const auto* a = n.as_array()) {
        json o = json::array();
        for (const auto& x : *a) o.push_back(to_json(x));
        return o;
    }
    if (auto v = n.value_exact<std::string>()) return *v;
    if (auto v = n.value_exact<std::int64_t>()) return *v;
    if (auto v = n.value_exact<double>()) return *v;
    if (auto v = n.value_exact<bool>()) return *v;
    return nullptr;
}

struct KindSchema {
    const char* kind;
    std::vector<const char*> required;
};

// check keys naming earlier constructions: (kind, key, section)
struct RefRule {
    const char* kind;
    const char* key;
    const char* section;
};

const std::vector<RefRule>& ref_rules() {
    static const std::vector<RefRule> r = {
        {"adjunction", "rep", "reps"},         {"adjunction", "space", "spaces"},
        {"bialgebra", "target", "bialgebras"}, {"coalgebra", "target", "coalgebras"},
        {"colimit_seminorm", "chain", "chains"}, {"descent", "extension", "extensions"},
        {"dualize", "source", "bialgebras"},   {"duality", "a", "bialgebras"},
        {"duality", "b", "bialgebras"},        {"graded_roundtrip", "graded", "graded"},
        {"monoidal", "a", "graded"},           {"monoidal", "b", "graded"},
        {"opnorm", "map", "maps"},             {"rep_module", "rep", "reps"},
        {"submultiplicative", "extension", "extensions"}, {"tensor", "a", "spaces"},
        {"tensor", "b", "spaces"},             {"universal_property", "family", "spaces"},
        {"universal_property", "maps", "maps"},
    };
    return r;
}

bool defined(const Scenario& s, const std::string& section, const std::string& name) {
    if (section == "spaces") return s.spaces.count(name);
    if (section == "maps") return s.maps.count(name);
    if (section == "chains") return s.chains.count(name);
    if (section == "graded") return s.graded.count(name);
    if (section == "reps") return s.reps.count(name);
    if (section == "extensions") return s.extensions.count(name);
    // failed constructions still count as defined; their checks report the error
    if (section == "bialgebras") return s.bialgebras.count(name) || s.deferred_errors.count(name);
    if (section == "coalgebras") return s.coalgebras.count(name) || s.deferred_errors.count(name);
    return false;
}

const std::vector<KindSchema>& schemas() {
    static const std::vector<KindSchema> s = {
        {"adjunction", {"rep", "space"}},
        {"bialgebra", {"target"}},
        {"coalgebra", {"target"}},
        {"colimit_seminorm", {"chain", "stage", "vector"}},
        {"delta_swap", {"n"}},
        {"descent", {"extension"}},
        {"dagger", {"degree", "schedule"}},
        {"dualize", {"source"}},
        {"duality", {"a", "b"}},
        {"graded_roundtrip", {"graded"}},
        {"locally_constant", {"p", "depth", "osc", "eps"}},
        {"monoidal", {"a", "b"}},
        {"opnorm", {"map"}},
        {"random_universal", {"count"}},
        {"rep_module", {"rep"}},
        {"submultiplicative", {"extension"}},
        {"tate", {"degree", "radius"}},
        {"tensor", {"a", "b"}},
        {"tower", {"p", "levels"}},
        {"universal_property", {"side", "family", "maps", "bound"}},
    };
    return s;
}

} // namespace

const std::vector<std::string>& check_kinds() {
    static const std::vector<std::string> k = [] {
        std::vector<std::string> out;
        for (const auto& s : schemas()) out.push_back(s.kind);
        std::sort(out.begin(), out.end());
        return out;
    }();
    return k;
}

Scenario load_scenario(const std::string& path) {
    toml::table doc;
    try {
        doc = toml::parse_file(path);
    } catch (const toml::parse_error& e) {
        const auto& b = e.source().begin;
        throw Error(ErrorKind::ParseError, path + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " +
                                               std::string(e.description()));
    }
    Scenario s;
    s.path = path;
    Loader ld{path, s};
    s.name = ld.str_or(doc, "name", path);
    if (doc.get("seed")) s.seed = static_cast<std::uint64_t>(ld.integer(doc, "seed"));
    if (doc.get("precision")) s.precision = static_cast<unsigned>(ld.count(doc, "precision"));
    if (const auto* f = doc.get("field")) s.field = ld.field_block(ld.table(*f));

    // Definitions from every section are resolved together in source order, so a reference
    // to anything defined later in the file is unknown at the point of use.
    struct Entry {
        toml::source_position at;
        std::string section, name;
        const toml::table* body;
    };
    std::vector<Entry> entries;
    for (const char* key : {"spaces", "maps", "groups", "chains", "graded", "reps", "extensions", "bialgebras"}) {
        const auto* n = doc.get(key);
        if (!n) continue;
        for (auto&& [k, v] : ld.table(*n)) entries.push_back({v.source().begin, key, std::string(k.str()), &ld.table(v)});
    }
    auto before = [](const toml::source_position& x, const toml::source_position& y) {
        return std::pair(x.line, x.column) < std::pair(y.line, y.column);
    };
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) { return before(a.at, b.at); });
    std::map<std::string, toml::source_position> defined_at;
    for (const auto& e : entries) {
        const toml::table& t = *e.body;
        if (e.section == "spaces") {
            s.spaces.emplace(e.name, ld.space(t));
        } else if (e.section == "maps") {
            SpacePtr from = ld.lookup(s.spaces, ld.need(t, "from"), "space");
            SpacePtr to = ld.lookup(s.spaces, ld.need(t, "to"), "space");
            Matrix m = ld.rows(ld.need(t, "rows"), from->dim());
            if (m.rows() != to->dim() || m.cols() != from->dim()) ld.fail(t, "map shape does not match its spaces");
            s.maps.emplace(e.name, BoundedMap(from, to, m));
        } else if (e.section == "groups") {
            s.groups.emplace(e.name, ld.group(t));
        } else if (e.section == "chains") {
            s.chains.emplace(e.name, ld.chain(t));
        } else if (e.section == "graded") {
            s.graded.emplace(e.name, ld.graded(t));
        } else if (e.section == "reps") {
            s.reps.emplace(e.name, ld.rep(t));
        } else if (e.section == "extensions") {
            s.extensions.emplace(e.name, ld.extension(t));
        } else {
            ld.bialgebra(e.name, t);
        }
        defined_at[(e.section == "bialgebras" ? "coalgebras" : e.section) + "/" + e.name] = e.at;
        if (e.section == "bialgebras") defined_at["bialgebras/" + e.name] = e.at;
    }

    std::set<std::string> names;
    if (const auto* n = doc.get("checks")) {
        for (const auto& x : ld.array(*n)) {
            const auto& t = ld.table(x);
            CheckSpec c;
            c.name = ld.str(t, "name");
            c.kind = ld.str(t, "kind");
            c.line = x.source().begin.line;
            c.column = x.source().begin.column;
            auto it = std::find_if(schemas().begin(), schemas().end(),
                                   [&](const KindSchema& k) { return c.kind == k.kind; });
            if (it == schemas().end())
                throw Error(ErrorKind::UnknownCheck, path + ":" + std::to_string(c.line) + ":" +
                                                         std::to_string(c.column) + ": unknown check kind '" + c.kind + "'");
            for (const char* req : it->required) ld.need(t, req);
            for (const auto& rule : ref_rules()) {
                if (c.kind != rule.kind || !t.get(rule.key)) continue;
                const toml::node& v = *t.get(rule.key);
                std::vector<const toml::node*> names;
                if (const auto* a = v.as_array())
                    for (const auto& x : *a) names.push_back(&x);
                else
                    names.push_back(&v);
                for (const auto* nm : names) {
                    std::string ref = ld.str(*nm);
                    auto at = defined_at.find(std::string(rule.section) + "/" + ref);
                    if (!defined(s, rule.section, ref) || at == defined_at.end() || !before(at->second, nm->source().begin))
                        ld.unknown(*nm, rule.section, ref);
                }
            }
            if (!names.insert(c.name).second) ld.fail(t, "duplicate check name '" + c.name + "'");
            c.params = to_json(t);
            s.checks.push_back(std::move(c));
        }
    }
    return s;
}

// ---------------------------------------------------------------- running

namespace {

struct CheckFailure {
    std::string message;
};

struct Params {
    const CheckSpec& spec;

    [[noreturn]] void bad(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, "check '" + spec.name + "' (line " + std::to_string(spec.line) + "): " + msg);
    }
    const json& at(const std::string& key) const {
        auto it = spec.params.find(key);
        if (it == spec.params.end()) bad("missing key '" + key + "'");
        return *it;
    }
    bool has(const std::string& key) const { return spec.params.contains(key); }
    std::string str(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_string()) bad("'" + key + "' must be a string");
        return v.get<std::string>();
    }
    std::string str_or(const std::string& key, const std::string& dflt) const { return has(key) ? str(key) : dflt; }
    long integer(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
        return v.get<long>();
    }
    std::size_t count(const std::string& key) const {
        long v = integer(key);
        if (v < 0) bad("'" + key + "' must be non-negative");
        return static_cast<std::size_t>(v);
    }
    bool flag(const std::string& key, bool dflt) const {
        if (!has(key)) return dflt;
        if (!at(key).is_boolean()) bad("'" + key + "' must be a boolean");
        return at(key).get<bool>();
    }
    static Q to_q(const json& v) {
        if (v.is_number_integer()) return Q(v.get<long>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
        throw Error(ErrorKind::ParseError, "expected a rational");
    }
    Q rational(const std::string& key) const {
        try {
            return to_q(at(key));
        } catch (const std::exception&) {
            bad("'" + key + "' must be a rational");
        }
    }
    Vec vec(const json& v) const {
        if (!v.is_array()) bad("expected an array of rationals");
        Vec out;
        for (const auto& x : v) out.push_back(to_q(x));
        return out;
    }
    Matrix rows(const json& v, std::size_t cols_hint) const {
        if (!v.is_array()) bad("expected a list of rows");
        std::vector<Vec> r;
        for (const auto& x : v) r.push_back(vec(x));
        return Matrix::from_rows(r, r.empty() ? cols_hint : r[0].size());
    }
    std::vector<std::string> strings(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_array()) bad("'" + key + "' must be a list");
        std::vector<std::string> out;
        for (const auto& x : v) {
            if (!x.is_string()) bad("'" + key + "' must list names");
            out.push_back(x.get<std::string>());
        }
        return out;
    }
    NormValue norm_value(const json& v, const ValuedField& f) const {
        if (v.is_number_integer()) return f.parse(std::to_string(v.get<long>()));
        if (v.is_string()) return f.parse(v.get<std::string>());
        bad("expected a norm value");
    }
    template <class M>
    const typename M::mapped_type& ref(const M& m, const std::string& key, const std::string& what) const {
        return ref_named(m, str(key), what);
    }
    template <class M>
    const typename M::mapped_type& ref_named(const M& m, const std::string& name, const std::string& what) const {
        auto it = m.find(name);
        if (it == m.end()) throw Error(ErrorKind::UnknownReference, "check '" + spec.name + "': unknown " + what + " '" + name + "'");
        return it->second;
    }
};

NormRecord norm_record(const std::string& map, const OperatorNorm& n) { return {map, n.value, n.exact, n.method}; }

std::string vec_str(const Vec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_rational(v[i]);
    return out + "]";
}

ojson axioms_json(const std::vector<AxiomResult>& ax) {
    ojson out = ojson::array();
    for (const auto& a : ax) {
        ojson o;
        o["name"] = a.name;
        o["pass"] = a.pass;
        if (!a.pass) o["witness"] = a.witness;
        out.push_back(o);
    }
    return out;
}

std::string first_failure(const std::vector<AxiomResult>& ax, const std::string& prefix = "") {
    for (const auto& a : ax)
        if (!a.pass) return prefix + a.name + (a.witness.empty() ? "" : " at " + a.witness);
    return "";
}

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Runner {
    const Scenario& s;
    std::uint64_t seed;

    void fill(const CheckSpec& spec, CheckRecord& rec) {
        Params p{spec};
        std::mt19937_64 rng(seed ^ name_hash(spec.name));
        const std::string& k = spec.kind;
        bool pass = true;
        auto require = [&](bool ok, const std::string& witness) {
            if (!ok && pass) {
                pass = false;
                rec.witness = witness;
            }
        };

        if (k == "opnorm") {
            const BoundedMap& m = p.ref(s.maps, "map", "map");
            rec.norms.push_back(norm_record(p.str("map"), m.opnorm()));
            rec.details["method"] = m.opnorm().method;
            if (m.opnorm().witness) rec.details["witness_vector"] = vec_str(*m.opnorm().witness);
            if (p.has("expect")) {
                NormValue e = p.norm_value(p.at("expect"), m.domain()->field());
                rec.details["expect"] = e.str();
                require(m.norm().lower <= e && e <= m.norm().upper, "norm " + m.norm().str() + " differs from " + e.str());
                require(!m.opnorm().exact || compare(m.norm().upper, e) == 0, "norm " + m.norm().str() + " differs from " + e.str());
            }
        } else if (k == "universal_property") {
            std::string side = p.str("side");
            std::vector<SpacePtr> fam;
            for (const auto& n : p.strings("family")) fam.push_back(p.ref_named(s.spaces, n, "space"));
            std::vector<BoundedMap> maps;
            for (const auto& n : p.strings("maps")) maps.push_back(p.ref_named(s.maps, n, "map"));
            NormValue bound = p.norm_value(p.at("bound"), s.field);
            if (side == "product") {
                auto prod = contracting_product(fam);
                BoundedMap a = assemble_into_product(maps, bound);
                for (std::size_t i = 0; i < maps.size(); ++i)
                    require(prod.projections[i] * a.matrix() == maps[i].matrix(), "projection " + std::to_string(i) + " differs");
                rec.norms.push_back(norm_record("assembled", a.opnorm()));
            } else if (side == "coproduct") {
                auto cop = contracting_coproduct(fam);
                BoundedMap a = assemble_from_coproduct(maps, bound);
                for (std::size_t i = 0; i < maps.size(); ++i)
                    require(a.matrix() * cop.injections[i] == maps[i].matrix(), "injection " + std::to_string(i) + " differs");
                rec.norms.push_back(norm_record("assembled", a.opnorm()));
            } else {
                p.bad("side must be product or coproduct");
            }
            require(rec.norms.back().value.upper <= bound, "assembled norm exceeds the bound");
        } else if (k == "random_universal") {
            random_universal(p, rng, rec, require);
        } else if (k == "delta_swap") {
            auto r = delta_swap(p.count("n"));
            rec.details["preimage_norm"] = r.preimage_norm.str();
            rec.details["image_norm"] = r.image_norm.str();
            rec.details["kernel_dim"] = r.kernel_dim;
            if (p.has("expect")) {
                NormValue e = p.norm_value(p.at("expect"), ValuedField::archimedean());
                require(compare(r.preimage_norm, e) == 0, "preimage norm " + r.preimage_norm.str() + " differs from " + e.str());
            }
        } else if (k == "colimit_seminorm") {
            const IndObject& ch = p.ref(s.chains, "chain", "chain");
            auto col = contracting_colimit(ch);
            auto v = col.seminorm(p.count("stage"), p.vec(p.at("vector")));
            rec.details["seminorm"] = v.str();
            rec.details["degenerate"] = col.degenerate;
            rec.norms.push_back({"seminorm", v, v.exact(), "minimum over later stages"});
            if (p.has("expect")) {
                NormValue e = p.norm_value(p.at("expect"), ch.stage(0)->field());
                require(v.exact() && compare(v.upper, e) == 0, "seminorm " + v.str() + " differs from " + e.str());
            }
        } else if (k == "bialgebra" || k == "coalgebra") {
            std::string target = p.str("target");
            if (auto it = s.deferred_errors.find(target); it != s.deferred_errors.end())
                throw Error(kind_of(it->second), message_of(it->second));
            StructureReport r = k == "bialgebra" ? check_bialgebra(p.ref(s.bialgebras, "target", "bialgebra"))
                                                 : check_coalgebra(p.ref(s.coalgebras, "target", "coalgebra"));
            rec.details["axioms"] = axioms_json(r.axioms);
            if (k == "bialgebra") rec.details["notes"] = p.ref(s.bialgebras, "target", "bialgebra").notes;
            for (const auto& n : r.norms) rec.norms.push_back(norm_record(n.map, n.norm));
            require(r.all_pass(), first_failure(r.axioms));
            if (p.flag("norms_exactly_one", false)) require(r.norms_exactly_one(), "a structure map norm differs from 1");
        } else if (k == "duality") {
            const auto& a = p.ref(s.bialgebras, "a", "bialgebra");
            const auto& b = p.ref(s.bialgebras, "b", "bialgebra");
            Matrix P = p.has("pairing") ? p.rows(p.at("pairing"), b.algebra.carrier->dim())
                                        : Matrix::identity(a.algebra.carrier->dim());
            auto r = check_duality(a, b, P);
            rec.details["axioms"] = axioms_json(r.axioms);
            require(r.all_pass(), first_failure(r.axioms));
        } else if (k == "dualize") {
            const auto& a = p.ref(s.bialgebras, "source", "bialgebra");
            Matrix P = p.has("pairing") ? p.rows(p.at("pairing"), a.algebra.carrier->dim())
                                        : Matrix::identity(a.algebra.carrier->dim());
            BialgebraData d = dualize(a, P);
            auto r = check_bialgebra(d);
            auto du = check_duality(a, d, P);
            rec.details["dual_carrier"] = d.algebra.carrier->describe();
            rec.details["notes"] = d.notes;
            rec.details["axioms"] = axioms_json(r.axioms);
            for (const auto& n : r.norms) rec.norms.push_back(norm_record("dual " + n.map, n.norm));
            require(r.all_pass(), first_failure(r.axioms, "dual: "));
            require(du.all_pass(), first_failure(du.axioms, "pairing: "));
        } else if (k == "tate") {
            std::size_t nv = p.has("nvars") ? p.count("nvars") : 1;
            auto r = tate_coalgebra(nv, static_cast<unsigned>(p.count("degree")), p.rational("radius"), s.field);
            rec.norms.push_back({"counit", r.counit_norm, r.counit_norm.exact(), ""});
            rec.norms.push_back({"comult", r.comult_norm, r.comult_norm.exact(), ""});
            rec.norms.push_back({"squared comult", r.squared_comult_norm, r.squared_comult_norm.exact(), ""});
            rec.details["counit_bounded"] = r.counit_bounded;
            rec.details["comult_bounded"] = r.comult_bounded;
            if (p.has("expect_counit_bounded"))
                require(r.counit_bounded == p.flag("expect_counit_bounded", false), "counit boundedness differs");
            if (p.has("expect_comult_bounded"))
                require(r.comult_bounded == p.flag("expect_comult_bounded", false), "comult boundedness differs");
            if (p.flag("expect_squared_one", false))
                require(r.squared_comult_norm.exact() && r.squared_comult_norm.upper.is_one(), "squared comult norm is not 1");
        } else if (k == "dagger") {
            std::size_t nv = p.has("nvars") ? p.count("nvars") : 1;
            Vec sched = p.vec(p.at("schedule"));
            std::string target = p.str_or("target", "one");
            if (target != "one" && target != "zero") p.bad("target must be one or zero");
            auto d = dagger_chain(nv, static_cast<unsigned>(p.count("degree")), sched,
                                  target == "one" ? DaggerChain::Target::One : DaggerChain::Target::Zero, s.field);
            rec.details["stages"] = d.stages.size();
            for (const auto& c : d.comults) {
                std::string nm = "comult " + std::to_string(c.from) + "->" + std::to_string(c.to);
                rec.norms.push_back(norm_record(nm, c.map.opnorm()));
                require(c.map.norm().upper <= s.field.one(), nm + " is not contracting");
            }
        } else if (k == "graded_roundtrip") {
            const auto& g = p.ref(s.graded, "graded", "graded space");
            auto c = graded_to_comodule(g);
            auto r = check_comodule(c);
            rec.details["axioms"] = axioms_json(r.axioms);
            require(r.all_pass(), first_failure(r.axioms));
            auto back = comodule_to_graded(c);
            require(same_graded(g, back), "round trip changes the grading");
            for (const auto& n : r.norms) rec.norms.push_back(norm_record(n.map, n.norm));
        } else if (k == "monoidal") {
            auto m = check_monoidal(p.ref(s.graded, "a", "graded space"), p.ref(s.graded, "b", "graded space"));
            rec.details["overflow_skipped"] = m.overflow_skipped;
            require(m.pass || m.overflow_skipped, m.witness);
        } else if (k == "rep_module") {
            const auto& r = p.ref(s.reps, "rep", "representation");
            check_homomorphism(r.group, r.matrices);
            auto mod = rep_to_module(r.group, r.space, r.matrices);
            auto sr = check_module(mod);
            rec.details["axioms"] = axioms_json(sr.axioms);
            require(sr.all_pass(), first_failure(sr.axioms));
            auto back = module_to_rep(r.group, mod);
            bool same = back.size() == r.matrices.size();
            for (std::size_t i = 0; same && i < back.size(); ++i) same = back[i] == r.matrices[i];
            require(same, "module to representation round trip differs");
            auto rr = rep_report(r.space, r.matrices, r.group);
            rec.norms.push_back({"sup over group", rr.sup_norm, rr.sup_norm.exact(), ""});
            rec.details["isometric"] = rr.isometric;
            if (p.has("expect_isometric")) require(rr.isometric == p.flag("expect_isometric", true), "isometry differs");
        } else if (k == "adjunction") {
            const auto& r = p.ref(s.reps, "rep", "representation");
            auto a = finite_adjunction_check(r.group, r.space, r.matrices, p.ref(s.spaces, "space", "space"));
            rec.details["free"] = {a.free_side_dim, a.forgetful_side_dim, a.bijection_free, a.isometric_free};
            rec.details["cofree"] = {a.cofree_side_dim, a.forgetful2_side_dim, a.bijection_cofree, a.isometric_cofree};
            require(a.bijection_free, "free adjunction is not a bijection");
            require(a.bijection_cofree, "cofree adjunction is not a bijection");
            require(a.isometric_free, "free adjunction is not isometric");
            require(a.isometric_cofree, "cofree adjunction is not isometric");
        } else if (k == "tensor") {
            auto t = tensor(p.ref(s.spaces, "a", "space"), p.ref(s.spaces, "b", "space"));
            rec.details["flavor"] = to_string(t.space->flavor());
            rec.details["exact"] = t.exact();
            rec.details["norm"] = t.space->describe();
            if (p.has("expect_exact")) require(t.exact() == p.flag("expect_exact", true), "exactness differs");
        } else if (k == "submultiplicative") {
            const auto& e = *p.ref(s.extensions, "extension", "extension");
            auto r = check_submultiplicative(e);
            rec.details["holds"] = r.holds;
            rec.details["worst_ratio"] = r.worst_ratio.str();
            rec.details["worst_pair"] = e.labels()[r.worst_i] + " * " + e.labels()[r.worst_j];
            rec.details["norm"] = e.norm_description();
            require(r.holds == p.flag("expect_holds", true), "submultiplicativity differs from expectation");
        } else if (k == "descent") {
            descent(p, rec, require);
        } else if (k == "tower") {
            auto t = iwasawa_tower(static_cast<unsigned long>(p.count("p")), p.count("levels"));
            rec.details["perfect"] = t.perfect;
            rec.details["functorial"] = t.functorial;
            require(t.perfect, "pairing not perfect at some level");
            require(t.functorial, "dual of restriction differs from the transition");
        } else if (k == "locally_constant") {
            locally_constant(p, rec, require);
        } else {
            throw Error(ErrorKind::UnknownCheck, spec.kind);
        }
        rec.status = pass ? "pass" : "fail";
    }

    static ErrorKind kind_of(const std::string& what) {
        for (int k = 0; k <= static_cast<int>(ErrorKind::InvalidArgument); ++k) {
            std::string name = to_string(static_cast<ErrorKind>(k));
            if (what.rfind(name + ": ", 0) == 0) return static_cast<ErrorKind>(k);
        }
        return ErrorKind::InvalidArgument;
    }
    static std::string message_of(const std::string& what) {
        auto pos = what.find(": ");
        return pos == std::string::npos ? what : what.substr(pos + 2);
    }

    template <class Require>
    void random_universal(const Params& p, std::mt19937_64& rng, CheckRecord& rec, Require& require) {
        std::size_t n = p.count("count");
        std::size_t max_spaces = p.has("max_spaces") ? p.count("max_spaces") : 5;
        std::size_t max_dim = p.has("max_dim") ? p.count("max_dim") : 4;
        std::uniform_int_distribution<int> coin(0, 1), entry(-3, 3), wnum(1, 4);
        auto rand_space = [&](const ValuedField& f, std::size_t d) {
            std::vector<NormValue> w;
            for (std::size_t i = 0; i < d; ++i) {
                if (!f.archimedean_backend()) {
                    w.push_back(NormValue::padic_power(f.prime(), Q(entry(rng))));
                    continue;
                }
                int num = wnum(rng);
                Q q(num, wnum(rng));
                w.push_back(f.weight(q));
            }
            Flavor fl = !f.archimedean_backend() ? Flavor::Max : (coin(rng) ? Flavor::Sum : Flavor::Max);
            std::vector<std::string> l;
            for (std::size_t i = 0; i < d; ++i) l.push_back("e" + std::to_string(i));
            return share(DiagSpace::flat(f, l, w, fl));
        };
        auto rand_map = [&](const SpacePtr& a, const SpacePtr& b) {
            Matrix m(b->dim(), a->dim());
            for (std::size_t i = 0; i < b->dim(); ++i)
                for (std::size_t j = 0; j < a->dim(); ++j) {
                    int x = entry(rng);
                    if (x) m.set(i, j, Q(x));
                }
            return BoundedMap(a, b, m);
        };
        std::uniform_int_distribution<std::size_t> nsp(1, max_spaces), dim(1, max_dim);
        std::size_t done = 0;
        for (std::size_t t = 0; t < n; ++t) {
            ValuedField f = coin(rng) ? ValuedField::archimedean() : ValuedField::padic(coin(rng) ? 3 : 5);
            std::size_t k = nsp(rng);
            std::vector<SpacePtr> fam;
            for (std::size_t i = 0; i < k; ++i) fam.push_back(rand_space(f, dim(rng)));
            SpacePtr u = rand_space(f, dim(rng));
            std::vector<BoundedMap> into, outof;
            NormValue bound_in = f.zero(), bound_out = f.zero();
            for (const auto& v : fam) {
                into.push_back(rand_map(u, v));
                outof.push_back(rand_map(v, u));
                bound_in = max(bound_in, into.back().norm().upper);
                bound_out = max(bound_out, outof.back().norm().upper);
            }
            auto prod = contracting_product(fam);
            auto cop = contracting_coproduct(fam);
            BoundedMap a = assemble_into_product(into, bound_in);
            BoundedMap b = assemble_from_coproduct(outof, bound_out);
            for (std::size_t i = 0; i < k; ++i) {
                require(prod.projections[i] * a.matrix() == into[i].matrix(), "product round trip fails in family " + std::to_string(t));
                require(b.matrix() * cop.injections[i] == outof[i].matrix(), "coproduct round trip fails in family " + std::to_string(t));
            }
            require(a.norm().upper <= bound_in, "assembled product norm exceeds the bound in family " + std::to_string(t));
            require(b.norm().upper <= bound_out, "assembled coproduct norm exceeds the bound in family " + std::to_string(t));
            ++done;
        }
        rec.details["families"] = done;
    }

    template <class Require>
    void descent(const Params& p, CheckRecord& rec, Require& require) {
        const ExtPtr& ext = p.ref(s.extensions, "extension", "extension");
        const FieldExtension& e = *ext;
        std::vector<std::string> parts = p.has("parts") ? p.strings("parts")
                                                        : std::vector<std::string>{"phi", "pairings", "roundtrip", "semilinear", "iwasawa"};
        auto wants = [&](const char* x) { return std::find(parts.begin(), parts.end(), x) != parts.end(); };
        for (const auto& x : parts)
            if (x != "phi" && x != "pairings" && x != "roundtrip" && x != "semilinear" && x != "iwasawa")
                p.bad("unknown descent part '" + x + "'");
        std::string ord = p.str_or("order", "both");
        std::vector<DeltaOrder> orders;
        if (ord == "ts" || ord == "both") orders.push_back(DeltaOrder::TauSigma);
        if (ord == "st" || ord == "both") orders.push_back(DeltaOrder::SigmaTau);
        if (orders.empty()) p.bad("order must be ts, st or both");
        std::size_t samples = p.has("samples") ? p.count("samples") : 100;

        rec.details["degree"] = e.degree();
        rec.details["group_order"] = e.group_order();
        rec.details["norm"] = e.norm_description();
        Cogebroid c = build_cogebroid(ext);
        rec.details["cogebroid"] = {{"axioms", axioms_json(c.report.axioms)}, {"model", c.model_note}};
        require(c.report.all_pass(), first_failure(c.report.axioms, "cogebroid: "));

        if (wants("phi")) {
            ojson arr = ojson::array();
            for (auto o : orders) {
                PhiReport r = build_phi(c, o, static_cast<unsigned>(seed ^ name_hash(p.spec.name)), samples);
                std::string tag = std::string("[") + to_string(o) + "]";
                ojson d;
                d["order"] = to_string(o);
                d["bijective"] = r.bijective;
                d["determinant"] = format_rational(r.determinant);
                if (r.normal_basis_element) d["normal_basis_element"] = e.element_str(*r.normal_basis_element);
                d["identities"] = axioms_json(r.identities);
                d["norm_model"] = r.norm_model;
                if (e.base().archimedean_backend()) {
                    d["decomposition_samples"] = r.samples;
                    d["decomposition_violations"] = r.violations;
                    d["tag"] = "norm-model-dependent";
                }
                arr.push_back(d);
                rec.norms.push_back(norm_record("phi" + tag, r.norm));
                rec.norms.push_back(norm_record("phi^-1" + tag, r.inverse_norm));
                require(r.bijective, "phi is singular");
                require(r.all_identities(), first_failure(r.identities, "phi" + tag + ": "));
                if (!e.base().archimedean_backend())
                    require(r.norm.exact && r.norm.value.upper.is_one(), "non-archimedean ||phi|| is not exactly 1");
            }
            rec.details["phi"] = arr;
        }
        if (wants("pairings")) {
            auto r = pairing_reports(c);
            rec.details["pairings"] = axioms_json(r.checks);
            require(r.all_pass(), first_failure(r.checks, "pairing: "));
        }

        std::vector<std::pair<std::string, CogComodule>> comods;
        if (p.has("comodules")) {
            for (const auto& cm : p.at("comodules")) {
                if (!cm.is_object() || !cm.contains("kind")) p.bad("comodule entries need a kind");
                std::string kind = cm["kind"].get<std::string>();
                if (kind == "regular") {
                    comods.emplace_back("regular", regular_comodule(e));
                } else if (kind == "induct") {
                    std::size_t d = cm.value("dim", 1);
                    comods.emplace_back("induct(" + std::to_string(d) + ")", induct(e, d));
                } else if (kind == "custom") {
                    std::size_t d = cm.value("dim", 0);
                    CogComodule m{d, p.rows(cm.at("l_action"), e.degree() * d), p.rows(cm.at("coaction"), d)};
                    comods.emplace_back(cm.value("name", std::string("custom")), m);
                } else {
                    p.bad("comodule kind must be regular, induct or custom");
                }
            }
        } else {
            comods.emplace_back("regular", regular_comodule(e));
            comods.emplace_back("induct(2)", induct(e, 2));
        }

        if (wants("roundtrip") || wants("semilinear")) {
            ojson arr = ojson::array();
            for (const auto& [name, m] : comods) {
                ojson d;
                d["comodule"] = name;
                StructureReport cr = check_cog_comodule(e, m);
                d["axioms"] = axioms_json(cr.axioms);
                if (!cr.all_pass()) {
                    require(false, name + ": " + first_failure(cr.axioms));
                    arr.push_back(d);
                    continue;
                }
                Descended dd = descend(e, m);
                d["descended_dim"] = dd.basis.cols();
                bool iso = comparison_is_comodule_iso(e, m, dd);
                d["comparison_is_iso"] = iso;
                require(iso, name + ": L⊗descend(M) -> M is not a comodule isomorphism");
                if (name.rfind("induct(", 0) == 0) {
                    std::size_t dv = m.dim / e.degree();
                    Matrix x = descend_induct_comparison(e, dv, dd);
                    bool inv = x.rows() == x.cols() && invertible(x);
                    d["roundtrip_comparison"] = x.to_string();
                    require(inv, name + ": V -> descend(induct(V)) is not invertible");
                }
                if (wants("semilinear")) {
                    SemilinearRep r = semilinear_from_comodule(e, m);
                    auto ax = check_semilinear(e, m.l_action, r);
                    d["semilinear"] = axioms_json(ax);
                    require(first_failure(ax).empty(), name + ": " + first_failure(ax));
                    bool same = same_subspace(fixed_points(r), dd.basis);
                    d["fixed_points_match"] = same;
                    require(same, name + ": fixed points differ from primitives");
                    CogComodule back = comodule_from_semilinear(e, m.l_action, r);
                    d["inverse_roundtrip"] = back.coaction == m.coaction;
                    require(back.coaction == m.coaction, name + ": coaction not recovered from the representation");
                }
                arr.push_back(d);
            }
            rec.details["comodules"] = arr;
        }

        if (wants("iwasawa")) {
            ojson arr = ojson::array();
            for (auto o : orders) {
                auto r = iwasawa_dual(ext, o);
                ojson d;
                d["order"] = to_string(o);
                d["convention"] = r.convention;
                d["dim"] = r.dim;
                d["associative"] = r.associative;
                d["unital"] = r.unital;
                d["perfect"] = r.perfect;
                d["matches_transpose"] = r.matches_transpose;
                if (r.twist_witness)
                    d["twist_witness"] = {{"lambda", e.labels()[r.twist_witness->first]},
                                          {"sigma", "s" + std::to_string(r.twist_witness->second)}};
                arr.push_back(d);
                require(r.all_pass(), std::string("iwasawa[") + to_string(o) + "] fails");
                require(e.group_order() == 1 || r.twist_witness.has_value(), "no twist witness for a nontrivial action");
            }
            rec.details["iwasawa"] = arr;
        }
    }

    template <class Require>
    void locally_constant(const Params& p, CheckRecord& rec, Require& require) {
        unsigned long prime = static_cast<unsigned long>(p.count("p"));
        std::size_t depth = p.count("depth");
        std::size_t size = 1;
        for (std::size_t i = 0; i < depth; ++i) size *= prime;
        Vec values;
        if (p.has("values")) {
            values = p.vec(p.at("values"));
        } else {
            std::string fn = p.str_or("function", "square");
            for (std::size_t x = 0; x < size; ++x) {
                Q q(static_cast<long>(x));
                if (fn == "square")
                    values.push_back(q * q);
                else if (fn == "constant")
                    values.push_back(Q(1));
                else if (fn == "identity")
                    values.push_back(q);
                else
                    p.bad("function must be square, identity or constant");
            }
        }
        ValuedField f = p.str_or("backend", "padic") == "padic" ? ValuedField::padic(prime) : ValuedField::archimedean();
        std::vector<NormValue> osc;
        for (const auto& x : p.at("osc")) osc.push_back(p.norm_value(x, f));
        NormValue eps = p.norm_value(p.at("eps"), f);
        auto r = locally_constant_approx(f, prime, depth, values, osc, eps);
        rec.details["level"] = r.level;
        rec.details["bound"] = r.bound.str();
        rec.details["within_oscillation"] = r.within_oscillation;
        rec.norms.push_back({"sup |f - g|", {r.bound, r.bound}, true, "exact supremum"});
        require(r.bound <= eps, "bound exceeds the tolerance");
        require(r.within_oscillation, "bound exceeds the supplied oscillation");
        if (p.has("expect_level")) require(r.level == p.count("expect_level"), "level differs from expectation");
        if (p.has("expect_bound"))
            require(compare(r.bound, p.norm_value(p.at("expect_bound"), f)) == 0, "bound differs from expectation");
    }
};

} // namespace

bool Report::ok() const {
    for (const auto& c : checks)
        if (c.status == "fail" || c.status == "error") return false;
    return true;
}

std::size_t Report::count(const std::string& status) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == status; }));
}

Report run_scenario(const Scenario& s, const RunOptions& opts) {
    Report rep;
    rep.scenario = s.name;
    rep.seed = opts.seed.value_or(s.seed);
    unsigned before = default_precision();
    rep.precision = opts.precision.value_or(s.precision ? s.precision : before);
    set_default_precision(rep.precision);
    Runner runner{s, rep.seed};
    for (const auto& spec : s.checks) {
        CheckRecord rec;
        rec.name = spec.name;
        rec.kind = spec.kind;
        auto t0 = std::chrono::steady_clock::now();
        std::string expect_error = spec.params.value("expect_error", std::string());
        try {
            runner.fill(spec, rec);
            if (!expect_error.empty()) {
                rec.status = "fail";
                rec.witness = "expected " + expect_error + " but the check completed";
            }
        } catch (const Error& e) {
            if (!expect_error.empty() && expect_error == to_string(e.kind())) {
                rec.status = "pass";
                rec.details["raised"] = e.what();
            } else {
                rec.status = "error";
                rec.witness = e.what();
            }
        } catch (const std::exception& e) {
            rec.status = "error";
            rec.witness = e.what();
        }
        if (rec.status == "pass")
            for (const auto& n : rec.norms)
                if (!n.exact) rec.status = "inexact-pass";
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(rec));
    }
    set_default_precision(before);
    std::sort(rep.checks.begin(), rep.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return rep;
}

ojson report_json(const Report& r, bool timing) {
    ojson out;
    out["scenario"] = r.scenario;
    out["seed"] = r.seed;
    out["precision"] = r.precision;
    out["status"] = r.ok() ? "pass" : "fail";
    out["summary"] = {{"pass", r.count("pass")},
                      {"inexact-pass", r.count("inexact-pass")},
                      {"fail", r.count("fail")},
                      {"error", r.count("error")}};
    ojson checks = ojson::array();
    for (const auto& c : r.checks) {
        ojson o;
        o["name"] = c.name;
        o["kind"] = c.kind;
        o["status"] = c.status;
        o["witness"] = c.witness.empty() ? ojson(nullptr) : ojson(c.witness);
        ojson norms = ojson::array();
        for (const auto& n : c.norms)
            norms.push_back({{"map", n.map},
                             {"lower", n.value.lower.str()},
                             {"upper", n.value.upper.str()},
                             {"exact", n.exact},
                             {"method", n.method}});
        o["norm_enclosures"] = norms;
        o["details"] = c.details;
        if (timing) o["timing_ms"] = c.millis;
        checks.push_back(o);
    }
    out["checks"] = checks;
    return out;
}

std::string report_text(const Report& r) {
    std::ostringstream os;
    os << "scenario " << r.scenario << " (seed " << r.seed << ", precision " << r.precision << ")\n";
    for (const auto& c : r.checks) {
        std::string status = c.status;
        std::transform(status.begin(), status.end(), status.begin(), [](unsigned char ch) { return std::toupper(ch); });
        os << "  " << status << "  " << c.name;
        if (!c.witness.empty()) os << "  [" << c.witness << "]";
        os << "\n";
        for (const auto& n : c.norms) os << "      " << n.map << ": " << n.value.str() << "\n";
    }
    os << (r.ok() ? "PASS" : "FAIL") << ": " << r.count("pass") << " pass, " << r.count("inexact-pass")
       << " inexact-pass, " << r.count("fail") << " fail, " << r.count("error") << " error\n";
    return os.str();
}

} // namespace indban
