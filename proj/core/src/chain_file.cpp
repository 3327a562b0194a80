#include "chaincalc/chain_file.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace chaincalc {

namespace {

using nlohmann::json;

// Aborts the current entry after its first unrecoverable problem; parsing
// resumes with the next entry so one bad record cannot hide the rest.
struct entry_failed {};

struct Collector {
    std::string origin;
    std::vector<ChainFileError> errors;

    void add(const std::string& where, const std::string& category, const std::string& message) {
        errors.push_back({origin + "#" + where, category, message});
    }
    [[noreturn]] void fail(const std::string& where, const std::string& category,
                           const std::string& message) {
        add(where, category, message);
        throw entry_failed{};
    }
};

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& member(const json& v, const char* key, const std::string& where, Collector& c) {
    auto it = v.find(key);
    if (it == v.end()) c.fail(where, "schema", std::string("missing required key '") + key + "'");
    return *it;
}

void check_keys(const json& v, std::initializer_list<const char*> allowed,
                const std::string& where, Collector& c) {
    for (const auto& item : v.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) c.fail(where, "schema", "unknown key '" + item.key() + "'");
    }
}

const json& as_object(const json& v, const std::string& where, Collector& c) {
    if (!v.is_object()) c.fail(where, "schema", "expected an object");
    return v;
}

std::string to_name(const json& v, const std::string& where, Collector& c) {
    if (!v.is_string()) c.fail(where, "schema", "expected a name string");
    return v.get<std::string>();
}

Int to_int(const json& v, const std::string& where, Collector& c) {
    if (v.is_number_integer()) return Int(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::exception&) {
            c.fail(where, "schema", "'" + v.get<std::string>() + "' is not an integer");
        }
    }
    c.fail(where, "schema", "expected an integer (use a digit string for large values)");
}

std::vector<Int> to_int_vector(const json& v, const std::string& where, Collector& c) {
    if (!v.is_array()) c.fail(where, "schema", "expected an array of integers");
    std::vector<Int> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(to_int(v[i], where + "/" + std::to_string(i), c));
    return out;
}

Element to_element(const json& v, const FgAbelianGroup& g, const std::string& where, Collector& c) {
    std::vector<Int> raw = to_int_vector(v, where, c);
    if (raw.size() != g.ngens())
        c.fail(where, "schema",
               "element has " + std::to_string(raw.size()) + " coordinates, group " +
                   g.describe() + " needs " + std::to_string(g.ngens()));
    return g.reduce(std::move(raw));
}

// Shape is dictated by the resolved source and target, so zero-row and
// zero-column matrices stay unambiguous.
IntMatrix to_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& where,
                    Collector& c) {
    if (!v.is_array()) c.fail(where, "schema", "expected an array of matrix rows");
    if (v.size() != rows)
        c.fail(where, "schema",
               "matrix has " + std::to_string(v.size()) + " rows, expected " + std::to_string(rows));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rw = where + "/" + std::to_string(i);
        std::vector<Int> row = to_int_vector(v[i], rw, c);
        if (row.size() != cols)
            c.fail(rw, "schema",
                   "matrix row has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = row[j];
    }
    return m;
}

Rational to_rational(const json& v, const std::string& where, Collector& c) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
    if (v.is_string()) {
        try {
            return Rational(v.get<std::string>());
        } catch (const std::exception&) {
            c.fail(where, "schema", "'" + v.get<std::string>() + "' is not a rational (\"p/q\")");
        }
    }
    c.fail(where, "schema", "expected a rational as integer or \"p/q\" string");
}

template <typename T>
const T& resolve(const std::map<std::string, T>& table, const json& v, const char* what,
                 const std::string& where, Collector& c) {
    std::string name = to_name(v, where, c);
    auto it = table.find(name);
    if (it == table.end())
        c.fail(where, "unresolved-reference", std::string("unknown ") + what + " '" + name + "'");
    return it->second;
}

void check_entry_name(const std::string& name, const std::string& where, Collector& c) {
    if (name.empty() || name.find(':') != std::string::npos || name.find('/') != std::string::npos)
        c.fail(where, "schema", "entry names must be nonempty and free of ':' and '/'");
}

void report_violations(const ValidationReport& report, const std::string& prefix,
                       const std::string& where, Collector& c) {
    if (report.ok()) return;
    for (const Violation& v : report.violations)
        c.add(where, "invariant", prefix + ": " + v.code + ": " + v.message);
    throw entry_failed{};
}

void parse_groups(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("groups");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/groups", c).items()) {
        const std::string where = "/groups/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"free", "torsion"}, where, c);
            Int free = to_int(member(v, "free", where, c), where + "/free", c);
            if (free < 0) c.fail(where + "/free", "schema", "free rank must be nonnegative");
            std::vector<Int> torsion =
                to_int_vector(member(v, "torsion", where, c), where + "/torsion", c);
            try {
                f.groups.emplace(item.key(),
                                 FgAbelianGroup(static_cast<std::size_t>(free), std::move(torsion)));
            } catch (const error& e) {
                c.fail(where + "/torsion", "schema", e.what());
            }
        } catch (const entry_failed&) {
        }
    }
}

void parse_homs(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("homs");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/homs", c).items()) {
        const std::string where = "/homs/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"source", "target", "matrix"}, where, c);
            const FgAbelianGroup& source =
                resolve(f.groups, member(v, "source", where, c), "group", where + "/source", c);
            const FgAbelianGroup& target =
                resolve(f.groups, member(v, "target", where, c), "group", where + "/target", c);
            IntMatrix m = to_matrix(member(v, "matrix", where, c), target.ngens(), source.ngens(),
                                    where + "/matrix", c);
            try {
                f.homs.emplace(item.key(), AbHom(source, target, std::move(m)));
            } catch (const error& e) {
                c.fail(where + "/matrix", "well-definedness",
                       "hom '" + item.key() + "' is ill-defined: " + e.what());
            }
        } catch (const entry_failed&) {
        }
    }
}

void parse_stabilizers(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("stabilizers");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/stabilizers", c).items()) {
        const std::string where = "/stabilizers/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"chars", "com_chars", "com_pullback"}, where, c);
            const FgAbelianGroup& chars =
                resolve(f.groups, member(v, "chars", where, c), "group", where + "/chars", c);
            const FgAbelianGroup& com = resolve(f.groups, member(v, "com_chars", where, c), "group",
                                                where + "/com_chars", c);
            const AbHom& pullback = resolve(f.homs, member(v, "com_pullback", where, c), "hom",
                                            where + "/com_pullback", c);
            GroupDatum g(item.key(), chars, com, pullback);
            report_violations(validate_group_datum(g), "stabilizer '" + item.key() + "'", where, c);
            f.stabilizers.emplace(item.key(), std::move(g));
        } catch (const entry_failed&) {
        }
    }
}

void parse_normal_characters(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("normal_characters");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/normal_characters", c).items()) {
        const std::string where = "/normal_characters/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"stabilizer", "value"}, where, c);
            const GroupDatum& g = resolve(f.stabilizers, member(v, "stabilizer", where, c),
                                          "stabilizer", where + "/stabilizer", c);
            Element value =
                to_element(member(v, "value", where, c), g.char_group, where + "/value", c);
            f.normal_characters.emplace(item.key(), NormalCharacter{g, std::move(value)});
        } catch (const entry_failed&) {
        }
    }
}

std::optional<ChainComponentData> parse_com(const json& v, const ChainFile& f,
                                            const std::string& where, Collector& c) {
    auto it = v.find("com");
    if (it == v.end()) return std::nullopt;
    const std::string cw = where + "/com";
    const json& cv = as_object(*it, cw, c);
    check_keys(cv, {"s1", "s0", "sigma"}, cw, c);
    const GroupDatum& s1 =
        resolve(f.stabilizers, member(cv, "s1", cw, c), "stabilizer", cw + "/s1", c);
    const GroupDatum& s0 =
        resolve(f.stabilizers, member(cv, "s0", cw, c), "stabilizer", cw + "/s0", c);
    const AbHom& sigma = resolve(f.homs, member(cv, "sigma", cw, c), "hom", cw + "/sigma", c);
    return ChainComponentData{s1, s0, sigma};
}

std::optional<TopWedgeData> parse_top(const json& v, const ChainFile& f, const std::string& where,
                                      Collector& c) {
    auto it = v.find("top");
    if (it == v.end()) return std::nullopt;
    const std::string tw = where + "/top";
    const json& tv = as_object(*it, tw, c);
    check_keys(tv, {"lattice", "r0", "char0"}, tw, c);
    const FgAbelianGroup& lattice =
        resolve(f.groups, member(tv, "lattice", tw, c), "group", tw + "/lattice", c);
    const AbHom& r0 = resolve(f.homs, member(tv, "r0", tw, c), "hom", tw + "/r0", c);
    Element char0 = to_element(member(tv, "char0", tw, c), r0.source(), tw + "/char0", c);
    return TopWedgeData{lattice, r0, std::move(char0)};
}

void parse_chains(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("chains");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/chains", c).items()) {
        const std::string where = "/chains/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            std::string kind = to_name(member(v, "kind", where, c), where + "/kind", c);
            if (kind == "orbit") {
                check_keys(v, {"kind", "chars"}, where, c);
                const FgAbelianGroup& chars =
                    resolve(f.groups, member(v, "chars", where, c), "group", where + "/chars", c);
                f.chains.emplace(item.key(),
                                 ChainEntry{ChainKind::orbit, chars, std::nullopt, ""});
            } else if (kind == "simple") {
                check_keys(v,
                           {"kind", "n", "char_s1", "char_s0", "char_l0", "lim", "iota", "gamma",
                            "mu", "act", "com", "top"},
                           where, c);
                Int n = to_int(member(v, "n", where, c), where + "/n", c);
                const FgAbelianGroup& s1 = resolve(f.groups, member(v, "char_s1", where, c),
                                                   "group", where + "/char_s1", c);
                const FgAbelianGroup& s0 = resolve(f.groups, member(v, "char_s0", where, c),
                                                   "group", where + "/char_s0", c);
                const FgAbelianGroup& l0 = resolve(f.groups, member(v, "char_l0", where, c),
                                                   "group", where + "/char_l0", c);
                const AbHom& lim =
                    resolve(f.homs, member(v, "lim", where, c), "hom", where + "/lim", c);
                const AbHom& iota =
                    resolve(f.homs, member(v, "iota", where, c), "hom", where + "/iota", c);
                const AbHom& gamma =
                    resolve(f.homs, member(v, "gamma", where, c), "hom", where + "/gamma", c);
                const AbHom& mu =
                    resolve(f.homs, member(v, "mu", where, c), "hom", where + "/mu", c);
                Element act = to_element(member(v, "act", where, c), l0, where + "/act", c);
                SimpleChainDatum datum{item.key(), n,   s1, s0, l0, lim, iota, gamma, mu,
                                       std::move(act), parse_com(v, f, where, c),
                                       parse_top(v, f, where, c)};
                report_violations(validate_simple_chain(datum), "chain '" + item.key() + "'",
                                  where, c);
                f.chains.emplace(item.key(), ChainEntry{ChainKind::simple, FgAbelianGroup(),
                                                        std::move(datum), ""});
            } else if (kind == "graph") {
                check_keys(v, {"kind", "graph"}, where, c);
                std::string ref = to_name(member(v, "graph", where, c), where + "/graph", c);
                f.chains.emplace(item.key(),
                                 ChainEntry{ChainKind::graph, FgAbelianGroup(), std::nullopt, ref});
            } else {
                c.fail(where + "/kind", "schema",
                       "chain kind must be \"orbit\", \"simple\", or \"graph\"");
            }
        } catch (const entry_failed&) {
        }
    }
}

std::vector<OrbitInfo> parse_orbit_list(const json& v, const ChainFile& f, const std::string& where,
                                        Collector& c) {
    if (!v.is_array()) c.fail(where, "schema", "expected an array of orbits");
    std::vector<OrbitInfo> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string ow = where + "/" + std::to_string(i);
        const json& o = as_object(v[i], ow, c);
        check_keys(o, {"name", "chars"}, ow, c);
        std::string name = to_name(member(o, "name", ow, c), ow + "/name", c);
        const FgAbelianGroup& chars =
            resolve(f.groups, member(o, "chars", ow, c), "group", ow + "/chars", c);
        out.push_back({std::move(name), chars});
    }
    return out;
}

std::size_t orbit_index(const std::vector<OrbitInfo>& orbits, const json& v, const char* what,
                        const std::string& where, Collector& c) {
    std::string name = to_name(v, where, c);
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (orbits[i].name == name) return i;
    c.fail(where, "unresolved-reference", std::string("unknown ") + what + " orbit '" + name + "'");
}

void parse_graphs(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("graphs");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/graphs", c).items()) {
        const std::string where = "/graphs/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"opens", "closeds", "edges"}, where, c);
            ChainGraph g;
            g.name = item.key();
            g.open_orbits = parse_orbit_list(member(v, "opens", where, c), f, where + "/opens", c);
            g.closed_orbits =
                parse_orbit_list(member(v, "closeds", where, c), f, where + "/closeds", c);
            const json& edges = member(v, "edges", where, c);
            if (!edges.is_array()) c.fail(where + "/edges", "schema", "expected an array of edges");
            for (std::size_t i = 0; i < edges.size(); ++i) {
                const std::string ew = where + "/edges/" + std::to_string(i);
                const json& e = as_object(edges[i], ew, c);
                check_keys(e, {"name", "open", "closed", "chain", "ident", "pull"}, ew, c);
                std::string name = to_name(member(e, "name", ew, c), ew + "/name", c);
                std::size_t open = orbit_index(g.open_orbits, member(e, "open", ew, c), "open",
                                               ew + "/open", c);
                std::size_t closed = orbit_index(g.closed_orbits, member(e, "closed", ew, c),
                                                 "closed", ew + "/closed", c);
                const ChainEntry& chain = resolve(f.chains, member(e, "chain", ew, c), "chain",
                                                  ew + "/chain", c);
                if (chain.kind != ChainKind::simple)
                    c.fail(ew + "/chain", "invariant",
                           "edge '" + name + "' must reference a simple chain");
                const AbHom& ident =
                    resolve(f.homs, member(e, "ident", ew, c), "hom", ew + "/ident", c);
                const AbHom& pull =
                    resolve(f.homs, member(e, "pull", ew, c), "hom", ew + "/pull", c);
                g.edges.push_back({std::move(name), open, closed, *chain.simple, ident, pull});
            }
            report_violations(validate_chain_graph(g), "graph '" + item.key() + "'", where, c);
            f.graphs.emplace(item.key(), std::move(g));
        } catch (const entry_failed&) {
        }
    }
}

void resolve_graph_chain_refs(ChainFile& f, Collector& c) {
    for (const auto& [name, entry] : f.chains) {
        if (entry.kind != ChainKind::graph) continue;
        if (f.graphs.find(entry.graph_ref) == f.graphs.end())
            c.add("#/chains/" + name + "/graph", "unresolved-reference",
                  "unknown graph '" + entry.graph_ref + "'");
    }
    // Collected without entry_failed: the chain entry itself stays usable
    // only when its graph exists, so drop broken entries.
    if (!c.errors.empty()) {
        for (auto it = f.chains.begin(); it != f.chains.end();) {
            if (it->second.kind == ChainKind::graph &&
                f.graphs.find(it->second.graph_ref) == f.graphs.end())
                it = f.chains.erase(it);
            else
                ++it;
        }
    }
}

FilteredObject parse_lines(const json& v, const FgAbelianGroup& chars, bool allow_degree,
                           const std::string& where, Collector& c) {
    if (!v.is_array()) c.fail(where, "schema", "expected an array of lines");
    std::vector<FilteredLine> lines;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string lw = where + "/" + std::to_string(i);
        const json& line = as_object(v[i], lw, c);
        if (allow_degree)
            check_keys(line, {"chi", "degree"}, lw, c);
        else
            check_keys(line, {"chi"}, lw, c);
        Element chi = to_element(member(line, "chi", lw, c), chars, lw + "/chi", c);
        std::optional<Int> degree;
        auto dit = line.find("degree");
        if (dit != line.end() && !(dit->is_string() && dit->get<std::string>() == "inf"))
            degree = to_int(*dit, lw + "/degree", c);
        lines.push_back({std::move(chi), std::move(degree)});
    }
    return FilteredObject(chars, std::move(lines));
}

std::vector<Element> parse_char_tuple(const json& v, const std::vector<OrbitInfo>& orbits,
                                      const std::string& where, Collector& c) {
    if (!v.is_array()) c.fail(where, "schema", "expected one character per orbit");
    if (v.size() != orbits.size())
        c.fail(where, "schema",
               "got " + std::to_string(v.size()) + " characters for " +
                   std::to_string(orbits.size()) + " orbits");
    std::vector<Element> out;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        out.push_back(
            to_element(v[i], orbits[i].chars, where + "/" + std::to_string(i), c));
    return out;
}

void parse_objects(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("objects");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/objects", c).items()) {
        const std::string where = "/objects/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            const json& chain_ref = member(v, "chain", where, c);
            const ChainEntry& chain =
                resolve(f.chains, chain_ref, "chain", where + "/chain", c);
            ObjectEntry entry{to_name(chain_ref, where + "/chain", c), std::nullopt, std::nullopt};
            if (chain.kind == ChainKind::orbit) {
                check_keys(v, {"chain", "lines"}, where, c);
                entry.filtered = parse_lines(member(v, "lines", where, c), chain.orbit_chars,
                                             false, where + "/lines", c);
            } else if (chain.kind == ChainKind::simple) {
                check_keys(v, {"chain", "lines"}, where, c);
                entry.filtered = parse_lines(member(v, "lines", where, c), chain.simple->char_s1,
                                             true, where + "/lines", c);
            } else {
                check_keys(v, {"chain", "open_chars", "closed_chars"}, where, c);
                const ChainGraph& g = f.graphs.at(chain.graph_ref);
                entry.assembly = LineBundleAssembly{
                    parse_char_tuple(member(v, "open_chars", where, c), g.open_orbits,
                                     where + "/open_chars", c),
                    parse_char_tuple(member(v, "closed_chars", where, c), g.closed_orbits,
                                     where + "/closed_chars", c)};
            }
            f.objects.emplace(item.key(), std::move(entry));
        } catch (const entry_failed&) {
        }
    }
}

void parse_rings(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("rings");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/rings", c).items()) {
        const std::string where = "/rings/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            std::string kind = to_name(member(v, "kind", where, c), where + "/kind", c);
            if (kind == "weighted_free") {
                check_keys(v, {"kind", "degrees"}, where, c);
                std::vector<Int> degrees =
                    to_int_vector(member(v, "degrees", where, c), where + "/degrees", c);
                if (degrees.empty())
                    c.fail(where + "/degrees", "schema", "at least one degree is required");
                f.rings.emplace(item.key(),
                                RingEntry{RingKind::weighted_free, std::nullopt,
                                          WeightedFreePresentation{std::move(degrees)}});
            } else if (kind == "ideal_adic") {
                check_keys(v, {"kind", "components", "component_group"}, where, c);
                const json& comps = member(v, "components", where, c);
                if (!comps.is_array() || comps.empty())
                    c.fail(where + "/components", "schema",
                           "expected a nonempty array of components");
                IdealAdicPresentation p;
                for (std::size_t i = 0; i < comps.size(); ++i) {
                    const std::string pw = where + "/components/" + std::to_string(i);
                    const json& comp = as_object(comps[i], pw, c);
                    check_keys(comp, {"name", "integral", "ideal"}, pw, c);
                    AdicComponent a;
                    a.name = to_name(member(comp, "name", pw, c), pw + "/name", c);
                    const json& integral = member(comp, "integral", pw, c);
                    if (!integral.is_boolean())
                        c.fail(pw + "/integral", "schema", "expected true or false");
                    a.is_integral = integral.get<bool>();
                    std::string ideal =
                        to_name(member(comp, "ideal", pw, c), pw + "/ideal", c);
                    if (ideal == "zero")
                        a.ideal = IdealKind::zero;
                    else if (ideal == "proper_principal")
                        a.ideal = IdealKind::proper_principal;
                    else if (ideal == "unit")
                        a.ideal = IdealKind::unit;
                    else
                        c.fail(pw + "/ideal", "schema",
                               "ideal must be \"zero\", \"proper_principal\", or \"unit\"");
                    for (const AdicComponent& seen : p.components)
                        if (seen.name == a.name)
                            c.fail(pw + "/name", "schema",
                                   "duplicate component name '" + a.name + "'");
                    p.components.push_back(std::move(a));
                }
                auto cg = v.find("component_group");
                if (cg != v.end()) {
                    const std::string gw = where + "/component_group";
                    const json& gv = as_object(*cg, gw, c);
                    check_keys(gv, {"group", "gamma_image"}, gw, c);
                    const FgAbelianGroup& group =
                        resolve(f.groups, member(gv, "group", gw, c), "group", gw + "/group", c);
                    std::string image =
                        to_name(member(gv, "gamma_image", gw, c), gw + "/gamma_image", c);
                    p.component_group = ComponentGroupInfo{group, std::move(image)};
                }
                f.rings.emplace(item.key(),
                                RingEntry{RingKind::ideal_adic, std::move(p), std::nullopt});
            } else {
                c.fail(where + "/kind", "schema",
                       "ring kind must be \"ideal_adic\" or \"weighted_free\"");
            }
        } catch (const entry_failed&) {
        }
    }
}

void parse_quotients(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("quotients");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/quotients", c).items()) {
        const std::string where = "/quotients/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"chain", "sub_generators", "char_h0", "spec_matrix", "proj0"}, where, c);
            const json& chain_ref = member(v, "chain", where, c);
            const ChainEntry& chain = resolve(f.chains, chain_ref, "chain", where + "/chain", c);
            if (chain.kind != ChainKind::simple)
                c.fail(where + "/chain", "invariant",
                       "quotient '" + item.key() + "' must reference a simple chain");
            const json& gens = member(v, "sub_generators", where, c);
            if (!gens.is_array())
                c.fail(where + "/sub_generators", "schema", "expected an array of generators");
            std::vector<Element> generators;
            for (std::size_t i = 0; i < gens.size(); ++i)
                generators.push_back(to_element(gens[i], chain.simple->char_s1,
                                                where + "/sub_generators/" + std::to_string(i), c));
            Subgroup sub(chain.simple->char_s1, std::move(generators));
            const FgAbelianGroup& h0 =
                resolve(f.groups, member(v, "char_h0", where, c), "group", where + "/char_h0", c);
            IntMatrix spec = to_matrix(member(v, "spec_matrix", where, c), h0.ngens(),
                                       sub.normal_form().ngens(), where + "/spec_matrix", c);
            const AbHom& proj0 =
                resolve(f.homs, member(v, "proj0", where, c), "hom", where + "/proj0", c);
            try {
                AbHom spec_hom(sub.normal_form(), h0, std::move(spec));
                TameQuotientDatum datum{std::move(sub), h0, std::move(spec_hom), proj0};
                report_violations(validate_tame_quotient_datum(*chain.simple, datum),
                                  "quotient '" + item.key() + "'", where, c);
                f.quotients.emplace(item.key(), QuotientEntry{
                                                    to_name(chain_ref, where + "/chain", c),
                                                    std::move(datum)});
            } catch (const error& e) {
                c.fail(where + "/spec_matrix", "well-definedness",
                       "quotient '" + item.key() + "' has an ill-defined specialization: " +
                           e.what());
            }
        } catch (const entry_failed&) {
        }
    }
}

void parse_pairings(const json& doc, ChainFile& f, Collector& c) {
    auto it = doc.find("pairings");
    if (it == doc.end()) return;
    for (const auto& item : as_object(*it, "/pairings", c).items()) {
        const std::string where = "/pairings/" + item.key();
        try {
            check_entry_name(item.key(), where, c);
            const json& v = as_object(item.value(), where, c);
            check_keys(v, {"basis", "values"}, where, c);
            const json& basis = member(v, "basis", where, c);
            const json& values = member(v, "values", where, c);
            if (!basis.is_array()) c.fail(where + "/basis", "schema", "expected an array of names");
            if (!values.is_array() || values.size() != basis.size())
                c.fail(where + "/values", "schema", "need exactly one value per basis vector");
            LiePairing p;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                p.basis.push_back(
                    to_name(basis[i], where + "/basis/" + std::to_string(i), c));
                p.values.push_back(
                    to_rational(values[i], where + "/values/" + std::to_string(i), c));
            }
            f.pairings.emplace(item.key(), std::move(p));
        } catch (const entry_failed&) {
        }
    }
}

} // namespace

chain_file_error::chain_file_error(std::vector<ChainFileError> errors)
    : input_error(render(errors)), errors_(std::move(errors)) {}

std::string chain_file_error::render(const std::vector<ChainFileError>& errors) {
    std::ostringstream out;
    out << "chain file has " << errors.size() << (errors.size() == 1 ? " error" : " errors");
    for (const ChainFileError& e : errors) out << "\n  " << e.to_string();
    return out.str();
}

ChainFile parse_chain_file_text(const std::string& text, const std::string& origin) {
    Collector c{origin, {}};
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        c.add(line_column(text, byte), "syntax", e.what());
        throw chain_file_error(std::move(c.errors));
    }

    ChainFile f;
    try {
        as_object(doc, "", c);
        check_keys(doc,
                   {"meta", "groups", "homs", "stabilizers", "normal_characters", "chains",
                    "graphs", "objects", "rings", "quotients", "pairings", "results"},
                   "", c);
        const json& meta = as_object(member(doc, "meta", "/meta", c), "/meta", c);
        check_keys(meta, {"chaincalc_format", "dataset"}, "/meta", c);
        Int version = to_int(member(meta, "chaincalc_format", "/meta", c),
                             "/meta/chaincalc_format", c);
        if (version != chain_file_format_version)
            c.fail("/meta/chaincalc_format", "schema",
                   "unsupported format version (this build reads version " +
                       std::to_string(chain_file_format_version) + ")");
        auto res = doc.find("results");
        if (res != doc.end() && !res->is_object())
            c.fail("/results", "schema", "expected an object");
    } catch (const entry_failed&) {
        throw chain_file_error(std::move(c.errors));
    }

    parse_groups(doc, f, c);
    parse_homs(doc, f, c);
    parse_stabilizers(doc, f, c);
    parse_normal_characters(doc, f, c);
    parse_chains(doc, f, c);
    parse_graphs(doc, f, c);
    resolve_graph_chain_refs(f, c);
    parse_objects(doc, f, c);
    parse_rings(doc, f, c);
    parse_quotients(doc, f, c);
    parse_pairings(doc, f, c);

    if (!c.errors.empty()) throw chain_file_error(std::move(c.errors));
    f.document = std::move(doc);
    return f;
}

ChainFile parse_chain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chain_file_text(buf.str(), path);
}

std::string serialize_chain_file(const ChainFile& f) { return f.document.dump(2) + "\n"; }

std::string serialize_with_results(const ChainFile& f, const nlohmann::json& results) {
    nlohmann::json doc = f.document;
    doc["results"] = results;
    return doc.dump(2) + "\n";
}

std::string find_dataset(const std::string& name, const std::string& exe_dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("CHAINCALC_DATA_DIR")) dirs.emplace_back(env);
    if (!exe_dir.empty()) dirs.emplace_back(fs::path(exe_dir) / ".." / "share" / "chaincalc" / "datasets");
#ifdef CHAINCALC_SOURCE_DATA_DIR
    dirs.emplace_back(CHAINCALC_SOURCE_DATA_DIR);
#endif
    for (const fs::path& dir : dirs) {
        fs::path candidate = dir / (name + ".json");
        std::error_code ec;
        if (fs::exists(candidate, ec)) return candidate.string();
    }
    throw input_error("unknown dataset '" + name + "'");
}

} // namespace chaincalc
