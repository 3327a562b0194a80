#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chaincalc/chain_file.hpp"

#include "CLI11.hpp"

namespace cc = chaincalc;
using nlohmann::json;

namespace {

// Characters of a finite group are enumerated in reports up to this order;
// larger groups need an explicit --character.
constexpr int enumeration_bound = 16;

struct Ref {
    std::string path;
    std::string entry;
};

Ref split_ref(const std::string& text, const std::string& exe_dir) {
    auto pos = text.rfind(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
        throw cc::input_error("reference '" + text +
                              "' must look like dataset:entry or path.json:entry");
    std::string left = text.substr(0, pos);
    std::string entry = text.substr(pos + 1);
    bool is_path = left.find('/') != std::string::npos ||
                   (left.size() > 5 && left.substr(left.size() - 5) == ".json");
    return {is_path ? left : cc::find_dataset(left, exe_dir), entry};
}

// One input file per command, so machine output can embed it whole.
struct Command {
    std::string exe_dir;
    std::string format = "table";
    std::optional<std::string> path;
    std::optional<cc::ChainFile> file;

    const cc::ChainFile& load(const std::string& ref_text) {
        Ref r = split_ref(ref_text, exe_dir);
        if (path && *path != r.path)
            throw cc::input_error("all references in one command must name the same file ('" +
                                  *path + "' vs '" + r.path + "')");
        if (!file) {
            file = cc::parse_chain_file(r.path);
            path = r.path;
        }
        return *file;
    }

    std::string entry_of(const std::string& ref_text) const {
        return split_ref(ref_text, exe_dir).entry;
    }
};

template <typename T>
const T& named(const std::map<std::string, T>& table, const std::string& name, const char* what) {
    auto it = table.find(name);
    if (it == table.end())
        throw cc::input_error(std::string("no ") + what + " named '" + name + "'");
    return it->second;
}

std::vector<cc::Int> parse_coords(const std::string& text) {
    std::vector<cc::Int> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto begin = token.find_first_not_of(" \t");
        auto end = token.find_last_not_of(" \t");
        if (begin == std::string::npos)
            throw cc::input_error("empty coordinate in '" + text + "'");
        token = token.substr(begin, end - begin + 1);
        try {
            out.emplace_back(token);
        } catch (const std::exception&) {
            throw cc::input_error("'" + token + "' is not an integer coordinate");
        }
    }
    return out;
}

std::string show_vec(const std::vector<cc::Int>& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << v[i];
    }
    out << ")";
    return out.str();
}

json int_json(const cc::Int& v) {
    static const cc::Int lo = std::numeric_limits<long long>::min();
    static const cc::Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return json(v.convert_to<long long>());
    return json(v.str());
}

json vec_json(const std::vector<cc::Int>& v) {
    json out = json::array();
    for (const cc::Int& x : v) out.push_back(int_json(x));
    return out;
}

json group_json(const cc::FgAbelianGroup& g) {
    return json{{"free", g.free_rank()}, {"torsion", vec_json(g.torsion())}};
}

json subgroup_json(const cc::Subgroup& s) {
    json gens = json::array();
    for (const cc::Element& g : s.normal_form_generators()) gens.push_back(vec_json(g));
    return json{{"normal_form", group_json(s.normal_form())}, {"generators", gens}};
}

void render_subgroup(std::ostream& out, const cc::Subgroup& s, const std::string& indent) {
    out << indent << "normal form: " << s.normal_form().describe() << "\n";
    auto gens = s.normal_form_generators();
    if (gens.empty()) {
        out << indent << "generators: none (trivial subgroup)\n";
        return;
    }
    out << indent << "generators:\n";
    for (const cc::Element& g : gens) out << indent << "  " << show_vec(g) << "\n";
}

// Characters to report on: the explicit one, or all of a small finite group.
std::vector<cc::Element> report_characters(const cc::FgAbelianGroup& g,
                                           const std::optional<cc::Element>& given) {
    if (given) return {g.reduce(*given)};
    if (g.is_finite() && g.order() <= enumeration_bound) return g.all_elements();
    return {};
}

int finish(Command& cmd, const std::string& table, json results, int code) {
    results["exit_code"] = code;
    if (cmd.format == "machine") {
        if (!cmd.file) throw cc::input_error("machine format needs an input file");
        std::cout << cc::serialize_with_results(*cmd.file, results);
    } else {
        std::cout << table;
    }
    return code;
}

int run_check_fastened(Command& cmd, const std::string& ref) {
    const cc::ChainFile& f = cmd.load(ref);
    const std::string name = cmd.entry_of(ref);
    const cc::NormalCharacter& nc = named(f.normal_characters, name, "normal character");
    bool fastened = cc::is_fastened(nc);

    std::ostringstream table;
    table << "normal character: " << name << "\n"
          << "stabilizer: " << nc.group.name << "\n"
          << "character group: " << nc.group.char_group.describe() << "\n"
          << "value: " << show_vec(nc.value) << "\n"
          << "fastened: " << (fastened ? "yes" : "no") << "\n";
    json results{{"command", "check-fastened"},
                 {"normal_character", name},
                 {"stabilizer", nc.group.name},
                 {"value", vec_json(nc.value)},
                 {"fastened", fastened}};
    return finish(cmd, table.str(), std::move(results), fastened ? 0 : 1);
}

int classify_orbit(Command& cmd, const std::string& name, const cc::ChainEntry& entry,
                   const std::optional<cc::Element>& character) {
    std::ostringstream table;
    table << "chain: " << name << " (single orbit)\n"
          << "characters: " << entry.orbit_chars.describe() << "\n"
          << "classification: every character, no degree constraint\n";
    json results{{"command", "classify-line-bundles"},
                 {"chain", name},
                 {"kind", "orbit"},
                 {"characters", group_json(entry.orbit_chars)}};
    if (character) {
        cc::Element chi = entry.orbit_chars.reduce(*character);
        table << "character " << show_vec(chi) << ": extends\n";
        results["character"] = vec_json(chi);
    }
    return finish(cmd, table.str(), std::move(results), 0);
}

int classify_simple(Command& cmd, const std::string& name, const cc::SimpleChainDatum& datum,
                    const std::optional<cc::Element>& character) {
    cc::FiberProduct fp = cc::line_bundle_fiber_product(datum);

    std::ostringstream table;
    table << "chain: " << name << " (two-orbit chain, weight " << datum.n << ")\n"
          << "open characters: " << datum.char_s1.describe() << "\n"
          << "normal-line characters: " << datum.char_l0.describe() << "\n"
          << "classification in open (+) normal-line characters:\n"
          << "  normal form: " << fp.sub.normal_form().describe() << "\n";
    json gens = json::array();
    auto ambient_gens = fp.sub.normal_form_generators();
    if (ambient_gens.empty()) {
        table << "  generators: none (trivial subgroup)\n";
    } else {
        table << "  generators:\n";
        for (const cc::Element& g : ambient_gens) {
            cc::Element chi = fp.sum.projections[0].apply(g);
            cc::Element chip = fp.sum.projections[1].apply(g);
            cc::Int deg = fp.degree.apply(g)[0];
            table << "    chi = " << show_vec(chi) << ", normal-line = " << show_vec(chip)
                  << ", degree = " << deg << "\n";
            gens.push_back(json{{"chi", vec_json(chi)},
                                {"normal_line", vec_json(chip)},
                                {"degree", int_json(deg)}});
        }
    }

    json congruences = json::array();
    std::vector<cc::Element> chars = report_characters(datum.char_s1, character);
    if (!chars.empty()) table << "degree congruences:\n";
    for (const cc::Element& chi : chars) {
        cc::ResidueClass r = cc::classify_line_bundles_simple(datum, chi);
        table << "  chi = " << show_vec(chi) << ": " << r.to_string() << "\n";
        congruences.push_back(json{{"chi", vec_json(chi)},
                                   {"mod", int_json(r.n)},
                                   {"residue", int_json(r.m)}});
    }
    if (chars.empty() && !character)
        table << "degree congruences: give --character (open character group is large)\n";

    json results{{"command", "classify-line-bundles"},
                 {"chain", name},
                 {"kind", "simple"},
                 {"normal_form", group_json(fp.sub.normal_form())},
                 {"generators", gens},
                 {"congruences", congruences}};
    int code = fp.sub.normal_form().is_trivial() ? 1 : 0;
    return finish(cmd, table.str(), std::move(results), code);
}

int classify_graph(Command& cmd, const std::string& name, const cc::ChainFile& f,
                   const std::string& graph_name, const std::optional<cc::Element>& character) {
    cc::BuiltGraph built = cc::build_chain_graph(f.graphs.at(graph_name));
    cc::GraphClassification cls = cc::classify_line_bundles_graph(built);
    const std::size_t parts = cls.component_names.size();

    std::ostringstream table;
    table << "chain: " << name << " (orbit graph '" << graph_name << "')\n" << "components:";
    for (const std::string& cn : cls.component_names) table << " " << cn;
    table << "\n"
          << "ambient characters: " << cls.ambient.group.describe() << "\n"
          << "contractible: " << (cc::is_contractible(built) ? "yes" : "no") << "\n"
          << "classification:\n"
          << "  normal form: " << cls.sub.normal_form().describe() << "\n";

    json gens = json::array();
    auto ambient_gens = cls.sub.normal_form_generators();
    if (ambient_gens.empty()) {
        table << "  generators: none (trivial subgroup)\n";
    } else {
        table << "  generators:\n";
        for (const cc::Element& g : ambient_gens) {
            table << "    ";
            json row = json::object();
            for (std::size_t j = 0; j < parts; ++j) {
                cc::Element part = cls.ambient.projections[j].apply(g);
                if (j) table << ", ";
                table << cls.component_names[j] << " = " << show_vec(part);
                row[cls.component_names[j]] = vec_json(part);
            }
            table << "\n";
            gens.push_back(std::move(row));
        }
    }
    for (const cc::EdgeData& e : built.desc.edges)
        table << "constraint " << e.name << ": open " << built.desc.open_orbits[e.open_index].name
              << " specializes to closed " << built.desc.closed_orbits[e.closed_index].name
              << "\n";

    json results{{"command", "classify-line-bundles"},
                 {"chain", name},
                 {"kind", "graph"},
                 {"components", cls.component_names},
                 {"normal_form", group_json(cls.sub.normal_form())},
                 {"generators", gens}};

    int code = cls.sub.normal_form().is_trivial() ? 1 : 0;
    if (character) {
        // The tuple concatenates each component's coordinates in the order
        // reported under "components".
        std::size_t need = 0;
        for (std::size_t j = 0; j < parts; ++j)
            need += cls.ambient.injections[j].source().ngens();
        if (character->size() != need)
            throw cc::input_error("character tuple has " + std::to_string(character->size()) +
                                  " coordinates, the graph needs " + std::to_string(need));
        cc::Element total = cls.ambient.group.zero();
        std::size_t at = 0;
        for (std::size_t j = 0; j < parts; ++j) {
            const cc::FgAbelianGroup& part = cls.ambient.injections[j].source();
            cc::Element coords(character->begin() + at, character->begin() + at + part.ngens());
            at += part.ngens();
            total = cls.ambient.group.add(total, cls.ambient.injections[j].apply(part.reduce(coords)));
        }
        bool member = cls.sub.contains(total);
        table << "character " << show_vec(*character) << ": "
              << (member ? "compatible" : "not compatible") << "\n";
        results["character"] = vec_json(*character);
        results["compatible"] = member;
        code = member ? 0 : 1;
    }
    return finish(cmd, table.str(), std::move(results), code);
}

int run_classify_line_bundles(Command& cmd, const std::string& chain_ref,
                              const std::optional<cc::Element>& character) {
    const cc::ChainFile& f = cmd.load(chain_ref);
    const std::string name = cmd.entry_of(chain_ref);
    const cc::ChainEntry& entry = named(f.chains, name, "chain");
    switch (entry.kind) {
    case cc::ChainKind::orbit: return classify_orbit(cmd, name, entry, character);
    case cc::ChainKind::simple: return classify_simple(cmd, name, *entry.simple, character);
    case cc::ChainKind::graph: return classify_graph(cmd, name, f, entry.graph_ref, character);
    }
    throw cc::error("unreachable chain kind");
}

int run_classify_local_systems(Command& cmd, const std::string& chain_ref,
                               const std::optional<cc::Element>& character) {
    const cc::ChainFile& f = cmd.load(chain_ref);
    const std::string name = cmd.entry_of(chain_ref);
    const cc::ChainEntry& entry = named(f.chains, name, "chain");
    if (entry.kind != cc::ChainKind::simple)
        throw cc::input_error("chain '" + name + "' is not a two-orbit chain");
    const cc::SimpleChainDatum& datum = *entry.simple;
    cc::LocalSystemConstraint ls = cc::classify_local_systems(datum);

    std::ostringstream table;
    table << "chain: " << name << " (weight " << datum.n << ")\n"
          << "characters with local-system structure:\n";
    render_subgroup(table, ls.character_image(), "  ");
    table << "  full: " << (ls.character_image().is_full() ? "yes" : "no") << "\n";

    json congruences = json::array();
    int code = 0;
    std::vector<cc::Element> chars = report_characters(datum.char_s1, character);
    if (!chars.empty()) table << "degree congruences:\n";
    for (const cc::Element& chi : chars) {
        auto r = ls.residue_for(chi);
        if (r) {
            table << "  chi = " << show_vec(chi) << ": " << r->to_string() << "\n";
            congruences.push_back(json{{"chi", vec_json(chi)},
                                       {"mod", int_json(r->n)},
                                       {"residue", int_json(r->m)}});
        } else {
            table << "  chi = " << show_vec(chi) << ": no local-system structure\n";
            congruences.push_back(json{{"chi", vec_json(chi)}, {"none", true}});
            if (character) code = 1;
        }
    }
    if (chars.empty() && !character)
        table << "degree congruences: give --character (open character group is large)\n";

    json results{{"command", "classify-local-systems"},
                 {"chain", name},
                 {"image", subgroup_json(ls.character_image())},
                 {"full", ls.character_image().is_full()},
                 {"congruences", congruences}};
    return finish(cmd, table.str(), std::move(results), code);
}

int run_classify_tame(Command& cmd, const std::string& quotient_ref,
                      const std::optional<cc::Element>& character) {
    const cc::ChainFile& f = cmd.load(quotient_ref);
    const std::string name = cmd.entry_of(quotient_ref);
    const cc::QuotientEntry& q = named(f.quotients, name, "quotient");
    const cc::SimpleChainDatum& datum = *f.chains.at(q.chain_ref).simple;
    cc::TameQuotientConstraint tc = cc::classify_under_tame_quotient(datum, q.datum);
    bool flat = cc::flat_tame_criterion(datum, q.datum);

    std::ostringstream table;
    table << "quotient: " << name << " on chain " << q.chain_ref << "\n"
          << "subcategory of open characters:\n";
    render_subgroup(table, q.datum.sub, "  ");
    table << "flat: " << (flat ? "yes" : "no") << "\n";

    json congruences = json::array();
    int code = 0;
    std::vector<cc::Element> chars = report_characters(datum.char_s1, character);
    if (!chars.empty()) table << "degree congruences:\n";
    for (const cc::Element& chi : chars) {
        auto r = tc.residue_for(chi);
        if (r) {
            table << "  chi = " << show_vec(chi) << ": " << r->to_string() << "\n";
            congruences.push_back(json{{"chi", vec_json(chi)},
                                       {"mod", int_json(r->n)},
                                       {"residue", int_json(r->m)}});
        } else {
            table << "  chi = " << show_vec(chi) << ": outside the subcategory\n";
            congruences.push_back(json{{"chi", vec_json(chi)}, {"none", true}});
            if (character) code = 1;
        }
    }
    if (chars.empty() && !character)
        table << "degree congruences: give --character (open character group is large)\n";

    json results{{"command", "classify-tame"},
                 {"quotient", name},
                 {"chain", q.chain_ref},
                 {"subcategory", subgroup_json(q.datum.sub)},
                 {"flat", flat},
                 {"congruences", congruences}};
    return finish(cmd, table.str(), std::move(results), code);
}

int run_validate_object(Command& cmd, const std::string& object_ref, bool require_finite) {
    const cc::ChainFile& f = cmd.load(object_ref);
    const std::string name = cmd.entry_of(object_ref);
    const cc::ObjectEntry& obj = named(f.objects, name, "object");
    const cc::ChainEntry& chain = f.chains.at(obj.chain_ref);

    cc::ValidationReport report;
    if (chain.kind == cc::ChainKind::simple)
        report = cc::validate_cn_object(*chain.simple, *obj.filtered, require_finite);
    else if (chain.kind == cc::ChainKind::graph)
        report = cc::validate_assembly(cc::build_chain_graph(f.graphs.at(chain.graph_ref)),
                                       *obj.assembly);
    // Orbit objects carry no degeneration data; parsing already checked them.

    std::ostringstream table;
    table << "object: " << name << " on chain " << obj.chain_ref << "\n";
    json violations = json::array();
    if (report.ok()) {
        table << "valid: yes\n";
    } else {
        table << "valid: no\n";
        for (const cc::Violation& v : report.violations) {
            table << "  " << v.code << ": " << v.message << "\n";
            violations.push_back(json{{"code", v.code}, {"message", v.message}});
        }
    }
    json results{{"command", "validate-object"},
                 {"object", name},
                 {"chain", obj.chain_ref},
                 {"valid", report.ok()},
                 {"violations", violations}};
    return finish(cmd, table.str(), std::move(results), report.ok() ? 0 : 1);
}

int run_tame_quotient(Command& cmd, const std::string& ring_ref) {
    const cc::ChainFile& f = cmd.load(ring_ref);
    const std::string name = cmd.entry_of(ring_ref);
    const cc::RingEntry& ring = named(f.rings, name, "ring");
    if (ring.kind != cc::RingKind::ideal_adic)
        throw cc::input_error("ring '" + name + "' is not an ideal-adic presentation");
    cc::TameQuotientResult r = cc::tame_quotient(*ring.adic);
    cc::SpecializationDescription desc = cc::describe_specialization(r);

    std::ostringstream table;
    table << "ring: " << name << "\n" << "components:\n";
    json comps = json::array();
    for (const cc::TameComponentResult& comp : r.components) {
        table << "  " << comp.name << ": "
              << (comp.in_special_fiber ? "survives at zero" : "dropped at zero")
              << ", filtration "
              << (comp.filtration == cc::FiltrationKind::trivial ? "trivial" : "all") << "\n";
        comps.push_back(json{
            {"name", comp.name},
            {"in_special_fiber", comp.in_special_fiber},
            {"filtration", comp.filtration == cc::FiltrationKind::trivial ? "trivial" : "all"}});
    }
    std::vector<std::string> fiber = r.special_fiber();
    table << "special fiber:";
    for (const std::string& cn : fiber) table << " " << cn;
    if (fiber.empty()) table << " empty";
    table << "\n" << "specialization:\n";
    for (const std::string& line : desc.lines) table << "  " << line << "\n";

    json results{{"command", "tame-quotient"},
                 {"ring", name},
                 {"components", comps},
                 {"special_fiber", fiber},
                 {"specialization", desc.lines}};
    if (r.component_group) {
        table << "component group: " << r.component_group->group.describe() << " as "
              << r.component_group->gamma_image << "\n";
        results["component_group"] = json{{"group", group_json(r.component_group->group)},
                                          {"gamma_image", r.component_group->gamma_image}};
    }
    return finish(cmd, table.str(), std::move(results), fiber.empty() ? 1 : 0);
}

int run_hilbert_basis(Command& cmd, const std::string& ring_ref, const std::string& weights_text,
                      const std::string& constraint_name) {
    std::vector<cc::Int> weights;
    std::string shown = "(from --weights)";
    if (!ring_ref.empty()) {
        const cc::ChainFile& f = cmd.load(ring_ref);
        const std::string name = cmd.entry_of(ring_ref);
        const cc::RingEntry& ring = named(f.rings, name, "ring");
        if (ring.kind != cc::RingKind::weighted_free)
            throw cc::input_error("ring '" + name + "' is not a weighted free presentation");
        weights = ring.weighted->degrees;
        shown = name;
    } else {
        weights = parse_coords(weights_text);
    }
    cc::HilbertConstraint constraint = constraint_name == "nonneg"
                                           ? cc::HilbertConstraint::nonnegative
                                           : cc::HilbertConstraint::equal_zero;
    std::vector<std::vector<cc::Int>> basis = cc::hilbert_basis(weights, constraint);

    std::ostringstream table;
    table << "ring: " << shown << "\n"
          << "weights: " << show_vec(weights) << "\n"
          << "constraint: " << (constraint == cc::HilbertConstraint::equal_zero
                                    ? "total degree zero"
                                    : "total degree nonnegative")
          << "\n";
    json rows = json::array();
    json monomials = json::array();
    if (basis.empty()) {
        table << "basis: empty\n";
    } else {
        table << "basis:\n";
        for (const std::vector<cc::Int>& v : basis) {
            table << "  " << show_vec(v);
            if (constraint == cc::HilbertConstraint::equal_zero) {
                std::string mono = cc::Monomial{v}.to_string();
                table << "  " << mono;
                monomials.push_back(mono);
            }
            table << "\n";
            rows.push_back(vec_json(v));
        }
    }
    json results{{"command", "hilbert-basis"},
                 {"weights", vec_json(weights)},
                 {"constraint",
                  constraint == cc::HilbertConstraint::equal_zero ? "zero" : "nonneg"},
                 {"basis", rows}};
    if (constraint == cc::HilbertConstraint::equal_zero) results["monomials"] = monomials;

    int code = basis.empty() ? 1 : 0;
    if (cmd.format == "machine" && !cmd.file) {
        // No input file to embed: emit a document holding the presentation.
        results["exit_code"] = code;
        json doc;
        doc["meta"] = json{{"chaincalc_format", cc::chain_file_format_version}};
        doc["rings"]["input"] =
            json{{"kind", "weighted_free"}, {"degrees", vec_json(weights)}};
        doc["results"] = results;
        std::cout << doc.dump(2) << "\n";
        return code;
    }
    return finish(cmd, table.str(), std::move(results), code);
}

int run_check_admissible(Command& cmd, const std::string& tr_ref, const std::string& rho_ref,
                         const std::optional<cc::Element>& character) {
    const cc::ChainFile& f = cmd.load(tr_ref);
    cmd.load(rho_ref);
    const cc::LiePairing& tr = named(f.pairings, cmd.entry_of(tr_ref), "pairing");
    const cc::LiePairing& rho = named(f.pairings, cmd.entry_of(rho_ref), "pairing");
    cc::Element chi = character.value_or(cc::Element{});
    bool ok = cc::check_admissible(chi, tr, rho);

    std::ostringstream table;
    table << "basis:";
    for (const std::string& b : tr.basis) table << " " << b;
    table << "\ntrace form: (";
    for (std::size_t i = 0; i < tr.values.size(); ++i)
        table << (i ? ", " : "") << tr.values[i];
    table << ")\nhalf-sum form: (";
    for (std::size_t i = 0; i < rho.values.size(); ++i)
        table << (i ? ", " : "") << rho.values[i];
    table << ")\nadmissible: " << (ok ? "yes" : "no") << "\n";

    json trv = json::array(), rhov = json::array();
    for (const cc::Rational& v : tr.values) trv.push_back(v.str());
    for (const cc::Rational& v : rho.values) rhov.push_back(v.str());
    json results{{"command", "check-admissible"},
                 {"basis", tr.basis},
                 {"trace", trv},
                 {"half_sum", rhov},
                 {"admissible", ok}};
    return finish(cmd, table.str(), std::move(results), ok ? 0 : 1);
}

std::string exe_directory(const char* argv0) {
    try {
        namespace fs = std::filesystem;
        fs::path p = fs::weakly_canonical(fs::absolute(argv0));
        return p.parent_path().string();
    } catch (const std::exception&) {
        return "";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaincalc: classify equivariant bundles on fastened orbit chains"};
    app.require_subcommand(1);

    Command cmd;
    cmd.exe_dir = exe_directory(argv[0]);
    int rc = 0;

    auto add_format = [&](CLI::App* sub, std::string& slot) {
        sub->add_option("--format", slot, "output format")
            ->check(CLI::IsMember({"table", "machine"}))
            ->capture_default_str();
    };

    struct CharacterOpt {
        std::string text;
        CLI::Option* opt = nullptr;
        std::optional<cc::Element> get() const {
            if (!opt || opt->count() == 0) return std::nullopt;
            return parse_coords(text);
        }
    };
    auto add_character = [&](CLI::App* sub, CharacterOpt& c) {
        c.opt = sub->add_option("--character", c.text,
                                "character coordinates, comma separated (e.g. 1,0,-3)");
    };

    // check-fastened
    auto cf_ref = std::make_shared<std::string>();
    auto cf_fmt = std::make_shared<std::string>("table");
    auto* cf = app.add_subcommand("check-fastened",
                                  "test whether a normal character has infinite order");
    cf->add_option("ref", *cf_ref, "normal character, as dataset:name or file.json:name")
        ->required();
    add_format(cf, *cf_fmt);
    cf->callback([&, cf_ref, cf_fmt] {
        cmd.format = *cf_fmt;
        rc = run_check_fastened(cmd, *cf_ref);
    });

    // classify-line-bundles
    auto clb_ref = std::make_shared<std::string>();
    auto clb_fmt = std::make_shared<std::string>("table");
    auto clb_chr = std::make_shared<CharacterOpt>();
    auto* clb = app.add_subcommand("classify-line-bundles",
                                   "equivariant line bundle classes on a chain");
    clb->add_option("--chain", *clb_ref, "chain reference")->required();
    add_character(clb, *clb_chr);
    add_format(clb, *clb_fmt);
    clb->callback([&, clb_ref, clb_fmt, clb_chr] {
        cmd.format = *clb_fmt;
        rc = run_classify_line_bundles(cmd, *clb_ref, clb_chr->get());
    });

    // classify-local-systems
    auto cls_ref = std::make_shared<std::string>();
    auto cls_fmt = std::make_shared<std::string>("table");
    auto cls_chr = std::make_shared<CharacterOpt>();
    auto* cls = app.add_subcommand("classify-local-systems",
                                   "equivariant local systems on a chain's open orbit");
    cls->add_option("--chain", *cls_ref, "chain reference")->required();
    add_character(cls, *cls_chr);
    add_format(cls, *cls_fmt);
    cls->callback([&, cls_ref, cls_fmt, cls_chr] {
        cmd.format = *cls_fmt;
        rc = run_classify_local_systems(cmd, *cls_ref, cls_chr->get());
    });

    // classify-tame
    auto ct_ref = std::make_shared<std::string>();
    auto ct_fmt = std::make_shared<std::string>("table");
    auto ct_chr = std::make_shared<CharacterOpt>();
    auto* ct = app.add_subcommand("classify-tame",
                                  "classification under a tame quotient datum");
    ct->add_option("--quotient", *ct_ref, "quotient reference")->required();
    add_character(ct, *ct_chr);
    add_format(ct, *ct_fmt);
    ct->callback([&, ct_ref, ct_fmt, ct_chr] {
        cmd.format = *ct_fmt;
        rc = run_classify_tame(cmd, *ct_ref, ct_chr->get());
    });

    // validate-object
    auto vo_ref = std::make_shared<std::string>();
    auto vo_fmt = std::make_shared<std::string>("table");
    auto vo_fin = std::make_shared<bool>(false);
    auto* vo = app.add_subcommand("validate-object", "validate an object against its chain");
    vo->add_option("--object", *vo_ref, "object reference")->required();
    vo->add_flag("--require-finite", *vo_fin, "reject lines of infinite degree");
    add_format(vo, *vo_fmt);
    vo->callback([&, vo_ref, vo_fmt, vo_fin] {
        cmd.format = *vo_fmt;
        rc = run_validate_object(cmd, *vo_ref, *vo_fin);
    });

    // tame-quotient
    auto tq_ref = std::make_shared<std::string>();
    auto tq_fmt = std::make_shared<std::string>("table");
    auto* tq = app.add_subcommand("tame-quotient",
                                  "universal tame quotient of an ideal-adic presentation");
    tq->add_option("--ring", *tq_ref, "ring reference")->required();
    add_format(tq, *tq_fmt);
    tq->callback([&, tq_ref, tq_fmt] {
        cmd.format = *tq_fmt;
        rc = run_tame_quotient(cmd, *tq_ref);
    });

    // hilbert-basis
    auto hb_ref = std::make_shared<std::string>();
    auto hb_weights = std::make_shared<std::string>();
    auto hb_con = std::make_shared<std::string>("zero");
    auto hb_fmt = std::make_shared<std::string>("table");
    auto* hb = app.add_subcommand("hilbert-basis",
                                  "minimal solutions of the weight constraint");
    auto* hb_ring_opt = hb->add_option("--ring", *hb_ref, "weighted free ring reference");
    auto* hb_weights_opt =
        hb->add_option("--weights", *hb_weights, "weights, comma separated (e.g. 1,-1)");
    hb_ring_opt->excludes(hb_weights_opt);
    hb->add_option("--constraint", *hb_con, "zero or nonneg")
        ->check(CLI::IsMember({"zero", "nonneg"}))
        ->capture_default_str();
    add_format(hb, *hb_fmt);
    hb->callback([&, hb_ref, hb_weights, hb_con, hb_fmt, hb_ring_opt, hb_weights_opt] {
        if (hb_ring_opt->count() == 0 && hb_weights_opt->count() == 0)
            throw cc::input_error("hilbert-basis needs --ring or --weights");
        cmd.format = *hb_fmt;
        rc = run_hilbert_basis(cmd, *hb_ref, *hb_weights, *hb_con);
    });

    // check-admissible
    auto ca_tr = std::make_shared<std::string>();
    auto ca_rho = std::make_shared<std::string>();
    auto ca_fmt = std::make_shared<std::string>("table");
    auto ca_chr = std::make_shared<CharacterOpt>();
    auto* ca = app.add_subcommand("check-admissible",
                                  "compare a trace pairing against half-sum values");
    ca->add_option("--tr", *ca_tr, "trace pairing reference")->required();
    ca->add_option("--rho", *ca_rho, "half-sum pairing reference")->required();
    add_character(ca, *ca_chr);
    add_format(ca, *ca_fmt);
    ca->callback([&, ca_tr, ca_rho, ca_fmt, ca_chr] {
        cmd.format = *ca_fmt;
        rc = run_check_admissible(cmd, *ca_tr, *ca_rho, ca_chr->get());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const cc::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const cc::chain_file_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
