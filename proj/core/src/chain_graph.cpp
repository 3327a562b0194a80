#include "chaincalc/chain_graph.hpp"

#include <algorithm>
#include <set>

#include "chaincalc/errors.hpp"

namespace chaincalc {

ValidationReport validate_chain_graph(const ChainGraph& g) {
    ValidationReport r;
    std::set<std::string> names;
    for (const OrbitInfo& o : g.open_orbits)
        if (!names.insert(o.name).second) r.add("orbit-name", "duplicate orbit name " + o.name);
    for (const OrbitInfo& o : g.closed_orbits)
        if (!names.insert(o.name).second) r.add("orbit-name", "duplicate orbit name " + o.name);
    std::set<std::string> edge_names;
    for (const EdgeData& e : g.edges) {
        if (!edge_names.insert(e.name).second) r.add("edge-name", "duplicate edge name " + e.name);
        if (e.open_index >= g.open_orbits.size()) {
            r.add("edge-open", e.name + ": open orbit index out of range");
            continue;
        }
        if (e.closed_index >= g.closed_orbits.size()) {
            r.add("edge-closed", e.name + ": closed orbit index out of range");
            continue;
        }
        ValidationReport cr = validate_simple_chain(e.chain);
        r.merge(cr);
        if (!cr.ok()) continue;
        if (!(e.ident.source() == g.open_orbits[e.open_index].chars &&
              e.ident.target() == e.chain.char_s1)) {
            r.add("ident-shape", e.name + ": ident must map the open orbit's characters to char_s1");
            continue;
        }
        if (!(e.pull.source() == g.closed_orbits[e.closed_index].chars &&
              e.pull.target() == e.chain.char_s0)) {
            r.add("pull-shape", e.name + ": pull must map the closed orbit's characters to char_s0");
            continue;
        }
        if (!e.ident.is_isomorphism())
            r.add("ident-iso", e.name + ": the open-orbit identification must be an isomorphism");
    }
    return r;
}

BuiltGraph build_chain_graph(const ChainGraph& g) {
    ValidationReport r = validate_chain_graph(g);
    if (!r.ok()) throw structural_error("chain graph '" + g.name + "' is invalid:\n" + r.to_string());
    BuiltGraph b;
    b.desc = g;
    const std::size_t nu = g.open_orbits.size();
    const std::size_t ne = g.edges.size();
    using K = GraphVertex::Kind;
    for (std::size_t j = 0; j < nu; ++j)
        b.full_vertices.push_back({K::open_orbit, j, g.open_orbits[j].name});
    for (std::size_t k = 0; k < ne; ++k) {
        b.full_vertices.push_back({K::middle_upper, k, g.edges[k].name + "^(1)"});
        b.full_vertices.push_back({K::middle_lower, k, g.edges[k].name + "^(2)"});
    }
    for (std::size_t i = 0; i < g.closed_orbits.size(); ++i)
        b.full_vertices.push_back({K::closed_orbit, i, g.closed_orbits[i].name});
    auto full_upper = [&](std::size_t k) { return nu + 2 * k; };
    auto full_lower = [&](std::size_t k) { return nu + 2 * k + 1; };
    auto full_closed = [&](std::size_t i) { return nu + 2 * ne + i; };
    for (std::size_t k = 0; k < ne; ++k) {
        b.full_arrows.emplace_back(g.edges[k].open_index, full_upper(k));
        b.full_arrows.emplace_back(full_lower(k), full_upper(k));
        b.full_arrows.emplace_back(full_lower(k), full_closed(g.edges[k].closed_index));
    }
    for (std::size_t j = 0; j < nu; ++j)
        b.reduced_vertices.push_back({K::open_orbit, j, "v_" + g.open_orbits[j].name});
    for (std::size_t k = 0; k < ne; ++k)
        b.reduced_vertices.push_back({K::middle_lower, k, g.edges[k].name + "^(2)"});
    for (std::size_t i = 0; i < g.closed_orbits.size(); ++i)
        b.reduced_vertices.push_back({K::closed_orbit, i, g.closed_orbits[i].name});
    for (std::size_t k = 0; k < ne; ++k) {
        b.reduced_arrows.emplace_back(nu + k, g.edges[k].open_index);
        b.reduced_arrows.emplace_back(nu + k, nu + ne + g.edges[k].closed_index);
    }
    return b;
}

namespace {

// Union-find cycle detection; a forest never joins two joined vertices.
bool arrows_form_forest(std::size_t nvertices,
                        const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
    std::vector<std::size_t> parent(nvertices);
    for (std::size_t i = 0; i < nvertices; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, bv] : arrows) {
        std::size_t ra = find(a), rb = find(bv);
        if (ra == rb) return false;
        parent[ra] = rb;
    }
    return true;
}

} // namespace

bool is_contractible(const BuiltGraph& g) {
    return arrows_form_forest(g.full_vertices.size(), g.full_arrows);
}

GraphClassification classify_line_bundles_graph(const BuiltGraph& g) {
    const ChainGraph& d = g.desc;
    std::vector<FgAbelianGroup> parts;
    std::vector<std::string> names;
    for (const OrbitInfo& o : d.open_orbits) {
        parts.push_back(o.chars);
        names.push_back(o.name);
    }
    for (const OrbitInfo& o : d.closed_orbits) {
        parts.push_back(o.chars);
        names.push_back(o.name);
    }
    DirectSum ambient = direct_sum(parts);
    std::vector<FgAbelianGroup> targets;
    for (const EdgeData& e : d.edges) targets.push_back(e.chain.char_s0);
    DirectSum tsum = direct_sum(targets);
    IntMatrix total(tsum.group.ngens(), ambient.group.ngens());
    std::vector<AbHom> rows;
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        const EdgeData& e = d.edges[k];
        AbHom via_open = compose(e.chain.lim_map,
                                 compose(e.ident, ambient.projections[e.open_index]));
        AbHom via_closed =
            compose(e.pull, ambient.projections[d.open_orbits.size() + e.closed_index]);
        AbHom row = hom_difference(via_open, via_closed);
        total = total + tsum.injections[k].matrix() * row.matrix();
        rows.push_back(std::move(row));
    }
    AbHom constraint(ambient.group, tsum.group, std::move(total));
    Subgroup sub = kernel(constraint);
    return GraphClassification{std::move(ambient), std::move(names), std::move(sub),
                               std::move(rows)};
}

ValidationReport validate_assembly(const BuiltGraph& g, const LineBundleAssembly& a) {
    ValidationReport r;
    const ChainGraph& d = g.desc;
    if (a.open_chars.size() != d.open_orbits.size() ||
        a.closed_chars.size() != d.closed_orbits.size()) {
        r.add("assembly-shape", "assembly must carry one character per orbit");
        return r;
    }
    for (const EdgeData& e : d.edges) {
        Element from_open = e.chain.lim_map.apply(e.ident.apply(a.open_chars[e.open_index]));
        Element from_closed = e.pull.apply(a.closed_chars[e.closed_index]);
        if (from_open != from_closed)
            r.add("edge-mismatch", e.name + ": open character specializes to " +
                                       [&] {
                                           std::string s = "(";
                                           for (std::size_t i = 0; i < from_open.size(); ++i)
                                               s += (i ? "," : "") + from_open[i].str();
                                           return s + ")";
                                       }() +
                                       " but the closed character pulls back differently");
    }
    return r;
}

namespace {

std::vector<Element> sorted_multiset(std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

ValidationReport validate_assembly(const BuiltGraph& g, const VectorBundleAssembly& a) {
    ValidationReport r;
    const ChainGraph& d = g.desc;
    if (a.open_chars.size() != d.open_orbits.size() ||
        a.closed_chars.size() != d.closed_orbits.size() ||
        a.edge_objects.size() != d.edges.size()) {
        r.add("assembly-shape",
              "assembly must carry one character multiset per orbit and one filtered object per edge");
        return r;
    }
    for (std::size_t k = 0; k < d.edges.size(); ++k) {
        const EdgeData& e = d.edges[k];
        const FilteredObject& obj = a.edge_objects[k];
        if (!(obj.char_group() == e.chain.char_s1)) {
            r.add("object-chars", e.name + ": filtered object lives over the wrong character group");
            continue;
        }
        std::vector<Element> expected_open;
        for (const Element& chi : a.open_chars[e.open_index])
            expected_open.push_back(e.ident.apply(chi));
        if (sorted_multiset(expected_open) != obj.character_multiset())
            r.add("edge-forget", e.name + ": forgetting the filtration does not match the open data");
        std::vector<Element> graded, expected_closed;
        for (const FilteredLine& l : obj.lines()) graded.push_back(e.chain.lim_map.apply(l.chi));
        for (const Element& lam : a.closed_chars[e.closed_index])
            expected_closed.push_back(e.pull.apply(lam));
        if (sorted_multiset(std::move(graded)) != sorted_multiset(std::move(expected_closed)))
            r.add("edge-graded", e.name + ": associated graded does not match the closed data");
    }
    return r;
}

} // namespace chaincalc
