#pragma once

#include "chaincalc/filtered.hpp"

namespace chaincalc {

// An orbit and its character group.
struct OrbitInfo {
    std::string name;
    FgAbelianGroup chars;
};

// One intermediate two-orbit chain of a fastened orbit chain: it joins the
// open orbit a(k) to the closed orbit nu(k).  ident carries the open
// orbit's characters onto the chain's char_s1 (must be an isomorphism);
// pull carries the closed orbit's characters onto char_s0.
struct EdgeData {
    std::string name;
    std::size_t open_index;
    std::size_t closed_index;
    SimpleChainDatum chain;
    AbHom ident; // Char(U_{a(k)}) -> chain.char_s1
    AbHom pull;  // Char(Z_{nu(k)}) -> chain.char_s0
};

struct ChainGraph {
    std::string name;
    std::vector<OrbitInfo> open_orbits;
    std::vector<OrbitInfo> closed_orbits;
    std::vector<EdgeData> edges;
};

struct GraphVertex {
    enum class Kind { open_orbit, middle_upper, middle_lower, closed_orbit };
    Kind kind;
    std::size_t index; // orbit or edge index, by kind
    std::string label;
};

// The incidence graph and its reduction.  Full graph: one vertex per open
// orbit, two per edge (upper and lower copies of the intermediate orbit),
// one per closed orbit; arrows a(k) -> k_upper <- k_lower -> nu(k).
// Reduced graph: upper copies are contracted into their open orbits,
// leaving v_a(k) <- k_lower -> nu(k).  Contraction preserves cycle rank.
struct BuiltGraph {
    ChainGraph desc;
    std::vector<GraphVertex> full_vertices;
    std::vector<std::pair<std::size_t, std::size_t>> full_arrows;
    std::vector<GraphVertex> reduced_vertices;
    std::vector<std::pair<std::size_t, std::size_t>> reduced_arrows;
};

ValidationReport validate_chain_graph(const ChainGraph& g);
// Throws structural_error when validation fails.
BuiltGraph build_chain_graph(const ChainGraph& g);

// True iff the underlying undirected graph is a forest.
bool is_contractible(const BuiltGraph& g);

// Compatible tuples ((chi_j), (lambda_i)) in the sum of all orbit character
// groups: for every edge, the specialization of the open character matches
// the pulled-back closed character.
struct GraphClassification {
    DirectSum ambient; // open orbit chars, then closed orbit chars
    std::vector<std::string> component_names;
    Subgroup sub;
    std::vector<AbHom> edge_constraints; // per edge: ambient.group -> char_s0
};

GraphClassification classify_line_bundles_graph(const BuiltGraph& g);

// A candidate tuple of line-bundle data on all orbits.
struct LineBundleAssembly {
    std::vector<Element> open_chars;
    std::vector<Element> closed_chars;
};

// Vector-bundle data: a character multiset per orbit and a filtered object
// per edge recording how the open data degenerates along it.
struct VectorBundleAssembly {
    std::vector<std::vector<Element>> open_chars;
    std::vector<std::vector<Element>> closed_chars;
    std::vector<FilteredObject> edge_objects;
};

ValidationReport validate_assembly(const BuiltGraph& g, const LineBundleAssembly& a);
ValidationReport validate_assembly(const BuiltGraph& g, const VectorBundleAssembly& a);

} // namespace chaincalc
