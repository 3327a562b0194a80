#pragma once

#include <optional>
#include <string>

#include "chaincalc/group_datum.hpp"

namespace chaincalc {

// Component-group data on both stabilizers of a chain, with the
// specialization map between their component characters.
struct ChainComponentData {
    GroupDatum com_s1;
    GroupDatum com_s0;
    AbHom sigma_res; // com_s1.com_char_group -> com_s0.com_char_group
};

// Restriction of characters to a maximal torus lattice at the closed point,
// used by the top-wedge flatness test.
struct TopWedgeData {
    FgAbelianGroup lattice; // free
    AbHom r0;               // char_s0 -> lattice
    Element top_char0;      // in char_s0
};

// One fastened two-orbit chain: an open orbit degenerating to a closed one
// along a one-parameter subgroup of weight n on the normal line.
//   char_s1: characters of the open-orbit stabilizer
//   char_s0: characters of the closed-orbit stabilizer
//   char_l0: characters of the normal-line stabilizer at the closed point
//   lim_map: specialization of characters, char_s1 -> char_s0
//   iota_res: restriction along the inclusion, char_l0 -> char_s0
//   gamma_pair: pairing with the contracting cocharacter, char_l0 -> Z
//   mu_n_res: residue of the mu_n-action, char_s0 -> Z/n
//   act_char: character of the normal-line action inside char_l0
struct SimpleChainDatum {
    std::string name;
    Int n;
    FgAbelianGroup char_s1, char_s0, char_l0;
    AbHom lim_map;
    AbHom iota_res;
    AbHom gamma_pair;
    AbHom mu_n_res;
    Element act_char;
    std::optional<ChainComponentData> com;
    std::optional<TopWedgeData> top;
};

ValidationReport validate_simple_chain(const SimpleChainDatum& c);

// Throws precondition_error when the chain fails validation.
void require_valid_chain(const SimpleChainDatum& c);

// Arithmetic progression m + nZ; n = 1 means all integers.
struct ResidueClass {
    Int n;
    Int m;
    bool contains(const Int& d) const { return mod_floor(d - m, n) == 0; }
    std::string to_string() const;
    bool operator==(const ResidueClass&) const = default;
};

// Residue of mu_n on the specialized character, in [0, n).
Int m_class(const SimpleChainDatum& c, const Element& chi);

// Degrees d for which (chi, d) extends across the chain.
ResidueClass classify_line_bundles_simple(const SimpleChainDatum& c, const Element& chi);

// Specialized character of chi at the closed orbit.
Element nearby_cycles(const SimpleChainDatum& c, const Element& chi);

// Pairs (chi, chi') with iota_res(chi') = lim_map(chi), as a subgroup of
// char_s1 (+) char_l0; the degree of a pair is gamma_pair(chi').
struct FiberProduct {
    DirectSum sum;
    Subgroup sub;
    AbHom degree; // sum.group -> Z

    Element pair_element(const Element& chi, const Element& chi_prime) const;
    bool contains_pair(const Element& chi, const Element& chi_prime) const;
    Int degree_of_pair(const Element& chi, const Element& chi_prime) const;
};

FiberProduct line_bundle_fiber_product(const SimpleChainDatum& c);

// An equivariant line bundle class on the chain: open-orbit character plus
// the degree of the extension across the closed orbit.
struct LineBundleClass {
    Element chi;
    Int degree;
};

// Throws domain_error unless degree lies in the residue class of chi.
LineBundleClass make_line_bundle_class(const SimpleChainDatum& c, const Element& chi,
                                       const Int& degree);

// Exact pairing values of a character differential against a fixed basis of
// the Lie algebra, used by the admissibility test.
struct LiePairing {
    std::vector<std::string> basis;
    std::vector<Rational> values;
};

// True iff rho equals half the trace form on the common basis.
bool check_admissible(const Element& chi, const LiePairing& tr_pairing,
                      const LiePairing& rho_pairing);

} // namespace chaincalc
