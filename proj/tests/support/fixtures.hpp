#pragma once

// Hand-pinned example data shared across the test suites: the three-orbit
// degeneration picture over SU(1,1) (two signed chains joined over a common
// closed orbit) and the two Sp(4) configurations (one boundary edge, one
// one-parameter family with a tame quotient).

#include <string>

#include "chaincalc/chain.hpp"
#include "chaincalc/chain_graph.hpp"
#include "chaincalc/filtered.hpp"
#include "chaincalc/tame_ring.hpp"

namespace fixtures {

using namespace chaincalc;

inline FgAbelianGroup z() { return FgAbelianGroup::free_group(1); }
inline FgAbelianGroup z2() { return FgAbelianGroup::cyclic(2); }

inline AbHom mod2_from_z() { return AbHom(z(), z2(), IntMatrix::from_rows({{Int(1)}})); }

// Signed chain of the SU(1,1) picture: open stabilizer Z/2 degenerating to
// the closed orbit with normal weight 2; sign flips the pairing direction.
inline SimpleChainDatum su11_chain(int sign) {
    GroupDatum com_open{"com-open", z2(), z2(), AbHom::identity(z2())};
    GroupDatum com_closed{"com-closed", z2(), z2(), AbHom::identity(z2())};
    FgAbelianGroup lattice = FgAbelianGroup::trivial();
    return SimpleChainDatum{
        sign > 0 ? "oplus" : "ominus",
        Int(2),
        z2(),
        z2(),
        z(),
        AbHom::identity(z2()),
        mod2_from_z(),
        AbHom(z(), z(), IntMatrix::from_rows({{Int(sign)}})),
        AbHom::identity(z2()),
        {Int(2 * sign)},
        ChainComponentData{com_open, com_closed, AbHom::identity(z2())},
        TopWedgeData{lattice, AbHom::zero_hom(z2(), lattice), z2().zero()}};
}

inline SimpleChainDatum su11_oplus() { return su11_chain(+1); }
inline SimpleChainDatum su11_ominus() { return su11_chain(-1); }

// Star graph over the SU(1,1) picture: two open orbits (the signed halves)
// over one closed orbit with character group Z.
inline ChainGraph su11_graph() {
    ChainGraph g;
    g.name = "ntheta";
    g.open_orbits = {{"plus", z2()}, {"minus", z2()}};
    g.closed_orbits = {{"zero", z()}};
    g.edges.push_back({"zplus", 0, 0, su11_oplus(), AbHom::identity(z2()), mod2_from_z()});
    g.edges.push_back({"zminus", 1, 0, su11_ominus(), AbHom::identity(z2()), mod2_from_z()});
    return g;
}

// Boundary edge of the Sp(4) picture: normal weight 1, normal-line
// characters Z/2 (+) Z with the torsion coordinate restricting to the
// closed stabilizer and the free coordinate carrying the pairing.
inline SimpleChainDatum sp4_edge() {
    FgAbelianGroup l0(1, {Int(2)});
    return SimpleChainDatum{
        "sp4-edge",
        Int(1),
        z2(),
        z2(),
        l0,
        AbHom::identity(z2()),
        AbHom(l0, z2(), IntMatrix::from_rows({{Int(1), Int(0)}})),
        AbHom(l0, z(), IntMatrix::from_rows({{Int(0), Int(1)}})),
        AbHom::zero_hom(z2(), FgAbelianGroup::trivial()),
        {Int(0), Int(1)},
        {},
        {}};
}

// One-parameter family member of the Sp(4) picture: open stabilizer G_m,
// closed stabilizer with component group Z/2, normal weight 2.
inline SimpleChainDatum sp4_family() {
    FgAbelianGroup t = FgAbelianGroup::trivial();
    GroupDatum com_open{"family-open", z(), t, AbHom::zero_hom(t, z())};
    GroupDatum com_closed{"family-closed", z2(), z2(), AbHom::identity(z2())};
    return SimpleChainDatum{
        "sp4-family",
        Int(2),
        z(),
        z2(),
        z(),
        mod2_from_z(),
        mod2_from_z(),
        AbHom::identity(z()),
        AbHom::identity(z2()),
        {Int(2)},
        ChainComponentData{com_open, com_closed, AbHom::zero_hom(t, z2())},
        {}};
}

// Tame-quotient datum of the family: the full open character lattice maps
// onto the quotient characters Z, which project to char_s0 by reduction.
inline TameQuotientDatum sp4_family_quotient() {
    const SimpleChainDatum c = sp4_family();
    Subgroup sub(c.char_s1, {{Int(1)}});
    return TameQuotientDatum{std::move(sub), z(), AbHom::identity(z()), mod2_from_z()};
}

// Adic side of the family: one integral component G_m carrying a proper
// principal ideal, with component group Z/2 of the general fiber.
inline IdealAdicPresentation sp4_family_ring() {
    IdealAdicPresentation p;
    p.components.push_back({"Gm", true, IdealKind::proper_principal});
    p.component_group = ComponentGroupInfo{z2(), "mu_2 in G_m"};
    return p;
}

} // namespace fixtures
