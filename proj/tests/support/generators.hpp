#pragma once

// Deterministic random data for property tests: groups, homomorphisms,
// valid chain data, and orbit graphs.  All generators take an explicit
// engine so every suite is reproducible from its seed.

#include <optional>
#include <random>
#include <vector>

#include "chaincalc/chain.hpp"
#include "chaincalc/chain_graph.hpp"
#include "chaincalc/errors.hpp"

namespace testgen {

using namespace chaincalc;
using Engine = std::mt19937_64;

inline long long pick(Engine& eng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(eng);
}

inline Int pick_int(Engine& eng, long long lo, long long hi) { return Int(pick(eng, lo, hi)); }

// Random canonical group with torsion product bounded by order_bound and
// free rank up to max_free.
inline FgAbelianGroup random_group(Engine& eng, long long order_bound, int max_free,
                                   int max_torsion = 2) {
    std::vector<Int> torsion;
    Int product = 1;
    long long count = pick(eng, 0, max_torsion);
    Int prev = 1;
    for (long long i = 0; i < count; ++i) {
        // Keep the divisibility chain: each order is a multiple of the last.
        long long room = order_bound;
        Int used = product;
        if (used > 1) room = order_bound / static_cast<long long>(used);
        Int max_mult = prev == 1 ? Int(room) : Int(room) / prev;
        if ((prev == 1 && room < 2) || (prev > 1 && max_mult < 1)) break;
        Int d;
        if (prev == 1) d = pick_int(eng, 2, std::max<long long>(2, room));
        else d = prev * pick_int(eng, 1, std::max<long long>(1, static_cast<long long>(max_mult)));
        if (d < 2 || product * d > order_bound) break;
        torsion.push_back(d);
        product *= d;
        prev = d;
    }
    return FgAbelianGroup(pick(eng, 0, max_free), torsion);
}

inline FgAbelianGroup random_finite_group(Engine& eng, long long order_bound,
                                          int max_torsion = 3) {
    return random_group(eng, order_bound, 0, max_torsion);
}

inline Element random_element(Engine& eng, const FgAbelianGroup& g, long long bound = 20) {
    Element x(g.ngens());
    for (auto& c : x) c = pick_int(eng, -bound, bound);
    return g.reduce(std::move(x));
}

// Random well-defined homomorphism: columns over torsion generators are
// forced onto multiples of d_i / gcd(d_i, d_j).
inline AbHom random_hom(Engine& eng, const FgAbelianGroup& src, const FgAbelianGroup& tgt,
                        long long coeff = 6) {
    IntMatrix m(tgt.ngens(), src.ngens());
    for (std::size_t j = 0; j < src.ngens(); ++j) {
        bool jt = j < src.torsion_count();
        for (std::size_t i = 0; i < tgt.ngens(); ++i) {
            if (!jt) {
                m.at(i, j) = pick_int(eng, -coeff, coeff);
            } else if (i < tgt.torsion_count()) {
                Int step = tgt.torsion()[i] / gcd(tgt.torsion()[i], src.torsion()[j]);
                m.at(i, j) = step * pick_int(eng, -coeff, coeff);
            } // torsion source to free target stays 0
        }
    }
    return AbHom(src, tgt, std::move(m));
}

// Random automorphism by rejection; identity when none is found quickly.
inline AbHom random_automorphism(Engine& eng, const FgAbelianGroup& g, int tries = 12) {
    for (int t = 0; t < tries; ++t) {
        AbHom h = random_hom(eng, g, g, 3);
        if (h.is_isomorphism()) return h;
    }
    return AbHom::identity(g);
}

struct ChainOptions {
    long long order_bound = 60; // bound on finite parts of char_s0 / char_s1
    long long max_n = 12;
    bool with_com = false;
    bool with_top = false;
};

// A valid chain built from the exact extension model: char_l0 is the
// extension of char_s0 by one generator e0 of gamma-weight n, iota_res
// kills e0, and mu_n_res is the forced residue of gamma.
inline SimpleChainDatum random_valid_chain(Engine& eng, const ChainOptions& opt = {}) {
    Int n = pick_int(eng, 1, opt.max_n);
    FgAbelianGroup s0 = random_group(eng, opt.order_bound, 1);
    FgAbelianGroup s1 = random_group(eng, opt.order_bound, 1);
    std::size_t n0 = s0.ngens();

    // Presentation of char_l0 on lifts of the s0 generators plus e0.
    IntMatrix relators(s0.torsion_count(), n0 + 1);
    std::vector<Int> c(s0.torsion_count());
    for (std::size_t i = 0; i < s0.torsion_count(); ++i) {
        const Int& d = s0.torsion()[i];
        Int step = d / gcd(d, n);
        c[i] = step * pick_int(eng, -2, 2);
        relators.at(i, i) = d;
        relators.at(i, n0) = -c[i];
    }
    CanonicalPresentation cp = canonicalize_with_maps(n0 + 1, relators);
    FgAbelianGroup l0 = cp.group;

    Element e0(n0 + 1, Int(0));
    e0[n0] = 1;
    Element act = l0.reduce(cp.to_canonical.apply(e0));

    IntMatrix iota_pres(n0, n0 + 1);
    for (std::size_t i = 0; i < n0; ++i) iota_pres.at(i, i) = 1;
    AbHom iota(l0, s0, iota_pres * cp.from_canonical);

    IntMatrix gamma_pres(1, n0 + 1);
    gamma_pres.at(0, n0) = n;
    for (std::size_t i = 0; i < s0.torsion_count(); ++i)
        gamma_pres.at(0, i) = c[i] * n / s0.torsion()[i];
    for (std::size_t i = s0.torsion_count(); i < n0; ++i)
        gamma_pres.at(0, i) = pick_int(eng, -4, 4);
    AbHom gamma(l0, FgAbelianGroup::free_group(1), gamma_pres * cp.from_canonical);

    // mu_n is forced on the image of iota, which is everything.
    FgAbelianGroup zn = FgAbelianGroup::cyclic(n);
    IntMatrix mu(zn.ngens(), n0);
    if (!zn.is_trivial())
        for (std::size_t i = 0; i < n0; ++i) mu.at(0, i) = gamma_pres.at(0, i);
    AbHom mu_n(s0, zn, std::move(mu));

    AbHom lim = random_hom(eng, s1, s0);

    SimpleChainDatum chain{"random", n, s1, s0, l0, lim, iota, gamma, mu_n, act, {}, {}};

    if (opt.with_com) {
        // Component characters: the torsion subgroups, included as-is.
        auto torsion_part = [](const FgAbelianGroup& g) {
            std::vector<Int> t = g.torsion();
            return FgAbelianGroup(0, std::move(t));
        };
        auto inclusion = [](const FgAbelianGroup& sub, const FgAbelianGroup& amb) {
            IntMatrix m(amb.ngens(), sub.ngens());
            for (std::size_t j = 0; j < sub.ngens(); ++j) m.at(j, j) = 1;
            return AbHom(sub, amb, std::move(m));
        };
        FgAbelianGroup com1 = torsion_part(s1), com0 = torsion_part(s0);
        AbHom pb1 = inclusion(com1, s1), pb0 = inclusion(com0, s0);
        // sigma = torsion coordinates of lim on the torsion subgroup; the
        // free coordinates of lim(torsion) vanish, so the mu_n routes agree
        // exactly.
        IntMatrix sig(com0.ngens(), com1.ngens());
        IntMatrix lp = lim.matrix() * pb1.matrix();
        for (std::size_t i = 0; i < com0.ngens(); ++i)
            for (std::size_t j = 0; j < com1.ngens(); ++j) sig.at(i, j) = lp.at(i, j);
        AbHom sigma(com1, com0, std::move(sig));
        chain.com = ChainComponentData{GroupDatum{"s1", s1, com1, pb1},
                                       GroupDatum{"s0", s0, com0, pb0}, sigma};
    }
    if (opt.with_top) {
        FgAbelianGroup lattice = FgAbelianGroup::free_group(s0.free_rank());
        IntMatrix r0(s0.free_rank(), n0);
        for (std::size_t i = 0; i < s0.free_rank(); ++i) r0.at(i, s0.torsion_count() + i) = 1;
        chain.top = TopWedgeData{lattice, AbHom(s0, lattice, std::move(r0)),
                                 random_element(eng, s0)};
    }

    ValidationReport vr = validate_simple_chain(chain);
    if (!vr.ok()) throw invariant_error("generator produced an invalid chain:\n" + vr.to_string());
    return chain;
}

// Valid chain on finite character groups, for exhaustive comparisons.
inline SimpleChainDatum random_finite_chain(Engine& eng, long long order_bound,
                                            bool with_com = false) {
    ChainOptions opt;
    opt.order_bound = order_bound;
    opt.with_com = with_com;
    for (;;) {
        SimpleChainDatum c = random_valid_chain(eng, opt);
        if (c.char_s1.is_finite() && c.char_s0.is_finite()) return c;
    }
}

struct GraphOptions {
    long long product_bound = 10000; // bound on the product of orbit group orders
    int max_open = 2, max_closed = 2, max_edges = 3;
};

// Random orbit graph with finite orbit character groups whose order
// product stays under the bound, so classifications can be checked against
// exhaustive enumeration.
inline ChainGraph random_graph(Engine& eng, const GraphOptions& opt = {}) {
    ChainGraph g;
    g.name = "random-graph";
    long long budget = opt.product_bound;
    int nopen = static_cast<int>(pick(eng, 1, opt.max_open));
    int nclosed = static_cast<int>(pick(eng, 1, opt.max_closed));
    std::vector<SimpleChainDatum> protos;
    for (int i = 0; i < nopen; ++i) {
        SimpleChainDatum c = random_finite_chain(eng, std::min<long long>(20, budget));
        Int o = c.char_s1.order();
        budget = std::max<long long>(1, budget / std::max<long long>(1, static_cast<long long>(o)));
        g.open_orbits.push_back({"U" + std::to_string(i), c.char_s1});
        protos.push_back(std::move(c));
    }
    for (int i = 0; i < nclosed; ++i) {
        FgAbelianGroup z = random_finite_group(eng, std::min<long long>(20, budget));
        budget = std::max<long long>(
            1, budget / std::max<long long>(1, static_cast<long long>(z.order())));
        g.closed_orbits.push_back({"Z" + std::to_string(i), z});
    }
    int nedges = static_cast<int>(pick(eng, 0, opt.max_edges));
    for (int k = 0; k < nedges; ++k) {
        std::size_t a = pick(eng, 0, nopen - 1);
        std::size_t nu = pick(eng, 0, nclosed - 1);
        // The edge chain's open side must be identified with the orbit's
        // characters; reuse the orbit's prototype chain and a random
        // automorphism as the identification.
        SimpleChainDatum chain = protos[a];
        chain.name = "edge" + std::to_string(k);
        AbHom ident = random_automorphism(eng, chain.char_s1);
        AbHom pull = random_hom(eng, g.closed_orbits[nu].chars, chain.char_s0);
        g.edges.push_back({chain.name, a, nu, std::move(chain), std::move(ident), std::move(pull)});
    }
    return g;
}

} // namespace testgen
