#include "chaincalc/chain.hpp"

#include <sstream>

#include "chaincalc/errors.hpp"

namespace chaincalc {

ValidationReport validate_simple_chain(const SimpleChainDatum& c) {
    ValidationReport r;
    if (c.n < 1) {
        r.add("n-positive", c.name + ": weight n must be >= 1");
        return r;
    }
    bool shapes = true;
    auto expect = [&](bool cond, const char* code, const std::string& msg) {
        if (!cond) {
            r.add(code, c.name + ": " + msg);
            shapes = false;
        }
    };
    expect(c.lim_map.source() == c.char_s1 && c.lim_map.target() == c.char_s0, "lim-shape",
           "lim_map must map char_s1 to char_s0");
    expect(c.iota_res.source() == c.char_l0 && c.iota_res.target() == c.char_s0, "iota-shape",
           "iota_res must map char_l0 to char_s0");
    expect(c.gamma_pair.source() == c.char_l0 && c.gamma_pair.target() == FgAbelianGroup::free_group(1),
           "gamma-shape", "gamma_pair must map char_l0 to Z");
    expect(c.mu_n_res.source() == c.char_s0 && c.mu_n_res.target() == FgAbelianGroup::cyclic(c.n),
           "mu-shape", "mu_n_res must map char_s0 to Z/n");
    expect(c.act_char.size() == c.char_l0.ngens(), "act-shape",
           "act_char must be an element of char_l0");
    if (!shapes) return r;

    if (c.gamma_pair.apply(c.act_char) != Element{c.n})
        r.add("act-weight", c.name + ": gamma_pair(act_char) must equal n");
    if (!c.char_s0.is_zero(c.iota_res.apply(c.act_char)))
        r.add("act-restricts", c.name + ": iota_res(act_char) must vanish on the closed stabilizer");
    // The residue of mu_n on restricted characters is the gamma-weight mod n.
    // Z/1 is the trivial group with no generators, so the reduced matrix has
    // as many rows as the target, not as gamma_pair.
    FgAbelianGroup zn = FgAbelianGroup::cyclic(c.n);
    IntMatrix reduced(zn.ngens(), c.char_l0.ngens());
    for (std::size_t i = 0; i < zn.ngens(); ++i)
        for (std::size_t j = 0; j < c.char_l0.ngens(); ++j)
            reduced.at(i, j) = c.gamma_pair.matrix().at(i, j);
    AbHom gamma_mod_n(c.char_l0, std::move(zn), std::move(reduced));
    if (!(compose(c.mu_n_res, c.iota_res) == gamma_mod_n))
        r.add("mu-residue", c.name + ": mu_n_res after iota_res must equal gamma_pair mod n");

    if (c.com) {
        r.merge(validate_group_datum(c.com->com_s1));
        r.merge(validate_group_datum(c.com->com_s0));
        bool cs = true;
        auto cexpect = [&](bool cond, const char* code, const std::string& msg) {
            if (!cond) {
                r.add(code, c.name + ": " + msg);
                cs = false;
            }
        };
        cexpect(c.com->com_s1.char_group == c.char_s1, "com-s1-chars",
                "component datum on the open stabilizer must carry char_s1");
        cexpect(c.com->com_s0.char_group == c.char_s0, "com-s0-chars",
                "component datum on the closed stabilizer must carry char_s0");
        cexpect(c.com->sigma_res.source() == c.com->com_s1.com_char_group &&
                    c.com->sigma_res.target() == c.com->com_s0.com_char_group,
                "sigma-shape", "sigma_res must map open component characters to closed ones");
        if (cs && r.ok()) {
            AbHom via_lim = compose(c.mu_n_res, compose(c.lim_map, c.com->com_s1.com_pullback));
            AbHom via_sigma = compose(c.mu_n_res, compose(c.com->com_s0.com_pullback, c.com->sigma_res));
            if (!(via_lim == via_sigma))
                r.add("com-route", c.name +
                          ": specialization of component characters must match lim_map mod n");
        }
    }

    if (c.top) {
        if (!c.top->lattice.torsion().empty())
            r.add("top-lattice", c.name + ": torus lattice must be free");
        else if (!(c.top->r0.source() == c.char_s0 && c.top->r0.target() == c.top->lattice))
            r.add("top-shape", c.name + ": r0 must map char_s0 to the torus lattice");
        else if (c.top->top_char0.size() != c.char_s0.ngens())
            r.add("top-char", c.name + ": top_char0 must be an element of char_s0");
    }
    return r;
}

void require_valid_chain(const SimpleChainDatum& c) {
    ValidationReport r = validate_simple_chain(c);
    if (!r.ok()) throw precondition_error("chain '" + c.name + "' is invalid:\n" + r.to_string());
}

std::string ResidueClass::to_string() const {
    std::ostringstream os;
    if (n == 1) os << "all integers";
    else os << "d = " << m << " (mod " << n << ")";
    return os.str();
}

Int m_class(const SimpleChainDatum& c, const Element& chi) {
    require_valid_chain(c);
    Element v = c.mu_n_res.apply(c.lim_map.apply(chi));
    return v.empty() ? Int(0) : v[0];
}

ResidueClass classify_line_bundles_simple(const SimpleChainDatum& c, const Element& chi) {
    return ResidueClass{c.n, m_class(c, chi)};
}

Element nearby_cycles(const SimpleChainDatum& c, const Element& chi) {
    require_valid_chain(c);
    return c.lim_map.apply(chi);
}

Element FiberProduct::pair_element(const Element& chi, const Element& chi_prime) const {
    return sum.group.add(sum.injections[0].apply(chi), sum.injections[1].apply(chi_prime));
}

bool FiberProduct::contains_pair(const Element& chi, const Element& chi_prime) const {
    return sub.contains(pair_element(chi, chi_prime));
}

Int FiberProduct::degree_of_pair(const Element& chi, const Element& chi_prime) const {
    Element d = degree.apply(pair_element(chi, chi_prime));
    return d[0];
}

FiberProduct line_bundle_fiber_product(const SimpleChainDatum& c) {
    require_valid_chain(c);
    DirectSum sum = direct_sum({c.char_s1, c.char_l0});
    AbHom mismatch = hom_difference(compose(c.lim_map, sum.projections[0]),
                                    compose(c.iota_res, sum.projections[1]));
    Subgroup sub = kernel(mismatch);
    AbHom degree = compose(c.gamma_pair, sum.projections[1]);
    return FiberProduct{std::move(sum), std::move(sub), std::move(degree)};
}

LineBundleClass make_line_bundle_class(const SimpleChainDatum& c, const Element& chi,
                                       const Int& degree) {
    ResidueClass rc = classify_line_bundles_simple(c, chi);
    if (!rc.contains(degree)) {
        std::ostringstream os;
        os << "degree " << degree << " is not an extension degree for this character ("
           << rc.to_string() << ")";
        throw domain_error(os.str());
    }
    return LineBundleClass{c.char_s1.reduce(chi), degree};
}

bool check_admissible(const Element& chi, const LiePairing& tr_pairing,
                      const LiePairing& rho_pairing) {
    (void)chi;
    if (tr_pairing.basis != rho_pairing.basis)
        throw domain_error("admissibility pairings use different Lie algebra bases");
    if (tr_pairing.values.size() != tr_pairing.basis.size() ||
        rho_pairing.values.size() != rho_pairing.basis.size())
        throw domain_error("pairing value count does not match basis size");
    for (std::size_t i = 0; i < tr_pairing.values.size(); ++i)
        if (Rational(2) * rho_pairing.values[i] != tr_pairing.values[i]) return false;
    return true;
}

} // namespace chaincalc
