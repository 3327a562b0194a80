#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "chaincalc/chain.hpp"
#include "chaincalc/chain_graph.hpp"
#include "chaincalc/errors.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace chaincalc;

namespace {

bool has_code(const ValidationReport& r, const std::string& code) {
    for (const Violation& v : r.violations)
        if (v.code == code) return true;
    return false;
}

} // namespace

TEST_CASE("chain validation accepts the standard examples") {
    for (const SimpleChainDatum& c : {fixtures::su11_oplus(), fixtures::su11_ominus(),
                                      fixtures::sp4_edge(), fixtures::sp4_family()}) {
        ValidationReport r = validate_simple_chain(c);
        INFO(c.name << ": " << r.to_string());
        CHECK(r.ok());
        CHECK_NOTHROW(require_valid_chain(c));
    }
}

TEST_CASE("chain validation pinpoints broken invariants") {
    SimpleChainDatum c = fixtures::su11_oplus();

    SUBCASE("nonpositive weight") {
        c.n = 0;
        CHECK(has_code(validate_simple_chain(c), "n-positive"));
    }
    SUBCASE("wrong action weight") {
        c.act_char = {Int(4)};
        ValidationReport r = validate_simple_chain(c);
        CHECK(has_code(r, "act-weight"));
        CHECK_FALSE(has_code(r, "act-restricts"));
    }
    SUBCASE("action character visible on the closed stabilizer") {
        c.act_char = {Int(3)};
        ValidationReport r = validate_simple_chain(c);
        CHECK(has_code(r, "act-restricts"));
    }
    SUBCASE("wrong residue of the mu_n action") {
        c.mu_n_res = AbHom::zero_hom(c.char_s0, FgAbelianGroup::cyclic(2));
        CHECK(has_code(validate_simple_chain(c), "mu-residue"));
    }
    SUBCASE("mismatched map shapes") {
        c.lim_map = fixtures::mod2_from_z();
        CHECK(has_code(validate_simple_chain(c), "lim-shape"));
    }
    SUBCASE("require_valid_chain throws") {
        c.act_char = {Int(4)};
        CHECK_THROWS_AS(require_valid_chain(c), precondition_error);
    }
}

TEST_CASE("line bundle classification on the signed chains") {
    SimpleChainDatum plus = fixtures::su11_oplus();

    CHECK(m_class(plus, {Int(0)}) == 0);
    CHECK(m_class(plus, {Int(1)}) == 1);

    ResidueClass even = classify_line_bundles_simple(plus, {Int(0)});
    CHECK(even == ResidueClass{Int(2), Int(0)});
    CHECK(even.contains(Int(-4)));
    CHECK_FALSE(even.contains(Int(3)));

    ResidueClass odd = classify_line_bundles_simple(plus, {Int(1)});
    CHECK(odd == ResidueClass{Int(2), Int(1)});
    CHECK(odd.contains(Int(-3)));
    CHECK_FALSE(odd.contains(Int(0)));
    CHECK(odd.to_string() == "d = 1 (mod 2)");

    // The sign chain classifies identically: the residue sees only mu_n.
    SimpleChainDatum minus = fixtures::su11_ominus();
    CHECK(classify_line_bundles_simple(minus, {Int(1)}) == ResidueClass{Int(2), Int(1)});

    // Weight one puts no condition on the degree.
    SimpleChainDatum edge = fixtures::sp4_edge();
    ResidueClass all = classify_line_bundles_simple(edge, {Int(1)});
    CHECK(all.contains(Int(17)));
    CHECK(all.contains(Int(-6)));
    CHECK(all.to_string() == "all integers");
}

TEST_CASE("line bundle classes enforce the residue") {
    SimpleChainDatum plus = fixtures::su11_oplus();
    LineBundleClass lb = make_line_bundle_class(plus, {Int(1)}, Int(3));
    CHECK(lb.chi == Element{Int(1)});
    CHECK(lb.degree == 3);
    CHECK_THROWS_AS(make_line_bundle_class(plus, {Int(1)}, Int(2)), domain_error);
    CHECK_THROWS_AS(make_line_bundle_class(plus, {Int(0)}, Int(1)), domain_error);
    // Characters are reduced on the way in.
    CHECK(make_line_bundle_class(plus, {Int(3)}, Int(1)).chi == Element{Int(1)});
}

TEST_CASE("nearby cycles agree with the specialization map") {
    testgen::Engine eng(11);
    for (int it = 0; it < 60; ++it) {
        SimpleChainDatum c = testgen::random_valid_chain(eng);
        Element chi = testgen::random_element(eng, c.char_s1);
        CHECK(nearby_cycles(c, chi) == c.lim_map.apply(chi));
    }
}

TEST_CASE("fiber products of the standard chains") {
    SUBCASE("signed chains glue to the integers") {
        SimpleChainDatum plus = fixtures::su11_oplus();
        FiberProduct fp = line_bundle_fiber_product(plus);
        CHECK(fp.sub.normal_form() == FgAbelianGroup::free_group(1));
        CHECK(fp.contains_pair({Int(1)}, {Int(3)}));
        CHECK(fp.contains_pair({Int(0)}, {Int(-4)}));
        CHECK_FALSE(fp.contains_pair({Int(1)}, {Int(2)}));
        CHECK(fp.degree_of_pair({Int(1)}, {Int(3)}) == 3);

        FiberProduct fm = line_bundle_fiber_product(fixtures::su11_ominus());
        CHECK(fm.sub.normal_form() == FgAbelianGroup::free_group(1));
        CHECK(fm.contains_pair({Int(1)}, {Int(3)}));
        CHECK(fm.degree_of_pair({Int(1)}, {Int(3)}) == -3);
    }
    SUBCASE("weight-one edge keeps its torsion") {
        FiberProduct fp = line_bundle_fiber_product(fixtures::sp4_edge());
        CHECK(fp.sub.normal_form() == FgAbelianGroup(1, {Int(2)}));
        CHECK(fp.contains_pair({Int(0)}, {Int(0), Int(2)}));
        CHECK(fp.contains_pair({Int(1)}, {Int(1), Int(5)}));
        CHECK_FALSE(fp.contains_pair({Int(1)}, {Int(0), Int(3)}));
        CHECK(fp.degree_of_pair({Int(0)}, {Int(0), Int(-4)}) == -4);
    }
}

TEST_CASE("extension degrees are exactly the classified residues") {
    // Structural check on random chains: some lift realizes the residue,
    // and the pairing values on the kernel of the restriction generate
    // exactly n Z, so the degree set of lifts is the full residue class.
    testgen::Engine eng(31337);
    for (int it = 0; it < 120; ++it) {
        SimpleChainDatum c = testgen::random_valid_chain(eng);
        Element chi = testgen::random_element(eng, c.char_s1);
        ResidueClass rc = classify_line_bundles_simple(c, chi);
        CHECK(rc.n == c.n);
        CHECK(rc.m >= 0);
        CHECK(rc.m < c.n);

        auto lift = preimage_element(c.iota_res, c.lim_map.apply(chi));
        REQUIRE(lift.has_value());
        Int d0 = c.gamma_pair.apply(*lift)[0];
        CHECK(rc.contains(d0));

        Subgroup ker = kernel(c.iota_res);
        Int g = 0;
        for (const Element& k : ker.normal_form_generators())
            g = gcd(g, c.gamma_pair.apply(k)[0]);
        CHECK(g == c.n);

        FiberProduct fp = line_bundle_fiber_product(c);
        CHECK(fp.contains_pair(chi, *lift));
        CHECK(fp.degree_of_pair(chi, *lift) == d0);
        // Shifting the lift by the action character stays in the product
        // and moves the degree by exactly n.
        Element shifted = c.char_l0.add(*lift, c.act_char);
        CHECK(fp.contains_pair(chi, shifted));
        CHECK(fp.degree_of_pair(chi, shifted) == d0 + c.n);
    }
}

TEST_CASE("admissibility compares the pairing against half the trace form") {
    LiePairing tr{{"e", "f"}, {Rational(2), Rational(4)}};
    LiePairing rho{{"e", "f"}, {Rational(1), Rational(2)}};
    CHECK(check_admissible({Int(0)}, tr, rho));

    LiePairing rho_bad{{"e", "f"}, {Rational(1), Rational(3)}};
    CHECK_FALSE(check_admissible({Int(0)}, tr, rho_bad));

    LiePairing tr_frac{{"h"}, {Rational(1, 3)}};
    LiePairing rho_frac{{"h"}, {Rational(1, 6)}};
    CHECK(check_admissible({}, tr_frac, rho_frac));

    LiePairing other_basis{{"x"}, {Rational(1)}};
    CHECK_THROWS_AS(check_admissible({}, tr_frac, other_basis), domain_error);
    LiePairing short_values{{"e", "f"}, {Rational(2)}};
    CHECK_THROWS_AS(check_admissible({}, short_values, short_values), domain_error);
}

TEST_CASE("incidence graph of the two-edge star") {
    BuiltGraph b = build_chain_graph(fixtures::su11_graph());

    REQUIRE(b.full_vertices.size() == 7);
    CHECK(b.full_arrows.size() == 6);
    REQUIRE(b.reduced_vertices.size() == 5);
    CHECK(b.reduced_arrows.size() == 4);

    using K = GraphVertex::Kind;
    CHECK(b.full_vertices[0].kind == K::open_orbit);
    CHECK(b.full_vertices[0].label == "plus");
    CHECK(b.full_vertices[2].kind == K::middle_upper);
    CHECK(b.full_vertices[2].label == "zplus^(1)");
    CHECK(b.full_vertices[3].kind == K::middle_lower);
    CHECK(b.full_vertices[6].kind == K::closed_orbit);
    CHECK(b.full_vertices[6].label == "zero");
    CHECK(b.reduced_vertices[0].label == "v_plus");

    CHECK(is_contractible(b));
}

TEST_CASE("parallel edges close a cycle") {
    ChainGraph g;
    g.name = "loop";
    g.open_orbits = {{"u", fixtures::z2()}};
    g.closed_orbits = {{"z", fixtures::z()}};
    g.edges.push_back({"e0", 0, 0, fixtures::su11_oplus(), AbHom::identity(fixtures::z2()),
                       fixtures::mod2_from_z()});
    g.edges.push_back({"e1", 0, 0, fixtures::su11_oplus(), AbHom::identity(fixtures::z2()),
                       fixtures::mod2_from_z()});
    BuiltGraph b = build_chain_graph(g);
    CHECK(b.full_vertices.size() == 6);
    CHECK(b.full_arrows.size() == 6);
    CHECK_FALSE(is_contractible(b));
}

TEST_CASE("graph validation rejects broken data") {
    SUBCASE("duplicate orbit names") {
        ChainGraph g = fixtures::su11_graph();
        g.closed_orbits.push_back({"plus", fixtures::z()});
        CHECK(has_code(validate_chain_graph(g), "orbit-name"));
    }
    SUBCASE("edge indices out of range") {
        ChainGraph g = fixtures::su11_graph();
        g.edges[0].closed_index = 5;
        CHECK(has_code(validate_chain_graph(g), "edge-closed"));
    }
    SUBCASE("identification must be an isomorphism") {
        ChainGraph g = fixtures::su11_graph();
        g.edges[1].ident = AbHom::zero_hom(fixtures::z2(), fixtures::z2());
        CHECK(has_code(validate_chain_graph(g), "ident-iso"));
        CHECK_THROWS_AS(build_chain_graph(g), structural_error);
    }
    SUBCASE("invalid edge chain surfaces through the graph report") {
        ChainGraph g = fixtures::su11_graph();
        g.edges[0].chain.act_char = {Int(4)};
        CHECK(has_code(validate_chain_graph(g), "act-weight"));
    }
}

TEST_CASE("graph line bundle classification on the star") {
    BuiltGraph b = build_chain_graph(fixtures::su11_graph());
    GraphClassification cls = classify_line_bundles_graph(b);

    REQUIRE(cls.component_names == std::vector<std::string>{"plus", "minus", "zero"});
    CHECK(cls.ambient.group == FgAbelianGroup(1, {Int(2), Int(2)}));
    CHECK(cls.sub.normal_form() == FgAbelianGroup::free_group(1));

    auto tuple = [&](long long p, long long m, long long d) {
        const DirectSum& s = cls.ambient;
        Element x = s.group.add(s.injections[0].apply({Int(p)}), s.injections[1].apply({Int(m)}));
        return s.group.add(x, s.injections[2].apply({Int(d)}));
    };
    CHECK(cls.sub.contains(tuple(1, 1, 3)));
    CHECK(cls.sub.contains(tuple(0, 0, -4)));
    CHECK_FALSE(cls.sub.contains(tuple(1, 1, 4)));
    CHECK_FALSE(cls.sub.contains(tuple(1, 0, 1)));
}

TEST_CASE("graph classification matches exhaustive search") {
    testgen::Engine eng(404);
    testgen::GraphOptions opt;
    opt.product_bound = 300;
    for (int it = 0; it < 25; ++it) {
        ChainGraph g = testgen::random_graph(eng, opt);
        BuiltGraph b = build_chain_graph(g);
        GraphClassification cls = classify_line_bundles_graph(b);
        REQUIRE(cls.ambient.group.is_finite());
        for (const Element& x : cls.ambient.group.all_elements()) {
            bool satisfied = true;
            for (const AbHom& row : cls.edge_constraints)
                if (!row.target().is_zero(row.apply(x))) satisfied = false;
            CHECK(cls.sub.contains(x) == satisfied);
        }
    }
}

TEST_CASE("line bundle assemblies validate against the graph") {
    BuiltGraph b = build_chain_graph(fixtures::su11_graph());

    LineBundleAssembly good{{{Int(1)}, {Int(1)}}, {{Int(3)}}};
    CHECK(validate_assembly(b, good).ok());

    LineBundleAssembly bad{{{Int(1)}, {Int(0)}}, {{Int(1)}}};
    ValidationReport r = validate_assembly(b, bad);
    CHECK(has_code(r, "edge-mismatch"));

    LineBundleAssembly misshapen{{{Int(1)}}, {{Int(3)}}};
    CHECK(has_code(validate_assembly(b, misshapen), "assembly-shape"));
}

TEST_CASE("vector bundle assemblies validate against the graph") {
    BuiltGraph b = build_chain_graph(fixtures::su11_graph());
    FgAbelianGroup z2 = fixtures::z2();

    FilteredObject obj(z2, {{{Int(0)}, Int(0)}, {{Int(1)}, Int(1)}});
    VectorBundleAssembly good{{{{Int(0)}, {Int(1)}}, {{Int(0)}, {Int(1)}}},
                              {{{Int(2)}, {Int(1)}}},
                              {obj, obj}};
    ValidationReport gr = validate_assembly(b, good);
    INFO(gr.to_string());
    CHECK(gr.ok());

    SUBCASE("forgetting the filtration must match the open data") {
        VectorBundleAssembly bad = good;
        bad.open_chars[0] = {{Int(0)}, {Int(0)}};
        CHECK(has_code(validate_assembly(b, bad), "edge-forget"));
    }
    SUBCASE("associated graded must match the closed data") {
        VectorBundleAssembly bad = good;
        bad.closed_chars[0] = {{Int(2)}, {Int(2)}};
        CHECK(has_code(validate_assembly(b, bad), "edge-graded"));
    }
    SUBCASE("objects must live over the edge's open characters") {
        VectorBundleAssembly bad = good;
        bad.edge_objects[0] = FilteredObject(FgAbelianGroup::free_group(1));
        CHECK(has_code(validate_assembly(b, bad), "object-chars"));
    }
}
