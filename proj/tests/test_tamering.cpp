#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "chaincalc/errors.hpp"
#include "chaincalc/tame_ring.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace chaincalc;

namespace {

using Vec = std::vector<Int>;

// Exhaustive reference: all constraint solutions within a coordinate box,
// and the atoms among them (solutions that are not a sum of two nonzero
// solutions).  Any summand of a box vector stays in the box, and for the
// weight bounds used below every atom fits in the box, so the atom set is
// exactly the minimal generating set.
std::vector<Vec> box_solutions(const std::vector<Int>& weights, HilbertConstraint constraint,
                               long long box) {
    std::vector<Vec> out;
    Vec v(weights.size(), Int(0));
    for (;;) {
        Int s = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) s += v[i] * weights[i];
        bool ok = constraint == HilbertConstraint::equal_zero ? s == 0 : s >= 0;
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& c) { return c == 0; });
        if (ok && !zero) out.push_back(v);
        std::size_t i = 0;
        while (i < v.size() && v[i] == box) v[i++] = 0;
        if (i == v.size()) break;
        v[i] += 1;
    }
    return out;
}

std::vector<Vec> box_atoms(const std::vector<Int>& weights, HilbertConstraint constraint,
                           long long box) {
    std::vector<Vec> sols = box_solutions(weights, constraint, box);
    std::vector<Vec> atoms;
    for (const Vec& s : sols) {
        bool decomposable = false;
        for (const Vec& a : sols) {
            bool le = true, proper = false;
            for (std::size_t i = 0; i < s.size() && le; ++i) {
                if (a[i] > s[i]) le = false;
                if (a[i] < s[i]) proper = true;
            }
            if (!le || !proper) continue;
            Vec rest(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) rest[i] = s[i] - a[i];
            if (std::find(sols.begin(), sols.end(), rest) != sols.end()) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) atoms.push_back(s);
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

} // namespace

TEST_CASE("hilbert basis pinned examples") {
    CHECK(hilbert_basis({Int(1), Int(-1)}, HilbertConstraint::equal_zero) ==
          std::vector<Vec>{{Int(1), Int(1)}});
    CHECK(hilbert_basis({Int(0)}, HilbertConstraint::equal_zero) == std::vector<Vec>{{Int(1)}});
    CHECK(hilbert_basis({Int(2), Int(-3)}, HilbertConstraint::equal_zero) ==
          std::vector<Vec>{{Int(3), Int(2)}});
    CHECK(hilbert_basis({Int(1), Int(-1)}, HilbertConstraint::nonnegative) ==
          std::vector<Vec>{{Int(1), Int(0)}, {Int(1), Int(1)}});
    // All-positive weights admit no nonzero zero-sum solution.
    CHECK(hilbert_basis({Int(1), Int(2)}, HilbertConstraint::equal_zero).empty());

    CHECK_THROWS_AS(hilbert_basis({}, HilbertConstraint::equal_zero), input_error);
    CHECK_THROWS_AS(hilbert_basis(std::vector<Int>(13, Int(1)), HilbertConstraint::equal_zero),
                    resource_error);
}

TEST_CASE("hilbert basis matches the box oracle") {
    testgen::Engine eng(4242);
    for (int it = 0; it < 60; ++it) {
        std::size_t r = static_cast<std::size_t>(testgen::pick(eng, 1, 3));
        std::vector<Int> w(r);
        for (Int& x : w) x = testgen::pick_int(eng, -3, 3);
        HilbertConstraint con = testgen::pick(eng, 0, 1) == 0 ? HilbertConstraint::equal_zero
                                                              : HilbertConstraint::nonnegative;
        INFO("weights " << Monomial{w}.to_string());
        CHECK(hilbert_basis(w, con) == box_atoms(w, con, 5));
    }
}

TEST_CASE("hilbert basis respects the node budget") {
    // The environment cap is read per call, so a tiny budget must abort a
    // search that otherwise succeeds.
    std::vector<Int> w{Int(5), Int(-7)};
    CHECK(!hilbert_basis(w, HilbertConstraint::equal_zero).empty());
    setenv("CHAINCALC_HILBERT_NODE_LIMIT", "4", 1);
    CHECK_THROWS_AS(hilbert_basis(w, HilbertConstraint::equal_zero), resource_error);
    unsetenv("CHAINCALC_HILBERT_NODE_LIMIT");
    CHECK(hilbert_basis(w, HilbertConstraint::equal_zero) ==
          std::vector<Vec>{{Int(7), Int(5)}});
}

TEST_CASE("degree zero subring generators") {
    std::vector<Monomial> gens = f0_generators({{Int(1), Int(-1)}});
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].to_string() == "s1*s2");

    gens = f0_generators({{Int(2), Int(-3)}});
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].to_string() == "s1^3*s2^2");

    gens = f0_generators({{Int(1), Int(1), Int(-1)}});
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].to_string() == "s2*s3");
    CHECK(gens[1].to_string() == "s1*s3");

    CHECK(Monomial{{Int(0), Int(0)}}.to_string() == "1");
    CHECK_THROWS_AS(f0_generators({{}}), input_error);
}

TEST_CASE("monomial ideal idempotency") {
    // No generators and no support: the zero ideal, vacuously idempotent.
    CHECK(is_idempotent({0, {}, {}}));
    // Support components square to themselves.
    CHECK(is_idempotent({0, {}, {true, false}}));
    // The unit monomial generates an idempotent (unit) ideal.
    CHECK(is_idempotent({1, {{Int(0)}}, {}}));
    // A single proper monomial generator is never idempotent.
    CHECK_FALSE(is_idempotent({1, {{Int(1)}}, {}}));
    // Saturated in degrees >= 1 on two exponents: s^2, s*t, t^2 together
    // with s and t; every generator is a product of two others only when
    // the degree-one monomials are present too.
    CHECK_FALSE(is_idempotent({2, {{Int(2), Int(0)}, {Int(1), Int(1)}, {Int(0), Int(2)}}, {}}));
    CHECK(is_idempotent({1, {{Int(0)}, {Int(3)}}, {}}));
    CHECK_THROWS_AS(is_idempotent({2, {{Int(1)}}, {}}), input_error);
}

TEST_CASE("tame quotient of the standard family ring") {
    IdealAdicPresentation p = fixtures::sp4_family_ring();
    TameQuotientResult r = tame_quotient(p);

    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0] == TameComponentResult{"Gm", true, FiltrationKind::trivial});
    CHECK(r.special_fiber() == std::vector<std::string>{"Gm"});
    REQUIRE(r.component_group.has_value());
    CHECK(r.component_group->group == FgAbelianGroup::cyclic(2));
    CHECK(r.component_group->gamma_image == "mu_2 in G_m");
}

TEST_CASE("components survive the quotient unless their ideal is the unit") {
    IdealAdicPresentation p;
    p.components.push_back({"a", true, IdealKind::zero});
    p.components.push_back({"b", true, IdealKind::proper_principal});
    p.components.push_back({"c", false, IdealKind::unit});
    p.components.push_back({"d", false, IdealKind::zero});

    TameQuotientResult r = tame_quotient(p);
    CHECK(r.special_fiber() == std::vector<std::string>{"a", "b", "d"});
    CHECK(r.components[2].filtration == FiltrationKind::all);
    CHECK(r.components[0].filtration == FiltrationKind::trivial);

    // A proper ideal on a nonintegral component is out of scope.
    IdealAdicPresentation bad;
    bad.components.push_back({"x", false, IdealKind::proper_principal});
    CHECK_THROWS_AS(tame_quotient(bad), unsupported_error);

    CHECK_THROWS_AS(tame_quotient(IdealAdicPresentation{}), input_error);
}

TEST_CASE("the quotient is idempotent under re-presentation") {
    testgen::Engine eng(1717);
    for (int it = 0; it < 100; ++it) {
        IdealAdicPresentation p;
        long long count = testgen::pick(eng, 1, 5);
        for (long long i = 0; i < count; ++i) {
            bool integral = testgen::pick(eng, 0, 1) == 1;
            IdealKind kind;
            switch (testgen::pick(eng, 0, 2)) {
            case 0: kind = IdealKind::zero; break;
            case 1: kind = integral ? IdealKind::proper_principal : IdealKind::unit; break;
            default: kind = IdealKind::unit; break;
            }
            p.components.push_back({"c" + std::to_string(i), integral, kind});
        }
        if (testgen::pick(eng, 0, 1) == 1)
            p.component_group =
                ComponentGroupInfo{testgen::random_finite_group(eng, 12), "gamma"};

        TameQuotientResult once = tame_quotient(p);
        CHECK(tame_quotient(represent(once, p)) == once);
    }

    IdealAdicPresentation p = fixtures::sp4_family_ring();
    TameQuotientResult once = tame_quotient(p);
    IdealAdicPresentation again = represent(once, p);
    REQUIRE(again.components.size() == 1);
    // Trivial filtration re-presents as the zero ideal, keeping integrality.
    CHECK(again.components[0].ideal == IdealKind::zero);
    CHECK(again.components[0].is_integral);
    CHECK_THROWS_AS(represent(once, IdealAdicPresentation{}), input_error);
}

TEST_CASE("the emitted filtration ideal is idempotent support data") {
    IdealAdicPresentation p;
    p.components.push_back({"keep", true, IdealKind::zero});
    p.components.push_back({"drop", true, IdealKind::unit});
    TameQuotientResult r = tame_quotient(p);

    MonomialIdealData ideal = emitted_filtration_ideal(r);
    CHECK(ideal.component_support == std::vector<bool>{false, true});
    CHECK(ideal.generators.empty());
    CHECK(is_idempotent(ideal));
}

TEST_CASE("specialization descriptions name the component maps") {
    IdealAdicPresentation p = fixtures::sp4_family_ring();
    p.components.push_back({"node", true, IdealKind::unit});
    TameQuotientResult r = tame_quotient(p);

    SpecializationDescription d = describe_specialization(r);
    REQUIRE(d.lines.size() == 3);
    CHECK(d.lines[0] == "component Gm: identity of Gm x A^1");
    CHECK(d.lines[1] == "component node: open embedding (node x A^1) minus the zero fiber");
    CHECK(d.lines[2] == "component groups: Z/2 included as mu_2 in G_m");
    CHECK(d.to_string() ==
          d.lines[0] + "\n" + d.lines[1] + "\n" + d.lines[2]);
}
