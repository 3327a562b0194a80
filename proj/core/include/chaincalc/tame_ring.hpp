#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaincalc/abelian.hpp"

namespace chaincalc {

// Free graded presentation: generators s_1..s_r in degrees d_1..d_r.
struct WeightedFreePresentation {
    std::vector<Int> degrees; // r >= 1
};

enum class HilbertConstraint { equal_zero, nonnegative };

// Minimal generating set of {e in N^r : sum e_i d_i = 0} (or >= 0),
// sorted lexicographically.  Bounded completion; the search size is capped
// by CHAINCALC_HILBERT_NODE_LIMIT (throws resource_error past the cap).
std::vector<std::vector<Int>> hilbert_basis(const std::vector<Int>& weights,
                                            HilbertConstraint constraint);

struct Monomial {
    std::vector<Int> exponents;
    std::string to_string() const; // "s1*s2^2"
    bool operator==(const Monomial&) const = default;
};

// Monomials generating the degree-0 subring of the weighted free algebra.
std::vector<Monomial> f0_generators(const WeightedFreePresentation& p);

// Ideal in a monoid algebra over a ring with several components: monomial
// generators on the unflagged components plus everything on the flagged
// (support) components.
struct MonomialIdealData {
    std::size_t exponent_dim = 0;
    std::vector<std::vector<Int>> generators;
    std::vector<bool> component_support;
};

// True iff the ideal equals its own square: every monomial generator is a
// product of two ideal monomials, and support components are always
// idempotent.
bool is_idempotent(const MonomialIdealData& ideal);

enum class IdealKind { zero, proper_principal, unit };

struct AdicComponent {
    std::string name;
    bool is_integral = true;
    IdealKind ideal = IdealKind::zero;
};

// Finite component-group data of the general fiber, with a display form of
// the image of the contracting torus direction inside it.
struct ComponentGroupInfo {
    FgAbelianGroup group;
    std::string gamma_image;
    bool operator==(const ComponentGroupInfo&) const = default;
};

// I-adic filtration described per irreducible component.
struct IdealAdicPresentation {
    std::vector<AdicComponent> components;
    std::optional<ComponentGroupInfo> component_group;
};

enum class FiltrationKind { trivial, all };

struct TameComponentResult {
    std::string name;
    bool in_special_fiber = true;
    FiltrationKind filtration = FiltrationKind::trivial;
    bool operator==(const TameComponentResult&) const = default;
};

// Universal tame quotient: the general fiber per component, which
// components survive at 0, and the induced filtration on each.
struct TameQuotientResult {
    std::vector<TameComponentResult> components;
    std::optional<ComponentGroupInfo> component_group;

    std::vector<std::string> special_fiber() const;
    bool operator==(const TameQuotientResult&) const = default;
};

// Per component: a proper ideal on an integral component has zero
// intersection of powers, so the induced filtration is trivial and the
// component survives; a unit ideal forces filtration "all" and drops the
// component from the special fiber.
TameQuotientResult tame_quotient(const IdealAdicPresentation& p);

// Re-present the output so tame_quotient can be applied again (trivial
// filtration -> zero ideal, all -> unit), preserving integrality flags.
IdealAdicPresentation represent(const TameQuotientResult& r, const IdealAdicPresentation& original);

// The F^{>=1} ideal of the output as support data on the dropped
// components; always idempotent.
MonomialIdealData emitted_filtration_ideal(const TameQuotientResult& r);

struct SpecializationDescription {
    std::vector<std::string> lines;
    std::string to_string() const;
};

// The canonical map from the zero fiber: identity on surviving components,
// open embedding on dropped ones, plus the component-group inclusion when
// supplied.
SpecializationDescription describe_specialization(const TameQuotientResult& r);

} // namespace chaincalc
