#pragma once

#include <optional>
#include <vector>

#include "chaincalc/chain.hpp"

namespace chaincalc {

// One line of a filtered sum: a character and the degree at which the line
// enters the filtration; nullopt encodes degree +infinity (the line never
// enters the proper part).
struct FilteredLine {
    Element chi;
    std::optional<Int> degree;
    bool operator==(const FilteredLine&) const = default;
};

// Finite multiset of filtered lines over a fixed character group.  Order of
// lines is normalized, so equal multisets compare equal.
class FilteredObject {
public:
    explicit FilteredObject(FgAbelianGroup char_group);
    FilteredObject(FgAbelianGroup char_group, std::vector<FilteredLine> lines);

    const FgAbelianGroup& char_group() const { return char_group_; }
    const std::vector<FilteredLine>& lines() const { return lines_; }
    std::size_t rank() const { return lines_.size(); }

    void add_line(Element chi, std::optional<Int> degree);

    // Multiset of characters, normalization order.
    std::vector<Element> character_multiset() const;

    bool operator==(const FilteredObject&) const = default;

private:
    FgAbelianGroup char_group_;
    std::vector<FilteredLine> lines_;
    void normalize();
};

// Nondecreasing dimension profile of a filtration by degree: pairs
// (degree, dimension of the filtered piece up to that degree), strictly
// increasing in degree, with implicit dimension 0 before the first entry.
struct GradedInjectionChain {
    std::vector<std::pair<Int, Int>> entries;
    bool operator==(const GradedInjectionChain&) const = default;
};

// Multiplicity of each jump degree, sorted by degree.
struct DegreeSkeleton {
    std::vector<std::pair<Int, Int>> jumps; // (degree, multiplicity > 0)
    bool operator==(const DegreeSkeleton&) const = default;
};

// Jump degrees of a dimension profile; throws invariant_error when the
// profile is not strictly increasing in both coordinates.
DegreeSkeleton artin_rees_skeleton(const GradedInjectionChain& chain);
// Inverse: rebuild the profile from jump multiplicities.
GradedInjectionChain artin_rees_chain(const DegreeSkeleton& skel);
// Dimension profile of a filtered object (finite-degree lines only).
GradedInjectionChain object_profile(const FilteredObject& obj);

// Checks d = m_class(chi) (mod n) for every line; with require_finite_type,
// +infinity degrees are also violations.
ValidationReport validate_cn_object(const SimpleChainDatum& c, const FilteredObject& obj,
                                    bool require_finite_type = false);

// True iff every finite degree is divisible by n.
bool divisibility_check(const FilteredObject& obj, const Int& n);
// Divide all finite degrees by n; +infinity stays.  Throws
// precondition_error unless divisibility_check passes.
FilteredObject rescale(const FilteredObject& obj, const Int& n);
// Multiply all finite degrees by n (inverse of rescale).
FilteredObject multiply_degrees(const FilteredObject& obj, const Int& n);

// Tame: every degree is 0 or +infinity.
bool is_tame(const FilteredObject& obj);
// Collapse to the tame part: negative degrees are dropped, finite
// nonnegative degrees become 0, +infinity stays.  Idempotent.
FilteredObject tame_truncate(const FilteredObject& obj);

// Which (chi, d) underlie equivariant local systems on the open orbit:
// chi must extend to the full open stabilizer (lie in the image of the
// component pullback) and d must match the component-character residue.
class LocalSystemConstraint {
public:
    LocalSystemConstraint(const SimpleChainDatum& c);

    // Residue class of degrees for chi, or nullopt when chi admits no
    // local-system structure at all.
    std::optional<ResidueClass> residue_for(const Element& chi) const;
    bool admits(const Element& chi, const Int& degree) const;
    ValidationReport validate_object(const FilteredObject& obj) const;
    const Subgroup& character_image() const { return char_image_; }

private:
    Int n_;
    Subgroup char_image_; // image of the component pullback in char_s1
    AbHom residue_map_;   // char_image_.normal_form() -> Z/n
};

LocalSystemConstraint classify_local_systems(const SimpleChainDatum& c);

// Tame-quotient side data: a subcategory of characters cut out by a
// subgroup of char_s1, the characters of the quotient stabilizer, the
// specialization into them, and the projection back to char_s0.
struct TameQuotientDatum {
    Subgroup sub;         // of char_s1
    FgAbelianGroup char_h0;
    AbHom spec_res;       // sub.normal_form() -> char_h0
    AbHom proj0_res;      // char_h0 -> char_s0
};

ValidationReport validate_tame_quotient_datum(const SimpleChainDatum& c,
                                              const TameQuotientDatum& tq);

// Same interface as LocalSystemConstraint, for a tame-quotient datum:
// chi must lie in tq.sub and d must match mu_n of the projected
// specialization.
class TameQuotientConstraint {
public:
    TameQuotientConstraint(const SimpleChainDatum& c, const TameQuotientDatum& tq);

    std::optional<ResidueClass> residue_for(const Element& chi) const;
    bool admits(const Element& chi, const Int& degree) const;
    ValidationReport validate_object(const FilteredObject& obj) const;

private:
    Int n_;
    Subgroup sub_;
    AbHom residue_map_; // sub_.normal_form() -> Z/n
};

TameQuotientConstraint classify_under_tame_quotient(const SimpleChainDatum& c,
                                                    const TameQuotientDatum& tq);

// The tame-quotient datum carried by component data: subgroup = image of
// the component pullback, quotient characters = closed component
// characters, specialization = sigma_res, projection = com_pullback.
TameQuotientDatum make_locsys_quotient(const SimpleChainDatum& c);

// Flatness of the tame family: the projection from quotient characters is
// injective.
bool flat_tame_criterion(const SimpleChainDatum& c, const TameQuotientDatum& tq);

// Nonvanishing of the top wedge restriction at the closed point: r0 of
// top_char0 is nonzero in the torus lattice.
bool top_wedge_criterion(const SimpleChainDatum& c);

} // namespace chaincalc
