#include "chaincalc/filtered.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "chaincalc/errors.hpp"

namespace chaincalc {

namespace {

// Finite degrees first (by value), +infinity last.
bool degree_less(const std::optional<Int>& a, const std::optional<Int>& b) {
    if (a && b) return *a < *b;
    return a.has_value() && !b.has_value();
}

bool line_less(const FilteredLine& a, const FilteredLine& b) {
    if (a.chi != b.chi) return a.chi < b.chi;
    return degree_less(a.degree, b.degree);
}

} // namespace

FilteredObject::FilteredObject(FgAbelianGroup char_group) : char_group_(std::move(char_group)) {}

FilteredObject::FilteredObject(FgAbelianGroup char_group, std::vector<FilteredLine> lines)
    : char_group_(std::move(char_group)), lines_(std::move(lines)) {
    normalize();
}

void FilteredObject::add_line(Element chi, std::optional<Int> degree) {
    lines_.push_back({std::move(chi), std::move(degree)});
    normalize();
}

void FilteredObject::normalize() {
    for (FilteredLine& l : lines_) l.chi = char_group_.reduce(std::move(l.chi));
    std::sort(lines_.begin(), lines_.end(), line_less);
}

std::vector<Element> FilteredObject::character_multiset() const {
    std::vector<Element> out;
    out.reserve(lines_.size());
    for (const FilteredLine& l : lines_) out.push_back(l.chi);
    std::sort(out.begin(), out.end());
    return out;
}

DegreeSkeleton artin_rees_skeleton(const GradedInjectionChain& chain) {
    DegreeSkeleton out;
    Int prev_dim = 0;
    bool first = true;
    Int prev_deg = 0;
    for (const auto& [deg, dim] : chain.entries) {
        if (!first && deg <= prev_deg)
            throw invariant_error("injection chain degrees must strictly increase");
        if (dim < prev_dim)
            throw invariant_error("injection chain dimensions must be nondecreasing");
        if (dim > prev_dim) out.jumps.emplace_back(deg, dim - prev_dim);
        prev_dim = dim;
        prev_deg = deg;
        first = false;
    }
    return out;
}

GradedInjectionChain artin_rees_chain(const DegreeSkeleton& skel) {
    GradedInjectionChain out;
    Int dim = 0;
    bool first = true;
    Int prev_deg = 0;
    for (const auto& [deg, mult] : skel.jumps) {
        if (!first && deg <= prev_deg) throw invariant_error("skeleton degrees must strictly increase");
        if (mult < 1) throw invariant_error("skeleton multiplicities must be positive");
        dim += mult;
        out.entries.emplace_back(deg, dim);
        prev_deg = deg;
        first = false;
    }
    return out;
}

GradedInjectionChain object_profile(const FilteredObject& obj) {
    std::vector<Int> degs;
    for (const FilteredLine& l : obj.lines())
        if (l.degree) degs.push_back(*l.degree);
    std::sort(degs.begin(), degs.end());
    DegreeSkeleton skel;
    for (const Int& d : degs) {
        if (!skel.jumps.empty() && skel.jumps.back().first == d)
            skel.jumps.back().second += 1;
        else
            skel.jumps.emplace_back(d, 1);
    }
    return artin_rees_chain(skel);
}

ValidationReport validate_cn_object(const SimpleChainDatum& c, const FilteredObject& obj,
                                    bool require_finite_type) {
    require_valid_chain(c);
    ValidationReport r;
    if (!(obj.char_group() == c.char_s1)) {
        r.add("object-chars", "filtered object lives over " + obj.char_group().describe() +
                                  " but the chain's open characters are " + c.char_s1.describe());
        return r;
    }
    for (std::size_t i = 0; i < obj.lines().size(); ++i) {
        const FilteredLine& l = obj.lines()[i];
        if (!l.degree) {
            if (require_finite_type) {
                std::ostringstream os;
                os << "line " << i << " has degree +inf but the object claims finite type";
                r.add("infinite-degree", os.str());
            }
            continue;
        }
        ResidueClass rc = classify_line_bundles_simple(c, l.chi);
        if (!rc.contains(*l.degree)) {
            std::ostringstream os;
            os << "line " << i << " has degree " << *l.degree << " but extensions require "
               << rc.to_string();
            r.add("degree-residue", os.str());
        }
    }
    return r;
}

bool divisibility_check(const FilteredObject& obj, const Int& n) {
    if (n < 1) throw precondition_error("divisibility modulus must be positive");
    for (const FilteredLine& l : obj.lines())
        if (l.degree && *l.degree % n != 0) return false;
    return true;
}

FilteredObject rescale(const FilteredObject& obj, const Int& n) {
    if (!divisibility_check(obj, n))
        throw precondition_error("rescale requires all finite degrees divisible by n");
    std::vector<FilteredLine> lines = obj.lines();
    for (FilteredLine& l : lines)
        if (l.degree) *l.degree /= n;
    return FilteredObject(obj.char_group(), std::move(lines));
}

FilteredObject multiply_degrees(const FilteredObject& obj, const Int& n) {
    if (n < 1) throw precondition_error("degree multiplier must be positive");
    std::vector<FilteredLine> lines = obj.lines();
    for (FilteredLine& l : lines)
        if (l.degree) *l.degree *= n;
    return FilteredObject(obj.char_group(), std::move(lines));
}

bool is_tame(const FilteredObject& obj) {
    for (const FilteredLine& l : obj.lines())
        if (l.degree && *l.degree != 0) return false;
    return true;
}

FilteredObject tame_truncate(const FilteredObject& obj) {
    std::vector<FilteredLine> lines;
    for (const FilteredLine& l : obj.lines()) {
        if (!l.degree) lines.push_back(l);
        else if (*l.degree >= 0) lines.push_back({l.chi, Int(0)});
        // Negative degrees fall outside the tame part and are dropped.
    }
    return FilteredObject(obj.char_group(), std::move(lines));
}

namespace {

// Residue map on a subgroup's normal form: each canonical generator is
// sent to a prescribed value in Z/n.
AbHom residue_on_subgroup(const Subgroup& sub, const Int& n,
                          const std::vector<Element>& values) {
    FgAbelianGroup zn = FgAbelianGroup::cyclic(n);
    IntMatrix m(zn.ngens(), sub.normal_form().ngens());
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t i = 0; i < zn.ngens(); ++i) m.at(i, j) = values[j][i];
    return AbHom(sub.normal_form(), zn, std::move(m));
}

ValidationReport constrained_validate(const FgAbelianGroup& chars, const FilteredObject& obj,
                                      const char* missing_code, const char* missing_what,
                                      const std::function<std::optional<ResidueClass>(const Element&)>& residue) {
    ValidationReport r;
    if (!(obj.char_group() == chars)) {
        r.add("object-chars", "filtered object lives over the wrong character group");
        return r;
    }
    for (std::size_t i = 0; i < obj.lines().size(); ++i) {
        const FilteredLine& l = obj.lines()[i];
        std::optional<ResidueClass> rc = residue(l.chi);
        std::ostringstream os;
        if (!rc) {
            os << "line " << i << " " << missing_what;
            r.add(missing_code, os.str());
            continue;
        }
        if (l.degree && !rc->contains(*l.degree)) {
            os << "line " << i << " has degree " << *l.degree << " but membership requires "
               << rc->to_string();
            r.add("degree-residue", os.str());
        }
    }
    return r;
}

} // namespace

LocalSystemConstraint::LocalSystemConstraint(const SimpleChainDatum& c)
    : n_(c.n), char_image_(FgAbelianGroup::trivial(), {}), residue_map_(AbHom::identity(FgAbelianGroup::trivial())) {
    require_valid_chain(c);
    if (!c.com)
        throw config_error("chain '" + c.name + "' carries no component data; local systems need it");
    char_image_ = image(c.com->com_s1.com_pullback);
    std::vector<Element> values;
    for (const Element& gen : char_image_.normal_form_generators()) {
        // The pullback is injective, so the component character under each
        // canonical generator is unique.
        auto psi = preimage_element(c.com->com_s1.com_pullback, gen);
        if (!psi) throw invariant_error("subgroup generator escaped the component image");
        values.push_back(c.mu_n_res.apply(
            c.com->com_s0.com_pullback.apply(c.com->sigma_res.apply(*psi))));
    }
    residue_map_ = residue_on_subgroup(char_image_, n_, values);
}

std::optional<ResidueClass> LocalSystemConstraint::residue_for(const Element& chi) const {
    auto coords = char_image_.coordinates(chi);
    if (!coords) return std::nullopt;
    Element v = residue_map_.apply(*coords);
    return ResidueClass{n_, v.empty() ? Int(0) : v[0]};
}

bool LocalSystemConstraint::admits(const Element& chi, const Int& degree) const {
    auto rc = residue_for(chi);
    return rc && rc->contains(degree);
}

ValidationReport LocalSystemConstraint::validate_object(const FilteredObject& obj) const {
    return constrained_validate(char_image_.ambient(), obj, "not-component",
                                "does not factor through the component group",
                                [&](const Element& chi) { return residue_for(chi); });
}

LocalSystemConstraint classify_local_systems(const SimpleChainDatum& c) {
    return LocalSystemConstraint(c);
}

ValidationReport validate_tame_quotient_datum(const SimpleChainDatum& c,
                                              const TameQuotientDatum& tq) {
    ValidationReport r;
    if (!(tq.sub.ambient() == c.char_s1))
        r.add("sub-ambient", "quotient subgroup must live in the chain's open characters");
    if (!(tq.spec_res.source() == tq.sub.normal_form()))
        r.add("spec-source", "spec_res must be defined on the subgroup's normal form");
    if (!(tq.spec_res.target() == tq.char_h0))
        r.add("spec-target", "spec_res must land in the quotient characters");
    if (!(tq.proj0_res.source() == tq.char_h0) || !(tq.proj0_res.target() == c.char_s0))
        r.add("proj-shape", "proj0_res must map quotient characters to char_s0");
    return r;
}

TameQuotientConstraint::TameQuotientConstraint(const SimpleChainDatum& c,
                                               const TameQuotientDatum& tq)
    : n_(c.n), sub_(tq.sub), residue_map_(AbHom::identity(FgAbelianGroup::trivial())) {
    require_valid_chain(c);
    ValidationReport r = validate_tame_quotient_datum(c, tq);
    if (!r.ok()) throw precondition_error("invalid tame-quotient datum:\n" + r.to_string());
    residue_map_ = compose(c.mu_n_res, compose(tq.proj0_res, tq.spec_res));
}

std::optional<ResidueClass> TameQuotientConstraint::residue_for(const Element& chi) const {
    auto coords = sub_.coordinates(chi);
    if (!coords) return std::nullopt;
    Element v = residue_map_.apply(*coords);
    return ResidueClass{n_, v.empty() ? Int(0) : v[0]};
}

bool TameQuotientConstraint::admits(const Element& chi, const Int& degree) const {
    auto rc = residue_for(chi);
    return rc && rc->contains(degree);
}

ValidationReport TameQuotientConstraint::validate_object(const FilteredObject& obj) const {
    return constrained_validate(sub_.ambient(), obj, "not-in-subcategory",
                                "lies outside the quotient subcategory",
                                [&](const Element& chi) { return residue_for(chi); });
}

TameQuotientConstraint classify_under_tame_quotient(const SimpleChainDatum& c,
                                                    const TameQuotientDatum& tq) {
    return TameQuotientConstraint(c, tq);
}

TameQuotientDatum make_locsys_quotient(const SimpleChainDatum& c) {
    require_valid_chain(c);
    if (!c.com)
        throw config_error("chain '" + c.name + "' carries no component data; local systems need it");
    Subgroup sub = image(c.com->com_s1.com_pullback);
    const FgAbelianGroup& h0 = c.com->com_s0.com_char_group;
    IntMatrix spec(h0.ngens(), sub.normal_form().ngens());
    std::vector<Element> gens = sub.normal_form_generators();
    for (std::size_t j = 0; j < gens.size(); ++j) {
        auto psi = preimage_element(c.com->com_s1.com_pullback, gens[j]);
        if (!psi) throw invariant_error("subgroup generator escaped the component image");
        Element v = c.com->sigma_res.apply(*psi);
        for (std::size_t i = 0; i < h0.ngens(); ++i) spec.at(i, j) = v[i];
    }
    AbHom spec_res(sub.normal_form(), h0, std::move(spec));
    return TameQuotientDatum{std::move(sub), h0, std::move(spec_res), c.com->com_s0.com_pullback};
}

bool flat_tame_criterion(const SimpleChainDatum& c, const TameQuotientDatum& tq) {
    require_valid_chain(c);
    ValidationReport r = validate_tame_quotient_datum(c, tq);
    if (!r.ok()) throw precondition_error("invalid tame-quotient datum:\n" + r.to_string());
    return tq.proj0_res.is_injective();
}

bool top_wedge_criterion(const SimpleChainDatum& c) {
    require_valid_chain(c);
    if (!c.top)
        throw config_error("chain '" + c.name + "' carries no top-wedge data");
    Element v = c.top->r0.apply(c.top->top_char0);
    return !c.top->lattice.is_zero(v);
}

} // namespace chaincalc
