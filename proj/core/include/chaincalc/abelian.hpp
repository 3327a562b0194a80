#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaincalc/matrix.hpp"
#include "chaincalc/smith.hpp"

namespace chaincalc {

// Coordinate vector of a group element.  Convention everywhere: torsion
// coordinates first, then free coordinates.
using Element = std::vector<Int>;

// Finitely generated abelian group in canonical form:
// Z/d_1 (+) ... (+) Z/d_t (+) Z^free_rank with d_i >= 2 and d_1 | d_2 | ... | d_t.
// The trivial group is free_rank 0 with empty torsion.
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;
    FgAbelianGroup(std::size_t free_rank, std::vector<Int> torsion);

    static FgAbelianGroup trivial() { return FgAbelianGroup(0, {}); }
    static FgAbelianGroup free_group(std::size_t r) { return FgAbelianGroup(r, {}); }
    // cyclic(0) = Z, cyclic(1) = trivial, cyclic(d) = Z/d for d >= 2.
    static FgAbelianGroup cyclic(const Int& d);

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    std::size_t torsion_count() const { return torsion_.size(); }
    std::size_t ngens() const { return torsion_.size() + free_rank_; }
    bool is_trivial() const { return ngens() == 0; }
    bool is_finite() const { return free_rank_ == 0; }

    // Product of torsion orders when finite, 0 when infinite.
    Int order() const;

    Element reduce(Element x) const;
    Element zero() const { return Element(ngens(), Int(0)); }
    Element add(const Element& a, const Element& b) const;
    Element negate(const Element& a) const;
    Element scale(const Int& k, const Element& a) const;
    bool is_zero(const Element& a) const;
    bool is_torsion_element(const Element& a) const;
    // Order of an element; 0 when infinite.
    Int element_order(const Element& a) const;

    // All elements; throws precondition_error when the group is infinite.
    std::vector<Element> all_elements() const;

    // Columns d_i * e_i spanning the relation lattice in Z^ngens.
    IntMatrix relation_matrix() const;

    std::string describe() const;
    bool operator==(const FgAbelianGroup&) const = default;

private:
    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;
};

// Z^rank modulo the row span of `relations` (each row is one relator of
// length `rank`), in canonical form.
FgAbelianGroup canonicalize(std::size_t rank, const IntMatrix& relations);

// to_canonical: ngens(group) x rank, sends presentation coordinates to
// canonical coordinates.  from_canonical: rank x ngens(group), a section;
// to_canonical * from_canonical is the identity modulo torsion.
struct CanonicalPresentation {
    FgAbelianGroup group;
    IntMatrix to_canonical;
    IntMatrix from_canonical;
};

CanonicalPresentation canonicalize_with_maps(std::size_t rank, const IntMatrix& relations);

bool is_torsion(const Element& x, const FgAbelianGroup& g);

// Homomorphism between groups in canonical form.  The matrix has
// ngens(target) rows and ngens(source) columns; f(x) = reduce(M x).
// Construction verifies that torsion relations are respected.
class AbHom {
public:
    AbHom(FgAbelianGroup source, FgAbelianGroup target, IntMatrix m);

    static AbHom identity(const FgAbelianGroup& g);
    static AbHom zero_hom(FgAbelianGroup source, FgAbelianGroup target);

    const FgAbelianGroup& source() const { return source_; }
    const FgAbelianGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    Element apply(const Element& x) const;

    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;

    bool operator==(const AbHom&) const = default;

private:
    FgAbelianGroup source_, target_;
    IntMatrix matrix_;
};

// g after f.
AbHom compose(const AbHom& g, const AbHom& f);
// Pointwise difference; source and target must agree.
AbHom hom_difference(const AbHom& f, const AbHom& g);

// Subgroup of an ambient group, generated by finitely many elements.
// Internally a saturated lattice basis supports exact membership tests in
// O(ngens^3) after construction.
class Subgroup {
public:
    Subgroup(FgAbelianGroup ambient, std::vector<Element> generators);

    const FgAbelianGroup& ambient() const { return ambient_; }
    const std::vector<Element>& generators() const { return generators_; }
    const FgAbelianGroup& normal_form() const { return normal_form_; }

    bool contains(const Element& x) const;
    // Coordinates of a member in normal-form coordinates.
    std::optional<Element> coordinates(const Element& x) const;
    // Ambient element realizing normal-form coordinates.
    Element from_coordinates(const Element& y) const;
    // Ambient elements realizing the normal-form generators.
    std::vector<Element> normal_form_generators() const;

    bool is_full() const;
    bool same_subgroup_as(const Subgroup& o) const;

private:
    FgAbelianGroup ambient_;
    std::vector<Element> generators_;
    IntMatrix basis_;
    SmithDecomposition basis_snf_;
    FgAbelianGroup normal_form_;
    IntMatrix to_canonical_, from_canonical_;

    std::optional<std::vector<Int>> basis_solve(const Element& x) const;
};

Subgroup kernel(const AbHom& f);
Subgroup image(const AbHom& f);
// One x with f(x) = y, or nullopt when y is outside the image.
std::optional<Element> preimage_element(const AbHom& f, const Element& y);

struct DirectSum {
    FgAbelianGroup group;
    std::vector<AbHom> injections;
    std::vector<AbHom> projections;
};

DirectSum direct_sum(const std::vector<FgAbelianGroup>& parts);

} // namespace chaincalc
