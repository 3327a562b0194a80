#include "chaincalc/abelian.hpp"

#include <sstream>

#include "chaincalc/errors.hpp"

namespace chaincalc {

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Int> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2)
            throw input_error("torsion orders must be >= 2 (Z/1 factors are dropped)");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw input_error("torsion orders must form a divisibility chain");
    }
}

FgAbelianGroup FgAbelianGroup::cyclic(const Int& d) {
    if (d < 0) throw input_error("cyclic order must be nonnegative");
    if (d == 0) return free_group(1);
    if (d == 1) return trivial();
    return FgAbelianGroup(0, {d});
}

Int FgAbelianGroup::order() const {
    if (free_rank_ > 0) return 0;
    Int n = 1;
    for (const Int& d : torsion_) n *= d;
    return n;
}

Element FgAbelianGroup::reduce(Element x) const {
    if (x.size() != ngens()) throw domain_error("element length does not match group rank");
    for (std::size_t i = 0; i < torsion_.size(); ++i) x[i] = mod_floor(x[i], torsion_[i]);
    return x;
}

Element FgAbelianGroup::add(const Element& a, const Element& b) const {
    if (a.size() != ngens() || b.size() != ngens())
        throw domain_error("element length does not match group rank");
    Element out(ngens());
    for (std::size_t i = 0; i < ngens(); ++i) out[i] = a[i] + b[i];
    return reduce(std::move(out));
}

Element FgAbelianGroup::negate(const Element& a) const {
    if (a.size() != ngens()) throw domain_error("element length does not match group rank");
    Element out(ngens());
    for (std::size_t i = 0; i < ngens(); ++i) out[i] = -a[i];
    return reduce(std::move(out));
}

Element FgAbelianGroup::scale(const Int& k, const Element& a) const {
    if (a.size() != ngens()) throw domain_error("element length does not match group rank");
    Element out(ngens());
    for (std::size_t i = 0; i < ngens(); ++i) out[i] = k * a[i];
    return reduce(std::move(out));
}

bool FgAbelianGroup::is_zero(const Element& a) const {
    Element r = reduce(a);
    for (const Int& c : r)
        if (c != 0) return false;
    return true;
}

bool FgAbelianGroup::is_torsion_element(const Element& a) const {
    Element r = reduce(a);
    for (std::size_t j = torsion_.size(); j < ngens(); ++j)
        if (r[j] != 0) return false;
    return true;
}

Int FgAbelianGroup::element_order(const Element& a) const {
    Element r = reduce(a);
    if (!is_torsion_element(r)) return 0;
    Int n = 1;
    for (std::size_t i = 0; i < torsion_.size(); ++i)
        n = lcm(n, torsion_[i] / gcd(torsion_[i], r[i]));
    return n;
}

std::vector<Element> FgAbelianGroup::all_elements() const {
    if (!is_finite()) throw precondition_error("cannot enumerate an infinite group");
    std::vector<Element> out;
    Element cur = zero();
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < torsion_.size(); ++i) {
            cur[i] += 1;
            if (cur[i] < torsion_[i]) break;
            cur[i] = 0;
        }
        if (i == torsion_.size()) break;
    }
    return out;
}

IntMatrix FgAbelianGroup::relation_matrix() const {
    IntMatrix m(ngens(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) m.at(i, i) = torsion_[i];
    return m;
}

std::string FgAbelianGroup::describe() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : torsion_) {
        os << (first ? "" : " (+) ") << "Z/" << d;
        first = false;
    }
    if (free_rank_ == 1) os << (first ? "Z" : " (+) Z");
    else if (free_rank_ > 1) os << (first ? "" : " (+) ") << "Z^" << free_rank_;
    return os.str();
}

CanonicalPresentation canonicalize_with_maps(std::size_t rank, const IntMatrix& relations) {
    if (relations.cols() != rank)
        throw input_error("relation matrix must have one column per generator");
    // Columns of R are the relators; U R V = D diagonalizes the relation
    // lattice, so y = U x are coordinates in which the quotient splits.
    SmithDecomposition s = smith_normal_form(relations.transpose());
    std::vector<std::size_t> kept;
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < s.rank; ++i) {
        Int d = s.D.at(i, i);
        if (d >= 2) {
            kept.push_back(i);
            torsion.push_back(d);
        }
    }
    std::size_t free_rank = rank - s.rank;
    CanonicalPresentation out;
    out.group = FgAbelianGroup(free_rank, torsion);
    std::size_t n = out.group.ngens();
    out.to_canonical = IntMatrix(n, rank);
    out.from_canonical = IntMatrix(rank, n);
    std::vector<std::size_t> rows = kept;
    for (std::size_t j = s.rank; j < rank; ++j) rows.push_back(j);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t x = 0; x < rank; ++x) {
            out.to_canonical.at(a, x) = s.U.at(rows[a], x);
            out.from_canonical.at(x, a) = s.Uinv.at(x, rows[a]);
        }
    }
    return out;
}

FgAbelianGroup canonicalize(std::size_t rank, const IntMatrix& relations) {
    return canonicalize_with_maps(rank, relations).group;
}

bool is_torsion(const Element& x, const FgAbelianGroup& g) { return g.is_torsion_element(x); }

AbHom::AbHom(FgAbelianGroup source, FgAbelianGroup target, IntMatrix m)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(m)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
        throw input_error("hom matrix shape does not match source/target ranks");
    for (std::size_t j = 0; j < source_.torsion_count(); ++j) {
        Element img = matrix_.column(j);
        if (!target_.is_zero(target_.scale(source_.torsion()[j], img)))
            throw welldef_error("matrix does not kill a torsion relation of the source");
    }
    // Normalize columns modulo target torsion so equal homs compare equal.
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
        Element col = target_.reduce(matrix_.column(j));
        for (std::size_t i = 0; i < matrix_.rows(); ++i) matrix_.at(i, j) = col[i];
    }
}

AbHom AbHom::identity(const FgAbelianGroup& g) {
    return AbHom(g, g, IntMatrix::identity(g.ngens()));
}

AbHom AbHom::zero_hom(FgAbelianGroup source, FgAbelianGroup target) {
    IntMatrix m(target.ngens(), source.ngens());
    return AbHom(std::move(source), std::move(target), std::move(m));
}

Element AbHom::apply(const Element& x) const {
    return target_.reduce(matrix_.apply(source_.reduce(x)));
}

bool AbHom::is_injective() const { return kernel(*this).normal_form().is_trivial(); }

bool AbHom::is_surjective() const { return image(*this).is_full(); }

bool AbHom::is_isomorphism() const { return is_injective() && is_surjective(); }

AbHom compose(const AbHom& g, const AbHom& f) {
    if (!(g.source() == f.target()))
        throw domain_error("compose: inner target does not match outer source");
    return AbHom(f.source(), g.target(), g.matrix() * f.matrix());
}

AbHom hom_difference(const AbHom& f, const AbHom& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw domain_error("hom difference requires equal sources and targets");
    return AbHom(f.source(), f.target(), f.matrix() - g.matrix());
}

namespace {

// Solve B x = b for the precomputed decomposition of B; unique when the
// columns of B are independent.
std::optional<std::vector<Int>> solve_with(const SmithDecomposition& s, std::size_t cols,
                                           const std::vector<Int>& b) {
    std::vector<Int> c = s.U.apply(b);
    std::vector<Int> y(cols, Int(0));
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j < s.rank) {
            const Int& d = s.D.at(j, j);
            if (c[j] % d != 0) return std::nullopt;
            y[j] = c[j] / d;
        } else if (c[j] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

} // namespace

Subgroup::Subgroup(FgAbelianGroup ambient, std::vector<Element> generators)
    : ambient_(std::move(ambient)) {
    generators_.reserve(generators.size());
    for (Element& g : generators) generators_.push_back(ambient_.reduce(std::move(g)));
    // Lattice of all lifts: generator lifts plus the ambient relations.
    IntMatrix gens = IntMatrix::from_columns(generators_);
    if (generators_.empty()) gens = IntMatrix(ambient_.ngens(), 0);
    IntMatrix lattice = gens.hconcat(ambient_.relation_matrix());
    basis_ = column_lattice_basis(lattice);
    basis_snf_ = smith_normal_form(basis_);
    std::size_t s = basis_.cols();
    // Present the subgroup: basis vectors modulo the ambient relations.
    IntMatrix relators(ambient_.torsion_count(), s);
    for (std::size_t i = 0; i < ambient_.torsion_count(); ++i) {
        Element rel = ambient_.zero();
        rel[i] = ambient_.torsion()[i];
        auto c = solve_with(basis_snf_, s, rel);
        if (!c) throw invariant_error("ambient relation escaped the subgroup lattice");
        for (std::size_t j = 0; j < s; ++j) relators.at(i, j) = (*c)[j];
    }
    CanonicalPresentation cp = canonicalize_with_maps(s, relators);
    normal_form_ = cp.group;
    to_canonical_ = cp.to_canonical;
    from_canonical_ = cp.from_canonical;
}

std::optional<std::vector<Int>> Subgroup::basis_solve(const Element& x) const {
    return solve_with(basis_snf_, basis_.cols(), x);
}

bool Subgroup::contains(const Element& x) const {
    return basis_solve(ambient_.reduce(x)).has_value();
}

std::optional<Element> Subgroup::coordinates(const Element& x) const {
    auto y = basis_solve(ambient_.reduce(x));
    if (!y) return std::nullopt;
    return normal_form_.reduce(to_canonical_.apply(*y));
}

Element Subgroup::from_coordinates(const Element& y) const {
    Element yr = normal_form_.reduce(y);
    return ambient_.reduce(basis_.apply(from_canonical_.apply(yr)));
}

std::vector<Element> Subgroup::normal_form_generators() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < normal_form_.ngens(); ++i) {
        Element e = normal_form_.zero();
        e[i] = 1;
        out.push_back(from_coordinates(e));
    }
    return out;
}

bool Subgroup::is_full() const {
    for (std::size_t i = 0; i < ambient_.ngens(); ++i) {
        Element e = ambient_.zero();
        e[i] = 1;
        if (!contains(e)) return false;
    }
    return true;
}

bool Subgroup::same_subgroup_as(const Subgroup& o) const {
    if (!(ambient_ == o.ambient_)) throw domain_error("subgroup comparison across different ambients");
    for (const Element& g : generators_)
        if (!o.contains(g)) return false;
    for (const Element& g : o.generators_)
        if (!contains(g)) return false;
    return true;
}

Subgroup kernel(const AbHom& f) {
    std::size_t s = f.source().ngens();
    // x is in the kernel iff M x lies in the target relation lattice.
    IntMatrix b = f.matrix().hconcat(f.target().relation_matrix());
    IntMatrix k = integer_kernel(b);
    std::vector<Element> gens;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        Element x(s);
        for (std::size_t i = 0; i < s; ++i) x[i] = k.at(i, j);
        gens.push_back(f.source().reduce(std::move(x)));
    }
    return Subgroup(f.source(), std::move(gens));
}

Subgroup image(const AbHom& f) {
    std::vector<Element> gens;
    for (std::size_t j = 0; j < f.matrix().cols(); ++j) gens.push_back(f.matrix().column(j));
    return Subgroup(f.target(), std::move(gens));
}

std::optional<Element> preimage_element(const AbHom& f, const Element& y) {
    Element yr = f.target().reduce(y);
    IntMatrix b = f.matrix().hconcat(f.target().relation_matrix());
    auto z = solve_integer(b, yr);
    if (!z) return std::nullopt;
    std::size_t s = f.source().ngens();
    Element x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = (*z)[i];
    return f.source().reduce(std::move(x));
}

DirectSum direct_sum(const std::vector<FgAbelianGroup>& parts) {
    std::vector<std::size_t> offset;
    std::size_t n = 0, nrel = 0;
    for (const FgAbelianGroup& p : parts) {
        offset.push_back(n);
        n += p.ngens();
        nrel += p.torsion_count();
    }
    IntMatrix relators(nrel, n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t t = 0; t < parts[i].torsion_count(); ++t) {
            relators.at(r, offset[i] + t) = parts[i].torsion()[t];
            ++r;
        }
    CanonicalPresentation cp = canonicalize_with_maps(n, relators);
    DirectSum out;
    out.group = cp.group;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        IntMatrix incl(n, parts[i].ngens());
        for (std::size_t j = 0; j < parts[i].ngens(); ++j) incl.at(offset[i] + j, j) = 1;
        out.injections.emplace_back(parts[i], out.group, cp.to_canonical * incl);
        IntMatrix proj(parts[i].ngens(), out.group.ngens());
        for (std::size_t j = 0; j < parts[i].ngens(); ++j)
            for (std::size_t a = 0; a < out.group.ngens(); ++a)
                proj.at(j, a) = cp.from_canonical.at(offset[i] + j, a);
        out.projections.emplace_back(out.group, parts[i], std::move(proj));
    }
    return out;
}

} // namespace chaincalc
