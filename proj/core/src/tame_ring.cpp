#include "chaincalc/tame_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "chaincalc/errors.hpp"

namespace chaincalc {

namespace {

constexpr std::size_t max_weight_count = 12;
constexpr std::size_t default_node_limit = 4000000;

std::size_t hilbert_node_limit() {
    if (const char* env = std::getenv("CHAINCALC_HILBERT_NODE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return default_node_limit;
}

bool dominates(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

// Completion procedure: grow candidate exponents from the unit vectors,
// stepping only in coordinates that move the weight sum toward zero, and
// prune anything dominating a solution already found.  Terminates by
// Dickson's lemma; minimality of the result is the standard invariant.
std::vector<std::vector<Int>> equal_zero_basis(const std::vector<Int>& weights) {
    const std::size_t r = weights.size();
    const std::size_t limit = hilbert_node_limit();
    std::size_t nodes = 0;
    std::set<std::vector<Int>> frontier;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> u(r, Int(0));
        u[i] = 1;
        frontier.insert(std::move(u));
    }
    std::vector<std::vector<Int>> basis;
    auto minimal_against_basis = [&](const std::vector<Int>& e) {
        for (const auto& b : basis)
            if (dominates(e, b)) return false;
        return true;
    };
    while (!frontier.empty()) {
        std::set<std::vector<Int>> next;
        for (const std::vector<Int>& e : frontier) {
            Int v = 0;
            for (std::size_t i = 0; i < r; ++i) v += e[i] * weights[i];
            if (v == 0) {
                if (minimal_against_basis(e)) basis.push_back(e);
                continue;
            }
            for (std::size_t j = 0; j < r; ++j) {
                if (v * weights[j] >= 0) continue;
                std::vector<Int> child = e;
                child[j] += 1;
                if (!minimal_against_basis(child)) continue;
                if (++nodes > limit)
                    throw resource_error("hilbert basis search exceeded the node limit");
                next.insert(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    // Defensive sweep: drop anything dominating another basis element.
    std::vector<std::vector<Int>> out;
    for (const auto& e : basis) {
        bool keep = true;
        for (const auto& f : basis)
            if (&e != &f && dominates(e, f) && e != f) keep = false;
        if (keep) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::vector<Int>> hilbert_basis(const std::vector<Int>& weights,
                                            HilbertConstraint constraint) {
    if (weights.empty()) throw input_error("hilbert basis needs at least one weight");
    if (weights.size() > max_weight_count)
        throw resource_error("hilbert basis supports at most 12 weights");
    if (constraint == HilbertConstraint::equal_zero) return equal_zero_basis(weights);
    // Nonnegative sums: add a slack variable of weight -1 and project it
    // away; the slack value is determined by the rest, so atoms map to
    // atoms bijectively.
    std::vector<Int> slack = weights;
    slack.push_back(Int(-1));
    std::vector<std::vector<Int>> lifted = equal_zero_basis(slack);
    std::vector<std::vector<Int>> out;
    for (auto& e : lifted) {
        e.pop_back();
        bool zero = std::all_of(e.begin(), e.end(), [](const Int& c) { return c == 0; });
        if (!zero) out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Monomial::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        if (any) os << "*";
        os << "s" << (i + 1);
        if (exponents[i] != 1) os << "^" << exponents[i];
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

std::vector<Monomial> f0_generators(const WeightedFreePresentation& p) {
    if (p.degrees.empty()) throw input_error("presentation needs at least one generator");
    std::vector<Monomial> out;
    for (auto& e : hilbert_basis(p.degrees, HilbertConstraint::equal_zero))
        out.push_back(Monomial{std::move(e)});
    return out;
}

bool is_idempotent(const MonomialIdealData& ideal) {
    for (const std::vector<Int>& g : ideal.generators) {
        if (g.size() != ideal.exponent_dim)
            throw input_error("generator exponent vector has the wrong dimension");
        bool in_square = false;
        for (const auto& a : ideal.generators) {
            for (const auto& b : ideal.generators) {
                bool le = true;
                for (std::size_t i = 0; i < g.size() && le; ++i)
                    if (a[i] + b[i] > g[i]) le = false;
                if (le) {
                    in_square = true;
                    break;
                }
            }
            if (in_square) break;
        }
        if (!in_square) return false;
    }
    // Support components satisfy R_i^2 = R_i, and the zero ideal is
    // vacuously idempotent.
    return true;
}

std::vector<std::string> TameQuotientResult::special_fiber() const {
    std::vector<std::string> out;
    for (const TameComponentResult& c : components)
        if (c.in_special_fiber) out.push_back(c.name);
    return out;
}

TameQuotientResult tame_quotient(const IdealAdicPresentation& p) {
    if (p.components.empty()) throw input_error("presentation needs at least one component");
    TameQuotientResult out;
    out.component_group = p.component_group;
    for (const AdicComponent& c : p.components) {
        switch (c.ideal) {
        case IdealKind::unit:
            // F^{>=m} = R for all m, so F^inf = R: the component carries the
            // full filtration and is absent at 0.
            out.components.push_back({c.name, false, FiltrationKind::all});
            break;
        case IdealKind::zero:
            out.components.push_back({c.name, true, FiltrationKind::trivial});
            break;
        case IdealKind::proper_principal:
            if (!c.is_integral)
                throw unsupported_error(
                    "component '" + c.name +
                    "': intersection of ideal powers is only known to vanish on integral components");
            // Krull intersection: cap of proper ideal powers on an integral
            // component is zero, so the induced filtration is trivial.
            out.components.push_back({c.name, true, FiltrationKind::trivial});
            break;
        }
    }
    return out;
}

IdealAdicPresentation represent(const TameQuotientResult& r, const IdealAdicPresentation& original) {
    if (r.components.size() != original.components.size())
        throw input_error("result and original presentation have different component counts");
    IdealAdicPresentation out;
    out.component_group = r.component_group;
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        IdealKind kind = r.components[i].filtration == FiltrationKind::all ? IdealKind::unit
                                                                           : IdealKind::zero;
        out.components.push_back(
            {r.components[i].name, original.components[i].is_integral, kind});
    }
    return out;
}

MonomialIdealData emitted_filtration_ideal(const TameQuotientResult& r) {
    MonomialIdealData out;
    for (const TameComponentResult& c : r.components)
        out.component_support.push_back(c.filtration == FiltrationKind::all);
    return out;
}

std::string SpecializationDescription::to_string() const {
    std::string s;
    for (const std::string& l : lines) {
        if (!s.empty()) s += "\n";
        s += l;
    }
    return s;
}

SpecializationDescription describe_specialization(const TameQuotientResult& r) {
    SpecializationDescription out;
    for (const TameComponentResult& c : r.components) {
        if (c.in_special_fiber)
            out.lines.push_back("component " + c.name + ": identity of " + c.name + " x A^1");
        else
            out.lines.push_back("component " + c.name + ": open embedding (" + c.name +
                                " x A^1) minus the zero fiber");
    }
    if (r.component_group)
        out.lines.push_back("component groups: " + r.component_group->group.describe() +
                            " included as " + r.component_group->gamma_image);
    return out;
}

} // namespace chaincalc
