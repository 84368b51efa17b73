#ifndef DELTADEP_HOMOGENIZE_HPP
#define DELTADEP_HOMOGENIZE_HPP

#include <deltadep/diffpoly.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace deltadep {

/*
 * Δ-homogeneity of degree d: f(t·y_0, ..., t·y_n) = t^d · f with t a fresh
 * differential indeterminate, so δ_j(t·y_i) = t·δ_j y_i + y_i·δ_j t. This is
 * stronger than ordinary homogeneity in the coordinates δ^α y_i.
 *
 * Returns the degree, or nullopt when f is not Δ-homogeneous.
 * Throws std::invalid_argument for zero or constant f.
 */
inline std::optional<std::uint64_t> is_delta_homogeneous(const DiffPoly& f) {
    if (f.is_constant()) throw std::invalid_argument("Δ-homogeneity is only defined for non-constant polynomials");
    // Specializing t to a constant forces ordinary homogeneity first.
    const std::uint64_t d = f.total_degree();
    for (const auto& [mono, c] : f.terms())
        if (mono.degree() != d) return std::nullopt;

    auto vars = f.ambient().variables;
    const std::size_t t_index = vars.size();
    vars.push_back(f.ambient().fresh_name("t"));
    auto extended = make_ambient(f.ambient().m, std::move(vars));
    DiffPoly t = DiffPoly::variable(extended, t_index);

    std::vector<std::optional<DiffPoly>> images;
    for (std::size_t i = 0; i < t_index; ++i) images.emplace_back(t * DiffPoly::variable(extended, i));
    DiffPoly lhs = substitute(f, images, extended);
    DiffPoly rhs = pow(t, static_cast<std::uint32_t>(d)) * embed(f, extended);
    if (lhs == rhs) return d;
    return std::nullopt;
}

struct HomogenizationResult {
    DiffPoly polynomial;
    std::uint64_t degree;
};

/*
 * y_0^d · f(y_1/y_0, ..., y_n/y_0) for the least d making it a polynomial.
 *
 * The ambient's variable 0 plays the role of y_0 and must not occur in f.
 * Each δ^α(y_i/y_0) is expanded by the quotient rule as N_{i,α} / y_0^{|α|+1};
 * substituting and clearing the largest denominator gives y_0^E f(y/y_0), and
 * any common power of y_0 left in the numerator is then divided out.
 */
inline HomogenizationResult homogenize(const DiffPoly& f) {
    if (f.is_constant()) throw std::invalid_argument("cannot homogenize a zero or constant polynomial");
    if (f.ambient().variables.empty()) throw std::invalid_argument("ambient has no homogenizing variable");
    if (f.mentions(0))
        throw std::invalid_argument("polynomial already mentions the homogenizing variable '" +
                                    f.ambient().variables.front() + "'");
    const auto& amb = f.ambient_ptr();
    const std::size_t m = amb->m;
    const DiffPoly y0 = DiffPoly::variable(amb, 0);

    // numerators[(i, α)] with δ^α(y_i/y_0) = numerator / y_0^{|α|+1}
    std::map<DerivativeCoordinate, DiffPoly> numerators;
    auto numerator = [&](auto&& self, const DerivativeCoordinate& c) -> const DiffPoly& {
        if (auto it = numerators.find(c); it != numerators.end()) return it->second;
        DiffPoly value(amb);
        if (c.index.is_zero()) {
            value = DiffPoly::variable(amb, c.variable);
        } else {
            std::size_t k = 0;
            while (c.index[k] == 0) ++k;
            DerivativeCoordinate prev{c.variable, c.index - MultiIndex::unit(m, k)};
            const DiffPoly& n = self(self, prev);
            // δ_k(N / y_0^e) = (y_0·δ_k N − e·N·δ_k y_0) / y_0^{e+1}
            const auto e = static_cast<long>(prev.index.order() + 1);
            value = y0 * differentiate(n, k + 1) - Rational(e) * n * differentiate(y0, k + 1);
        }
        return numerators.emplace(c, std::move(value)).first->second;
    };

    std::uint64_t top = 0;
    std::vector<std::uint64_t> weights;
    for (const auto& [mono, c] : f.terms()) {
        std::uint64_t w = 0;
        for (const auto& [coord, e] : mono.factors()) w += e * (coord.index.order() + 1);
        weights.push_back(w);
        top = std::max(top, w);
    }

    DiffPoly cleared(amb);
    std::size_t idx = 0;
    for (const auto& [mono, c] : f.terms()) {
        DiffPoly term = DiffPoly::constant(amb, c);
        for (const auto& [coord, e] : mono.factors()) term *= pow(numerator(numerator, coord), e);
        term *= pow(y0, static_cast<std::uint32_t>(top - weights[idx++]));
        cleared += term;
    }

    // Largest power of y_0 dividing every term of the cleared numerator.
    const DerivativeCoordinate y0_coord{0, MultiIndex(m)};
    std::uint32_t common = std::numeric_limits<std::uint32_t>::max();
    for (const auto& [mono, c] : cleared.terms()) common = std::min(common, mono.exponent_of(y0_coord));
    DiffPoly result(amb);
    for (const auto& [mono, c] : cleared.terms()) result.add_term(mono.adjusted(y0_coord, -static_cast<std::int64_t>(common)), c);

    const std::uint64_t degree = top - common;
    auto check = is_delta_homogeneous(result);
    if (!check || *check != degree) throw std::logic_error("homogenization produced a non-Δ-homogeneous polynomial");
    return {std::move(result), degree};
}

}  // namespace deltadep

#endif  // DELTADEP_HOMOGENIZE_HPP
