#ifndef DELTADEP_ORDINALS_HPP
#define DELTADEP_ORDINALS_HPP

#include <deltadep/kolchin.hpp>
#include <deltadep/multiindex.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltadep {

/*
 * Ordinal below ω^(m+1) in Cantor normal form ω^m·c_m + ⋯ + ω·c_1 + c_0.
 * Coefficients are stored from the top exponent down, so the ordinal order is
 * the lexicographic order of the coefficient vector.
 */
class OrdinalCNF {
public:
    explicit OrdinalCNF(std::size_t m = 0) : coeffs_(m + 1, 0) {}
    explicit OrdinalCNF(std::vector<std::uint64_t> top_down) : coeffs_(std::move(top_down)) {
        if (coeffs_.empty()) throw std::invalid_argument("ordinal needs at least one coefficient");
    }

    /// ω^exponent · c.
    static OrdinalCNF power(std::size_t m, std::size_t exponent, std::uint64_t c = 1) {
        if (exponent > m) throw std::out_of_range("exponent exceeds ω^m");
        OrdinalCNF o(m);
        o.coeffs_[m - exponent] = c;
        return o;
    }

    std::size_t top_exponent() const noexcept { return coeffs_.size() - 1; }
    const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of ω^e.
    std::uint64_t coefficient(std::size_t e) const { return coeffs_.at(top_exponent() - e); }

    bool is_zero() const noexcept {
        for (auto c : coeffs_)
            if (c) return false;
        return true;
    }

    std::strong_ordering operator<=>(const OrdinalCNF& o) const {
        check_same(o);
        return coeffs_ <=> o.coeffs_;
    }
    bool operator==(const OrdinalCNF& o) const { return coeffs_ == o.coeffs_; }

    void check_same(const OrdinalCNF& o) const {
        if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("ordinals carry different exponent bounds");
    }

private:
    std::vector<std::uint64_t> coeffs_;
};

/// Natural (Hessenberg) sum: coefficientwise addition.
inline OrdinalCNF natural_sum(const OrdinalCNF& a, const OrdinalCNF& b) {
    a.check_same(b);
    std::vector<std::uint64_t> c(a.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
    return OrdinalCNF(std::move(c));
}

/// ASCII rendering with `w` for ω, e.g. `w^2*2 + w*3 + 1`.
inline std::string to_string(const OrdinalCNF& o) {
    std::string out;
    for (std::size_t e = o.top_exponent() + 1; e-- > 0;) {
        std::uint64_t c = o.coefficient(e);
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        std::string base = e == 0 ? "" : (e == 1 ? "w" : "w^" + std::to_string(e));
        if (base.empty()) out += std::to_string(c);
        else if (c == 1) out += base;
        else out += base + "*" + std::to_string(c);
    }
    return out.empty() ? "0" : out;
}

/// r = (i, r_1, ..., r_m) ∈ n × N^m, ordered lexicographically.
struct GrIndex {
    std::size_t n = 1;
    std::size_t m = 1;
    std::size_t i = 0;
    std::vector<std::uint32_t> r;

    GrIndex() = default;
    GrIndex(std::size_t vars, std::size_t derivations, std::size_t which, std::vector<std::uint32_t> orders)
        : n(vars), m(derivations), i(which), r(std::move(orders)) {
        if (m == 0) throw std::invalid_argument("at least one derivation is required");
        if (i >= n) throw std::invalid_argument("index i must lie in [0, n)");
        if (r.size() != m) throw std::invalid_argument("expected " + std::to_string(m) + " orders r_1..r_m");
    }

    /// Smallest 1-based k with r_k > 0.
    std::optional<std::size_t> first_nonzero() const {
        for (std::size_t k = 0; k < r.size(); ++k)
            if (r[k] > 0) return k + 1;
        return std::nullopt;
    }

    void check_same_ambient(const GrIndex& o) const {
        if (o.n != n || o.m != m) throw std::invalid_argument("G_r indices live in different ambients");
    }

    std::strong_ordering operator<=>(const GrIndex& o) const {
        check_same_ambient(o);
        if (auto c = i <=> o.i; c != 0) return c;
        return r <=> o.r;
    }
    bool operator==(const GrIndex& o) const { return n == o.n && m == o.m && i == o.i && r == o.r; }
};

inline std::string to_string(const GrIndex& g) {
    std::string out = "(" + std::to_string(g.i);
    for (auto x : g.r) out += "," + std::to_string(x);
    return out + ")";
}

/*
 * Defining system of G_r in x_0..x_{n-1}: x_0..x_{i-1} free; x_i subject to
 *   δ_1^{r_1+1} x_i = 0,  δ_2^{r_2+1} δ_1^{r_1} x_i = 0,  …,
 *   δ_{m-1}^{r_{m-1}+1} ⋯ δ_1^{r_1} x_i = 0,  δ_m^{r_m} ⋯ δ_1^{r_1} x_i = 0;
 * and x_{i+1}..x_{n-1} zero. For m = 1 the single leader is (r_1).
 */
inline MonomialLinearSystem gr_system(const GrIndex& g) {
    MonomialLinearSystem sys(g.m, g.n);
    std::vector<MultiIndex> leaders;
    for (std::size_t j = 0; j < g.m; ++j) {
        std::vector<MultiIndex::value_type> e(g.m, 0);
        for (std::size_t l = 0; l < j; ++l) e[l] = g.r[l];
        e[j] = g.r[j] + (j + 1 < g.m ? 1 : 0);
        leaders.emplace_back(std::move(e));
    }
    sys.set_leaders(g.i, std::move(leaders));
    for (std::size_t v = g.i + 1; v < g.n; ++v) sys.set_zeroed(v);
    return sys;
}

inline StaircaseResult gr_kolchin(const GrIndex& g) { return staircase_kolchin(gr_system(g)); }

struct RankBounds {
    OrdinalCNF lower;
    OrdinalCNF strict_upper;
    /// True when r = 0, where the upper bound ω^m·i + 1 is a convention.
    bool upper_is_convention = false;
};

/// ω^m·i + Σ_j ω^{m−j} r_j ≤ U(G_r) < ω^m·i + ω^{m−k}(r_k + 1), k minimal with r_k > 0.
inline RankBounds gr_rank_bounds(const GrIndex& g) {
    std::vector<std::uint64_t> low{g.i};
    for (auto x : g.r) low.push_back(x);
    RankBounds b{OrdinalCNF(std::move(low)), OrdinalCNF::power(g.m, g.m, g.i), false};
    if (auto k = g.first_nonzero()) {
        b.strict_upper = natural_sum(b.strict_upper, OrdinalCNF::power(g.m, g.m - *k, g.r[*k - 1] + 1));
    } else {
        b.strict_upper = natural_sum(b.strict_upper, OrdinalCNF::power(g.m, 0, 1));
        b.upper_is_convention = true;
    }
    return b;
}

/*
 * Per-variable lower bounds on U(a_j/K) for a generic point of G_r:
 * ω^m for j < i, Σ_j ω^{m−j} r_j for x_i, and 0 above i.
 */
inline std::vector<OrdinalCNF> gr_variable_rank_lower(const GrIndex& g) {
    std::vector<OrdinalCNF> out;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (v < g.i) {
            out.push_back(OrdinalCNF::power(g.m, g.m));
        } else if (v == g.i) {
            std::vector<std::uint64_t> c{0};
            for (auto x : g.r) c.push_back(x);
            out.emplace_back(std::move(c));
        } else {
            out.emplace_back(g.m);
        }
    }
    return out;
}

struct Containment {
    bool contains = false;
    bool strict = false;
};

/*
 * Whether G_g ⊆ G_h, decided on leaders: every equation of h must be a
 * derivative of an equation of g for the same variable, with a zeroed
 * variable treated as the leader 0. Strictness compares Kolchin polynomials.
 */
inline Containment gr_contains(const GrIndex& g, const GrIndex& h) {
    g.check_same_ambient(h);
    const auto sg = gr_system(g);
    const auto sh = gr_system(h);
    Containment c;
    c.contains = true;
    for (std::size_t v = 0; v < g.n && c.contains; ++v) {
        const auto lg = sg.effective_leaders(v);
        for (const auto& b : sh.effective_leaders(v)) {
            bool derived = std::any_of(lg.begin(), lg.end(), [&](const MultiIndex& a) { return leq(a, b); });
            if (!derived) {
                c.contains = false;
                break;
            }
        }
    }
    if (c.contains)
        c.strict = eventual_compare(staircase_kolchin(sg).polynomial, staircase_kolchin(sh).polynomial) < 0;
    return c;
}

/// All GrIndex with r_j ≤ max_order, in increasing lexicographic order.
inline std::vector<GrIndex> gr_chain(std::size_t n, std::size_t m, std::uint32_t max_order) {
    std::vector<GrIndex> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> r(m, 0);
        while (true) {
            out.emplace_back(n, m, i, r);
            std::size_t k = m;
            while (k > 0 && r[k - 1] == max_order) r[--k] = 0;
            if (k == 0) break;
            ++r[k - 1];
        }
    }
    return out;
}

}  // namespace deltadep

#endif  // DELTADEP_ORDINALS_HPP
