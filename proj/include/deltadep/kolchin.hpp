#ifndef DELTADEP_KOLCHIN_HPP
#define DELTADEP_KOLCHIN_HPP

#include <deltadep/multiindex.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltadep {

/// C(t+j, j) = (t+1)(t+2)⋯(t+j)/j! as a polynomial in t, valid for every integer t.
inline std::int64_t binomial_basis_value(std::int64_t t, std::size_t j) {
    __int128 r = 1;
    for (std::size_t i = 1; i <= j; ++i) r = r * (t + static_cast<std::int64_t>(i)) / static_cast<std::int64_t>(i);
    return static_cast<std::int64_t>(r);
}

/*
 * Numerical polynomial Σ_j a_j · C(t+j, j) with integer coefficients. The
 * coefficient vector is trimmed so the last entry is nonzero; the zero
 * polynomial has no coefficients and degree -1.
 */
class NumericalPolynomial {
public:
    NumericalPolynomial() = default;
    explicit NumericalPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static NumericalPolynomial constant(std::int64_t c) { return NumericalPolynomial({c}); }

    /*
     * The unique numerical polynomial of degree ≤ values.size()-1 taking the
     * given values at t = 0, 1, 2, .... Newton forward differences give the
     * coefficients in the basis C(t, i); since C(t+j, j) = Σ_i C(j, i)·C(t, i)
     * the change of basis is unit upper triangular.
     */
    static NumericalPolynomial interpolate(std::span<const std::int64_t> values) {
        const std::size_t n = values.size();
        std::vector<std::int64_t> diff(values.begin(), values.end());
        std::vector<std::int64_t> newton(n);
        for (std::size_t i = 0; i < n; ++i) {
            newton[i] = diff[0];
            for (std::size_t k = 0; k + 1 < diff.size(); ++k) diff[k] = diff[k + 1] - diff[k];
            if (!diff.empty()) diff.pop_back();
        }
        std::vector<std::int64_t> a(n);
        for (std::size_t i = n; i-- > 0;) {
            std::int64_t acc = newton[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= a[j] * binomial_basis_value(static_cast<std::int64_t>(i), j - i) /* C(j,i) */;
            a[i] = acc;
        }
        return NumericalPolynomial(std::move(a));
    }

    const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    std::int64_t coefficient(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : 0; }

    std::int64_t operator()(std::int64_t t) const {
        std::int64_t v = 0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) v += coeffs_[j] * binomial_basis_value(t, j);
        return v;
    }

    NumericalPolynomial& operator+=(const NumericalPolynomial& o) {
        coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    NumericalPolynomial& operator-=(const NumericalPolynomial& o) { return *this += o * -1; }
    friend NumericalPolynomial operator+(NumericalPolynomial a, const NumericalPolynomial& b) { return a += b; }
    friend NumericalPolynomial operator-(NumericalPolynomial a, const NumericalPolynomial& b) { return a -= b; }
    friend NumericalPolynomial operator*(NumericalPolynomial a, std::int64_t s) {
        for (auto& c : a.coeffs_) c *= s;
        a.trim();
        return a;
    }
    friend NumericalPolynomial operator*(std::int64_t s, NumericalPolynomial a) { return std::move(a) * s; }

    bool operator==(const NumericalPolynomial&) const = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<std::int64_t> coeffs_;
};

/// Ordering of values for all sufficiently large t: compare from the top coefficient down.
inline std::strong_ordering eventual_compare(const NumericalPolynomial& p, const NumericalPolynomial& q) {
    const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
    for (std::size_t j = n; j-- > 0;)
        if (auto c = p.coefficient(j) <=> q.coefficient(j); c != 0) return c;
    return std::strong_ordering::equal;
}

inline std::string to_string(const NumericalPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t j = p.coeffs().size(); j-- > 0;) {
        std::int64_t c = p.coeffs()[j];
        if (c == 0) continue;
        std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-c) : static_cast<std::uint64_t>(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string basis = j == 0 ? "" : "C(t+" + std::to_string(j) + "," + std::to_string(j) + ")";
        if (basis.empty()) out += std::to_string(mag);
        else if (mag == 1) out += basis;
        else out += std::to_string(mag) + "*" + basis;
    }
    return out;
}

/// C(t+m, m), the Kolchin polynomial of one free differential indeterminate.
inline NumericalPolynomial binomial_poly(std::size_t m) {
    std::vector<std::int64_t> c(m + 1, 0);
    c[m] = 1;
    return NumericalPolynomial(std::move(c));
}

/// C(t − s + m, m): the number of α ≥ β with |α| ≤ t, when |β| = s and t ≥ s.
inline NumericalPolynomial shifted_binomial_poly(std::size_t m, std::uint64_t s) {
    std::vector<std::int64_t> values(m + 1);
    for (std::size_t t = 0; t <= m; ++t)
        values[t] = binomial_basis_value(static_cast<std::int64_t>(t) - static_cast<std::int64_t>(s), m);
    return NumericalPolynomial::interpolate(values);
}

/// ω_W = ω_V + C(t+m, m): the affine cone over a projective variety.
inline NumericalPolynomial affine_cone_shift(const NumericalPolynomial& omega_v, std::size_t m) {
    return omega_v + binomial_poly(m);
}

/// (n−1)·C(t+m, m) + d, the Kolchin polynomial of the linear-dependence locus.
inline NumericalPolynomial ld_kolchin(std::int64_t n, std::size_t m, std::int64_t d) {
    if (n < 1) throw std::invalid_argument("arity n must be at least 1");
    if (d < 0) throw std::invalid_argument("constant d must be non-negative");
    return binomial_poly(m) * (n - 1) + NumericalPolynomial::constant(d);
}

/// Checks n(t+1) + d = (n+1)·C(t+1, 1) − C(t−d+1, 1) as polynomials in t.
inline bool transversal_identity_check(std::int64_t n, std::int64_t d) {
    if (n < 1 || d < 0) throw std::invalid_argument("need n ≥ 1 and d ≥ 0");
    NumericalPolynomial lhs = binomial_poly(1) * n + NumericalPolynomial::constant(d);
    NumericalPolynomial rhs = binomial_poly(1) * (n + 1) - shifted_binomial_poly(1, static_cast<std::uint64_t>(d));
    return lhs == rhs;
}

/// Degree of a nonzero numerical polynomial.
inline int delta_type(const NumericalPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("Δ-type of the zero polynomial is undefined");
    return p.degree();
}

/// Top binomial-basis coefficient of a nonzero numerical polynomial.
inline std::int64_t delta_dim(const NumericalPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("Δ-dimension of the zero polynomial is undefined");
    return p.coeffs().back();
}

/// Removes non-minimal elements and duplicates; result sorted graded-lex.
inline std::vector<MultiIndex> minimize_leaders(std::vector<MultiIndex> leaders) {
    std::sort(leaders.begin(), leaders.end());
    leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());
    std::vector<MultiIndex> out;
    for (const auto& a : leaders) {
        bool dominated = std::any_of(out.begin(), out.end(), [&](const MultiIndex& b) { return leq(b, a); });
        if (!dominated) out.push_back(a);
    }
    return out;
}

/*
 * Linear system of monomial equations δ^α x_v = 0 over `vars` differential
 * indeterminates: for each variable a leader set (kept minimal), or the
 * variable is forced to zero outright.
 */
class MonomialLinearSystem {
public:
    MonomialLinearSystem(std::size_t m, std::size_t vars) : m_(m), leaders_(vars), zeroed_(vars, false) {
        if (m == 0) throw std::invalid_argument("at least one derivation is required");
    }

    MonomialLinearSystem(std::size_t m, std::vector<std::vector<MultiIndex>> leaders, std::set<std::size_t> zeroed)
        : MonomialLinearSystem(m, leaders.size()) {
        for (std::size_t v = 0; v < leaders.size(); ++v) set_leaders(v, std::move(leaders[v]));
        for (auto v : zeroed) set_zeroed(v);
    }

    std::size_t derivations() const noexcept { return m_; }
    std::size_t num_vars() const noexcept { return leaders_.size(); }
    const std::vector<MultiIndex>& leaders(std::size_t v) const { return leaders_.at(v); }
    bool zeroed(std::size_t v) const { return zeroed_.at(v); }

    void set_leaders(std::size_t v, std::vector<MultiIndex> ls) {
        for (const auto& a : ls)
            if (a.size() != m_) throw std::invalid_argument("leader has wrong number of derivations");
        if (zeroed_.at(v) && !ls.empty()) throw std::invalid_argument("a zeroed variable cannot carry leaders");
        leaders_.at(v) = minimize_leaders(std::move(ls));
    }

    void set_zeroed(std::size_t v) {
        if (!leaders_.at(v).empty()) throw std::invalid_argument("a zeroed variable cannot carry leaders");
        zeroed_.at(v) = true;
    }

    /// Effective leader set: a zeroed variable behaves like the single leader 0.
    std::vector<MultiIndex> effective_leaders(std::size_t v) const {
        if (zeroed_.at(v)) return {MultiIndex(m_)};
        return leaders_.at(v);
    }

    bool operator==(const MonomialLinearSystem&) const = default;

private:
    std::size_t m_;
    std::vector<std::vector<MultiIndex>> leaders_;
    std::vector<bool> zeroed_;
};

struct StaircaseResult {
    NumericalPolynomial polynomial;
    /// The polynomial equals the lattice count for every t ≥ threshold.
    std::uint64_t threshold = 0;
};

/*
 * Kolchin polynomial of a monomial linear system: per free variable, the
 * number of α with |α| ≤ t lying above no leader. Inclusion–exclusion over
 * leader subsets S gives Σ_S (−1)^|S| C(t − |∨S| + m, m) with ∨∅ = 0, valid
 * once t ≥ |∨S| for every S.
 */
inline StaircaseResult staircase_kolchin(const MonomialLinearSystem& sys) {
    const std::size_t m = sys.derivations();
    StaircaseResult result;
    for (std::size_t v = 0; v < sys.num_vars(); ++v) {
        if (sys.zeroed(v)) continue;
        const auto& ls = sys.leaders(v);
        if (ls.size() > 20) throw std::invalid_argument("too many leaders for inclusion-exclusion");
        const std::uint64_t subsets = std::uint64_t{1} << ls.size();
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            MultiIndex join(m);
            int parity = 0;
            for (std::size_t b = 0; b < ls.size(); ++b) {
                if (mask >> b & 1) {
                    join = join.join(ls[b]);
                    ++parity;
                }
            }
            auto term = shifted_binomial_poly(m, join.order());
            if (parity % 2) result.polynomial -= term;
            else result.polynomial += term;
            result.threshold = std::max(result.threshold, join.order());
        }
    }
    return result;
}

}  // namespace deltadep

#endif  // DELTADEP_KOLCHIN_HPP
