#ifndef DELTADEP_DIFFPOLY_HPP
#define DELTADEP_DIFFPOLY_HPP

#include <deltadep/multiindex.hpp>
#include <deltadep/poly.hpp>
#include <deltadep/rational.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deltadep {

/// Number of commuting derivations plus the ordered list of differential indeterminates.
struct Ambient {
    std::size_t m = 1;
    std::vector<std::string> variables;

    Ambient() = default;
    Ambient(std::size_t derivations, std::vector<std::string> vars) : m(derivations), variables(std::move(vars)) {
        if (m == 0) throw std::invalid_argument("at least one derivation is required");
        static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
        static const std::regex op("d[0-9]+");
        for (std::size_t i = 0; i < variables.size(); ++i) {
            const auto& v = variables[i];
            if (!std::regex_match(v, ident)) throw std::invalid_argument("invalid variable name '" + v + "'");
            if (std::regex_match(v, op))
                throw std::invalid_argument("variable name '" + v + "' clashes with derivative operator syntax");
            for (std::size_t j = 0; j < i; ++j)
                if (variables[j] == v) throw std::invalid_argument("duplicate variable name '" + v + "'");
        }
    }

    /// y0, ..., y{count-1}.
    static Ambient indexed(std::size_t derivations, std::size_t count, const std::string& stem = "y") {
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < count; ++i) vars.push_back(stem + std::to_string(i));
        return Ambient(derivations, std::move(vars));
    }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) return std::nullopt;
        return static_cast<std::size_t>(it - variables.begin());
    }

    /// A name not already in use, preferring `hint`.
    std::string fresh_name(const std::string& hint) const {
        if (!index_of(hint)) return hint;
        for (std::size_t k = 1;; ++k) {
            std::string candidate = hint + "_" + std::to_string(k);
            if (!index_of(candidate)) return candidate;
        }
    }

    bool operator==(const Ambient&) const = default;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline AmbientPtr make_ambient(std::size_t m, std::vector<std::string> vars) {
    return std::make_shared<const Ambient>(m, std::move(vars));
}

/// The algebraic indeterminate δ^α y_i.
struct DerivativeCoordinate {
    std::size_t variable = 0;
    MultiIndex index;

    std::strong_ordering operator<=>(const DerivativeCoordinate&) const = default;
    bool operator==(const DerivativeCoordinate&) const = default;
};

/*
 * Power product of derivative coordinates. Factors are kept sorted by
 * coordinate with positive exponents. Ordering: total degree first, then
 * lexicographic on the sorted factor list.
 */
class DiffMonomial {
public:
    using Factor = std::pair<DerivativeCoordinate, std::uint32_t>;

    DiffMonomial() = default;

    static DiffMonomial of(DerivativeCoordinate c, std::uint32_t exponent = 1) {
        DiffMonomial mono;
        if (exponent > 0) mono.factors_.emplace_back(std::move(c), exponent);
        return mono;
    }

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    std::uint64_t degree() const noexcept {
        std::uint64_t d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    std::uint32_t exponent_of(const DerivativeCoordinate& c) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), c,
                                   [](const Factor& f, const DerivativeCoordinate& key) { return f.first < key; });
        return it != factors_.end() && it->first == c ? it->second : 0;
    }

    /// Copy with the exponent of `c` changed by `delta` (result exponent must stay ≥ 0).
    DiffMonomial adjusted(const DerivativeCoordinate& c, std::int64_t delta) const {
        DiffMonomial out;
        out.factors_.reserve(factors_.size() + 1);
        bool placed = false;
        auto emit = [&](const DerivativeCoordinate& coord, std::int64_t e) {
            if (e < 0) throw std::domain_error("negative exponent in differential monomial");
            if (e > 0) out.factors_.emplace_back(coord, static_cast<std::uint32_t>(e));
        };
        for (const auto& [coord, e] : factors_) {
            if (!placed && c < coord) {
                emit(c, delta);
                placed = true;
            }
            if (coord == c) {
                emit(coord, static_cast<std::int64_t>(e) + delta);
                placed = true;
            } else {
                out.factors_.emplace_back(coord, e);
            }
        }
        if (!placed) emit(c, delta);
        return out;
    }

    friend DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b) {
        DiffMonomial out;
        out.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                out.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                out.factors_.push_back(*j++);
            } else {
                out.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::strong_ordering operator<=>(const DiffMonomial& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        return factors_ <=> o.factors_;
    }
    bool operator==(const DiffMonomial&) const = default;

private:
    std::vector<Factor> factors_;
};

/*
 * Differential polynomial with exact rational coefficients in the
 * indeterminates of an Ambient. Terms are kept in canonical monomial order
 * with no zero coefficients, so equality is structural.
 */
class DiffPoly {
public:
    using Terms = std::map<DiffMonomial, Rational>;

    explicit DiffPoly(AmbientPtr ambient) : ambient_(std::move(ambient)) {
        if (!ambient_) throw std::invalid_argument("null ambient");
    }

    static DiffPoly constant(AmbientPtr ambient, const Rational& c) {
        DiffPoly p(std::move(ambient));
        p.add_term(DiffMonomial{}, c);
        return p;
    }

    static DiffPoly coordinate(AmbientPtr ambient, std::size_t var, MultiIndex alpha) {
        DiffPoly p(std::move(ambient));
        p.check_coordinate(var, alpha);
        p.add_term(DiffMonomial::of({var, std::move(alpha)}), 1);
        return p;
    }

    static DiffPoly variable(AmbientPtr ambient, std::size_t var) {
        std::size_t m = ambient->m;
        return coordinate(std::move(ambient), var, MultiIndex(m));
    }

    const AmbientPtr& ambient_ptr() const noexcept { return ambient_; }
    const Ambient& ambient() const noexcept { return *ambient_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    std::uint64_t total_degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

    /// Largest |α| over coordinates δ^α y_i that occur.
    std::uint64_t max_operator_order() const {
        std::uint64_t o = 0;
        for (const auto& [mono, c] : terms_)
            for (const auto& [coord, e] : mono.factors()) o = std::max(o, coord.index.order());
        return o;
    }

    bool mentions(std::size_t var) const {
        for (const auto& [mono, c] : terms_)
            for (const auto& [coord, e] : mono.factors())
                if (coord.variable == var) return true;
        return false;
    }

    void add_term(const DiffMonomial& mono, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(mono, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    DiffPoly& operator+=(const DiffPoly& o) {
        check_ambient(o);
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    DiffPoly& operator-=(const DiffPoly& o) {
        check_ambient(o);
        for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
        return *this;
    }
    DiffPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [mono, c] : terms_) c *= s;
        }
        return *this;
    }

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(DiffPoly a, const Rational& s) { return a *= s; }
    friend DiffPoly operator*(const Rational& s, DiffPoly a) { return a *= s; }
    DiffPoly operator-() const { return *this * Rational(-1); }

    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
        a.check_ambient(b);
        DiffPoly r(a.ambient_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    bool operator==(const DiffPoly& o) const { return same_ambient(o) && terms_ == o.terms_; }

    bool same_ambient(const DiffPoly& o) const { return ambient_ == o.ambient_ || *ambient_ == *o.ambient_; }

    void check_ambient(const DiffPoly& o) const {
        if (!same_ambient(o)) throw std::invalid_argument("differential polynomials have different ambients");
    }

    void check_coordinate(std::size_t var, const MultiIndex& alpha) const {
        if (var >= ambient_->variables.size()) throw std::out_of_range("variable index out of range");
        if (alpha.size() != ambient_->m) throw std::invalid_argument("operator has wrong number of derivations");
    }

private:
    AmbientPtr ambient_;
    Terms terms_;
};

inline DiffPoly pow(const DiffPoly& p, std::uint32_t e) {
    DiffPoly r = DiffPoly::constant(p.ambient_ptr(), 1);
    for (std::uint32_t i = 0; i < e; ++i) r *= p;
    return r;
}

/// δ_k p for 1-based k, by the Leibniz rule on each monomial.
inline DiffPoly differentiate(const DiffPoly& p, std::size_t k) {
    const std::size_t m = p.ambient().m;
    if (k == 0 || k > m) throw std::out_of_range("derivation index " + std::to_string(k) + " out of range 1.." + std::to_string(m));
    DiffPoly r(p.ambient_ptr());
    for (const auto& [mono, c] : p.terms()) {
        for (const auto& [coord, e] : mono.factors()) {
            DerivativeCoordinate next{coord.variable, coord.index.incremented(k - 1)};
            r.add_term(mono.adjusted(coord, -1).adjusted(next, 1), c * e);
        }
    }
    return r;
}

/// δ^α p. Derivations commute, so the result does not depend on the order of application.
inline DiffPoly apply_operator(const DiffPoly& p, const MultiIndex& alpha) {
    if (alpha.size() != p.ambient().m) throw std::invalid_argument("operator has wrong number of derivations");
    DiffPoly r = p;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        for (std::uint32_t s = 0; s < alpha[j]; ++s) r = differentiate(r, j + 1);
    return r;
}

namespace detail {

/*
 * Shared driver for ring homomorphisms out of a DiffPoly: each coordinate is
 * replaced by `image(coord)` (memoized), and constants by `constant(q)`.
 */
template <class T, class ImageFn, class ConstantFn>
T map_terms(const DiffPoly& p, ImageFn&& image, ConstantFn&& constant) {
    std::map<DerivativeCoordinate, T> cache;
    auto lookup = [&](const DerivativeCoordinate& c) -> const T& {
        auto it = cache.find(c);
        if (it == cache.end()) it = cache.emplace(c, image(c)).first;
        return it->second;
    };
    T total = constant(Rational(0));
    for (const auto& [mono, c] : p.terms()) {
        T term = constant(c);
        for (const auto& [coord, e] : mono.factors()) {
            const T& base = lookup(coord);
            for (std::uint32_t s = 0; s < e; ++s) term = term * base;
        }
        total = total + term;
    }
    return total;
}

}  // namespace detail

/*
 * Differential-ring homomorphism y_i ↦ images[i]; each coordinate δ^α y_i is
 * replaced by δ^α(images[i]). Images must all live in `target`. A missing
 * image is only an error if its variable occurs in p.
 */
inline DiffPoly substitute(const DiffPoly& p, const std::vector<std::optional<DiffPoly>>& images,
                           const AmbientPtr& target) {
    if (target->m != p.ambient().m) throw std::invalid_argument("substitution target has a different number of derivations");
    for (const auto& im : images)
        if (im && !(im->ambient_ptr() == target || im->ambient() == *target))
            throw std::invalid_argument("substitution image lives in the wrong ambient");
    // δ^α(image) is built from the largest already-known δ^β(image), β ≤ α.
    std::map<DerivativeCoordinate, DiffPoly> derived;
    auto image = [&](const DerivativeCoordinate& c) -> DiffPoly {
        if (c.variable >= images.size() || !images[c.variable])
            throw std::invalid_argument("no image for variable '" + p.ambient().variables.at(c.variable) + "'");
        MultiIndex alpha = c.index;
        DiffPoly base = *images[c.variable];
        MultiIndex done(alpha.size());
        for (auto it = derived.begin(); it != derived.end(); ++it) {
            if (it->first.variable == c.variable && leq(it->first.index, alpha) && done < it->first.index) {
                done = it->first.index;
                base = it->second;
            }
        }
        DiffPoly r = apply_operator(base, alpha - done);
        derived.emplace(c, r);
        return r;
    };
    return detail::map_terms<DiffPoly>(p, image, [&](const Rational& q) { return DiffPoly::constant(target, q); });
}

/// Same polynomial viewed in `target`, whose variable list must extend p's as a prefix.
inline DiffPoly embed(const DiffPoly& p, const AmbientPtr& target) {
    const auto& src = p.ambient().variables;
    if (target->m != p.ambient().m || target->variables.size() < src.size() ||
        !std::equal(src.begin(), src.end(), target->variables.begin()))
        throw std::invalid_argument("target ambient does not extend the source ambient");
    DiffPoly r(target);
    for (const auto& [mono, c] : p.terms()) r.add_term(mono, c);
    return r;
}

/// Evaluation where δ_j acts as ∂/∂x_j on polynomials; exact, no truncation.
inline Poly evaluate(const DiffPoly& p, const std::vector<Poly>& point) {
    const std::size_t m = p.ambient().m;
    for (const auto& f : point)
        if (f.num_vars() != m) throw std::invalid_argument("evaluation point has wrong number of series variables");
    auto image = [&](const DerivativeCoordinate& c) {
        if (c.variable >= point.size()) throw std::invalid_argument("evaluation point is missing a variable");
        return point[c.variable].apply_operator(c.index);
    };
    return detail::map_terms<Poly>(p, image, [&](const Rational& q) { return Poly::constant(m, q); });
}

/*
 * Evaluation on truncated power series. All inputs must share m and the
 * truncation order D; the result is exact up to D minus the largest operator
 * order occurring in p and is reported at that effective order.
 */
inline TruncatedSeries evaluate(const DiffPoly& p, const std::vector<TruncatedSeries>& point) {
    const std::size_t m = p.ambient().m;
    if (point.empty() && !p.is_constant()) throw std::invalid_argument("evaluation point is empty");
    std::uint32_t order = point.empty() ? 0 : point.front().order();
    for (const auto& s : point) {
        if (s.num_vars() != m) throw std::invalid_argument("evaluation point has wrong number of series variables");
        if (s.order() != order) throw std::invalid_argument("evaluation point mixes truncation orders");
    }
    std::uint64_t ops = p.max_operator_order();
    if (ops > order) throw std::domain_error("operator order exceeds the series truncation order");
    const auto effective = static_cast<std::uint32_t>(order - ops);
    auto image = [&](const DerivativeCoordinate& c) {
        if (c.variable >= point.size()) throw std::invalid_argument("evaluation point is missing a variable");
        return point[c.variable].apply_operator(c.index).truncated(effective);
    };
    return detail::map_terms<TruncatedSeries>(
        p, image, [&](const Rational& q) { return TruncatedSeries::constant(m, q, effective); });
}

}  // namespace deltadep

#endif  // DELTADEP_DIFFPOLY_HPP
