#ifndef DELTADEP_POLY_HPP
#define DELTADEP_POLY_HPP

#include <deltadep/multiindex.hpp>
#include <deltadep/rational.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace deltadep {

/*
 * Polynomial over Q in the series variables x_1, ..., x_m. δ_j acts on it as
 * ∂/∂x_j. Monomials are keyed by their exponent vector, so the term map is
 * ordered graded lexicographically.
 */
class Poly {
public:
    using Terms = std::map<MultiIndex, Rational>;

    explicit Poly(std::size_t m = 1) : m_(m) {}

    static Poly constant(std::size_t m, const Rational& c) {
        Poly p(m);
        if (c != 0) p.terms_.emplace(MultiIndex(m), c);
        return p;
    }

    static Poly monomial(const MultiIndex& exps, const Rational& c = 1) {
        Poly p(exps.size());
        if (c != 0) p.terms_.emplace(exps, c);
        return p;
    }

    /// x_k for 1-based k.
    static Poly variable(std::size_t m, std::size_t k) {
        if (k == 0 || k > m) throw std::out_of_range("series variable index out of range");
        return monomial(MultiIndex::unit(m, k - 1));
    }

    std::size_t num_vars() const noexcept { return m_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; the zero polynomial reports 0.
    std::uint64_t total_degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.order();
    }

    Rational coefficient(const MultiIndex& exps) const {
        auto it = terms_.find(exps);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const MultiIndex& exps, const Rational& c) {
        if (exps.size() != m_) throw std::invalid_argument("monomial has wrong number of variables");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(exps, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    Poly operator-() const { return *this * Rational(-1); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_ring(b);
        Poly r(a.m_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

    /// ∂/∂x_k for 1-based k.
    Poly derivative(std::size_t k) const {
        if (k == 0 || k > m_) throw std::out_of_range("derivation index out of range");
        Poly r(m_);
        for (const auto& [e, c] : terms_) {
            if (e[k - 1] == 0) continue;
            MultiIndex d = e - MultiIndex::unit(m_, k - 1);
            r.add_term(d, c * e[k - 1]);
        }
        return r;
    }

    /// ∂^α, the operator δ^α acting on polynomials.
    Poly apply_operator(const MultiIndex& alpha) const {
        if (alpha.size() != m_) throw std::invalid_argument("operator has wrong number of derivations");
        Poly r(m_);
        for (const auto& [e, c] : terms_) {
            if (!leq(alpha, e)) continue;
            Rational f = c;
            for (std::size_t j = 0; j < m_; ++j)
                for (std::uint32_t s = 0; s < alpha[j]; ++s) f *= e[j] - s;
            r.add_term(e - alpha, f);
        }
        return r;
    }

    /// Leading term under the graded-lex order; requires a nonzero polynomial.
    const std::pair<const MultiIndex, Rational>& leading_term() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    void check_ring(const Poly& o) const {
        if (o.m_ != m_) throw std::invalid_argument("polynomials live in rings with different numbers of variables");
    }

private:
    std::size_t m_;
    Terms terms_;
};

/// Quotient a / b when b divides a exactly; throws std::domain_error otherwise.
inline Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    a.check_ring(b);
    const auto& [lb_exp, lb_coef] = b.leading_term();
    Poly q(a.num_vars());
    Poly r = a;
    while (!r.is_zero()) {
        const auto [lr_exp, lr_coef] = r.leading_term();
        if (!leq(lb_exp, lr_exp)) throw std::domain_error("polynomial division is not exact");
        Poly step = Poly::monomial(lr_exp - lb_exp, lr_coef / lb_coef);
        q += step;
        r -= step * b;
    }
    return q;
}

inline Poly pow(const Poly& p, std::uint32_t e) {
    Poly r = Poly::constant(p.num_vars(), 1);
    for (std::uint32_t i = 0; i < e; ++i) r *= p;
    return r;
}

/// Renders with variables `x` (m = 1) or `x1..xm`, in ascending graded-lex order.
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += p.num_vars() == 1 ? std::string("x") : "x" + std::to_string(j + 1);
            if (e[j] > 1) mono += "^" + std::to_string(e[j]);
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

/*
 * Truncated power series in x_1..x_m: the coefficients of every monomial of
 * order at most `order` are exact; everything above is unknown and discarded.
 * Differentiation lowers the truncation order by one.
 */
class TruncatedSeries {
public:
    TruncatedSeries(Poly coefficients, std::uint32_t order) : poly_(std::move(coefficients)), order_(order) {
        truncate();
    }

    static TruncatedSeries constant(std::size_t m, const Rational& c, std::uint32_t order) {
        return TruncatedSeries(Poly::constant(m, c), order);
    }

    std::size_t num_vars() const noexcept { return poly_.num_vars(); }
    std::uint32_t order() const noexcept { return order_; }
    const Poly& coefficients() const noexcept { return poly_; }
    bool is_zero() const noexcept { return poly_.is_zero(); }

    /// Same series viewed at a lower truncation order.
    TruncatedSeries truncated(std::uint32_t order) const {
        if (order > order_) throw std::domain_error("cannot raise the truncation order of a series");
        return TruncatedSeries(poly_, order);
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        return TruncatedSeries(a.poly_ + b.poly_, std::min(a.order_, b.order_));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return TruncatedSeries(a.poly_ - b.poly_, std::min(a.order_, b.order_));
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::uint32_t d = std::min(a.order_, b.order_);
        a.poly_.check_ring(b.poly_);
        Poly r(a.num_vars());
        for (const auto& [ea, ca] : a.poly_.terms()) {
            if (ea.order() > d) break;
            for (const auto& [eb, cb] : b.poly_.terms()) {
                if (ea.order() + eb.order() > d) break;
                r.add_term(ea + eb, ca * cb);
            }
        }
        return TruncatedSeries(std::move(r), d);
    }
    friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a) {
        return TruncatedSeries(a.poly_ * s, a.order_);
    }

    /// ∂/∂x_k for 1-based k; the result is known to one order less.
    TruncatedSeries derivative(std::size_t k) const {
        if (order_ == 0) throw std::domain_error("derivative of a series truncated at order 0 carries no information");
        return TruncatedSeries(poly_.derivative(k), order_ - 1);
    }

    TruncatedSeries apply_operator(const MultiIndex& alpha) const {
        if (alpha.order() > order_)
            throw std::domain_error("operator order exceeds the series truncation order");
        return TruncatedSeries(poly_.apply_operator(alpha), order_ - static_cast<std::uint32_t>(alpha.order()));
    }

    bool operator==(const TruncatedSeries& o) const = default;

private:
    void truncate() {
        Poly kept(poly_.num_vars());
        for (const auto& [e, c] : poly_.terms())
            if (e.order() <= order_) kept.add_term(e, c);
        poly_ = std::move(kept);
    }

    Poly poly_;
    std::uint32_t order_;
};

inline std::string to_string(const TruncatedSeries& s) {
    return to_string(s.coefficients()) + " + O(" + std::to_string(s.order() + 1) + ")";
}

}  // namespace deltadep

#endif  // DELTADEP_POLY_HPP
