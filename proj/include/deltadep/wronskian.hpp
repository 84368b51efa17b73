#ifndef DELTADEP_WRONSKIAN_HPP
#define DELTADEP_WRONSKIAN_HPP

#include <deltadep/diffpoly.hpp>
#include <deltadep/multiindex.hpp>
#include <deltadep/poly.hpp>
#include <deltadep/rational.hpp>

#include <algorithm>
#include <atomic>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace deltadep {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/*
 * Fraction-free (Bareiss) determinant over an integral domain. `divide` must
 * perform exact division; every division in the recurrence is exact by
 * Sylvester's identity. Row swaps pick the first nonzero pivot.
 */
template <class T, class IsZero, class Divide>
T bareiss_determinant(Matrix<T> a, const T& one, IsZero&& is_zero, Divide&& divide) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    if (n == 0) return one;
    bool negate = false;
    T prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && is_zero(a[p][k])) ++p;
        if (p == n) return one - one;
        if (p != k) {
            std::swap(a[p], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = one - one;
        }
        prev = a[k][k];
    }
    T det = a[n - 1][n - 1];
    if (negate) det = (one - one) - det;
    return det;
}

inline Poly determinant(const Matrix<Poly>& a, std::size_t m) {
    return bareiss_determinant(a, Poly::constant(m, 1), [](const Poly& p) { return p.is_zero(); },
                               [](const Poly& x, const Poly& y) { return divide_exact(x, y); });
}

inline Rational determinant(const Matrix<Rational>& a) {
    return bareiss_determinant(a, Rational(1), [](const Rational& q) { return q == 0; },
                               [](const Rational& x, const Rational& y) { return Rational(x / y); });
}

/// Rows α^(0), ..., α^(n) of a generalized Wronskian; duplicates are allowed.
struct WronskianIndex {
    std::vector<MultiIndex> rows;

    WronskianIndex() = default;
    explicit WronskianIndex(std::vector<MultiIndex> r) : rows(std::move(r)) {
        if (rows.empty()) throw std::invalid_argument("Wronskian index needs at least one row");
        for (const auto& a : rows) rows.front().check_same_size(a);
    }

    std::size_t derivations() const { return rows.front().size(); }
    std::size_t arity() const noexcept { return rows.size(); }
};

inline std::string to_string(const WronskianIndex& a) {
    std::string out;
    for (std::size_t j = 0; j < a.rows.size(); ++j) {
        if (j) out += ",";
        out += to_string(a.rows[j]);
    }
    return out;
}

/*
 * det(δ^{α^(j)} y_i) over y_0..y_n as a differential polynomial, expanded
 * over permutations. Intended for small n; the expansion has (n+1)! terms.
 */
inline DiffPoly wronskian_symbolic(const WronskianIndex& a, std::size_t n, AmbientPtr ambient = nullptr) {
    if (a.arity() != n + 1)
        throw std::invalid_argument("Wronskian index has " + std::to_string(a.arity()) + " rows, expected " +
                                    std::to_string(n + 1));
    const std::size_t m = a.derivations();
    if (!ambient) ambient = std::make_shared<const Ambient>(Ambient::indexed(m, n + 1));
    if (ambient->m != m || ambient->variables.size() != n + 1)
        throw std::invalid_argument("ambient does not match the Wronskian shape");
    std::vector<std::size_t> perm(n + 1);
    for (std::size_t i = 0; i <= n; ++i) perm[i] = i;
    DiffPoly det(ambient);
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) inversions += perm[i] > perm[j];
        DiffMonomial mono;
        for (std::size_t j = 0; j <= n; ++j) mono = mono * DiffMonomial::of({perm[j], a.rows[j]});
        det.add_term(mono, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// (∂^{α^(j)} f_i)_{j,i}.
inline Matrix<Poly> jet_matrix(std::span<const MultiIndex> rows, std::span<const Poly> f) {
    Matrix<Poly> mat;
    mat.reserve(rows.size());
    for (const auto& alpha : rows) {
        std::vector<Poly> row;
        row.reserve(f.size());
        for (const auto& fi : f) row.push_back(fi.apply_operator(alpha));
        mat.push_back(std::move(row));
    }
    return mat;
}

namespace detail {

inline std::size_t common_ring(std::span<const Poly> f) {
    if (f.empty()) throw std::invalid_argument("empty function tuple");
    for (const auto& fi : f) f.front().check_ring(fi);
    return f.front().num_vars();
}

}  // namespace detail

/// Exact value of the Wronskian of f for index A, by fraction-free elimination.
inline Poly wronskian_eval(const WronskianIndex& a, std::span<const Poly> f) {
    const std::size_t m = detail::common_ring(f);
    if (a.arity() != f.size()) throw std::invalid_argument("Wronskian index and function tuple differ in arity");
    if (a.derivations() != m) throw std::invalid_argument("Wronskian index and functions differ in number of derivations");
    return determinant(jet_matrix(a.rows, f), m);
}

/// Same value computed by evaluating the symbolic Wronskian at f.
inline Poly wronskian_eval_symbolic(const WronskianIndex& a, std::span<const Poly> f) {
    const std::size_t m = detail::common_ring(f);
    if (a.arity() != f.size()) throw std::invalid_argument("Wronskian index and function tuple differ in arity");
    if (a.derivations() != m) throw std::invalid_argument("Wronskian index and functions differ in number of derivations");
    return evaluate(wronskian_symbolic(a, f.size() - 1), std::vector<Poly>(f.begin(), f.end()));
}

/// Constants c with Σ c_i f_i = 0, first nonzero entry normalized to 1.
struct DependenceCertificate {
    std::vector<Rational> kernel;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational factor = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Σ c_i f_i.
inline Poly linear_combination(std::span<const Rational> c, std::span<const Poly> f) {
    const std::size_t m = detail::common_ring(f);
    if (c.size() != f.size()) throw std::invalid_argument("coefficient vector and function tuple differ in length");
    Poly sum(m);
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * c[i];
    return sum;
}

/*
 * Decides linear dependence over Q directly from the coefficient matrix
 * whose columns are the coefficient vectors of the f_i. The kernel vector
 * attached to the first free column is returned, normalized and re-checked.
 */
inline std::optional<DependenceCertificate> lindep_constants_direct(std::span<const Poly> f) {
    const std::size_t m = detail::common_ring(f);
    std::vector<MultiIndex> monomials;
    for (const auto& fi : f)
        for (const auto& [e, c] : fi.terms()) monomials.push_back(e);
    std::sort(monomials.begin(), monomials.end());
    monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());

    const std::size_t cols = f.size();
    Matrix<Rational> a(monomials.size(), std::vector<Rational>(cols));
    for (std::size_t r = 0; r < monomials.size(); ++r)
        for (std::size_t i = 0; i < cols; ++i) a[r][i] = f[i].coefficient(monomials[r]);

    auto pivots = rref(a, cols);
    if (pivots.size() == cols) return std::nullopt;
    std::size_t free_col = 0;
    while (free_col < pivots.size() && pivots[free_col] == free_col) ++free_col;

    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free_col];
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    Rational scale = 1 / *first;
    for (auto& x : v) x *= scale;

    if (!linear_combination(v, f).is_zero()) throw std::logic_error("dependence certificate failed verification");
    (void)m;
    return DependenceCertificate{std::move(v)};
}

enum class WronskianStrategy { All, YoungLike };

inline std::string to_string(WronskianStrategy s) { return s == WronskianStrategy::All ? "all" : "young-like"; }

/*
 * The Wronskian indices examined for an (n+1)-tuple of polynomials of total
 * degree ≤ D in m variables, in canonical order:
 *
 *   All       every (n+1)-element subset of Θ(D), rows in graded-lex order.
 *             Derivatives above order D vanish identically, a repeated row
 *             forces a zero determinant, and reordering rows only flips the
 *             sign, so these decide the whole infinite family.
 *   YoungLike one index per Young-like set of size n+1, rows in graded-lex order.
 */
inline std::vector<WronskianIndex> wronskian_indices(std::size_t m, std::size_t arity, std::uint32_t max_degree,
                                                     WronskianStrategy strategy) {
    std::vector<WronskianIndex> out;
    if (strategy == WronskianStrategy::YoungLike) {
        for (auto& s : enumerate_young_like(m, arity)) out.emplace_back(s.members());
        return out;
    }
    auto theta = theta_set(m, max_degree);
    if (theta.size() < arity) return out;
    std::vector<std::size_t> pick(arity);
    for (std::size_t i = 0; i < arity; ++i) pick[i] = i;
    while (true) {
        std::vector<MultiIndex> rows;
        for (auto p : pick) rows.push_back(theta[p]);
        out.emplace_back(std::move(rows));
        std::size_t i = arity;
        while (i > 0 && pick[i - 1] == theta.size() - arity + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < arity; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

struct LindepVerdict {
    bool dependent = false;
    WronskianStrategy strategy = WronskianStrategy::All;
    /// Wronskians evaluated in canonical order before the verdict was settled.
    std::size_t wronskians_evaluated = 0;
    /// Position (in canonical order) of the first nonvanishing Wronskian.
    std::optional<std::size_t> witness_index;
    std::optional<WronskianIndex> witness;
};

/*
 * Linear dependence over the constants by vanishing of generalized
 * Wronskians. With threads > 1 indices are claimed in increasing order and the
 * reported witness is always the smallest nonvanishing one, so the result is
 * identical to the sequential scan.
 */
inline LindepVerdict lindep_wronskian(std::span<const Poly> f, WronskianStrategy strategy, unsigned threads = 1) {
    const std::size_t m = detail::common_ring(f);
    std::uint64_t top = 0;
    for (const auto& fi : f) top = std::max(top, fi.total_degree());
    auto indices = wronskian_indices(m, f.size(), static_cast<std::uint32_t>(top), strategy);

    const std::size_t total = indices.size();
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_nonzero{total};
    auto worker = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= total || k >= first_nonzero.load()) return;
            if (wronskian_eval(indices[k], f).is_zero()) continue;
            std::size_t cur = first_nonzero.load();
            while (k < cur && !first_nonzero.compare_exchange_weak(cur, k)) {
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || total < 2) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, total); ++t) pool.emplace_back(worker);
    }

    LindepVerdict v;
    v.strategy = strategy;
    const std::size_t hit = first_nonzero.load();
    if (hit == total) {
        v.dependent = true;
        v.wronskians_evaluated = total;
    } else {
        v.wronskians_evaluated = hit + 1;
        v.witness_index = hit;
        v.witness = indices[hit];
    }
    return v;
}

/*
 * Linear dependence over an explicit finite set of projective points: the
 * first v (input order) with Σ v_i a_i = 0. T is any additive group with a
 * rational scalar action and is_zero(), e.g. Poly or TruncatedSeries.
 */
template <class T>
std::optional<std::size_t> lindep_over_points(std::span<const std::vector<Rational>> points, std::span<const T> a) {
    if (a.empty()) throw std::invalid_argument("empty tuple");
    for (const auto& v : points) {
        if (v.size() != a.size())
            throw std::invalid_argument("projective point has " + std::to_string(v.size()) + " coordinates, expected " +
                                        std::to_string(a.size()));
        if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; }))
            throw std::invalid_argument("projective point with all coordinates zero");
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        T sum = points[p][0] * a[0];
        for (std::size_t i = 1; i < a.size(); ++i) sum = sum + points[p][i] * a[i];
        if (sum.is_zero()) return p;
    }
    return std::nullopt;
}

}  // namespace deltadep

#endif  // DELTADEP_WRONSKIAN_HPP
