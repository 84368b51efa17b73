#ifndef DELTADEP_TESTS_ORACLES_HPP
#define DELTADEP_TESTS_ORACLES_HPP

// Brute-force reference computations for the test suites. Nothing here calls
// into the library routine it is used to check.

#include <deltadep/deltadep.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using deltadep::MultiIndex;

/// C(n, k) by Pascal's triangle.
inline std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::vector<std::vector<std::int64_t>> row(n + 1, std::vector<std::int64_t>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        row[i][0] = 1;
        for (int j = 1; j <= i; ++j) row[i][j] = row[i - 1][j - 1] + (j <= i - 1 ? row[i - 1][j] : 0);
    }
    return row[n][k];
}

/// Visits every point of the box [0, bound]^m.
inline void for_each_in_box(std::size_t m, std::uint32_t bound, const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> v(m, 0);
    while (true) {
        fn(v);
        std::size_t k = 0;
        while (k < m && v[k] == bound) v[k++] = 0;
        if (k == m) return;
        ++v[k];
    }
}

/// Number of α ∈ N^m with |α| ≤ d, counted over the full box.
inline std::int64_t lattice_points_up_to(std::size_t m, std::uint32_t d) {
    std::int64_t count = 0;
    for_each_in_box(m, d, [&](const std::vector<std::uint32_t>& v) {
        std::uint32_t s = 0;
        for (auto x : v) s += x;
        if (s <= d) ++count;
    });
    return count;
}

/// Number of α with |α| ≤ t lying componentwise above none of `leaders`.
inline std::int64_t staircase_count(std::size_t m, const std::vector<std::vector<std::uint32_t>>& leaders, std::uint32_t t) {
    std::int64_t count = 0;
    for_each_in_box(m, t, [&](const std::vector<std::uint32_t>& v) {
        std::uint32_t s = 0;
        for (auto x : v) s += x;
        if (s > t) return;
        for (const auto& l : leaders) {
            bool above = true;
            for (std::size_t j = 0; j < m; ++j) above = above && v[j] >= l[j];
            if (above) return;
        }
        ++count;
    });
    return count;
}

/// p(k) by the standard partition recurrence on largest part.
inline std::int64_t partition_count(int k) {
    std::vector<std::int64_t> p(k + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= k; ++part)
        for (int s = part; s <= k; ++s) p[s] += p[s - part];
    return p[k];
}

/// Downward closure checked by scanning the whole box below each member.
inline bool box_closed(const std::vector<std::vector<std::uint32_t>>& members) {
    std::set<std::vector<std::uint32_t>> s(members.begin(), members.end());
    for (const auto& a : members) {
        bool ok = true;
        std::vector<std::uint32_t> v(a.size(), 0);
        while (ok) {
            if (!s.count(v)) ok = false;
            std::size_t k = 0;
            while (k < v.size() && v[k] == a[k]) v[k++] = 0;
            if (k == v.size()) break;
            ++v[k];
        }
        if (!ok) return false;
    }
    return true;
}

/*
 * Every downward-closed subset of N^m of the given size, by scanning all
 * `size`-subsets of the candidate region {α : Π(α_j+1) ≤ size}. A member's
 * lower box lies inside the set, so nothing outside that region can occur.
 * Sets are returned as sorted vectors of exponent vectors.
 */
inline std::set<std::vector<std::vector<std::uint32_t>>> brute_force_young_like(std::size_t m, std::size_t size) {
    std::vector<std::vector<std::uint32_t>> region;
    for_each_in_box(m, static_cast<std::uint32_t>(size), [&](const std::vector<std::uint32_t>& v) {
        std::uint64_t prod = 1;
        for (auto x : v) prod *= x + 1;
        if (prod <= size) region.push_back(v);
    });
    std::set<std::vector<std::vector<std::uint32_t>>> out;
    const std::size_t n = region.size();
    if (size > n) return out;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<std::uint32_t>> members;
        for (auto p : pick) members.push_back(region[p]);
        if (box_closed(members)) {
            std::sort(members.begin(), members.end());
            out.insert(members);
        }
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

/// Determinant over Q by cofactor expansion along the first row.
inline deltadep::Rational cofactor_det(const std::vector<std::vector<deltadep::Rational>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    deltadep::Rational det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<deltadep::Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<deltadep::Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        deltadep::Rational term = a[0][c] * cofactor_det(minor);
        det += (c % 2 ? -term : term);
    }
    return det;
}

/// Rank over Q by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<deltadep::Rational>> a) {
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            deltadep::Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

/// Random polynomial in m variables with total degree ≤ deg and small integer coefficients.
inline deltadep::Poly random_poly(std::mt19937_64& rng, std::size_t m, std::uint32_t deg, int terms = 3) {
    deltadep::Poly p(m);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<std::uint32_t> e(0, deg);
    for (int k = 0; k < terms; ++k) {
        std::vector<std::uint32_t> exps(m, 0);
        std::uint32_t budget = e(rng);
        for (std::size_t j = 0; j < m && budget > 0; ++j) {
            std::uniform_int_distribution<std::uint32_t> take(0, budget);
            exps[j] = (j + 1 == m) ? budget : take(rng);
            budget -= exps[j];
        }
        p.add_term(MultiIndex(exps), coef(rng));
    }
    return p;
}

/*
 * Random differential polynomial over `amb` using only variables in
 * [first_var, vars), operator order ≤ max_order and degree ≤ max_degree.
 */
inline deltadep::DiffPoly random_diffpoly(std::mt19937_64& rng, const deltadep::AmbientPtr& amb, std::size_t first_var,
                                          std::uint32_t max_order, std::uint32_t max_degree, int max_terms = 4) {
    const std::size_t m = amb->m;
    const std::size_t vars = amb->variables.size();
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coef_num(-4, 4);
    std::uniform_int_distribution<int> coef_den(1, 3);
    std::uniform_int_distribution<std::uint32_t> degree(0, max_degree);
    std::uniform_int_distribution<std::size_t> var(first_var, vars - 1);
    std::uniform_int_distribution<std::uint32_t> ord(0, max_order);
    deltadep::DiffPoly p(amb);
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        deltadep::DiffMonomial mono;
        const std::uint32_t d = degree(rng);
        for (std::uint32_t f = 0; f < d; ++f) {
            std::vector<std::uint32_t> alpha(m, 0);
            std::uint32_t budget = ord(rng);
            for (std::size_t j = 0; j < m && budget > 0; ++j) {
                std::uniform_int_distribution<std::uint32_t> take(0, budget);
                alpha[j] = (j + 1 == m) ? budget : take(rng);
                budget -= alpha[j];
            }
            mono = mono * deltadep::DiffMonomial::of({var(rng), MultiIndex(alpha)});
        }
        int num = coef_num(rng);
        if (num == 0) num = 1;
        p.add_term(mono, deltadep::make_rational(num, coef_den(rng)));
    }
    return p;
}

/// Dependence over Q from the rank of the coefficient matrix, without the library's solver.
inline bool rank_dependent(const std::vector<deltadep::Poly>& f) {
    std::set<MultiIndex> support;
    for (const auto& p : f)
        for (const auto& [e, c] : p.terms()) support.insert(e);
    std::vector<std::vector<deltadep::Rational>> rows;
    for (const auto& p : f) {
        std::vector<deltadep::Rational> row;
        for (const auto& e : support) row.push_back(p.coefficient(e));
        rows.push_back(row);
    }
    if (support.empty()) return true;
    return rank(rows) < f.size();
}

struct DependenceCase {
    std::vector<deltadep::Poly> f;
    bool built_dependent;
};

inline std::vector<DependenceCase> dependence_corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-3, 3);
    std::vector<DependenceCase> out;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t m = 1 + k % 2;
        const std::size_t arity = 1 + (k / 2) % 4;
        const bool dependent = k % 4 < 2;
        std::vector<deltadep::Poly> f;
        for (std::size_t i = 0; i < arity; ++i) f.push_back(random_poly(rng, m, 3, 3));
        if (dependent) {
            // Replace one entry by a rational combination of the others.
            std::size_t slot = k % arity;
            deltadep::Poly comb(m);
            for (std::size_t i = 0; i < arity; ++i)
                if (i != slot) comb = comb + deltadep::make_rational(small(rng), 1 + k % 3) * f[i];
            f[slot] = comb;
        }
        out.push_back({std::move(f), dependent});
    }
    return out;
}

}  // namespace oracle

#endif  // DELTADEP_TESTS_ORACLES_HPP
