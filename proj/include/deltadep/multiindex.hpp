#ifndef DELTADEP_MULTIINDEX_HPP
#define DELTADEP_MULTIINDEX_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deltadep {

/*
 * Multi-index α ∈ N^m naming the derivative operator δ_1^{α_1} ⋯ δ_m^{α_m}.
 *
 * The built-in ordering is graded lexicographic: first by order |α|, then
 * lexicographically on the exponent vector, so for m = 2 the operators of
 * order at most one come out as (0,0) < (0,1) < (1,0). This is a monomial
 * order, which the exact polynomial division in poly.hpp relies on.
 */
class MultiIndex {
public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t m) : exps_(m, 0) {}
    MultiIndex(std::initializer_list<value_type> exps) : exps_(exps) {}
    explicit MultiIndex(std::vector<value_type> exps) : exps_(std::move(exps)) {}

    /// k-th unit vector scaled by `power` (k is 0-based).
    static MultiIndex unit(std::size_t m, std::size_t k, value_type power = 1) {
        MultiIndex a(m);
        a.exps_.at(k) = power;
        return a;
    }

    std::size_t size() const noexcept { return exps_.size(); }
    value_type operator[](std::size_t j) const { return exps_[j]; }
    std::span<const value_type> exponents() const noexcept { return exps_; }

    std::uint64_t order() const noexcept {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    bool is_zero() const noexcept {
        return std::all_of(exps_.begin(), exps_.end(), [](value_type e) { return e == 0; });
    }

    MultiIndex incremented(std::size_t k, value_type by = 1) const {
        MultiIndex a = *this;
        a.exps_.at(k) += by;
        return a;
    }

    MultiIndex operator+(const MultiIndex& other) const {
        check_same_size(other);
        MultiIndex a = *this;
        for (std::size_t j = 0; j < exps_.size(); ++j) a.exps_[j] += other.exps_[j];
        return a;
    }

    /// Componentwise difference; requires other ≤ *this.
    MultiIndex operator-(const MultiIndex& other) const {
        check_same_size(other);
        MultiIndex a = *this;
        for (std::size_t j = 0; j < exps_.size(); ++j) {
            if (other.exps_[j] > exps_[j]) throw std::domain_error("multi-index difference is negative");
            a.exps_[j] -= other.exps_[j];
        }
        return a;
    }

    /// Componentwise maximum (least common multiple of monomials).
    MultiIndex join(const MultiIndex& other) const {
        check_same_size(other);
        MultiIndex a = *this;
        for (std::size_t j = 0; j < exps_.size(); ++j) a.exps_[j] = std::max(a.exps_[j], other.exps_[j]);
        return a;
    }

    std::strong_ordering operator<=>(const MultiIndex& other) const {
        if (auto c = order() <=> other.order(); c != 0) return c;
        return exps_ <=> other.exps_;
    }
    bool operator==(const MultiIndex& other) const = default;

    void check_same_size(const MultiIndex& other) const {
        if (other.size() != size()) {
            throw std::invalid_argument("multi-index length mismatch: " + std::to_string(size()) + " vs " +
                                        std::to_string(other.size()));
        }
    }

private:
    std::vector<value_type> exps_;
};

inline std::uint64_t order(const MultiIndex& a) { return a.order(); }

/// Product order: α ≤ β iff α_j ≤ β_j for every j.
inline bool leq(const MultiIndex& a, const MultiIndex& b) {
    a.check_same_size(b);
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline std::string to_string(const MultiIndex& a) {
    std::string out = "(";
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(a[j]);
    }
    out += ')';
    return out;
}

/// Parses `(2,0,1)`; surrounding whitespace is ignored.
inline MultiIndex parse_multiindex(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed multi-index '" + std::string(text) + "'"); };
    std::vector<MultiIndex::value_type> exps;
    std::size_t p = 0;
    auto skip = [&] {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    };
    skip();
    if (p >= text.size() || text[p] != '(') fail();
    ++p;
    while (true) {
        skip();
        std::size_t start = p;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
        if (start == p || p - start > 9) fail();
        exps.push_back(static_cast<MultiIndex::value_type>(std::stoul(std::string(text.substr(start, p - start)))));
        skip();
        if (p < text.size() && text[p] == ',') {
            ++p;
            continue;
        }
        if (p < text.size() && text[p] == ')') {
            ++p;
            break;
        }
        fail();
    }
    skip();
    if (p != text.size()) fail();
    return MultiIndex(std::move(exps));
}

/// Parses a comma-separated list of multi-indices, e.g. `(0,0),(1,0)`.
inline std::vector<MultiIndex> parse_multiindex_list(std::string_view text) {
    std::vector<MultiIndex> out;
    std::size_t p = 0;
    while (p < text.size()) {
        auto open = text.find('(', p);
        if (open == std::string_view::npos) {
            if (text.substr(p).find_first_not_of(" \t,") != std::string_view::npos)
                throw std::invalid_argument("malformed multi-index list '" + std::string(text) + "'");
            break;
        }
        if (text.substr(p, open - p).find_first_not_of(" \t,") != std::string_view::npos)
            throw std::invalid_argument("malformed multi-index list '" + std::string(text) + "'");
        auto close = text.find(')', open);
        if (close == std::string_view::npos)
            throw std::invalid_argument("unterminated multi-index in '" + std::string(text) + "'");
        out.push_back(parse_multiindex(text.substr(open, close - open + 1)));
        p = close + 1;
    }
    return out;
}

namespace detail {

inline void compositions(std::size_t m, std::size_t pos, std::uint32_t remaining,
                         std::vector<MultiIndex::value_type>& cur, std::vector<MultiIndex>& out) {
    if (pos + 1 == m) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        compositions(m, pos + 1, remaining - e, cur, out);
    }
}

}  // namespace detail

/// Θ(d): every α ∈ N^m with |α| ≤ d, in graded lexicographic order. Size is C(m+d, m).
inline std::vector<MultiIndex> theta_set(std::size_t m, std::uint32_t d) {
    if (m == 0) throw std::invalid_argument("theta_set needs at least one derivation");
    std::vector<MultiIndex> out;
    std::vector<MultiIndex::value_type> cur(m, 0);
    for (std::uint32_t o = 0; o <= d; ++o) detail::compositions(m, 0, o, cur, out);
    return out;
}

/// Multi-indices of order exactly d, lexicographically ascending.
inline std::vector<MultiIndex> multiindices_of_order(std::size_t m, std::uint32_t d) {
    std::vector<MultiIndex> out;
    std::vector<MultiIndex::value_type> cur(m, 0);
    detail::compositions(m, 0, d, cur, out);
    return out;
}

/// True iff every member's lower set lies in `members` (checked via unit predecessors).
inline bool is_downward_closed(std::span<const MultiIndex> members) {
    std::vector<MultiIndex> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& a : sorted) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            MultiIndex pred = a - MultiIndex::unit(a.size(), j);
            if (!std::binary_search(sorted.begin(), sorted.end(), pred)) return false;
        }
    }
    return true;
}

/// A finite downward-closed subset of N^m, stored in graded lexicographic order.
class YoungLikeSet {
public:
    explicit YoungLikeSet(std::vector<MultiIndex> members) : members_(std::move(members)) {
        if (members_.empty()) throw std::invalid_argument("Young-like set must be nonempty");
        for (const auto& a : members_) members_.front().check_same_size(a);
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw std::invalid_argument("Young-like set has duplicate members");
        if (!is_downward_closed(members_)) throw std::invalid_argument("set is not downward closed");
    }

    std::size_t size() const noexcept { return members_.size(); }
    std::size_t dimension() const noexcept { return members_.front().size(); }
    const std::vector<MultiIndex>& members() const noexcept { return members_; }
    bool contains(const MultiIndex& a) const { return std::binary_search(members_.begin(), members_.end(), a); }

    auto operator<=>(const YoungLikeSet&) const = default;

private:
    std::vector<MultiIndex> members_;
};

namespace detail {

// Every prefix of a downward-closed set listed in graded-lex order is itself
// downward closed, so each set is reached exactly once by appending only
// addable elements that exceed the current graded-lex maximum.
inline void grow_young_like(std::size_t m, std::size_t target, std::vector<MultiIndex>& cur,
                            std::vector<YoungLikeSet>& out) {
    if (cur.size() == target) {
        out.emplace_back(cur);
        return;
    }
    std::vector<MultiIndex> candidates;
    for (const auto& a : cur)
        for (std::size_t j = 0; j < m; ++j) candidates.push_back(a.incremented(j));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& c : candidates) {
        if (!(cur.back() < c)) continue;
        bool addable = true;
        for (std::size_t j = 0; j < m && addable; ++j) {
            if (c[j] == 0) continue;
            addable = std::binary_search(cur.begin(), cur.end(), c - MultiIndex::unit(m, j));
        }
        if (!addable) continue;
        cur.push_back(c);
        grow_young_like(m, target, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Every downward-closed subset of N^m with exactly `size` elements. Output is
/// sorted lexicographically by member lists; no duplicates.
inline std::vector<YoungLikeSet> enumerate_young_like(std::size_t m, std::size_t size) {
    if (m == 0) throw std::invalid_argument("enumerate_young_like needs at least one derivation");
    if (size == 0) throw std::invalid_argument("Young-like set size must be positive");
    std::vector<YoungLikeSet> out;
    std::vector<MultiIndex> cur{MultiIndex(m)};
    detail::grow_young_like(m, size, cur, out);
    return out;
}

}  // namespace deltadep

#endif  // DELTADEP_MULTIINDEX_HPP
