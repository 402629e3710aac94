#include "polyformer/indices.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace polyformer {

int MultiIndex::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

bool MultiIndex::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

int RankTuple::degree() const {
    int total = 0;
    for (const auto& p : parts) total += p.degree();
    return total;
}

bool RankTuple::operator<(const RankTuple& o) const {
    if (rank() != o.rank()) return rank() < o.rank();
    if (degree() != o.degree()) return degree() < o.degree();
    // Parts are stored non-increasing; a tuple with a lexicographically larger
    // leading part sorts first.
    for (int i = 0; i < rank(); ++i) {
        if (parts[static_cast<size_t>(i)] != o.parts[static_cast<size_t>(i)])
            return o.parts[static_cast<size_t>(i)] < parts[static_cast<size_t>(i)];
    }
    return false;
}

std::string RankTuple::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i].to_string();
    }
    return s + ")";
}

RankTuple canonical_tuple(std::vector<MultiIndex> parts) {
    if (parts.empty()) throw std::invalid_argument("canonical_tuple: empty tuple");
    const int d = parts.front().dims();
    for (const auto& p : parts) {
        if (p.dims() != d) throw std::invalid_argument("canonical_tuple: mixed dimensions");
        if (p.is_zero()) throw std::invalid_argument("canonical_tuple: zero part");
    }
    std::sort(parts.begin(), parts.end(), [](const MultiIndex& a, const MultiIndex& b) { return b < a; });
    return RankTuple{std::move(parts)};
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

std::int64_t checked_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0) throw std::invalid_argument("checked_binomial: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) is always divisible by i at this point.
        result = checked_mul(result, n - k + i) / i;
    }
    return result;
}

std::int64_t checked_factorial(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("checked_factorial: negative argument");
    std::int64_t result = 1;
    for (std::int64_t i = 2; i <= n; ++i) result = checked_mul(result, i);
    return result;
}

std::int64_t count_compositions(std::int64_t d, std::int64_t k) {
    if (d < 1) throw std::invalid_argument("count_compositions: d must be positive");
    if (k < 0) throw std::invalid_argument("count_compositions: k must be nonnegative");
    return checked_binomial(k + d - 1, d - 1);
}

std::int64_t falling_factorial(std::int64_t n, std::int64_t r) {
    if (n < 0 || r < 0) throw std::invalid_argument("falling_factorial: negative argument");
    if (r > n) return 0;
    std::int64_t result = 1;
    for (std::int64_t i = 0; i < r; ++i) result = checked_mul(result, n - i);
    return result;
}

namespace {

// Exponent vectors of fixed dimension and exact degree, lexicographically
// descending (first coordinate greedy).
void emit_fixed_degree(int d, int deg, std::vector<int>& prefix,
                       std::vector<MultiIndex>& out) {
    if (static_cast<int>(prefix.size()) == d - 1) {
        prefix.push_back(deg);
        out.push_back(MultiIndex{prefix});
        prefix.pop_back();
        return;
    }
    for (int v = deg; v >= 0; --v) {
        prefix.push_back(v);
        emit_fixed_degree(d, deg - v, prefix, out);
        prefix.pop_back();
    }
}

void emit_tuples(const std::vector<MultiIndex>& pool, size_t start, int budget,
                 std::vector<MultiIndex>& current, std::vector<RankTuple>& out) {
    for (size_t i = start; i < pool.size(); ++i) {
        const int deg = pool[i].degree();
        if (deg > budget) continue;
        current.push_back(pool[i]);
        out.push_back(RankTuple{current});
        emit_tuples(pool, i, budget - deg, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int s) {
    if (d < 1 || s < 1) throw std::invalid_argument("enumerate_multi_indices: d,s must be positive");
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    for (int deg = 1; deg <= s; ++deg) emit_fixed_degree(d, deg, prefix, out);
    return out;
}

std::vector<RankTuple> enumerate_rank_tuples(int d, int s) {
    if (d < 1 || s < 1) throw std::invalid_argument("enumerate_rank_tuples: d,s must be positive");
    // Pool sorted lexicographically descending so emitted parts are already
    // non-increasing when drawn with non-decreasing pool index.
    std::vector<MultiIndex> pool = enumerate_multi_indices(d, s);
    std::sort(pool.begin(), pool.end(), [](const MultiIndex& a, const MultiIndex& b) { return b < a; });
    std::vector<RankTuple> out;
    std::vector<MultiIndex> current;
    emit_tuples(pool, 0, s, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t symmetry_coefficient(const RankTuple& t, int n) {
    if (t.rank() > n) throw std::invalid_argument("symmetry_coefficient: rank exceeds column count");
    std::int64_t result = 1;
    size_t i = 0;
    while (i < t.parts.size()) {
        size_t j = i;
        while (j < t.parts.size() && t.parts[j] == t.parts[i]) ++j;
        result = checked_mul(result, checked_factorial(static_cast<std::int64_t>(j - i)));
        i = j;
    }
    return result;
}

}  // namespace polyformer
