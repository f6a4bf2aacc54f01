#pragma once

// Deliberately naive reference implementations used only by tests. None of
// these call into the library's algorithms beyond reading a multiplication
// table.

#include <scharlau/bigint.hpp>
#include <scharlau/groups.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using scharlau::BigInt;
using scharlau::groups::ElementId;
using scharlau::groups::FiniteGroup;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest r in [0, p) with r^2 = a, found by trying every r.
inline std::optional<std::uint64_t> sqrt_exhaustive(std::uint64_t a, std::uint64_t p) {
    a %= p;
    for (std::uint64_t r = 0; r < p; ++r)
        if (r * r % p == a) return r;
    return std::nullopt;
}

// Legendre symbol by counting: is a among the nonzero squares?
inline int legendre_by_squares(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    for (std::uint64_t r = 1; r < p; ++r)
        if (r * r % p == a) return 1;
    return -1;
}

// 2x2 matrices over Z_p as plain arrays {a, b, c, d}.
using M = std::array<std::int64_t, 4>;

inline std::int64_t md(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

inline M mmul(const M& x, const M& y, std::int64_t p) {
    return {md(x[0] * y[0] + x[1] * y[2], p), md(x[0] * y[1] + x[1] * y[3], p),
            md(x[2] * y[0] + x[3] * y[2], p), md(x[2] * y[1] + x[3] * y[3], p)};
}

inline M minv(const M& x, std::int64_t p) { return {x[3], md(-x[1], p), md(-x[2], p), x[0]}; }

inline std::vector<M> sl2_elements(std::int64_t p) {
    std::vector<M> out;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t c = 0; c < p; ++c)
                for (std::int64_t d = 0; d < p; ++d)
                    if (md(a * d - b * c, p) == 1) out.push_back({a, b, c, d});
    return out;
}

// Conjugacy class of x, computed on matrices.
inline std::set<M> matrix_class(const M& x, const std::vector<M>& all, std::int64_t p) {
    std::set<M> out;
    for (const M& h : all) out.insert(mmul(mmul(h, x, p), minv(h, p), p));
    return out;
}

// Dense convolution in Z[G].
inline std::vector<BigInt> convolve(const FiniteGroup& g, const std::vector<BigInt>& x,
                                    const std::vector<BigInt>& y) {
    std::vector<BigInt> out(g.order(), 0);
    for (ElementId a = 0; a < g.order(); ++a)
        for (ElementId b = 0; b < g.order(); ++b) out[g.mul(a, b)] += x[a] * y[b];
    return out;
}

// Subgroups of prime order found by taking powers of every element of prime
// order and deduplicating.
inline std::set<std::set<ElementId>> prime_subgroups_by_powers(const FiniteGroup& g) {
    std::set<std::set<ElementId>> out;
    for (ElementId x = 1; x < g.order(); ++x) {
        std::set<ElementId> powers{0};
        ElementId y = x;
        while (y != 0) {
            powers.insert(y);
            y = g.mul(y, x);
        }
        if (is_prime(powers.size())) out.insert(powers);
    }
    return out;
}

// Every left coset sum of every prime-order subgroup, as dense rows with the
// identity coordinate last. Duplicates are kept.
inline std::vector<std::vector<BigInt>> scharlau_rows(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<std::vector<BigInt>> rows;
    for (const auto& h : prime_subgroups_by_powers(g)) {
        for (ElementId x = 0; x < n; ++x) {
            std::vector<BigInt> row(n, 0);
            for (ElementId y : h) {
                const ElementId z = g.mul(x, y);
                row[z == 0 ? n - 1 : z - 1] = 1;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Textbook row echelon over Z by repeated Euclidean row steps, column by
// column. Returns the positive generator of the lattice intersected with the
// last coordinate axis, or 0.
inline BigInt last_axis_generator(std::vector<std::vector<BigInt>> rows, std::size_t n) {
    std::size_t top = 0;
    for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
        while (true) {
            // Smallest nonzero |entry| at or below top moves to top.
            std::optional<std::size_t> best;
            for (std::size_t r = top; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                if (!best || scharlau::abs_big(rows[r][col]) < scharlau::abs_big(rows[*best][col])) best = r;
            }
            if (!best) break;
            std::swap(rows[top], rows[*best]);
            bool others = false;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                const BigInt q = rows[r][col] / rows[top][col];
                for (std::size_t k = col; k < n; ++k) rows[r][k] -= q * rows[top][k];
                if (rows[r][col] != 0) others = true;
            }
            if (!others) {
                if (col == n - 1) return scharlau::abs_big(rows[top][col]);
                ++top;
                break;
            }
        }
    }
    return 0;
}

inline BigInt invariant_dense(const FiniteGroup& g) {
    return last_axis_generator(scharlau_rows(g), g.order());
}

}  // namespace oracle
