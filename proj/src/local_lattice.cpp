#include "scharlau/local_lattice.hpp"

#include "scharlau/error.hpp"
#include "scharlau/modp.hpp"

#include <algorithm>

namespace scharlau::ideal {

namespace {

// Below this modulus a + m*b stays under 2^24, so float arithmetic is exact
// and the row kernels vectorize.
constexpr std::uint32_t kFloatModulus = 4096;

}  // namespace

LocalLattice::LocalLattice(std::size_t dimension, std::uint32_t prime, unsigned exponent)
    : dimension_(dimension), prime_(prime), exponent_(exponent), q_(1), pivot_(dimension, 0), rows_(dimension) {
    if (!modp::is_prime(prime)) throw NotPrime(std::to_string(prime) + " is not prime");
    if (exponent == 0) throw InputError("exponent must be at least 1");
    for (unsigned i = 0; i < exponent; ++i) {
        if (static_cast<std::uint64_t>(q_) * prime >= (1ull << 31)) throw InputError("modulus exceeds 2^31");
        q_ *= prime;
    }
}

unsigned LocalLattice::valuation(std::uint32_t x) const {
    unsigned v = 0;
    while (x % prime_ == 0 && v < exponent_) {
        x /= prime_;
        ++v;
    }
    return v;
}

std::uint32_t LocalLattice::inverse(std::uint32_t unit) const {
    // Extended Euclid on (unit, q).
    std::int64_t a = unit, b = q_, x0 = 1, x1 = 0;
    while (b != 0) {
        const std::int64_t t = a / b;
        std::swap(a, b);
        b -= t * a;
        std::swap(x0, x1);
        x1 -= t * x0;
    }
    if (a != 1) throw NotInvertible("not a unit mod " + std::to_string(q_));
    return static_cast<std::uint32_t>(((x0 % q_) + q_) % q_);
}

void LocalLattice::axpy(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t m, std::size_t from) const {
    const std::size_t n = dimension_;
    if (m == 0) return;
    if (q_ < kFloatModulus) {
        const float fq = static_cast<float>(q_), inv = 1.0f / fq, fm = static_cast<float>(m);
        for (std::size_t j = from; j < n; ++j) {
            const float t = static_cast<float>(static_cast<std::int32_t>(dst[j])) +
                            fm * static_cast<float>(static_cast<std::int32_t>(src[j]));
            float r = t - static_cast<float>(static_cast<std::int32_t>(t * inv)) * fq;
            r = r < 0 ? r + fq : r;
            r = r >= fq ? r - fq : r;
            dst[j] = static_cast<std::uint32_t>(static_cast<std::int32_t>(r));
        }
        return;
    }
    for (std::size_t j = from; j < n; ++j) {
        dst[j] = static_cast<std::uint32_t>((dst[j] + static_cast<std::uint64_t>(m) * src[j]) % q_);
    }
}

void LocalLattice::scale(std::uint32_t* row, std::uint32_t m, std::size_t from) const {
    for (std::size_t j = from; j < dimension_; ++j) {
        row[j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(row[j]) * m % q_);
    }
}

void LocalLattice::reduce_at(std::uint32_t* row, std::size_t c) const {
    const std::uint32_t p = pivot_[c];
    const std::uint32_t m = row[c] / p;
    if (m != 0) axpy(row, rows_[c].data(), q_ - m, c);
}

void LocalLattice::install(std::size_t c, std::vector<std::uint32_t> row,
                           std::vector<std::vector<std::uint32_t>>& queue) {
    const std::uint32_t x = row[c];
    const unsigned u = valuation(x);
    std::uint32_t lu = 1;
    for (unsigned i = 0; i < u; ++i) lu *= prime_;
    scale(row.data(), inverse(x / lu), c);
    for (std::size_t j = c + 1; j < dimension_; ++j) {
        if (pivot_[j] == 1 && row[j] != 0) axpy(row.data(), rows_[j].data(), q_ - row[j], j);
    }
    if (pivot_[c] != 0) {
        std::vector<std::uint32_t> old = std::move(rows_[c]);
        axpy(old.data(), row.data(), q_ - old[c] / lu, c);
        queue.push_back(std::move(old));
    } else {
        ++pivot_count_;
    }
    if (u > 0) {
        std::uint32_t annihilator = 1;
        for (unsigned i = u; i < exponent_; ++i) annihilator *= prime_;
        std::vector<std::uint32_t> extra = row;
        scale(extra.data(), annihilator, c);
        queue.push_back(std::move(extra));
    }
    rows_[c] = std::move(row);
    pivot_[c] = lu;
    for (std::size_t i = 0; i < c; ++i) {
        if (pivot_[i] != 0 && rows_[i][c] != 0) reduce_at(rows_[i].data(), c);
    }
}

void LocalLattice::process(std::vector<std::uint32_t> row) {
    std::vector<std::vector<std::uint32_t>> queue;
    queue.push_back(std::move(row));
    while (!queue.empty()) {
        std::vector<std::uint32_t> v = std::move(queue.back());
        queue.pop_back();
        for (std::size_t c = 0; c < dimension_; ++c) {
            const std::uint32_t x = v[c];
            if (x == 0) continue;
            if (pivot_[c] != 0 && valuation(x) >= valuation(pivot_[c])) {
                reduce_at(v.data(), c);
                continue;
            }
            install(c, std::move(v), queue);
            break;
        }
    }
}

void LocalLattice::insert_support(std::span<const std::uint32_t> columns) {
    std::vector<std::uint32_t> row(dimension_, 0);
    for (std::uint32_t c : columns) {
        if (c >= dimension_) throw InputError("column outside the lattice dimension");
        row[c] = (row[c] + 1) % q_;
    }
    process(std::move(row));
}

void LocalLattice::insert_dense(std::vector<std::uint32_t> row) {
    if (row.size() != dimension_) throw InputError("row length differs from the lattice dimension");
    for (auto& x : row) x %= q_;
    process(std::move(row));
}

std::uint32_t LocalLattice::last_unit_order() const {
    if (dimension_ == 0) return 1;
    const std::uint32_t p = pivot_[dimension_ - 1];
    return p == 0 ? q_ : p;
}

std::uint32_t LocalLattice::max_entry() const {
    std::uint32_t best = 0;
    for (const auto& row : rows_) {
        for (std::uint32_t x : row) best = std::max(best, x);
    }
    return best;
}

}  // namespace scharlau::ideal
