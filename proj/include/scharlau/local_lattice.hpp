#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace scharlau::ideal {

// Submodule of (Z/q)^n, q = l^k with l prime, kept in Howell echelon form:
// each pivot is a power of l, and for a pivot l^u the row l^(k-u) * row is
// reduced into the later rows. Rows with a unit pivot are fully reduced, so
// no other row has an entry in their column.
//
// For a lattice L in Z^n, the image of L answers "smallest l^a with l^a * x in
// L + q*Z^n" where x is the last unit vector. Columns follow IdealLattice, so
// the identity is last.
class LocalLattice {
public:
    // Throws InputError unless l is prime, k >= 1 and q < 2^31.
    LocalLattice(std::size_t dimension, std::uint32_t prime, unsigned exponent);

    std::size_t dimension() const { return dimension_; }
    std::uint32_t modulus() const { return q_; }
    std::size_t rank() const { return pivot_count_; }

    // Entries are reduced mod q; columns must be < dimension.
    void insert_support(std::span<const std::uint32_t> columns);
    void insert_dense(std::vector<std::uint32_t> row);

    // Smallest l^a with l^a times the last unit vector in the module, or q.
    std::uint32_t last_unit_order() const;
    // Pivot value in column c, or 0 when the column has no pivot.
    std::uint32_t pivot(std::size_t c) const { return pivot_[c]; }
    std::uint32_t max_entry() const;

private:
    unsigned valuation(std::uint32_t x) const;
    std::uint32_t inverse(std::uint32_t unit) const;
    // dst[j] = dst[j] + m * src[j] mod q for j >= from
    void axpy(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t m, std::size_t from) const;
    void scale(std::uint32_t* row, std::uint32_t m, std::size_t from) const;
    // Cancels row[c] (or reduces it below the pivot) using the pivot row in c.
    void reduce_at(std::uint32_t* row, std::size_t c) const;
    void process(std::vector<std::uint32_t> row);
    void install(std::size_t c, std::vector<std::uint32_t> row, std::vector<std::vector<std::uint32_t>>& queue);

    std::size_t dimension_;
    std::uint32_t prime_;
    unsigned exponent_;
    std::uint32_t q_;
    std::vector<std::uint32_t> pivot_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::size_t pivot_count_ = 0;
};

}  // namespace scharlau::ideal
