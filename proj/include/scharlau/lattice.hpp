#pragma once

#include "scharlau/bigint.hpp"
#include "scharlau/groupring.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace scharlau::ideal {

using SparseRow = std::vector<std::pair<std::uint32_t, BigInt>>;

// Integer lattice in Z^n kept in Hermite normal form (row convention):
// pivots are the leading columns, strictly increasing down the basis, every
// pivot is positive, and each entry sitting in a later row's pivot column
// lies in [0, pivot). The form is canonical, so two lattices are equal iff
// their bases are.
//
// Group-ring elements map to columns with the identity LAST (id 0 -> n-1,
// id k -> k-1), so a row pivoting on the identity column is exactly n*e.
class IdealLattice {
public:
    explicit IdealLattice(std::size_t dimension, bool validate_each_insert = false);

    std::size_t dimension() const { return dimension_; }
    std::size_t rank() const { return pivots_.size(); }

    std::uint32_t column_of(groups::ElementId g) const;
    SparseRow to_row(const ring::RingElement& v) const;

    void insert(const ring::RingElement& v);
    void insert_row(SparseRow v);

    bool contains(const ring::RingElement& v) const;
    bool contains_row(SparseRow v) const;

    // Minimal positive n with n*e in the lattice, or 0.
    BigInt invariant() const;

    BigInt max_abs_entry() const;
    // Rows in pivot order.
    std::vector<SparseRow> basis() const;
    // Hermite conditions; returns a description of the first violation.
    std::optional<std::string> check_invariants() const;

    friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
        return a.dimension_ == b.dimension_ && a.basis() == b.basis();
    }

private:
    const BigInt& pivot_value(std::uint32_t col) const { return rows_[col]->front().second; }
    void reduce_tail(SparseRow& row, std::uint32_t after) const;
    void reduce_above(std::uint32_t col);
    void place(std::uint32_t col, SparseRow row);

    std::size_t dimension_;
    bool validate_;
    std::vector<std::optional<SparseRow>> rows_;  // indexed by pivot column
    std::set<std::uint32_t> pivots_;
};

// x * a + y * b on sparse rows.
SparseRow combine(const BigInt& x, const SparseRow& a, const BigInt& y, const SparseRow& b);

}  // namespace scharlau::ideal
