#include "scharlau/lattice.hpp"

#include "scharlau/error.hpp"

#include <algorithm>

namespace scharlau::ideal {

SparseRow combine(const BigInt& x, const SparseRow& a, const BigInt& y, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            if (x != 0) out.emplace_back(ia->first, x * ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            if (y != 0) out.emplace_back(ib->first, y * ib->second);
            ++ib;
        } else {
            BigInt v = x * ia->second + y * ib->second;
            if (v != 0) out.emplace_back(ia->first, std::move(v));
            ++ia;
            ++ib;
        }
    }
    return out;
}

namespace {

// row -= q * other
void subtract_multiple(SparseRow& row, const BigInt& q, const SparseRow& other) {
    if (q == 0) return;
    row = combine(1, row, -q, other);
}

}  // namespace

IdealLattice::IdealLattice(std::size_t dimension, bool validate_each_insert)
    : dimension_(dimension), validate_(validate_each_insert), rows_(dimension) {}

std::uint32_t IdealLattice::column_of(groups::ElementId g) const {
    if (g >= dimension_) throw InputError("element id outside the lattice dimension");
    return g == groups::kIdentity ? static_cast<std::uint32_t>(dimension_ - 1) : g - 1;
}

SparseRow IdealLattice::to_row(const ring::RingElement& v) const {
    if (v.parent().order() != dimension_) throw ParentMismatch("ring element from a different group");
    SparseRow row;
    row.reserve(v.support_size());
    for (const auto& [g, c] : v.terms()) row.emplace_back(column_of(g), c);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
}

void IdealLattice::reduce_tail(SparseRow& row, std::uint32_t after) const {
    std::uint32_t from = after + 1;
    for (;;) {
        auto it = std::lower_bound(row.begin(), row.end(), from,
                                   [](const auto& e, std::uint32_t c) { return e.first < c; });
        while (it != row.end() && !rows_[it->first]) ++it;
        if (it == row.end()) return;
        const std::uint32_t col = it->first;
        const BigInt q = floor_div(it->second, pivot_value(col));
        if (q != 0) subtract_multiple(row, q, *rows_[col]);
        from = col + 1;
    }
}

void IdealLattice::reduce_above(std::uint32_t col) {
    const BigInt& pivot = pivot_value(col);
    for (std::uint32_t i : pivots_) {
        if (i >= col) break;
        SparseRow& row = *rows_[i];
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::uint32_t c) { return e.first < c; });
        if (it == row.end() || it->first != col) continue;
        if (it->second >= 0 && it->second < pivot) continue;
        subtract_multiple(row, floor_div(it->second, pivot), *rows_[col]);
        reduce_tail(row, col);
    }
}

void IdealLattice::place(std::uint32_t col, SparseRow row) {
    if (row.front().second < 0) {
        for (auto& e : row) e.second = -e.second;
    }
    reduce_tail(row, col);
    rows_[col] = std::move(row);
    pivots_.insert(col);
    reduce_above(col);
}

void IdealLattice::insert(const ring::RingElement& v) { insert_row(to_row(v)); }

void IdealLattice::insert_row(SparseRow v) {
    while (!v.empty()) {
        const std::uint32_t col = v.front().first;
        if (col >= dimension_) throw InputError("row column outside the lattice dimension");
        if (!rows_[col]) {
            place(col, std::move(v));
            break;
        }
        const SparseRow& r = *rows_[col];
        const BigInt a = r.front().second;
        const BigInt b = v.front().second;
        if (b % a == 0) {
            subtract_multiple(v, b / a, r);
            continue;
        }
        // Unimodular step: [[s, t], [b/g, -a/g]] keeps the span and moves the
        // gcd into the pivot.
        const ExtendedGcd e = extended_gcd(a, b);
        SparseRow merged = combine(e.s, r, e.t, v);
        v = combine(b / e.g, r, -(a / e.g), v);
        place(col, std::move(merged));
    }
    if (validate_) {
        if (auto problem = check_invariants()) throw CheckFailure("lattice invariant broken: " + *problem);
    }
}

bool IdealLattice::contains(const ring::RingElement& v) const { return contains_row(to_row(v)); }

bool IdealLattice::contains_row(SparseRow v) const {
    while (!v.empty()) {
        const std::uint32_t col = v.front().first;
        if (!rows_[col]) return false;
        const BigInt& a = pivot_value(col);
        if (v.front().second % a != 0) return false;
        subtract_multiple(v, v.front().second / a, *rows_[col]);
    }
    return true;
}

BigInt IdealLattice::invariant() const {
    if (dimension_ == 0) return 0;
    const auto& last = rows_[dimension_ - 1];
    return last ? last->front().second : BigInt(0);
}

BigInt IdealLattice::max_abs_entry() const {
    BigInt best = 0;
    for (std::uint32_t col : pivots_)
        for (const auto& e : *rows_[col]) best = std::max(best, abs_big(e.second));
    return best;
}

std::vector<SparseRow> IdealLattice::basis() const {
    std::vector<SparseRow> out;
    out.reserve(pivots_.size());
    for (std::uint32_t col : pivots_) out.push_back(*rows_[col]);
    return out;
}

std::optional<std::string> IdealLattice::check_invariants() const {
    for (std::uint32_t col = 0; col < dimension_; ++col) {
        if (rows_[col].has_value() != (pivots_.count(col) == 1)) return "pivot index out of sync";
    }
    for (std::uint32_t col : pivots_) {
        const SparseRow& row = *rows_[col];
        if (row.empty()) return "empty row at pivot " + std::to_string(col);
        if (row.front().first != col) return "row stored under the wrong pivot " + std::to_string(col);
        if (row.front().second <= 0) return "non-positive pivot at column " + std::to_string(col);
        for (std::size_t i = 1; i < row.size(); ++i) {
            if (row[i].first <= row[i - 1].first) return "row columns not increasing";
            if (row[i].second == 0) return "explicit zero entry";
            const auto& other = rows_[row[i].first];
            if (other && (row[i].second < 0 || row[i].second >= other->front().second)) {
                return "entry at pivot column " + std::to_string(row[i].first) + " not reduced";
            }
        }
    }
    return std::nullopt;
}

}  // namespace scharlau::ideal
