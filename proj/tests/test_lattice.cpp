#include <gtest/gtest.h>

#include <scharlau/groupring.hpp>
#include <scharlau/groups.hpp>
#include <scharlau/lattice.hpp>

#include "oracles.hpp"

#include <random>

using namespace scharlau;
using namespace scharlau::ideal;

namespace {

SparseRow sparse(const std::vector<BigInt>& dense) {
    SparseRow out;
    for (std::uint32_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) out.emplace_back(i, dense[i]);
    return out;
}

std::vector<std::vector<BigInt>> random_rows(std::mt19937_64& rng, std::size_t count, std::size_t n, int bound) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    std::bernoulli_distribution keep(0.4);
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t r = 0; r < count; ++r) {
        std::vector<BigInt> row(n, 0);
        for (auto& x : row)
            if (keep(rng)) x = entry(rng);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Lattice, EmptyHasZeroInvariant) {
    IdealLattice l(5);
    EXPECT_EQ(l.invariant(), 0);
    EXPECT_EQ(l.rank(), 0u);
    EXPECT_FALSE(l.check_invariants());
}

TEST(Lattice, IdentityAndGcd) {
    const auto c3 = groups::cyclic(3);
    IdealLattice a(3);
    a.insert(ring::RingElement::unit(c3, 0));
    EXPECT_EQ(a.invariant(), 1);

    IdealLattice b(3);
    b.insert(ring::RingElement::unit(c3, 0, 2));
    EXPECT_EQ(b.invariant(), 2);
    EXPECT_FALSE(b.contains(ring::RingElement::unit(c3, 0)));
    b.insert(ring::RingElement::unit(c3, 0, 3));
    EXPECT_EQ(b.invariant(), 1);
}

TEST(Lattice, CyclicTwoSingleGenerator) {
    const auto c2 = groups::cyclic(2);
    IdealLattice l(2);
    const auto gen = ring::RingElement::unit(c2, 0) + ring::RingElement::unit(c2, 1);
    l.insert(gen);
    EXPECT_EQ(l.invariant(), 0);
    EXPECT_TRUE(l.contains(gen.scaled(-4)));
    EXPECT_FALSE(l.contains(ring::RingElement::unit(c2, 0, 2)));
}

TEST(Lattice, IdentityColumnIsLast) {
    IdealLattice l(6);
    EXPECT_EQ(l.column_of(0), 5u);
    EXPECT_EQ(l.column_of(1), 0u);
    EXPECT_EQ(l.column_of(5), 4u);
}

TEST(Lattice, InsertIsIdempotent) {
    std::mt19937_64 rng(21);
    const auto rows = random_rows(rng, 6, 7, 4);
    IdealLattice l(7, true);
    for (const auto& r : rows) l.insert_row(sparse(r));
    const auto before = l.basis();
    for (const auto& r : rows) l.insert_row(sparse(r));
    EXPECT_EQ(l.basis(), before);
}

TEST(Lattice, HermiteInvariantsAfterEveryInsert) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        IdealLattice l(9);
        for (const auto& r : random_rows(rng, 12, 9, 6)) {
            l.insert_row(sparse(r));
            const auto bad = l.check_invariants();
            ASSERT_FALSE(bad) << *bad;
        }
        const auto basis = l.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            EXPECT_GT(basis[i].front().second, 0);
            if (i > 0) EXPECT_LT(basis[i - 1].front().first, basis[i].front().first);
        }
    }
}

TEST(Lattice, InvariantMatchesDenseOracle) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto rows = random_rows(rng, 1 + trial % 9, n, 7);
        IdealLattice l(n);
        for (const auto& r : rows) l.insert_row(sparse(r));
        EXPECT_EQ(l.invariant(), oracle::last_axis_generator(rows, n)) << trial;
    }
}

TEST(Lattice, BasisIsIndependentOfInsertionOrder) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = random_rows(rng, 8, 8, 5);
        IdealLattice first(8);
        for (const auto& r : rows) first.insert_row(sparse(r));
        for (int s = 0; s < 5; ++s) {
            std::shuffle(rows.begin(), rows.end(), rng);
            IdealLattice again(8);
            for (const auto& r : rows) again.insert_row(sparse(r));
            EXPECT_TRUE(again == first);
        }
    }
}

TEST(Lattice, MembershipOfCombinations) {
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rows = random_rows(rng, 5, 6, 5);
        IdealLattice l(6);
        for (const auto& r : rows) l.insert_row(sparse(r));
        std::vector<BigInt> combo(6, 0);
        for (const auto& r : rows) {
            const int k = coef(rng);
            for (std::size_t i = 0; i < 6; ++i) combo[i] += k * r[i];
        }
        EXPECT_TRUE(l.contains_row(sparse(combo)));
        const auto before = l.basis();
        l.insert_row(sparse(combo));
        EXPECT_EQ(l.basis(), before);
    }
}

TEST(Lattice, NonMemberIsRejected) {
    IdealLattice l(3);
    l.insert_row({{0, 2}, {1, 1}});
    l.insert_row({{1, 3}});
    EXPECT_TRUE(l.contains_row({{0, 2}, {1, 4}}));
    EXPECT_FALSE(l.contains_row({{0, 1}}));
    EXPECT_FALSE(l.contains_row({{2, 1}}));
    EXPECT_TRUE(l.contains_row({}));
}

TEST(Lattice, BigEntriesSurvive) {
    IdealLattice l(2);
    const BigInt big = BigInt(1) << 200;
    l.insert_row({{0, big}, {1, 1}});
    l.insert_row({{0, big + 1}});
    EXPECT_EQ(l.invariant(), big + 1);
    EXPECT_FALSE(l.check_invariants());
}

TEST(Combine, Sparse) {
    const SparseRow a{{0, 1}, {2, 3}}, b{{1, 2}, {2, -1}};
    EXPECT_EQ(combine(2, a, 6, b), (SparseRow{{0, 2}, {1, 12}}));
    EXPECT_EQ(combine(1, a, -1, a), SparseRow{});
}
