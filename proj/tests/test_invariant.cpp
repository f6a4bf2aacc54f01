#include <gtest/gtest.h>

#include <scharlau/error.hpp>
#include <scharlau/groups.hpp>
#include <scharlau/invariant.hpp>
#include <scharlau/sl2.hpp>

#include "oracles.hpp"

#include <sstream>

using namespace scharlau;
using namespace scharlau::ideal;

namespace {

groups::FiniteGroup klein() { return groups::direct_product(groups::cyclic(2), groups::cyclic(2)); }

// Every group small enough for the dense oracle.
std::vector<std::pair<std::string, groups::FiniteGroup>> small_groups() {
    std::vector<std::pair<std::string, groups::FiniteGroup>> out;
    for (std::size_t n = 1; n <= 24; ++n) out.emplace_back("cyclic:" + std::to_string(n), groups::cyclic(n));
    out.emplace_back("quaternion8", groups::quaternion8());
    out.emplace_back("gpq:7:3", groups::gpq(7, 3));
    out.emplace_back("gpq:11:5", groups::gpq(11, 5));
    out.emplace_back("gpq:13:3", groups::gpq(13, 3));
    out.emplace_back("klein", klein());
    out.emplace_back("c3xc3", groups::direct_product(groups::cyclic(3), groups::cyclic(3)));
    out.emplace_back("q8xc3", groups::direct_product(groups::quaternion8(), groups::cyclic(3)));
    out.emplace_back("sl2:3", sl2::enumerate(modp::Prime(3)).group());
    return out;
}

}  // namespace

TEST(Invariant, KnownValues) {
    for (std::size_t n = 2; n <= 24; ++n) EXPECT_EQ(compute_invariant(groups::cyclic(n)).stats.invariant, 0) << n;
    EXPECT_EQ(compute_invariant(groups::quaternion8()).stats.invariant, 0);
    EXPECT_EQ(compute_invariant(sl2::enumerate(modp::Prime(5)).group()).stats.invariant, 0);
    EXPECT_EQ(compute_invariant(groups::gpq(7, 3)).stats.invariant, 7);
    EXPECT_EQ(compute_invariant(groups::gpq(11, 5)).stats.invariant, 11);
}

TEST(Invariant, MatchesDenseOracle) {
    for (const auto& [name, g] : small_groups()) {
        const auto got = compute_invariant(g).stats.invariant;
        EXPECT_EQ(got, oracle::invariant_dense(g)) << name;
    }
}

TEST(Invariant, OrderIndependent) {
    for (const auto& [name, g] : small_groups()) {
        const auto base = compute_invariant(g);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            InvariantOptions opts;
            opts.shuffle_seed = seed;
            const auto shuffled = compute_invariant(g, opts);
            EXPECT_EQ(shuffled.stats.invariant, base.stats.invariant) << name;
            EXPECT_TRUE(shuffled.lattice == base.lattice) << name;
        }
    }
}

TEST(Invariant, MembershipSelfConsistency) {
    for (const auto& [name, g] : small_groups()) {
        auto result = compute_invariant(g);
        const BigInt n = result.stats.invariant;
        if (n == 0) continue;
        const auto before = result.lattice.basis();
        result.lattice.insert(ring::RingElement::unit(g, groups::kIdentity, n));
        EXPECT_EQ(result.lattice.basis(), before) << name;
        EXPECT_FALSE(result.lattice.contains(ring::RingElement::unit(g, groups::kIdentity, n - 1))) << name;
    }
}

TEST(Invariant, AllSubgroupsGiveTheSameLattice) {
    for (const auto& g : {groups::gpq(7, 3), groups::quaternion8(), groups::cyclic(12), klein(),
                          sl2::enumerate(modp::Prime(5)).group()}) {
        InvariantOptions opts;
        opts.all_subgroups = true;
        EXPECT_TRUE(compute_invariant(g, opts).lattice == compute_invariant(g).lattice);
    }
}

TEST(Invariant, ValidatedRunAgrees) {
    InvariantOptions opts;
    opts.validate_each_insert = true;
    const auto r = compute_invariant(groups::gpq(7, 3), opts);
    EXPECT_EQ(r.stats.invariant, 7);
    EXPECT_EQ(r.stats.rank, 21u);
    EXPECT_FALSE(r.lattice.check_invariants());
}

TEST(Invariant, OrderCap) {
    EXPECT_THROW(compute_invariant(groups::cyclic(1001)), OrderCap);
    InvariantOptions opts;
    opts.max_order = 20;
    EXPECT_THROW(compute_invariant(groups::gpq(7, 3), opts), OrderCap);
}

TEST(Invariant, ProgressCallback) {
    InvariantOptions opts;
    opts.progress_every = 10;
    std::size_t calls = 0;
    opts.progress = [&](std::size_t done, std::size_t total) {
        ++calls;
        EXPECT_LE(done, total);
    };
    const auto r = compute_invariant(groups::gpq(7, 3), opts);
    EXPECT_GT(calls, 0u);
    EXPECT_EQ(r.stats.generators, 52u);
}

TEST(GeneratorStream, DistinctPrimeOrderCosets) {
    const auto g = groups::gpq(7, 3);
    const auto gens = collect_generators(g);
    std::set<std::vector<groups::ElementId>> seen(gens.begin(), gens.end());
    EXPECT_EQ(seen.size(), gens.size());
    // One C7 with 3 cosets plus seven C3s with 7 cosets each.
    EXPECT_EQ(gens.size(), 3u + 7u * 7u);
    const auto subs = oracle::prime_subgroups_by_powers(g);
    for (const auto& s : gens) {
        bool is_coset = false;
        for (const auto& h : subs) {
            if (h.size() != s.size()) continue;
            std::set<groups::ElementId> coset;
            for (auto y : h) coset.insert(g.mul(s.front(), y));
            if (std::vector<groups::ElementId>(coset.begin(), coset.end()) == s) is_coset = true;
        }
        EXPECT_TRUE(is_coset);
    }
    GeneratorStream stream(g);
    std::size_t count = 0;
    while (stream.next()) ++count;
    EXPECT_EQ(count, gens.size());
    EXPECT_EQ(stream.emitted(), gens.size());
}

TEST(PartitionWitness, Examples) {
    const auto g = groups::gpq(7, 3);
    const auto p = groups::find_partition(g);
    ASSERT_TRUE(p);
    const auto w = partition_witness(g, *p);
    EXPECT_EQ(w.integer, 7);
    EXPECT_EQ(w.element, ring::RingElement::unit(g, groups::kIdentity, 7));
    EXPECT_TRUE(compute_invariant(g).lattice.contains(w.element));

    const auto c5 = groups::cyclic(5);
    const groups::Partition trivial{{groups::Subgroup(c5, {0, 1, 2, 3, 4})}};
    const auto w5 = partition_witness(c5, trivial);
    EXPECT_EQ(w5.integer, 0);
    EXPECT_TRUE(w5.element.is_zero());

    const auto k = klein();
    const auto pk = groups::find_partition(k);
    ASSERT_TRUE(pk);
    const auto wk = partition_witness(k, *pk);
    EXPECT_EQ(wk.integer, 2);
    EXPECT_EQ(wk.element, ring::RingElement::unit(k, groups::kIdentity, 2));
    EXPECT_EQ(compute_invariant(k).stats.invariant, 2);

    const groups::Partition bad{{groups::Subgroup(c5, {0})}};
    EXPECT_THROW(partition_witness(c5, bad), InvalidPartition);
}

TEST(PartitionWitness, DividesIntoLatticeForGpq) {
    for (const auto& g : {groups::gpq(7, 3), groups::gpq(11, 5), groups::gpq(13, 3)}) {
        const auto p = groups::find_partition(g);
        ASSERT_TRUE(p);
        const auto w = partition_witness(g, *p);
        const auto n = compute_invariant(g).stats.invariant;
        ASSERT_GT(n, 0);
        EXPECT_EQ(w.integer % n, 0);
    }
}

TEST(InvariantFromConstraints, Examples) {
    const BigInt m1[] = {4896};
    EXPECT_EQ(invariant_from_constraints(m1, 289), 17);
    const BigInt m2[] = {1224};
    EXPECT_EQ(invariant_from_constraints(m2, 289), 17);
    for (std::uint64_t p : {17u, 257u, 65537u}) {
        const BigInt bp = p;
        const BigInt members[] = {(bp - 1) * bp * (bp + 1)};
        EXPECT_EQ(invariant_from_constraints(members, bp * bp), bp);
    }
    EXPECT_EQ(invariant_from_constraints({}, 12), 12);
}

TEST(FormatStats, Lines) {
    const auto r = compute_invariant(groups::gpq(7, 3));
    const auto text = format_stats(r.stats);
    EXPECT_NE(text.find("invariant: 7\n"), std::string::npos);
    EXPECT_NE(text.find("generators: 52\n"), std::string::npos);
    EXPECT_NE(text.find("rank: 21\n"), std::string::npos);
    EXPECT_NE(text.find("max |entry|: "), std::string::npos);
    EXPECT_NE(text.find("wall time: "), std::string::npos);
}
