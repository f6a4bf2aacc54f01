#include <gtest/gtest.h>

#include <scharlau/error.hpp>
#include <scharlau/groups.hpp>
#include <scharlau/sl2.hpp>

#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace scharlau;
using namespace scharlau::groups;

namespace {

const sl2::Sl2Group& sl2_17() {
    static const sl2::Sl2Group g = sl2::enumerate(modp::Prime(17));
    return g;
}

ElementId id_of(const sl2::Sl2Group& g, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return g.id_of(sl2::Mat2::of(a, b, c, d, g.p()));
}

FiniteGroup klein_from_text() {
    std::istringstream in(
        "group-table v1\n"
        "4\n"
        "0 1 2 3\n"
        "1 0 3 2\n"
        "2 3 0 1\n"
        "3 2 1 0\n");
    return read_table(in);
}

std::string table_error(const std::string& text) {
    std::istringstream in(text);
    try {
        read_table(in);
    } catch (const BadTable& e) {
        return e.what();
    }
    return "";
}

// Brute-force class count: number of distinct orbits.
std::size_t orbit_count(const FiniteGroup& g) {
    std::set<std::set<ElementId>> orbits;
    for (ElementId x = 0; x < g.order(); ++x) {
        std::set<ElementId> o;
        for (ElementId h = 0; h < g.order(); ++h) o.insert(g.conj(h, x));
        orbits.insert(o);
    }
    return orbits.size();
}

}  // namespace

TEST(FiniteGroup, CyclicBasics) {
    const auto c6 = cyclic(6);
    EXPECT_EQ(c6.order(), 6u);
    EXPECT_TRUE(c6.is_abelian());
    EXPECT_EQ(c6.element_order(1), 6u);
    EXPECT_EQ(c6.element_order(3), 2u);
    EXPECT_EQ(c6.inv(2), 4u);
    EXPECT_EQ(cyclic(1).order(), 1u);
}

TEST(FiniteGroup, Quaternion8HasUniqueInvolution) {
    const auto q = quaternion8();
    EXPECT_EQ(q.order(), 8u);
    EXPECT_FALSE(q.is_abelian());
    std::size_t involutions = 0;
    for (ElementId x = 0; x < 8; ++x) involutions += q.element_order(x) == 2;
    EXPECT_EQ(involutions, 1u);
}

TEST(FiniteGroup, Gpq) {
    const auto g = gpq(7, 3);
    EXPECT_EQ(g.order(), 21u);
    EXPECT_FALSE(g.is_abelian());
    EXPECT_THROW(gpq(7, 5), BadSpec);
    EXPECT_THROW(gpq(9, 2), BadSpec);
    EXPECT_EQ(gpq(11, 5).order(), 55u);
}

TEST(FiniteGroup, DirectProduct) {
    const auto g = direct_product(cyclic(2), cyclic(3));
    EXPECT_EQ(g.order(), 6u);
    std::size_t order6 = 0;
    for (ElementId x = 0; x < 6; ++x) order6 += g.element_order(x) == 6;
    EXPECT_EQ(order6, 2u);
}

TEST(ConjugacyClasses, Examples) {
    EXPECT_EQ(conjugacy_classes(cyclic(5)).size(), 5u);
    EXPECT_EQ(conjugacy_classes(sl2::enumerate(modp::Prime(5)).group()).size(), 9u);
    EXPECT_EQ(conjugacy_classes(gpq(7, 3)).size(), 5u);
    EXPECT_EQ(orbit_count(gpq(7, 3)), 5u);
    EXPECT_EQ(conjugacy_classes(quaternion8()).size(), 5u);
}

TEST(ConjugacyClasses, PartitionAndCanonicalOrder) {
    const auto& g = sl2_17().group();
    const auto classes = conjugacy_classes(g);
    EXPECT_EQ(classes.size(), 21u);
    std::vector<int> seen(g.order(), 0);
    ElementId last = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        EXPECT_EQ(c.representative, c.members.front());
        EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
        if (i > 0) EXPECT_LT(last, c.representative);
        last = c.representative;
        for (ElementId x : c.members) ++seen[x];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(ConjugacyClasses, MatchMatrixOrbitsAtFive) {
    const auto g = sl2::enumerate(modp::Prime(5));
    const auto all = oracle::sl2_elements(5);
    for (const auto& c : conjugacy_classes(g.group())) {
        const auto& m = g.matrix(c.representative);
        const oracle::M x{static_cast<std::int64_t>(m.a().residue()), static_cast<std::int64_t>(m.b().residue()),
                          static_cast<std::int64_t>(m.c().residue()), static_cast<std::int64_t>(m.d().residue())};
        EXPECT_EQ(oracle::matrix_class(x, all, 5).size(), c.members.size());
    }
}

TEST(Centralizer, Examples) {
    const auto& s = sl2_17();
    const auto& g = s.group();
    EXPECT_EQ(centralizer(g, kIdentity).order(), g.order());
    const auto specials = sl2::build_specials(s.p());
    EXPECT_EQ(centralizer(g, s.id_of(specials.V)).order(), 18u);
    EXPECT_EQ(centralizer(g, s.id_of(*specials.Delta)).order(), 16u);
    EXPECT_EQ(centralizer(g, id_of(s, 2, 0, 0, 9)).order(), 16u);
}

TEST(OrbitStabilizer, ExhaustiveUpTo5000) {
    std::vector<FiniteGroup> groups;
    for (std::size_t n : {1u, 2u, 12u, 24u}) groups.push_back(cyclic(n));
    groups.push_back(quaternion8());
    groups.push_back(gpq(7, 3));
    groups.push_back(gpq(11, 5));
    groups.push_back(gpq(13, 3));
    groups.push_back(direct_product(quaternion8(), cyclic(3)));
    for (std::uint64_t p : {5u, 7u, 11u, 13u})
        groups.push_back(sl2::enumerate(modp::Prime(p)).group());
    auto check = [](const FiniteGroup& g) {
        std::vector<std::size_t> class_size(g.order(), 0);
        for (const auto& c : conjugacy_classes(g))
            for (ElementId x : c.members) class_size[x] = c.members.size();
        for (ElementId x = 0; x < g.order(); ++x)
            ASSERT_EQ(class_size[x] * centralizer(g, x).order(), g.order()) << x;
    };
    for (const auto& g : groups) check(g);
    check(sl2_17().group());
}

TEST(SetStabilizer, Examples) {
    const auto& s = sl2_17();
    const auto& g = s.group();
    const ElementId e[] = {kIdentity};
    EXPECT_EQ(set_stabilizer(g, e).order(), g.order());

    const auto sp = sl2::build_specials(s.p());
    const ElementId v = s.id_of(sp.V), w = s.id_of(*sp.W);
    const auto hv = cyclic_subgroup(g, v);
    EXPECT_EQ(hv.order(), 3u);
    EXPECT_EQ(set_stabilizer(g, hv.elements()).order(), 36u);

    const auto wv = left_coset(g, w, hv);
    const auto stab = set_stabilizer(g, wv);
    EXPECT_EQ(stab.elements(), (std::vector<ElementId>{kIdentity, s.id_of(sp.neg_identity)}));
    EXPECT_THROW(set_stabilizer(g, std::span<const ElementId>{}), InputError);
}

TEST(ConjugationTransporter, SplitTorusPair) {
    const auto& s = sl2_17();
    const auto& g = s.group();
    const auto sp = sl2::build_specials(s.p());
    const ElementId v = s.id_of(sp.V), w = s.id_of(*sp.W);
    const ElementId wv = g.mul(w, v), wv_inv = g.mul(w, g.inv(v));
    const std::vector<ElementId> pair{wv, wv_inv};
    EXPECT_EQ(conjugation_transporter(g, wv, pair).size(), 32u);
    EXPECT_EQ(conjugation_transporter(g, wv_inv, pair).size(), 32u);
    // WV and WV^-1 lie in different tori, so only +-I fix the pair.
    EXPECT_NE(g.mul(wv, wv_inv), g.mul(wv_inv, wv));
    EXPECT_EQ(set_stabilizer(g, pair).order(), 2u);
}

TEST(PrimeOrderSubgroups, Census) {
    EXPECT_EQ(prime_order_subgroups(cyclic(6)).size(), 2u);

    std::map<std::size_t, std::size_t> by_order;
    for (const auto& h : prime_order_subgroups(gpq(7, 3))) ++by_order[h.order()];
    EXPECT_EQ(by_order, (std::map<std::size_t, std::size_t>{{3, 7}, {7, 1}}));

    by_order.clear();
    for (const auto& h : prime_order_subgroups(sl2_17().group())) ++by_order[h.order()];
    EXPECT_EQ(by_order, (std::map<std::size_t, std::size_t>{{2, 1}, {3, 136}, {17, 18}}));
}

TEST(PrimeOrderSubgroups, MatchOracleAndCoverPrimeOrderElements) {
    for (const auto& g : {gpq(7, 3), quaternion8(), cyclic(30), direct_product(cyclic(2), cyclic(2)),
                          sl2::enumerate(modp::Prime(5)).group()}) {
        const auto subs = prime_order_subgroups(g);
        std::set<std::set<ElementId>> got;
        std::vector<int> cover(g.order(), 0);
        for (const auto& h : subs) {
            EXPECT_TRUE(oracle::is_prime(h.order()));
            got.emplace(h.elements().begin(), h.elements().end());
            for (ElementId x : h.elements())
                if (x != kIdentity) ++cover[x];
        }
        EXPECT_EQ(got.size(), subs.size());
        EXPECT_EQ(got, oracle::prime_subgroups_by_powers(g));
        for (ElementId x = 1; x < g.order(); ++x)
            EXPECT_EQ(cover[x], oracle::is_prime(g.element_order(x)) ? 1 : 0) << x;
    }
}

TEST(LeftCosets, Examples) {
    const auto c6 = cyclic(6);
    const ElementId whole[] = {0, 1, 2, 3, 4, 5};
    EXPECT_EQ(left_cosets(c6, generated_subgroup(c6, whole)).size(), 1u);
    EXPECT_EQ(left_cosets(c6, cyclic_subgroup(c6, 3)).size(), 3u);

    const auto& s = sl2_17();
    const auto sp = sl2::build_specials(s.p());
    const auto cosets = left_cosets(s.group(), cyclic_subgroup(s.group(), s.id_of(sp.T)));
    EXPECT_EQ(cosets.size(), 288u);
    std::vector<int> seen(s.order(), 0);
    ElementId last = 0;
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        EXPECT_EQ(cosets[i].size(), 17u);
        if (i > 0) EXPECT_LT(last, cosets[i].front());
        last = cosets[i].front();
        for (ElementId x : cosets[i]) ++seen[x];
    }
    for (int k : seen) EXPECT_EQ(k, 1);
}

TEST(Subgroup, RejectsNonSubgroups) {
    const auto c6 = cyclic(6);
    EXPECT_THROW(Subgroup(c6, {0, 1}), InputError);
    EXPECT_THROW(Subgroup(c6, {1, 5}), InputError);
    EXPECT_NO_THROW(Subgroup(c6, {0, 2, 4}));
}

TEST(FindPartition, Examples) {
    const auto g = gpq(7, 3);
    const auto p = find_partition(g);
    ASSERT_TRUE(p);
    std::map<std::size_t, std::size_t> by_order;
    for (const auto& b : p->blocks) ++by_order[b.order()];
    EXPECT_EQ(by_order, (std::map<std::size_t, std::size_t>{{3, 7}, {7, 1}}));
    EXPECT_NO_THROW(validate_partition(g, *p));

    const auto c7 = cyclic(7);
    const auto p7 = find_partition(c7);
    ASSERT_TRUE(p7);
    ASSERT_EQ(p7->blocks.size(), 1u);
    EXPECT_EQ(p7->blocks[0].order(), 7u);

    const auto klein = klein_from_text();
    const auto pk = find_partition(klein);
    ASSERT_TRUE(pk);
    EXPECT_EQ(pk->blocks.size(), 3u);
}

TEST(FindPartition, BlockSizesSumToOrder) {
    for (const auto& g : {gpq(7, 3), gpq(11, 5), klein_from_text(), cyclic(11), sl2::enumerate(modp::Prime(3)).group()}) {
        const auto p = find_partition(g);
        if (!p) continue;
        std::size_t total = 0;
        for (const auto& b : p->blocks) total += b.order() - 1;
        EXPECT_EQ(total, g.order() - 1);
    }
}

TEST(FindPartition, CyclicGroupIsItsOwnPartition) {
    // C6 has no partition into proper subgroups; the group itself is cyclic.
    const auto p = find_partition(cyclic(6));
    ASSERT_TRUE(p);
    ASSERT_EQ(p->blocks.size(), 1u);
    EXPECT_EQ(p->blocks[0].order(), 6u);
}

TEST(ValidatePartition, Rejects) {
    const auto c6 = cyclic(6);
    Partition bad{{Subgroup(c6, {0, 3}), Subgroup(c6, {0, 2, 4})}};
    EXPECT_THROW(validate_partition(c6, bad), InvalidPartition);
    Partition overlap{{Subgroup(c6, {0, 1, 2, 3, 4, 5}), Subgroup(c6, {0, 3})}};
    EXPECT_THROW(validate_partition(c6, overlap), InvalidPartition);
}

TEST(TableFile, RoundTrip) {
    for (const auto& g : {gpq(7, 3), quaternion8(), klein_from_text()}) {
        std::ostringstream out;
        write_table(out, g);
        std::istringstream in(out.str());
        const auto back = read_table(in);
        ASSERT_EQ(back.order(), g.order());
        for (ElementId a = 0; a < g.order(); ++a)
            for (ElementId b = 0; b < g.order(); ++b) EXPECT_EQ(back.mul(a, b), g.mul(a, b));
    }
}

TEST(TableFile, LoadFromDisk) {
    const auto path = std::filesystem::temp_directory_path() / "scharlau_klein_table.txt";
    {
        std::ofstream f(path);
        write_table(f, klein_from_text());
    }
    EXPECT_EQ(load_table(path.string()).order(), 4u);
    std::filesystem::remove(path);
    EXPECT_THROW(load_table((std::filesystem::temp_directory_path() / "no_such_table_file").string()), InputError);
}

TEST(TableFile, RejectionsCarryLineNumbers) {
    EXPECT_NE(table_error("group-table v2\n1\n0\n").find("line 1"), std::string::npos);
    EXPECT_NE(table_error("group-table v1\nx\n").find("line 2"), std::string::npos);
    // Row 2 (line 4) repeats an entry.
    EXPECT_NE(table_error("group-table v1\n3\n0 1 2\n1 1 0\n2 0 1\n").find("line 4"), std::string::npos);
    // Entry out of range on line 3.
    EXPECT_NE(table_error("group-table v1\n2\n0 2\n1 0\n").find("line 3"), std::string::npos);
    // Too few rows.
    EXPECT_FALSE(table_error("group-table v1\n2\n0 1\n").empty());
    // Latin square that is not associative (a loop of order 5).
    EXPECT_FALSE(table_error("group-table v1\n5\n"
                             "0 1 2 3 4\n"
                             "1 0 3 4 2\n"
                             "2 4 0 1 3\n"
                             "3 2 4 0 1\n"
                             "4 3 1 2 0\n")
                     .empty());
}
