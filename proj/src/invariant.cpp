#include "scharlau/invariant.hpp"

#include "scharlau/error.hpp"
#include "scharlau/local_lattice.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

namespace scharlau::ideal {

GeneratorStream::GeneratorStream(const FiniteGroup& g, bool all_subgroups)
    : group_(&g),
      subgroups_(all_subgroups ? groups::all_nontrivial_subgroups(g) : groups::prime_order_subgroups(g)) {}

std::optional<std::vector<ElementId>> GeneratorStream::next() {
    for (;;) {
        if (coset_cursor_ < cosets_.size()) {
            std::vector<ElementId> support = std::move(cosets_[coset_cursor_++]);
            if (!emitted_supports_.insert(support).second) continue;
            ++emitted_;
            return support;
        }
        if (subgroup_cursor_ >= subgroups_.size()) return std::nullopt;
        cosets_ = groups::left_cosets(*group_, subgroups_[subgroup_cursor_++]);
        coset_cursor_ = 0;
    }
}

std::vector<std::vector<ElementId>> collect_generators(const FiniteGroup& g, bool all_subgroups) {
    GeneratorStream stream(g, all_subgroups);
    std::vector<std::vector<ElementId>> out;
    while (auto support = stream.next()) out.push_back(std::move(*support));
    return out;
}

InvariantResult compute_invariant(const FiniteGroup& g, const InvariantOptions& options) {
    if (g.order() > options.max_order) {
        throw OrderCap("group order " + std::to_string(g.order()) + " exceeds the cap " +
                       std::to_string(options.max_order) + " (raise it with --max-order)");
    }
    const auto start = std::chrono::steady_clock::now();
    IdealLattice lattice(g.order(), options.validate_each_insert);

    auto generators = collect_generators(g, options.all_subgroups);
    if (options.shuffle_seed) {
        std::mt19937_64 rng(*options.shuffle_seed);
        std::shuffle(generators.begin(), generators.end(), rng);
    }
    std::size_t done = 0;
    for (const auto& support : generators) {
        SparseRow row;
        row.reserve(support.size());
        for (ElementId x : support) row.emplace_back(lattice.column_of(x), 1);
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        lattice.insert_row(std::move(row));
        ++done;
        if (options.progress && done % options.progress_every == 0) options.progress(done, generators.size());
    }

    InvariantStats stats;
    stats.invariant = lattice.invariant();
    stats.generators = generators.size();
    stats.rank = lattice.rank();
    stats.max_abs_entry = lattice.max_abs_entry();
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(stats), std::move(lattice)};
}

namespace {

std::vector<std::pair<std::uint32_t, unsigned>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint32_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        out.emplace_back(static_cast<std::uint32_t>(d), k);
    }
    if (n > 1) {
        if (n >= (1ull << 31)) throw InputError("prime factor of the multiple exceeds 2^31");
        out.emplace_back(static_cast<std::uint32_t>(n), 1);
    }
    return out;
}

}  // namespace

InvariantStats compute_invariant_modulo(const FiniteGroup& g, std::uint64_t multiple, const InvariantOptions& options) {
    if (g.order() > options.max_order) {
        throw OrderCap("group order " + std::to_string(g.order()) + " exceeds the cap " +
                       std::to_string(options.max_order) + " (raise it with --max-order)");
    }
    if (multiple == 0) throw InputError("the certified multiple must be positive");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = g.order();
    auto generators = collect_generators(g, options.all_subgroups);
    if (options.shuffle_seed) {
        std::mt19937_64 rng(*options.shuffle_seed);
        std::shuffle(generators.begin(), generators.end(), rng);
    }
    std::vector<std::vector<std::uint32_t>> columns;
    columns.reserve(generators.size());
    for (const auto& support : generators) {
        std::vector<std::uint32_t> row;
        row.reserve(support.size());
        for (ElementId x : support) row.push_back(x == groups::kIdentity ? static_cast<std::uint32_t>(n - 1) : x - 1);
        columns.push_back(std::move(row));
    }

    InvariantStats stats;
    stats.invariant = 1;
    stats.generators = generators.size();
    stats.rank = n;
    stats.certified_multiple = multiple;
    const auto factors = factor(multiple);
    std::size_t done = 0;
    const std::size_t total = columns.size() * factors.size();
    for (const auto& [prime, exponent] : factors) {
        LocalLattice local(n, prime, exponent);
        for (const auto& row : columns) {
            // Once e itself is in the image, this prime contributes nothing.
            if (local.last_unit_order() == 1) break;
            local.insert_support(row);
            ++done;
            if (options.progress && done % options.progress_every == 0) options.progress(done, total);
        }
        stats.invariant *= local.last_unit_order();
        stats.max_abs_entry = std::max(stats.max_abs_entry, BigInt(local.max_entry()));
    }
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

std::string format_stats(const InvariantStats& stats) {
    std::ostringstream out;
    out << "invariant: " << stats.invariant << '\n'
        << "generators: " << stats.generators << '\n'
        << "rank: " << stats.rank << '\n'
        << "max |entry|: " << stats.max_abs_entry << '\n';
    if (stats.certified_multiple != 0) {
        out << "method: modular, using the certified multiple " << stats.certified_multiple << '\n';
    }
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "wall time: " << stats.seconds << " s\n";
    return out.str();
}

PartitionWitness partition_witness(const FiniteGroup& g, const groups::Partition& partition) {
    groups::validate_partition(g, partition);
    ring::RingElement element(g);
    for (const groups::Subgroup& block : partition.blocks) {
        element = element + ring::set_sum(g, block.elements());
    }
    std::vector<ElementId> all(g.order());
    std::iota(all.begin(), all.end(), ElementId{0});
    element = element - ring::set_sum(g, all);
    const BigInt integer = BigInt(partition.blocks.size()) - 1;
    if (!(element == ring::RingElement::unit(g, groups::kIdentity, integer))) {
        throw CheckFailure("partition witness does not reduce to (|P|-1) e");
    }
    return {std::move(element), integer};
}

BigInt invariant_from_constraints(std::span<const BigInt> members, const BigInt& divisor_bound) {
    BigInt g = abs_big(divisor_bound);
    for (const BigInt& m : members) g = boost::multiprecision::gcd(g, abs_big(m));
    return g;
}

}  // namespace scharlau::ideal
