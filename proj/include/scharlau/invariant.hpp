#pragma once

#include "scharlau/bigint.hpp"
#include "scharlau/groupring.hpp"
#include "scharlau/groups.hpp"
#include "scharlau/lattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace scharlau::ideal {

using groups::ElementId;
using groups::FiniteGroup;

// Streams the Z-spanning set of the Scharlau ideal: sums over left cosets gH
// of the prime-order subgroups H (or of every nontrivial subgroup, for
// cross-checking on small groups). Each support is emitted once.
class GeneratorStream {
public:
    explicit GeneratorStream(const FiniteGroup& g, bool all_subgroups = false);

    // Sorted support of the next coset, or nullopt when exhausted.
    std::optional<std::vector<ElementId>> next();
    std::size_t emitted() const { return emitted_; }

private:
    const FiniteGroup* group_;
    std::vector<groups::Subgroup> subgroups_;
    std::size_t subgroup_cursor_ = 0;
    std::vector<std::vector<ElementId>> cosets_;
    std::size_t coset_cursor_ = 0;
    std::set<std::vector<ElementId>> emitted_supports_;
    std::size_t emitted_ = 0;
};

std::vector<std::vector<ElementId>> collect_generators(const FiniteGroup& g, bool all_subgroups = false);

struct InvariantOptions {
    std::size_t max_order = 1000;
    bool all_subgroups = false;
    // Insert generators in a seeded random order instead of stream order.
    std::optional<std::uint64_t> shuffle_seed;
    bool validate_each_insert = false;
    // Called every progress_every insertions with (done, total).
    std::function<void(std::size_t, std::size_t)> progress;
    std::size_t progress_every = 10000;
};

struct InvariantStats {
    BigInt invariant;
    std::size_t generators = 0;
    std::size_t rank = 0;
    BigInt max_abs_entry;
    double seconds = 0;
    // Nonzero when the run worked modulo the prime powers of a known multiple.
    std::uint64_t certified_multiple = 0;
};

struct InvariantResult {
    InvariantStats stats;
    IdealLattice lattice;
};

// Throws OrderCap when |G| > options.max_order.
InvariantResult compute_invariant(const FiniteGroup& g, const InvariantOptions& options = {});

// Same invariant when D*e is already known to lie in I (D > 0). Left
// multiplication permutes the generators, so D*Z[G] lies in I and the answer
// is the product over l^k || D of the order of e in Z^n / (I + l^k Z^n),
// each computed in a LocalLattice. The caller is responsible for D; a wrong
// D gives a wrong answer. Throws OrderCap when |G| > options.max_order.
InvariantStats compute_invariant_modulo(const FiniteGroup& g, std::uint64_t multiple,
                                        const InvariantOptions& options = {});

std::string format_stats(const InvariantStats& stats);

struct PartitionWitness {
    ring::RingElement element;  // sum of block sums minus the group sum
    BigInt integer;             // |P| - 1
};

// Throws InvalidPartition.
PartitionWitness partition_witness(const FiniteGroup& g, const groups::Partition& partition);

// gcd of the certified members of I with the externally known bound.
BigInt invariant_from_constraints(std::span<const BigInt> members, const BigInt& divisor_bound);

}  // namespace scharlau::ideal
