#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace scharlau::groups {

using ElementId = std::uint32_t;

inline constexpr ElementId kIdentity = 0;

// A finite group given by its multiplication table. Element ids are dense,
// 0..order-1, and the identity is id 0. Immutable after construction.
class FiniteGroup {
public:
    // Validates the table (Latin square, identity row/column, associativity:
    // exhaustive up to kFullAssociativityCheck elements, sampled above).
    // Throws BadTable.
    FiniteGroup(std::size_t order, std::vector<ElementId> table,
                std::vector<std::string> labels = {});

    static constexpr std::size_t kFullAssociativityCheck = 200;
    static constexpr std::size_t kSampledTriples = 1'000'000;

    std::size_t order() const { return order_; }
    ElementId mul(ElementId a, ElementId b) const { return table_[a * order_ + b]; }
    ElementId inv(ElementId a) const { return inverse_[a]; }
    // g x g^-1
    ElementId conj(ElementId g, ElementId x) const { return mul(mul(g, x), inverse_[g]); }
    std::size_t element_order(ElementId x) const { return element_order_[x]; }
    bool is_abelian() const;

    std::string label(ElementId x) const;
    bool has_labels() const { return !labels_.empty(); }

private:
    std::size_t order_;
    std::vector<ElementId> table_;
    std::vector<ElementId> inverse_;
    std::vector<std::size_t> element_order_;
    std::vector<std::string> labels_;
};

// A subgroup as a sorted id set. The parent must outlive it.
class Subgroup {
public:
    // Throws InputError if elements are not a subgroup of parent.
    Subgroup(const FiniteGroup& parent, std::vector<ElementId> elements);

    const FiniteGroup& parent() const { return *parent_; }
    const std::vector<ElementId>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    bool contains(ElementId x) const;
    // Smallest non-identity id, or the identity for the trivial subgroup.
    ElementId canonical_generator() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }

private:
    struct Unchecked {};
    Subgroup(const FiniteGroup& parent, std::vector<ElementId> elements, Unchecked);
    friend Subgroup cyclic_subgroup(const FiniteGroup&, ElementId);
    friend Subgroup generated_subgroup(const FiniteGroup&, std::span<const ElementId>);
    friend Subgroup centralizer(const FiniteGroup&, ElementId);
    friend Subgroup set_stabilizer(const FiniteGroup&, std::span<const ElementId>);

    const FiniteGroup* parent_;
    std::vector<ElementId> elements_;
};

struct Partition {
    std::vector<Subgroup> blocks;
};

struct ConjugacyClass {
    ElementId representative;         // smallest id in the class
    std::vector<ElementId> members;   // sorted
};

// Classes sorted by representative.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);

Subgroup centralizer(const FiniteGroup& g, ElementId x);

// {h : h S h^-1 = S}. Throws InputError for empty S.
Subgroup set_stabilizer(const FiniteGroup& g, std::span<const ElementId> s);

// {h : h x h^-1 in S}, sorted. A union of cosets of the centralizer of x,
// not a subgroup in general.
std::vector<ElementId> conjugation_transporter(const FiniteGroup& g, ElementId x,
                                               std::span<const ElementId> s);

Subgroup cyclic_subgroup(const FiniteGroup& g, ElementId x);
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const ElementId> generators);

// Every subgroup of prime order exactly once, sorted by element set.
std::vector<Subgroup> prime_order_subgroups(const FiniteGroup& g);

// Every nontrivial subgroup. Exponential in the worst case; throws OrderCap
// above max_order.
std::vector<Subgroup> all_nontrivial_subgroups(const FiniteGroup& g, std::size_t max_order = 120);

// Left cosets xH as sorted id sets, ordered by smallest member.
std::vector<std::vector<ElementId>> left_cosets(const FiniteGroup& g, const Subgroup& h);

// Sorted {x h : h in H}.
std::vector<ElementId> left_coset(const FiniteGroup& g, ElementId x, const Subgroup& h);

// Sorted {c s c^-1 : s in S}.
std::vector<ElementId> conjugate_set(const FiniteGroup& g, ElementId c, std::span<const ElementId> s);

// Throws InvalidPartition.
void validate_partition(const FiniteGroup& g, const Partition& partition);

// Best-effort search for a partition into cyclic subgroups. Throws OrderCap
// above max_order.
std::optional<Partition> find_partition(const FiniteGroup& g, std::size_t max_order = 500);

// Built-in families.
FiniteGroup cyclic(std::size_t n);
FiniteGroup quaternion8();
// Z_p x| Z_q acting by x -> r x, r = h^((p-1)/q) for h the smallest
// primitive root mod p. Element (a, b) has id a*q + b. Throws BadSpec.
FiniteGroup gpq(std::uint64_t p, std::uint64_t q);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// "group-table v1" text format. Throws BadTable with a line number.
FiniteGroup read_table(std::istream& in);
FiniteGroup load_table(const std::string& path);
void write_table(std::ostream& out, const FiniteGroup& g);

}  // namespace scharlau::groups
