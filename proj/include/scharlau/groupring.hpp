#pragma once

#include "scharlau/bigint.hpp"
#include "scharlau/groups.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace scharlau::ring {

using groups::ElementId;
using groups::FiniteGroup;

// Element of Z[G]: a sparse map from element id to a nonzero big integer.
// The parent group must outlive the element.
class RingElement {
public:
    explicit RingElement(const FiniteGroup& parent) : parent_(&parent) {}

    static RingElement unit(const FiniteGroup& parent, ElementId g, BigInt coefficient = 1);

    const FiniteGroup& parent() const { return *parent_; }
    const std::map<ElementId, BigInt>& terms() const { return terms_; }
    BigInt coefficient(ElementId g) const;
    std::size_t support_size() const { return terms_.size(); }
    std::vector<ElementId> support() const;
    bool is_zero() const { return terms_.empty(); }
    BigInt augmentation() const;
    BigInt max_abs_coefficient() const;

    void add_term(ElementId g, const BigInt& coefficient);

    RingElement operator+(const RingElement& rhs) const;
    RingElement operator-(const RingElement& rhs) const;
    RingElement operator-() const;
    // Convolution: coefficient of g is sum over ab = g of x(a) y(b).
    RingElement operator*(const RingElement& rhs) const;
    RingElement scaled(const BigInt& k) const;

    // h x h^-1
    RingElement conjugated_by(ElementId h) const;

    // "coefficient * label" per term, ascending id.
    std::string render() const;

    friend bool operator==(const RingElement& x, const RingElement& y) {
        return x.parent_ == y.parent_ && x.terms_ == y.terms_;
    }
    friend bool operator<(const RingElement& x, const RingElement& y) { return x.terms_ < y.terms_; }

private:
    void check_parent(const RingElement& rhs) const;

    const FiniteGroup* parent_;
    std::map<ElementId, BigInt> terms_;
};

RingElement set_sum(const FiniteGroup& g, std::span<const ElementId> s);
RingElement class_sum(const FiniteGroup& g, ElementId representative);

// Distinct conjugates h x h^-1, sorted.
std::vector<RingElement> conjugation_orbit(const RingElement& x);

// Sum of the distinct conjugates of x (the centralization map).
RingElement centralize(const RingElement& x);

// Sum of h x h^-1 over all h, with multiplicity.
RingElement maschke(const RingElement& x);

// |{h : h x h^-1 = x}| computed directly.
std::size_t conjugation_stabilizer_order(const RingElement& x);

bool is_central(const RingElement& x);

struct ClassTerm {
    ElementId representative;
    std::size_t class_size;
    BigInt coefficient;
};

// Expresses a central element as a combination of class sums, ascending by
// representative; zero coefficients omitted. Throws InputError if x is not
// constant on some class.
std::vector<ClassTerm> class_decomposition(const RingElement& x,
                                           const std::vector<groups::ConjugacyClass>& classes);

}  // namespace scharlau::ring
