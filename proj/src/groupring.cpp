#include "scharlau/groupring.hpp"

#include "scharlau/error.hpp"

#include <set>
#include <sstream>

namespace scharlau::ring {

RingElement RingElement::unit(const FiniteGroup& parent, ElementId g, BigInt coefficient) {
    RingElement x(parent);
    x.add_term(g, coefficient);
    return x;
}

BigInt RingElement::coefficient(ElementId g) const {
    const auto it = terms_.find(g);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<ElementId> RingElement::support() const {
    std::vector<ElementId> out;
    out.reserve(terms_.size());
    for (const auto& [g, c] : terms_) out.push_back(g);
    return out;
}

BigInt RingElement::augmentation() const {
    BigInt sum = 0;
    for (const auto& [g, c] : terms_) sum += c;
    return sum;
}

BigInt RingElement::max_abs_coefficient() const {
    BigInt best = 0;
    for (const auto& [g, c] : terms_) best = std::max(best, abs_big(c));
    return best;
}

void RingElement::add_term(ElementId g, const BigInt& coefficient) {
    if (g >= parent_->order()) throw InputError("element id " + std::to_string(g) + " out of range");
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(g, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) terms_.erase(it);
    }
}

void RingElement::check_parent(const RingElement& rhs) const {
    if (parent_ != rhs.parent_) throw ParentMismatch("ring elements belong to different groups");
}

RingElement RingElement::operator+(const RingElement& rhs) const {
    check_parent(rhs);
    RingElement out = *this;
    for (const auto& [g, c] : rhs.terms_) out.add_term(g, c);
    return out;
}

RingElement RingElement::operator-(const RingElement& rhs) const {
    check_parent(rhs);
    RingElement out = *this;
    for (const auto& [g, c] : rhs.terms_) out.add_term(g, -c);
    return out;
}

RingElement RingElement::operator-() const { return scaled(-1); }

RingElement RingElement::operator*(const RingElement& rhs) const {
    check_parent(rhs);
    RingElement out(*parent_);
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : rhs.terms_) out.add_term(parent_->mul(a, b), x * y);
    return out;
}

RingElement RingElement::scaled(const BigInt& k) const {
    RingElement out(*parent_);
    if (k == 0) return out;
    for (const auto& [g, c] : terms_) out.terms_.emplace(g, c * k);
    return out;
}

RingElement RingElement::conjugated_by(ElementId h) const {
    RingElement out(*parent_);
    for (const auto& [g, c] : terms_) out.terms_.emplace(parent_->conj(h, g), c);
    return out;
}

std::string RingElement::render() const {
    std::ostringstream out;
    for (const auto& [g, c] : terms_) out << c << " * " << parent_->label(g) << '\n';
    return out.str();
}

RingElement set_sum(const FiniteGroup& g, std::span<const ElementId> s) {
    RingElement x(g);
    for (ElementId e : s) {
        if (x.coefficient(e) != 0) throw InputError("set_sum expects distinct elements");
        x.add_term(e, 1);
    }
    return x;
}

RingElement class_sum(const FiniteGroup& g, ElementId representative) {
    std::set<ElementId> members;
    for (ElementId h = 0; h < g.order(); ++h) members.insert(g.conj(h, representative));
    RingElement x(g);
    for (ElementId e : members) x.add_term(e, 1);
    return x;
}

std::vector<RingElement> conjugation_orbit(const RingElement& x) {
    const FiniteGroup& g = x.parent();
    std::set<RingElement> orbit;
    for (ElementId h = 0; h < g.order(); ++h) orbit.insert(x.conjugated_by(h));
    return {orbit.begin(), orbit.end()};
}

RingElement centralize(const RingElement& x) {
    RingElement sum(x.parent());
    for (const RingElement& y : conjugation_orbit(x)) sum = sum + y;
    return sum;
}

RingElement maschke(const RingElement& x) {
    const FiniteGroup& g = x.parent();
    std::map<ElementId, BigInt> acc;
    for (ElementId h = 0; h < g.order(); ++h)
        for (const auto& [e, c] : x.terms()) acc[g.conj(h, e)] += c;
    RingElement out(g);
    for (const auto& [e, c] : acc) out.add_term(e, c);
    return out;
}

std::size_t conjugation_stabilizer_order(const RingElement& x) {
    std::size_t count = 0;
    for (ElementId h = 0; h < x.parent().order(); ++h) {
        if (x.conjugated_by(h) == x) ++count;
    }
    return count;
}

bool is_central(const RingElement& x) {
    for (ElementId h = 0; h < x.parent().order(); ++h) {
        if (!(x.conjugated_by(h) == x)) return false;
    }
    return true;
}

std::vector<ClassTerm> class_decomposition(const RingElement& x,
                                           const std::vector<groups::ConjugacyClass>& classes) {
    std::vector<ClassTerm> out;
    for (const auto& cls : classes) {
        const BigInt c = x.coefficient(cls.representative);
        for (ElementId e : cls.members) {
            if (x.coefficient(e) != c) {
                throw InputError("element is not constant on the class of " +
                                 x.parent().label(cls.representative));
            }
        }
        if (c != 0) out.push_back({cls.representative, cls.members.size(), c});
    }
    return out;
}

}  // namespace scharlau::ring
