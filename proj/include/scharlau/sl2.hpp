#pragma once

#include "scharlau/groups.hpp"
#include "scharlau/modp.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scharlau::sl2 {

using modp::ModPElement;
using modp::Prime;

// A 2x2 matrix over Z_p with determinant 1, row-major [[a, b], [c, d]].
class Mat2 {
public:
    // Throws NotInSL2 when ad - bc != 1, ModulusMismatch on mixed moduli.
    Mat2(ModPElement a, ModPElement b, ModPElement c, ModPElement d);
    static Mat2 of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const Prime& p);
    static Mat2 identity(const Prime& p);
    static Mat2 elementary12(const ModPElement& b);  // [[1, b], [0, 1]]
    static Mat2 diagonal(const ModPElement& x);      // diag(x, 1/x)

    const ModPElement& a() const { return a_; }
    const ModPElement& b() const { return b_; }
    const ModPElement& c() const { return c_; }
    const ModPElement& d() const { return d_; }
    const Prime& modulus() const { return a_.modulus(); }

    ModPElement trace() const { return a_ + d_; }
    Mat2 operator*(const Mat2& rhs) const;
    Mat2 operator-() const;
    Mat2 inverse() const;
    Mat2 pow(std::uint64_t e) const;
    bool is_scalar() const;

    // Dense index ((a p + b) p + c) p + d.
    std::uint64_t index() const;
    std::string label() const;

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

private:
    ModPElement a_, b_, c_, d_;
};

struct SpecialElements {
    Mat2 identity;
    Mat2 neg_identity;
    Mat2 T;            // E12(1)
    Mat2 Q;            // E12(alpha)
    Mat2 V;            // companion matrix of x^2 + x + 1
    ModPElement alpha; // smallest non-residue
    std::optional<modp::LemmaSixSolution> lemma6;
    std::optional<Mat2> W;      // [[0, -1/u], [u, -1]]
    std::optional<Mat2> Delta;  // diag(u, 1/u)
};

// Requires u with u + 1/u = 1/2: throws InputError for p <= 5 and NoSolution
// when u + 1/u = 1/2 has no root mod p.
SpecialElements build_specials(const Prime& p);

// W, Delta and lemma6 are filled only when u exists. Requires odd p.
SpecialElements build_basic_specials(const Prime& p);

struct ClassLabel {
    enum class Kind { CentralPlus, CentralMinus, UnipotentT, UnipotentQ, UnipotentNegT, UnipotentNegQ, Trace };
    Kind kind;
    std::uint64_t trace = 0;  // meaningful for Kind::Trace

    std::string to_string() const;
    friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

// All p + 4 labels: +I, -I, T, Q, -T, -Q, then Trace(t) for t != +-2 ascending.
std::vector<ClassLabel> all_labels(const Prime& p);

// Conjugacy class by trace, with the unipotent split decided by the square
// class of b after conjugating m into E12(b) form.
ClassLabel classify(const Mat2& m);

// Whether t^2 - 4 is a nonzero square (class lies in a split torus).
bool is_split_trace(const ModPElement& t);

// Central 1, unipotent (p^2-1)/2, split p(p+1), non-split p(p-1).
std::uint64_t class_size(const ClassLabel& label, const Prime& p);

// Class-size total from the closed forms; equals (p-1)p(p+1).
std::uint64_t class_size_total(const Prime& p);

// SL2(Z_p) materialized as a multiplication-table group. Identity has id 0,
// the rest follow in lexicographic (a, b, c, d) order.
class Sl2Group {
public:
    const Prime& p() const { return p_; }
    const groups::FiniteGroup& group() const { return group_; }
    const Mat2& matrix(groups::ElementId id) const { return matrices_[id]; }
    groups::ElementId id_of(const Mat2& m) const;
    std::size_t order() const { return group_.order(); }

private:
    friend Sl2Group enumerate(const Prime& p, std::size_t max_order);
    Sl2Group(Prime p, groups::FiniteGroup group, std::vector<Mat2> matrices,
             std::vector<groups::ElementId> index_to_id);

    Prime p_;
    groups::FiniteGroup group_;
    std::vector<Mat2> matrices_;
    std::vector<groups::ElementId> index_to_id_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 5000;

// Throws OrderCap when (p-1)p(p+1) > max_order.
Sl2Group enumerate(const Prime& p, std::size_t max_order = kDefaultEnumerationCap);

std::uint64_t sl2_order(const Prime& p);

// antidiag(a, a) with a^2 = -1; conjugates V to V^-1. Requires p = 1 mod 4.
Mat2 lemma5_conjugator(const Prime& p);

}  // namespace scharlau::sl2
