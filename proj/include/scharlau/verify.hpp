#pragma once

#include "scharlau/bigint.hpp"
#include "scharlau/groupring.hpp"
#include "scharlau/sl2.hpp"

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scharlau::verify {

using groups::ElementId;
using sl2::ClassLabel;
using sl2::Prime;
using sl2::Sl2Group;

enum class Mode { Direct, Symbolic };

using ClassCoefficients = std::map<ClassLabel, BigInt>;

// Outcome of checking
//   (p-1)p(p+1) e = 2(p+1) c(<V>) - 4 c(W<V>) + 4(p-1) c(Delta<T>)
// together with its quarter (p+1)/2 c(<V>) - c(W<V>) + (p-1) c(Delta<T>).
struct IdentityReport {
    std::uint64_t p = 0;
    Mode mode = Mode::Symbolic;
    std::optional<modp::LemmaSixSolution> lemma6;
    BigInt lhs;          // (p-1)p(p+1)
    BigInt quarter_lhs;  // (p-1)p(p+1)/4
    ClassCoefficients c_V;        // c(<V>)
    ClassCoefficients c_WV;       // c(W<V>)
    ClassCoefficients c_DeltaT;   // c(Delta<T>)
    ClassCoefficients rhs_class_decomposition;
    ClassCoefficients quarter_decomposition;
    bool lemma_tables_match = false;  // the three tables above match the lemma formulas
    bool passed = false;
    bool quarter_passed = false;
    std::optional<std::string> failure;  // first differing coefficient
};

// One weighted coset sum: coefficient * sum(rep * <generator>).
struct CertificateLine {
    BigInt coefficient;
    ElementId subgroup_generator;   // smallest non-identity id of the subgroup
    ElementId coset_representative; // smallest id of the coset

    friend bool operator==(const CertificateLine&, const CertificateLine&) = default;
};

struct Certificate {
    std::uint64_t p = 0;
    std::size_t group_order = 0;
    BigInt lhs;
    std::vector<CertificateLine> lines;  // sorted by (generator, representative)
};

struct DirectVerification {
    IdentityReport report;
    Certificate certificate;
};

// Evaluates the identity in Z[SL2(Z_p)] by explicit orbit sums. The group
// must be SL2 over a prime p = 17 mod 60.
DirectVerification verify_direct(const Sl2Group& group);

// Substitutes the lemma decompositions without enumerating the group. Throws
// InputError unless p = 17 mod 60 and NoSolution if u does not exist.
IdentityReport verify_symbolic(const Prime& p);

std::string render_report(const IdentityReport& report);

std::string render_certificate(const Certificate& certificate, const Sl2Group& group);
// Throws InputError on malformed input.
Certificate parse_certificate(std::istream& in, const Sl2Group& group);

struct CertificateCheck {
    bool passed = false;
    ring::RingElement sum;
    std::string sum_rendered;
    std::vector<std::string> problems;
};

// Re-evaluates the weighted coset sums, checks that each support is a left
// coset of a conjugate of <V> or <T>, and compares the sum to lhs * e.
CertificateCheck check_certificate(const Certificate& certificate, const Sl2Group& group);

struct LemmaCheck {
    int lemma = 0;
    bool passed = false;
    std::vector<std::string> details;
};

LemmaCheck check_lemma1(const Sl2Group& group);
LemmaCheck check_lemma2(const Sl2Group& group);
// Throws OrderCap above 500 elements.
LemmaCheck check_lemma3(const groups::FiniteGroup& group);
// D diagonal and not +-I.
LemmaCheck check_lemma4(const Sl2Group& group, const sl2::Mat2& d);
// Needs p = 1 mod 4 and p = 2 mod 3 (V in the order p+1 torus).
LemmaCheck check_lemma5(const Sl2Group& group);
// The group is optional; with it, conjugacy of WV, WV^-1 and Delta is
// confirmed by orbit search as well as by trace.
LemmaCheck check_lemma6(const Prime& p, const Sl2Group* group = nullptr);
LemmaCheck check_lemma7(const Sl2Group& group);

// Whether each lemma's hypotheses hold at p, with the reason if not.
std::optional<std::string> lemma_inapplicable(int lemma, const Prime& p, std::size_t max_order);

// Decomposition of c(<V>) as (identity coefficient, cl(V) coefficient,
// anything else), for any odd p.
struct Lemma5Decomposition {
    BigInt identity_coefficient;
    BigInt class_V_coefficient;
    std::size_t other_terms = 0;
    std::size_t stabilizer_order = 0;
};
Lemma5Decomposition lemma5_decomposition(const Sl2Group& group);

// Default diagonal for check_lemma4: Delta when u exists, else diag(2, 1/2).
sl2::Mat2 default_lemma4_diagonal(const Prime& p);

}  // namespace scharlau::verify
