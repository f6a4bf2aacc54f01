#include "scharlau/verify.hpp"

#include "scharlau/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace scharlau::verify {

namespace {

using groups::FiniteGroup;
using ring::RingElement;
using sl2::Mat2;
using K = ClassLabel::Kind;

ClassLabel trace_label(std::uint64_t t) { return {K::Trace, t}; }

// Label -> coefficient for a central element, via the SL2 classification of
// each class representative.
ClassCoefficients decompose(const RingElement& x, const Sl2Group& group,
                            const std::vector<groups::ConjugacyClass>& classes) {
    ClassCoefficients out;
    for (const auto& term : ring::class_decomposition(x, classes)) {
        out[sl2::classify(group.matrix(term.representative))] += term.coefficient;
    }
    return out;
}

std::string render_coefficients(const ClassCoefficients& c) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [label, value] : c) {
        if (!first) out << " + ";
        first = false;
        out << value << " * cl(" << label.to_string() << ")";
    }
    if (first) out << "0";
    return out.str();
}

// Predicted class tables, using cl(Delta) = cl(WV).
struct LemmaTables {
    ClassCoefficients c_V, c_WV, c_DeltaT;
};

LemmaTables lemma_tables(const BigInt& p, std::uint64_t p_minus_one, std::uint64_t half) {
    LemmaTables t;
    t.c_V[{K::CentralPlus}] = (p - 1) * p / 2;
    t.c_V[trace_label(p_minus_one)] = 1;
    t.c_WV[trace_label(p_minus_one)] = (p + 1) / 2;
    t.c_WV[trace_label(half)] = p - 1;
    t.c_DeltaT[trace_label(half)] = 1;
    return t;
}

// a*x + b*y + c*z, label-wise, keeping zero entries for every key seen.
ClassCoefficients weighted_sum(const BigInt& a, const ClassCoefficients& x, const BigInt& b,
                               const ClassCoefficients& y, const BigInt& c, const ClassCoefficients& z) {
    ClassCoefficients out;
    for (const auto& [k, v] : x) out[k] += a * v;
    for (const auto& [k, v] : y) out[k] += b * v;
    for (const auto& [k, v] : z) out[k] += c * v;
    return out;
}

std::optional<std::string> first_mismatch(const ClassCoefficients& got, const BigInt& lhs) {
    for (const auto& [label, value] : got) {
        const BigInt expected = label.kind == K::CentralPlus ? lhs : BigInt(0);
        if (value != expected) {
            return "coefficient of cl(" + label.to_string() + ") is " + value.str() + ", expected " +
                   expected.str();
        }
    }
    if (!got.count({K::CentralPlus}) && lhs != 0) return "identity coefficient missing";
    return std::nullopt;
}

void require_17_mod_60(const Prime& p) {
    if (!p.is_17_mod_60()) {
        throw InputError("p = " + std::to_string(p.value()) + " is not 17 mod 60");
    }
}

// Distinct conjugates of the coset rep*H, each a left coset of a conjugate of
// H; returned as (generator, representative) pairs.
std::vector<std::pair<ElementId, ElementId>> conjugate_cosets(const FiniteGroup& g, ElementId rep,
                                                              const groups::Subgroup& h) {
    const auto coset = groups::left_coset(g, rep, h);
    std::set<std::pair<ElementId, ElementId>> out;
    std::set<std::vector<ElementId>> seen;
    for (ElementId x = 0; x < g.order(); ++x) {
        auto conj = groups::conjugate_set(g, x, coset);
        if (!seen.insert(conj).second) continue;
        const auto sub = groups::conjugate_set(g, x, h.elements());
        out.emplace(sub[1], conj.front());
    }
    return {out.begin(), out.end()};
}

}  // namespace

DirectVerification verify_direct(const Sl2Group& group) {
    const Prime& p = group.p();
    require_17_mod_60(p);
    const FiniteGroup& g = group.group();
    const auto specials = sl2::build_specials(p);
    const auto classes = groups::conjugacy_classes(g);
    const BigInt pb = p.value();

    const ElementId v = group.id_of(specials.V);
    const ElementId w = group.id_of(*specials.W);
    const ElementId delta = group.id_of(*specials.Delta);
    const ElementId t = group.id_of(specials.T);
    const groups::Subgroup hv = groups::cyclic_subgroup(g, v);
    const groups::Subgroup ht = groups::cyclic_subgroup(g, t);

    const RingElement s_v = ring::set_sum(g, hv.elements());
    const RingElement s_wv = ring::set_sum(g, groups::left_coset(g, w, hv));
    const RingElement s_dt = ring::set_sum(g, groups::left_coset(g, delta, ht));
    const RingElement c_v = ring::centralize(s_v);
    const RingElement c_wv = ring::centralize(s_wv);
    const RingElement c_dt = ring::centralize(s_dt);

    const BigInt k_v = 2 * (pb + 1), k_wv = -4, k_dt = 4 * (pb - 1);
    const RingElement rhs = c_v.scaled(k_v) + c_wv.scaled(k_wv) + c_dt.scaled(k_dt);
    const RingElement quarter = c_v.scaled((pb + 1) / 2) - c_wv + c_dt.scaled(pb - 1);

    IdentityReport report;
    report.p = p.value();
    report.mode = Mode::Direct;
    report.lemma6 = specials.lemma6;
    report.lhs = (pb - 1) * pb * (pb + 1);
    report.quarter_lhs = report.lhs / 4;
    report.c_V = decompose(c_v, group, classes);
    report.c_WV = decompose(c_wv, group, classes);
    report.c_DeltaT = decompose(c_dt, group, classes);

    const std::uint64_t half = specials.lemma6->half.residue();
    const LemmaTables expected = lemma_tables(pb, p.value() - 1, half);
    report.lemma_tables_match = report.c_V == expected.c_V && report.c_WV == expected.c_WV &&
                                report.c_DeltaT == expected.c_DeltaT;

    report.rhs_class_decomposition = decompose(rhs, group, classes);
    report.quarter_decomposition = decompose(quarter, group, classes);
    // Keep the classes the identity cancels on visible with coefficient 0.
    for (const ClassLabel& label : {ClassLabel{K::CentralPlus}, trace_label(p.value() - 1), trace_label(half)}) {
        report.rhs_class_decomposition.try_emplace(label, 0);
        report.quarter_decomposition.try_emplace(label, 0);
    }

    const RingElement lhs_e = RingElement::unit(g, groups::kIdentity, report.lhs);
    report.passed = rhs == lhs_e;
    report.quarter_passed = quarter == RingElement::unit(g, groups::kIdentity, report.quarter_lhs) &&
                            report.lhs % 4 == 0;
    if (!report.passed) report.failure = first_mismatch(report.rhs_class_decomposition, report.lhs);

    Certificate cert;
    cert.p = p.value();
    cert.group_order = g.order();
    cert.lhs = report.lhs;
    std::map<std::pair<ElementId, ElementId>, BigInt> merged;
    for (const auto& key : conjugate_cosets(g, groups::kIdentity, hv)) merged[key] += k_v;
    for (const auto& key : conjugate_cosets(g, w, hv)) merged[key] += k_wv;
    for (const auto& key : conjugate_cosets(g, delta, ht)) merged[key] += k_dt;
    for (const auto& [key, coefficient] : merged) {
        if (coefficient != 0) cert.lines.push_back({coefficient, key.first, key.second});
    }
    return {std::move(report), std::move(cert)};
}

IdentityReport verify_symbolic(const Prime& p) {
    require_17_mod_60(p);
    const auto solution = modp::solve_u(p);
    if (!solution) throw NoSolution("u + 1/u = 1/2 has no solution mod " + std::to_string(p.value()));
    const std::uint64_t half = solution->half.residue();
    const modp::ModPElement two(2, p);
    if (solution->half == two || solution->half == -two) {
        throw CoefficientMismatch("trace(Delta) = +-2 at p = " + std::to_string(p.value()));
    }
    // trace(V) = -1 must differ from trace(Delta) for the classes to be distinct.
    if (half == p.value() - 1) throw CoefficientMismatch("cl(V) and cl(Delta) coincide");

    const BigInt pb = p.value();
    IdentityReport report;
    report.p = p.value();
    report.mode = Mode::Symbolic;
    report.lemma6 = solution;
    report.lhs = (pb - 1) * pb * (pb + 1);
    report.quarter_lhs = report.lhs / 4;
    const LemmaTables tables = lemma_tables(pb, p.value() - 1, half);
    report.c_V = tables.c_V;
    report.c_WV = tables.c_WV;
    report.c_DeltaT = tables.c_DeltaT;
    report.lemma_tables_match = true;
    report.rhs_class_decomposition =
        weighted_sum(2 * (pb + 1), tables.c_V, -4, tables.c_WV, 4 * (pb - 1), tables.c_DeltaT);
    report.quarter_decomposition =
        weighted_sum((pb + 1) / 2, tables.c_V, -1, tables.c_WV, pb - 1, tables.c_DeltaT);
    report.failure = first_mismatch(report.rhs_class_decomposition, report.lhs);
    report.passed = !report.failure;
    report.quarter_passed =
        report.lhs % 4 == 0 && !first_mismatch(report.quarter_decomposition, report.quarter_lhs);
    return report;
}

std::string render_report(const IdentityReport& r) {
    std::ostringstream out;
    out << "identity check (" << (r.mode == Mode::Direct ? "direct" : "symbolic") << "), p = " << r.p << '\n';
    out << "lhs = (p-1)p(p+1) = " << r.lhs << '\n';
    if (r.lemma6) {
        out << "u = " << r.lemma6->u << ", 1/u = " << r.lemma6->u_inv << ", 1/2 = " << r.lemma6->half << '\n';
    }
    out << "c(<V>)      = " << render_coefficients(r.c_V) << '\n';
    out << "c(W<V>)     = " << render_coefficients(r.c_WV) << '\n';
    out << "c(Delta<T>) = " << render_coefficients(r.c_DeltaT) << '\n';
    out << "lemma tables: " << (r.lemma_tables_match ? "match" : "MISMATCH") << '\n';
    out << "rhs = 2(p+1) c(<V>) - 4 c(W<V>) + 4(p-1) c(Delta<T>):\n";
    for (const auto& [label, value] : r.rhs_class_decomposition) {
        out << "  cl(" << label.to_string() << "): " << value << '\n';
    }
    out << "identity: " << (r.passed ? "PASS" : "FAIL") << " (rhs = " << r.lhs << " e)\n";
    if (r.failure) out << "  first difference: " << *r.failure << '\n';
    out << "quarter identity: " << (r.quarter_passed ? "PASS" : "FAIL")
        << " ((p+1)/2 c(<V>) - c(W<V>) + (p-1) c(Delta<T>) = " << r.quarter_lhs << " e)\n";
    return out.str();
}

std::string render_certificate(const Certificate& c, const Sl2Group& group) {
    std::ostringstream out;
    out << "scharlau-certificate v1\n";
    out << "p = " << c.p << '\n';
    out << "|G| = " << c.group_order << '\n';
    out << "identity: (p-1)p(p+1) e = 2(p+1) c(<V>) - 4 c(W<V>) + 4(p-1) c(Delta<T>)\n";
    out << "terms = " << c.lines.size() << '\n';
    for (const auto& line : c.lines) {
        out << line.coefficient << "  " << group.matrix(line.subgroup_generator).label() << "  "
            << group.matrix(line.coset_representative).label() << '\n';
    }
    out << "SUM = (p-1)p(p+1) · e = " << c.lhs << " · e  VERIFIED\n";
    return out.str();
}

namespace {

Mat2 parse_matrix(const std::string& text, const Prime& p, std::size_t line_no) {
    std::int64_t a, b, c, d;
    char tail = 0;
    if (std::sscanf(text.c_str(), "[[%ld,%ld],[%ld,%ld]]%c", &a, &b, &c, &d, &tail) != 4) {
        throw InputError("certificate line " + std::to_string(line_no) + ": bad matrix '" + text + "'");
    }
    return Mat2::of(a, b, c, d, p);
}

template <class T>
T parse_field(const std::string& line, const std::string& prefix, std::size_t line_no) {
    if (line.rfind(prefix, 0) != 0) {
        throw InputError("certificate line " + std::to_string(line_no) + ": expected '" + prefix + "'");
    }
    std::istringstream ss(line.substr(prefix.size()));
    T value{};
    if (!(ss >> value)) throw InputError("certificate line " + std::to_string(line_no) + ": bad number");
    return value;
}

}  // namespace

Certificate parse_certificate(std::istream& in, const Sl2Group& group) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    if (lines.size() < 6 || lines[0] != "scharlau-certificate v1") {
        throw InputError("not a certificate (bad header)");
    }
    Certificate c;
    c.p = parse_field<std::uint64_t>(lines[1], "p = ", 2);
    c.group_order = parse_field<std::size_t>(lines[2], "|G| = ", 3);
    if (c.p != group.p().value() || c.group_order != group.order()) {
        throw InputError("certificate is for a different group");
    }
    const std::size_t terms = parse_field<std::size_t>(lines[4], "terms = ", 5);
    if (lines.size() != terms + 6) throw InputError("certificate term count does not match its body");
    for (std::size_t i = 0; i < terms; ++i) {
        std::istringstream ss(lines[5 + i]);
        std::string coeff, gen, rep, extra;
        if (!(ss >> coeff >> gen >> rep) || (ss >> extra)) {
            throw InputError("certificate line " + std::to_string(6 + i) + ": expected 3 fields");
        }
        CertificateLine line{BigInt(coeff), group.id_of(parse_matrix(gen, group.p(), 6 + i)),
                             group.id_of(parse_matrix(rep, group.p(), 6 + i))};
        c.lines.push_back(std::move(line));
    }
    const std::string& footer = lines.back();
    const std::string prefix = "SUM = (p-1)p(p+1) · e = ";
    if (footer.rfind(prefix, 0) != 0) throw InputError("certificate footer malformed");
    std::istringstream ss(footer.substr(prefix.size()));
    std::string lhs;
    ss >> lhs;
    c.lhs = BigInt(lhs);
    return c;
}

CertificateCheck check_certificate(const Certificate& c, const Sl2Group& group) {
    const FiniteGroup& g = group.group();
    const auto specials = sl2::build_basic_specials(group.p());
    const auto hv = groups::cyclic_subgroup(g, group.id_of(specials.V));
    const auto ht = groups::cyclic_subgroup(g, group.id_of(specials.T));
    std::set<std::vector<ElementId>> allowed;
    for (ElementId x = 0; x < g.order(); ++x) {
        allowed.insert(groups::conjugate_set(g, x, hv.elements()));
        allowed.insert(groups::conjugate_set(g, x, ht.elements()));
    }

    CertificateCheck check{false, RingElement(g), {}, {}};
    std::map<ElementId, BigInt> acc;
    for (std::size_t i = 0; i < c.lines.size(); ++i) {
        const auto& line = c.lines[i];
        if (i > 0) {
            const auto& prev = c.lines[i - 1];
            if (std::tie(prev.subgroup_generator, prev.coset_representative) >=
                std::tie(line.subgroup_generator, line.coset_representative)) {
                check.problems.push_back("line " + std::to_string(i) + " out of order");
            }
        }
        const auto h = groups::cyclic_subgroup(g, line.subgroup_generator);
        if (h.order() < 2) {
            check.problems.push_back("line " + std::to_string(i) + ": trivial subgroup");
            continue;
        }
        if (h.canonical_generator() != line.subgroup_generator) {
            check.problems.push_back("line " + std::to_string(i) + ": generator not canonical");
        }
        if (!allowed.count(h.elements())) {
            check.problems.push_back("line " + std::to_string(i) + ": subgroup not conjugate to <V> or <T>");
        }
        const auto coset = groups::left_coset(g, line.coset_representative, h);
        if (coset.front() != line.coset_representative) {
            check.problems.push_back("line " + std::to_string(i) + ": representative not canonical");
        }
        for (ElementId x : coset) acc[x] += line.coefficient;
    }
    for (const auto& [x, v] : acc) check.sum.add_term(x, v);
    check.sum_rendered = check.sum.render();
    const RingElement expected = RingElement::unit(g, groups::kIdentity, c.lhs);
    const BigInt pb = c.p;
    if (c.lhs != (pb - 1) * pb * (pb + 1)) check.problems.push_back("lhs is not (p-1)p(p+1)");
    if (check.sum_rendered != expected.render()) check.problems.push_back("sum differs from lhs * e");
    check.passed = check.problems.empty();
    return check;
}

LemmaCheck check_lemma1(const Sl2Group& group) {
    LemmaCheck out{1, true, {}};
    const auto classes = groups::conjugacy_classes(group.group());
    const std::uint64_t p = group.p().value();
    out.details.push_back("classes: " + std::to_string(classes.size()) + " (p+4 = " + std::to_string(p + 4) + ")");
    if (classes.size() != p + 4) out.passed = false;
    std::set<ClassLabel> labels;
    std::size_t disagreements = 0;
    for (const auto& cls : classes) {
        const ClassLabel label = sl2::classify(group.matrix(cls.representative));
        labels.insert(label);
        for (ElementId x : cls.members) {
            if (!(sl2::classify(group.matrix(x)) == label)) ++disagreements;
        }
    }
    if (labels.size() != classes.size()) {
        out.passed = false;
        out.details.push_back("distinct orbits share a trace label");
    }
    const auto predicted = sl2::all_labels(group.p());
    if (labels != std::set<ClassLabel>(predicted.begin(), predicted.end())) {
        out.passed = false;
        out.details.push_back("label set differs from the predicted p+4 labels");
    }
    out.details.push_back("classification disagreements with orbits: " + std::to_string(disagreements));
    if (disagreements) out.passed = false;
    return out;
}

LemmaCheck check_lemma2(const Sl2Group& group) {
    LemmaCheck out{2, true, {}};
    const auto& p = group.p();
    for (const auto& cls : groups::conjugacy_classes(group.group())) {
        const ClassLabel label = sl2::classify(group.matrix(cls.representative));
        const std::uint64_t predicted = sl2::class_size(label, p);
        if (cls.members.size() != predicted) {
            out.passed = false;
            out.details.push_back("cl(" + label.to_string() + ") has " + std::to_string(cls.members.size()) +
                                  " elements, predicted " + std::to_string(predicted));
        }
    }
    const std::uint64_t v = p.value();
    bool has_order_p_plus_1 = false;
    for (ElementId x = 0; x < group.order(); ++x) {
        if (group.group().element_order(x) == v + 1) {
            has_order_p_plus_1 = true;
            break;
        }
    }
    out.details.push_back("split classes p(p+1) = " + std::to_string(v * (v + 1)) + ", non-split p(p-1) = " +
                          std::to_string(v * (v - 1)) + ", unipotent (p^2-1)/2 = " +
                          std::to_string((v * v - 1) / 2));
    out.details.push_back(std::string("element of order p+1: ") + (has_order_p_plus_1 ? "yes" : "no"));
    if (!has_order_p_plus_1) out.passed = false;
    if (out.passed) out.details.push_back("all class sizes match");
    return out;
}

LemmaCheck check_lemma3(const FiniteGroup& g) {
    if (g.order() > 500) throw OrderCap("Lemma 3 scan is capped at |G| <= 500");
    LemmaCheck out{3, true, {}};
    const auto classes = groups::conjugacy_classes(g);
    std::vector<std::size_t> class_of(g.order());
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (ElementId x : classes[i].members) class_of[x] = i;
    std::size_t contained = 0;
    for (const auto& h : groups::prime_order_subgroups(g)) {
        for (const auto& coset : groups::left_cosets(g, h)) {
            const std::size_t k = class_of[coset.front()];
            if (!std::all_of(coset.begin(), coset.end(), [&](ElementId x) { return class_of[x] == k; })) continue;
            ++contained;
            // The conjugates of the coset are cosets of conjugates of H and
            // must cover the class.
            std::vector<bool> covered(g.order(), false);
            for (ElementId x = 0; x < g.order(); ++x)
                for (ElementId y : groups::conjugate_set(g, x, coset)) covered[y] = true;
            for (ElementId y : classes[k].members) {
                if (!covered[y]) {
                    out.passed = false;
                    out.details.push_back("class of " + g.label(classes[k].representative) +
                                          " not covered by conjugates of a contained coset");
                    break;
                }
            }
        }
    }
    out.details.push_back("cosets contained in a class: " + std::to_string(contained));
    return out;
}

LemmaCheck check_lemma4(const Sl2Group& group, const Mat2& d) {
    const Prime& p = group.p();
    if (!d.b().is_zero() || !d.c().is_zero() || d.is_scalar()) {
        throw InputError("Lemma 4 needs a diagonal matrix other than +-I");
    }
    LemmaCheck out{4, true, {}};
    const FiniteGroup& g = group.group();
    const ElementId did = group.id_of(d);
    const auto ht = groups::cyclic_subgroup(g, group.id_of(Mat2::elementary12(modp::ModPElement(1, p))));
    const RingElement x = ring::set_sum(g, groups::left_coset(g, did, ht));
    const auto orbit = ring::conjugation_orbit(x);
    RingElement c(g);
    for (const auto& y : orbit) c = c + y;
    const bool equal = c == ring::class_sum(g, did);
    out.details.push_back("D = " + d.label() + ": c(D<T>) " + (equal ? "=" : "!=") + " cl(D)");
    out.details.push_back("distinct conjugates of D<T>: " + std::to_string(orbit.size()) + " (p+1 = " +
                          std::to_string(p.value() + 1) + ")");
    out.passed = equal && orbit.size() == p.value() + 1;
    return out;
}

Lemma5Decomposition lemma5_decomposition(const Sl2Group& group) {
    const FiniteGroup& g = group.group();
    const auto specials = sl2::build_basic_specials(group.p());
    const ElementId v = group.id_of(specials.V);
    const auto hv = groups::cyclic_subgroup(g, v);
    const RingElement c = ring::centralize(ring::set_sum(g, hv.elements()));
    const auto cls = ring::class_sum(g, v);
    Lemma5Decomposition out;
    out.identity_coefficient = c.coefficient(groups::kIdentity);
    out.class_V_coefficient = c.coefficient(v);
    const RingElement rest = c - RingElement::unit(g, groups::kIdentity, out.identity_coefficient) -
                             cls.scaled(out.class_V_coefficient);
    out.other_terms = rest.support_size();
    out.stabilizer_order = groups::set_stabilizer(g, hv.elements()).order();
    return out;
}

LemmaCheck check_lemma5(const Sl2Group& group) {
    const Prime& p = group.p();
    const std::uint64_t v = p.value();
    if (v % 4 != 1 || v % 3 != 2) {
        throw InputError("Lemma 5 needs p = 1 mod 4 and 3 | p+1; p = " + std::to_string(v) + " does not qualify");
    }
    LemmaCheck out{5, true, {}};
    const auto d = lemma5_decomposition(group);
    const BigInt pb = v;
    const BigInt expected_identity = (pb - 1) * pb / 2;
    out.details.push_back("c(<V>) = " + d.identity_coefficient.str() + " e + " + d.class_V_coefficient.str() +
                          " cl(V), other terms: " + std::to_string(d.other_terms));
    out.details.push_back("|N(<V>)| = " + std::to_string(d.stabilizer_order) + " (2(p+1) = " +
                          std::to_string(2 * (v + 1)) + ")");
    if (d.identity_coefficient != expected_identity || d.class_V_coefficient != 1 || d.other_terms != 0 ||
        d.stabilizer_order != 2 * (v + 1)) {
        out.passed = false;
    }
    const auto specials = sl2::build_basic_specials(p);
    const Mat2 m = sl2::lemma5_conjugator(p);
    const bool swaps = m * specials.V * m.inverse() == specials.V.inverse();
    out.details.push_back("antidiag(a, a) = " + m.label() + " conjugates V to V^-1: " + (swaps ? "yes" : "no"));
    if (!swaps) out.passed = false;
    return out;
}

LemmaCheck check_lemma6(const Prime& p, const Sl2Group* group) {
    LemmaCheck out{6, true, {}};
    const auto specials = sl2::build_specials(p);
    const auto& s = *specials.lemma6;
    out.details.push_back("u = " + std::to_string(s.u.residue()) + ", u^-1 = " + std::to_string(s.u_inv.residue()) +
                          ", half = " + std::to_string(s.half.residue()));
    const Mat2& w = *specials.W;
    const Mat2& v = specials.V;
    const Mat2 wv = w * v;
    const Mat2 wv_inv = w * v.inverse();
    const modp::ModPElement two(2, p);
    const bool w_order3 = w.pow(3) == specials.identity && !(w == specials.identity);
    const bool traces = wv.trace() == s.half && wv_inv.trace() == s.half && specials.Delta->trace() == s.half;
    const bool not_pm2 = !(s.half == two) && !(s.half == -two);
    out.details.push_back("W = " + w.label() + ", order 3: " + (w_order3 ? "yes" : "no"));
    out.details.push_back("tr(WV) = tr(WV^-1) = tr(Delta) = 1/2: " + std::string(traces ? "yes" : "no"));
    out.details.push_back(std::string("1/2 != +-2: ") + (not_pm2 ? "yes" : "no"));
    out.passed = w_order3 && traces && not_pm2 && sl2::classify(wv) == sl2::classify(*specials.Delta) &&
                 sl2::classify(wv_inv) == sl2::classify(*specials.Delta);
    if (group) {
        const FiniteGroup& g = group->group();
        const ElementId target = group->id_of(*specials.Delta);
        const ElementId a = group->id_of(wv), b = group->id_of(wv_inv);
        bool a_conj = false, b_conj = false;
        for (ElementId x = 0; x < g.order(); ++x) {
            a_conj = a_conj || g.conj(x, a) == target;
            b_conj = b_conj || g.conj(x, b) == target;
        }
        out.details.push_back(std::string("WV ~ Delta and WV^-1 ~ Delta by orbit search: ") +
                              (a_conj && b_conj ? "yes" : "no"));
        out.passed = out.passed && a_conj && b_conj;
    }
    return out;
}

LemmaCheck check_lemma7(const Sl2Group& group) {
    const Prime& p = group.p();
    require_17_mod_60(p);
    LemmaCheck out{7, true, {}};
    const FiniteGroup& g = group.group();
    const auto specials = sl2::build_specials(p);
    const ElementId v = group.id_of(specials.V);
    const ElementId w = group.id_of(*specials.W);
    const ElementId wv = g.mul(w, v);
    const ElementId wv_inv = g.mul(w, g.inv(v));
    const auto hv = groups::cyclic_subgroup(g, v);
    const auto coset = groups::left_coset(g, w, hv);
    const RingElement raw = ring::set_sum(g, coset);
    const RingElement c = ring::centralize(raw);

    const BigInt pb = p.value();
    const BigInt coeff_v = c.coefficient(v), coeff_wv = c.coefficient(wv);
    const RingElement rest = c - ring::class_sum(g, v).scaled(coeff_v) - ring::class_sum(g, wv).scaled(coeff_wv);
    out.details.push_back("c(W<V>) = " + coeff_v.str() + " cl(V) + " + coeff_wv.str() + " cl(WV), other terms: " +
                          std::to_string(rest.support_size()));
    const bool coefficients = coeff_v == (pb + 1) / 2 && coeff_wv == pb - 1 && rest.is_zero();

    const auto stab = groups::set_stabilizer(g, coset);
    const std::vector<ElementId> pair{wv, wv_inv};
    const auto stab_pair = groups::set_stabilizer(g, pair);
    const auto transporter = groups::conjugation_transporter(g, wv, pair);
    const ElementId minus_i = group.id_of(specials.neg_identity);
    const bool stab_pm_i = stab.elements() == std::vector<ElementId>{groups::kIdentity, minus_i};
    out.details.push_back("N(W<V>) = {+-I}: " + std::string(stab_pm_i ? "yes" : "no"));
    out.details.push_back("|{g : g WV g^-1 in {WV, WV^-1}}| = " + std::to_string(transporter.size()) +
                          " (2(p-1) = " + std::to_string(2 * (p.value() - 1)) + ")");
    out.details.push_back("setwise stabilizer of {WV, WV^-1}: order " + std::to_string(stab_pair.order()));
    const bool pair_ok = transporter.size() == 2 * (p.value() - 1);

    const BigInt terms = c.augmentation();
    const BigInt expected_terms = 3 * (pb - 1) * pb * (pb + 1) / 2;
    out.details.push_back("terms in c(W<V>): " + terms.str() + " (3(p-1)p(p+1)/2 = " + expected_terms.str() + ")");

    const bool central = ring::is_central(c);
    const bool raw_not_central = !ring::is_central(raw);
    out.details.push_back(std::string("c(W<V>) central: ") + (central ? "yes" : "no") +
                          ", raw coset sum central: " + (raw_not_central ? "no" : "yes"));
    out.passed = coefficients && stab_pm_i && pair_ok && terms == expected_terms && central && raw_not_central;
    return out;
}

std::optional<std::string> lemma_inapplicable(int lemma, const Prime& p, std::size_t max_order) {
    const std::uint64_t v = p.value();
    if (v == 2) return "p must be odd";
    const bool enumerable = sl2::sl2_order(p) <= max_order;
    switch (lemma) {
        case 1:
        case 2:
        case 4:
            if (v <= 3 && lemma == 4) return "needs a diagonal matrix other than +-I (p > 3)";
            return enumerable ? std::nullopt
                              : std::optional<std::string>("|SL2| exceeds the enumeration cap");
        case 3:
            if (sl2::sl2_order(p) > 500) return "Lemma 3 scan is capped at |G| <= 500";
            return std::nullopt;
        case 5:
            if (v % 4 != 1 || v % 3 != 2) return "needs p = 1 mod 4 and 3 | p+1";
            return enumerable ? std::nullopt
                              : std::optional<std::string>("|SL2| exceeds the enumeration cap");
        case 6:
            if (v <= 5) return "needs p outside {2, 3, 5}";
            if (!modp::solve_u(p)) return "u + 1/u = 1/2 has no solution";
            return std::nullopt;
        case 7:
            if (!p.is_17_mod_60()) return "needs p = 17 mod 60";
            return enumerable ? std::nullopt
                              : std::optional<std::string>("|SL2| exceeds the enumeration cap");
        default: return "no such lemma";
    }
}

Mat2 default_lemma4_diagonal(const Prime& p) {
    if (p.value() > 5) {
        if (const auto s = modp::solve_u(p)) return Mat2::diagonal(s->u);
    }
    return Mat2::diagonal(modp::ModPElement(2, p));
}

}  // namespace scharlau::verify
