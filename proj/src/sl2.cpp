#include "scharlau/sl2.hpp"

#include "scharlau/error.hpp"
#include "scharlau/parallel.hpp"

#include <limits>

namespace scharlau::sl2 {

Mat2::Mat2(ModPElement a, ModPElement b, ModPElement c, ModPElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const ModPElement det = a_ * d_ - b_ * c_;
    if (det.residue() != 1) {
        throw NotInSL2("determinant of " + label() + " is " + std::to_string(det.residue()) + ", not 1");
    }
}

Mat2 Mat2::of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const Prime& p) {
    return Mat2(ModPElement(a, p), ModPElement(b, p), ModPElement(c, p), ModPElement(d, p));
}

Mat2 Mat2::identity(const Prime& p) { return of(1, 0, 0, 1, p); }

Mat2 Mat2::elementary12(const ModPElement& b) {
    const Prime& p = b.modulus();
    return Mat2(ModPElement(1, p), b, ModPElement(0, p), ModPElement(1, p));
}

Mat2 Mat2::diagonal(const ModPElement& x) {
    const Prime& p = x.modulus();
    return Mat2(x, ModPElement(0, p), ModPElement(0, p), x.inverse());
}

Mat2 Mat2::operator*(const Mat2& r) const {
    return Mat2(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
                c_ * r.b_ + d_ * r.d_);
}

Mat2 Mat2::operator-() const { return Mat2(-a_, -b_, -c_, -d_); }

Mat2 Mat2::inverse() const { return Mat2(d_, -b_, -c_, a_); }

Mat2 Mat2::pow(std::uint64_t e) const {
    Mat2 result = identity(modulus());
    Mat2 base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool Mat2::is_scalar() const { return b_.is_zero() && c_.is_zero() && a_ == d_; }

std::uint64_t Mat2::index() const {
    const std::uint64_t p = modulus().value();
    return ((a_.residue() * p + b_.residue()) * p + c_.residue()) * p + d_.residue();
}

std::string Mat2::label() const {
    return "[[" + std::to_string(a_.residue()) + "," + std::to_string(b_.residue()) + "],[" +
           std::to_string(c_.residue()) + "," + std::to_string(d_.residue()) + "]]";
}

SpecialElements build_basic_specials(const Prime& p) {
    if (p.value() == 2) throw InputError("SL2 special elements need an odd prime");
    SpecialElements s{Mat2::identity(p),
                      -Mat2::identity(p),
                      Mat2::elementary12(ModPElement(1, p)),
                      Mat2::elementary12(modp::smallest_non_residue(p)),
                      Mat2::of(0, -1, 1, -1, p),
                      modp::smallest_non_residue(p),
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};
    if (p.value() > 5) {
        s.lemma6 = modp::solve_u(p);
        if (s.lemma6) {
            const ModPElement& u = s.lemma6->u;
            const ModPElement& u_inv = s.lemma6->u_inv;
            s.W = Mat2(ModPElement(0, p), -u_inv, u, ModPElement(-1, p));
            s.Delta = Mat2(u, ModPElement(0, p), ModPElement(0, p), u_inv);
        }
    }
    return s;
}

SpecialElements build_specials(const Prime& p) {
    if (p.value() <= 5) {
        throw InputError("W and Delta need p outside {2, 3, 5}, got " + std::to_string(p.value()));
    }
    SpecialElements s = build_basic_specials(p);
    if (!s.lemma6) {
        throw NoSolution("u + 1/u = 1/2 has no solution mod " + std::to_string(p.value()));
    }
    return s;
}

std::string ClassLabel::to_string() const {
    switch (kind) {
        case Kind::CentralPlus: return "+I";
        case Kind::CentralMinus: return "-I";
        case Kind::UnipotentT: return "T";
        case Kind::UnipotentQ: return "Q";
        case Kind::UnipotentNegT: return "-T";
        case Kind::UnipotentNegQ: return "-Q";
        case Kind::Trace: return "trace(" + std::to_string(trace) + ")";
    }
    return "?";
}

std::vector<ClassLabel> all_labels(const Prime& p) {
    using K = ClassLabel::Kind;
    std::vector<ClassLabel> out{{K::CentralPlus}, {K::CentralMinus}, {K::UnipotentT},
                                {K::UnipotentQ},  {K::UnipotentNegT}, {K::UnipotentNegQ}};
    const std::uint64_t v = p.value();
    for (std::uint64_t t = 0; t < v; ++t) {
        if (t == 2 % v || t == (v - 2) % v) continue;
        out.push_back({K::Trace, t});
    }
    return out;
}

namespace {

// For unipotent u = I + N (N != 0, N^2 = 0): the b with u ~ E12(b), using a
// kernel vector v of N and a completion w with det[v w] = 1, so N w = b v.
ModPElement unipotent_parameter(const Mat2& m) {
    const Prime& p = m.modulus();
    const ModPElement one(1, p);
    const ModPElement n11 = m.a() - one, n12 = m.b(), n21 = m.c(), n22 = m.d() - one;
    ModPElement v1 = n12, v2 = -n11;
    if (v1.is_zero() && v2.is_zero()) {
        v1 = n22;
        v2 = -n21;
    }
    ModPElement w1(0, p), w2(0, p);
    if (!v1.is_zero()) {
        w2 = v1.inverse();
    } else {
        w1 = -v2.inverse();
    }
    const ModPElement nw1 = n11 * w1 + n12 * w2;
    const ModPElement nw2 = n21 * w1 + n22 * w2;
    return !v1.is_zero() ? nw1 / v1 : nw2 / v2;
}

}  // namespace

ClassLabel classify(const Mat2& m) {
    using K = ClassLabel::Kind;
    const Prime& p = m.modulus();
    const ModPElement t = m.trace();
    const ModPElement two(2, p);
    if (t == two) {
        if (m == Mat2::identity(p)) return {K::CentralPlus};
        return {modp::legendre(unipotent_parameter(m)) == 1 ? K::UnipotentT : K::UnipotentQ};
    }
    if (t == -two) {
        if (m == -Mat2::identity(p)) return {K::CentralMinus};
        return {modp::legendre(unipotent_parameter(-m)) == 1 ? K::UnipotentNegT : K::UnipotentNegQ};
    }
    return {K::Trace, t.residue()};
}

bool is_split_trace(const ModPElement& t) {
    return modp::legendre(t * t - ModPElement(4, t.modulus())) == 1;
}

std::uint64_t class_size(const ClassLabel& label, const Prime& p) {
    using K = ClassLabel::Kind;
    const std::uint64_t v = p.value();
    switch (label.kind) {
        case K::CentralPlus:
        case K::CentralMinus: return 1;
        case K::UnipotentT:
        case K::UnipotentQ:
        case K::UnipotentNegT:
        case K::UnipotentNegQ: return (v * v - 1) / 2;
        case K::Trace:
            return is_split_trace(ModPElement::from_unsigned(label.trace, p)) ? v * (v + 1) : v * (v - 1);
    }
    return 0;
}

std::uint64_t class_size_total(const Prime& p) {
    const std::uint64_t v = p.value();
    const std::uint64_t split = (v - 3) / 2, nonsplit = (v - 1) / 2;
    return 2 + 4 * ((v * v - 1) / 2) + split * v * (v + 1) + nonsplit * v * (v - 1);
}

std::uint64_t sl2_order(const Prime& p) {
    const std::uint64_t v = p.value();
    return (v - 1) * v * (v + 1);
}

Sl2Group::Sl2Group(Prime p, groups::FiniteGroup group, std::vector<Mat2> matrices,
                   std::vector<groups::ElementId> index_to_id)
    : p_(p), group_(std::move(group)), matrices_(std::move(matrices)), index_to_id_(std::move(index_to_id)) {}

groups::ElementId Sl2Group::id_of(const Mat2& m) const {
    if (!(m.modulus() == p_)) throw ModulusMismatch("matrix is over a different prime");
    return index_to_id_[m.index()];
}

Sl2Group enumerate(const Prime& p, std::size_t max_order) {
    const std::uint64_t v = p.value();
    if (v > 2000 || sl2_order(p) > max_order) {
        throw OrderCap("|SL2(Z_" + std::to_string(v) + ")| = " + std::to_string(sl2_order(p)) +
                       " exceeds the enumeration cap " + std::to_string(max_order));
    }
    constexpr auto kNone = std::numeric_limits<groups::ElementId>::max();
    std::vector<groups::ElementId> index_to_id(v * v * v * v, kNone);
    struct Entries {
        std::uint32_t a, b, c, d;
    };
    std::vector<Entries> entries{{1, 0, 0, 1}};
    for (std::uint32_t a = 0; a < v; ++a)
        for (std::uint32_t b = 0; b < v; ++b)
            for (std::uint32_t c = 0; c < v; ++c)
                for (std::uint32_t d = 0; d < v; ++d) {
                    if ((std::uint64_t{a} * d + v * v - std::uint64_t{b} * c % v) % v != 1) continue;
                    if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                    entries.push_back({a, b, c, d});
                }
    const std::size_t n = entries.size();
    auto index = [v](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        return ((a * v + b) * v + c) * v + d;
    };
    std::vector<Mat2> matrices;
    matrices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = entries[i];
        index_to_id[index(e.a, e.b, e.c, e.d)] = static_cast<groups::ElementId>(i);
        matrices.push_back(Mat2::of(e.a, e.b, e.c, e.d, p));
    }

    std::vector<groups::ElementId> table(n * n);
    parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& x = entries[i];
            for (std::size_t j = 0; j < n; ++j) {
                const auto& y = entries[j];
                const std::uint64_t a = (std::uint64_t{x.a} * y.a + std::uint64_t{x.b} * y.c) % v;
                const std::uint64_t b = (std::uint64_t{x.a} * y.b + std::uint64_t{x.b} * y.d) % v;
                const std::uint64_t c = (std::uint64_t{x.c} * y.a + std::uint64_t{x.d} * y.c) % v;
                const std::uint64_t d = (std::uint64_t{x.c} * y.b + std::uint64_t{x.d} * y.d) % v;
                table[i * n + j] = index_to_id[index(a, b, c, d)];
            }
        }
    });
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const Mat2& m : matrices) labels.push_back(m.label());
    groups::FiniteGroup group(n, std::move(table), std::move(labels));
    return Sl2Group(p, std::move(group), std::move(matrices), std::move(index_to_id));
}

Mat2 lemma5_conjugator(const Prime& p) {
    if (p.value() % 4 != 1) throw InputError("a^2 = -1 needs p = 1 mod 4");
    const auto a = modp::sqrt_mod(ModPElement(-1, p));
    if (!a) throw CheckFailure("-1 has no square root mod " + std::to_string(p.value()));
    return Mat2(ModPElement(0, p), *a, *a, ModPElement(0, p));
}

}  // namespace scharlau::sl2
