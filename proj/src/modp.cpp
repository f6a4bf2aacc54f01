#include "scharlau/modp.hpp"

#include "scharlau/error.hpp"

#include <string>

namespace scharlau::modp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

bool fermat_form(std::uint64_t n) {
    // 2^(2^k) + 1 for k = 0..5 fit in 64 bits.
    for (int k = 0; k <= 5; ++k) {
        if (n == (std::uint64_t{1} << (1u << k)) + 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Prime::Prime(std::uint64_t value) : value_(value), fermat_(false) {
    if (!is_prime(value)) throw NotPrime(std::to_string(value) + " is not prime");
    fermat_ = fermat_form(value);
}

ModPElement::ModPElement(std::int64_t value, Prime modulus) : residue_(0), modulus_(modulus) {
    const auto m = static_cast<std::int64_t>(modulus.value() > INT64_MAX ? 0 : modulus.value());
    if (m == 0) {
        // Modulus beyond int64: only non-negative inputs make sense.
        residue_ = static_cast<std::uint64_t>(value) % modulus.value();
        return;
    }
    std::int64_t r = value % m;
    if (r < 0) r += m;
    residue_ = static_cast<std::uint64_t>(r);
}

ModPElement ModPElement::from_unsigned(std::uint64_t value, Prime modulus) {
    ModPElement x(0, modulus);
    x.residue_ = value % modulus.value();
    return x;
}

void ModPElement::check_same(const ModPElement& rhs) const {
    if (!(modulus_ == rhs.modulus_)) {
        throw ModulusMismatch("mixed moduli " + std::to_string(p()) + " and " +
                              std::to_string(rhs.p()));
    }
}

ModPElement ModPElement::operator+(const ModPElement& rhs) const {
    check_same(rhs);
    const std::uint64_t m = p();
    std::uint64_t r = residue_ + rhs.residue_;
    if (r >= m || r < residue_) r -= m;
    return from_unsigned(r, modulus_);
}

ModPElement ModPElement::operator-(const ModPElement& rhs) const {
    check_same(rhs);
    const std::uint64_t r = residue_ >= rhs.residue_ ? residue_ - rhs.residue_
                                                     : p() - (rhs.residue_ - residue_);
    return from_unsigned(r, modulus_);
}

ModPElement ModPElement::operator*(const ModPElement& rhs) const {
    check_same(rhs);
    return from_unsigned(mul_mod(residue_, rhs.residue_, p()), modulus_);
}

ModPElement ModPElement::operator/(const ModPElement& rhs) const {
    check_same(rhs);
    return *this * rhs.inverse();
}

ModPElement ModPElement::operator-() const {
    return from_unsigned(residue_ == 0 ? 0 : p() - residue_, modulus_);
}

ModPElement ModPElement::pow(std::uint64_t exponent) const {
    return from_unsigned(pow_mod(residue_, exponent, p()), modulus_);
}

ModPElement ModPElement::inverse() const {
    if (residue_ == 0) throw NotInvertible("zero has no inverse mod " + std::to_string(p()));
    return pow(p() - 2);
}

std::ostream& operator<<(std::ostream& os, const ModPElement& x) { return os << x.residue(); }

int legendre(const ModPElement& a) {
    if (a.p() == 2) throw InputError("Legendre symbol needs an odd prime");
    if (a.is_zero()) return 0;
    const ModPElement e = a.pow((a.p() - 1) / 2);
    return e.residue() == 1 ? 1 : -1;
}

std::optional<ModPElement> sqrt_mod(const ModPElement& a) {
    const Prime& prime = a.modulus();
    const std::uint64_t p = prime.value();
    if (p == 2) return a;
    if (a.is_zero()) return a;
    if (legendre(a) != 1) return std::nullopt;

    // Tonelli-Shanks.
    std::uint64_t q = p - 1;
    std::uint64_t s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    const ModPElement z = smallest_non_residue(prime);
    ModPElement c = z.pow(q);
    ModPElement r = a.pow((q + 1) / 2);
    ModPElement t = a.pow(q);
    std::uint64_t m = s;
    const ModPElement one(1, prime);
    while (!(t == one)) {
        std::uint64_t i = 0;
        ModPElement t2 = t;
        while (!(t2 == one)) {
            t2 = t2 * t2;
            ++i;
        }
        ModPElement b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = b * b;
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    if (!(r * r == a)) throw CheckFailure("square root failed verification");
    const ModPElement other = -r;
    return other.residue() < r.residue() ? other : r;
}

ModPElement smallest_non_residue(const Prime& p) {
    if (p.value() == 2) throw InputError("no quadratic non-residue mod 2");
    for (std::uint64_t a = 2;; ++a) {
        ModPElement x = ModPElement::from_unsigned(a, p);
        if (legendre(x) == -1) return x;
    }
}

std::optional<LemmaSixSolution> solve_u(const Prime& p) {
    if (p.value() <= 5) {
        throw InputError("solve_u requires p outside {2, 3, 5}, got " + std::to_string(p.value()));
    }
    const ModPElement one(1, p);
    const ModPElement two(2, p);
    const ModPElement half = one / two;
    // u = (half +- sqrt(half^2 - 4)) / 2, discriminant -15/4.
    const ModPElement disc = half * half - ModPElement(4, p);
    const auto root = sqrt_mod(disc);
    if (!root) return std::nullopt;
    const ModPElement r1 = (half + *root) / two;
    const ModPElement r2 = (half - *root) / two;
    const ModPElement u = r1.residue() <= r2.residue() ? r1 : r2;
    const ModPElement u_inv = u.inverse();
    if (!(u * u - half * u + one).is_zero() || !(u + u_inv == half)) {
        throw CheckFailure("solve_u produced an invalid root");
    }
    return LemmaSixSolution{p, u, u_inv, half};
}

ReciprocityReport verify_reciprocity_chain(const Prime& p) {
    if (!p.is_17_mod_60()) {
        throw InputError(std::to_string(p.value()) + " is not 17 mod 60");
    }
    const std::uint64_t v = p.value();
    ReciprocityReport report{p,
                             legendre(ModPElement(-1, p)),
                             legendre(ModPElement(3, p)),
                             legendre(ModPElement(5, p)),
                             +1,
                             v % 3 == 2 ? -1 : +1,
                             (v % 5 == 2 || v % 5 == 3) ? -1 : +1};
    if (report.minus_one != report.predicted_minus_one || report.three != report.predicted_three ||
        report.five != report.predicted_five) {
        throw ViolatedPrediction("Legendre factors disagree with reciprocity at p = " +
                                 std::to_string(v));
    }
    if (report.product() != 1) {
        throw ViolatedPrediction("(-15/p) != 1 at p = " + std::to_string(v));
    }
    return report;
}

std::vector<std::pair<int, bool>> fermat_primes_satisfy_congruence(int k_max) {
    std::vector<std::pair<int, bool>> out;
    for (int k = 2; k <= k_max; ++k) {
        // 2^(2^k) mod 60 by k squarings.
        std::uint64_t x = 2;
        for (int i = 0; i < k; ++i) x = x * x % 60;
        out.emplace_back(k, (x + 1) % 60 == 17);
    }
    return out;
}

std::vector<std::uint64_t> primes_17_mod_60(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 17) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i * i <= bound; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    for (std::uint64_t n = 17; n <= bound; n += 60) {
        if (!composite[n]) out.push_back(n);
    }
    return out;
}

}  // namespace scharlau::modp
