#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace scharlau::modp {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// A certified prime with its cached congruence predicates.
class Prime {
public:
    // Throws NotPrime.
    explicit Prime(std::uint64_t value);

    std::uint64_t value() const { return value_; }
    bool is_fermat() const { return fermat_; }
    bool is_17_mod_60() const { return value_ % 60 == 17; }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }

private:
    std::uint64_t value_;
    bool fermat_;
};

// Residue class modulo a prime. Operations between different moduli throw
// ModulusMismatch.
class ModPElement {
public:
    ModPElement(std::int64_t value, Prime modulus);

    static ModPElement from_unsigned(std::uint64_t value, Prime modulus);

    std::uint64_t residue() const { return residue_; }
    const Prime& modulus() const { return modulus_; }
    std::uint64_t p() const { return modulus_.value(); }
    bool is_zero() const { return residue_ == 0; }

    ModPElement operator+(const ModPElement& rhs) const;
    ModPElement operator-(const ModPElement& rhs) const;
    ModPElement operator*(const ModPElement& rhs) const;
    ModPElement operator/(const ModPElement& rhs) const;
    ModPElement operator-() const;

    ModPElement pow(std::uint64_t exponent) const;
    // Throws NotInvertible for zero.
    ModPElement inverse() const;

    friend bool operator==(const ModPElement& a, const ModPElement& b) {
        return a.residue_ == b.residue_ && a.modulus_ == b.modulus_;
    }

private:
    void check_same(const ModPElement& rhs) const;

    std::uint64_t residue_;
    Prime modulus_;
};

std::ostream& operator<<(std::ostream& os, const ModPElement& x);

// Euler criterion: a^((p-1)/2) folded to {-1, 0, 1}. Requires odd p.
int legendre(const ModPElement& a);

// Square root with the smaller residue, or nullopt for a non-residue.
std::optional<ModPElement> sqrt_mod(const ModPElement& a);

// Smallest positive quadratic non-residue.
ModPElement smallest_non_residue(const Prime& p);

struct LemmaSixSolution {
    Prime p;
    ModPElement u;
    ModPElement u_inv;
    ModPElement half;
};

// Root u of u^2 - u/2 + 1 = 0 (so u + 1/u = 1/2) with the smaller residue.
// Throws InputError for p in {2, 3, 5}; nullopt when -15 is a non-residue.
std::optional<LemmaSixSolution> solve_u(const Prime& p);

struct ReciprocityReport {
    Prime p;
    int minus_one;            // (-1/p) by Euler's criterion
    int three;                // (3/p)
    int five;                 // (5/p)
    int predicted_minus_one;  // +1 since p = 1 mod 4
    int predicted_three;      // (p/3) with p = 2 mod 3
    int predicted_five;       // (p/5) with p = 2 mod 5
    int product() const { return minus_one * three * five; }
};

// Evaluates (-15/p) factor by factor and checks each factor against the
// reciprocity argument. Throws InputError unless p = 17 mod 60 and
// ViolatedPrediction on any disagreement.
ReciprocityReport verify_reciprocity_chain(const Prime& p);

// For k = 2..k_max: whether 2^(2^k) + 1 = 17 (mod 60).
std::vector<std::pair<int, bool>> fermat_primes_satisfy_congruence(int k_max);

// Primes p = 17 (mod 60) with p <= bound, ascending.
std::vector<std::uint64_t> primes_17_mod_60(std::uint64_t bound);

}  // namespace scharlau::modp
