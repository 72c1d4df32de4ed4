#pragma once

// Exact arithmetic in the cyclotomic field Q(w), w a primitive m-th root of
// unity. Elements are stored in the power basis 1, w, ..., w^(phi(m)-1) of
// Q[x]/(Phi_m(x)) with GMP rationals as coordinates.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace diffcomp {

using Rational = mpq_class;
using Integer = mpz_class;

/// Integer-coefficient univariate polynomial, coefficient i multiplies x^i.
using IntPoly = std::vector<Integer>;

std::uint64_t euler_phi(std::uint64_t m);

/// Phi_m via Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d. Results are
/// memoised; the cache is guarded and safe to hit from several threads.
const IntPoly& cyclotomic_polynomial(std::uint64_t m);

class CycloRational {
public:
    /// Zero of Q (order 1).
    CycloRational();
    /// Rational embedded in Q (order 1).
    CycloRational(const Rational& value);  // NOLINT(google-explicit-constructor)
    CycloRational(long value);             // NOLINT(google-explicit-constructor)

    /// Builds from power-basis coordinates; `coeffs` may be longer than
    /// phi(order) and is reduced modulo Phi_order.
    static CycloRational from_coefficients(std::uint64_t order, std::vector<Rational> coeffs);

    std::uint64_t order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// True when the element lies in Q, i.e. only the constant coordinate is set.
    bool is_rational() const noexcept;
    /// Constant coordinate; meaningful as "the value" only when is_rational().
    const Rational& rational_part() const { return coeffs_.front(); }

    /// Same element re-expressed in Q(w_target); target must be a multiple of order().
    CycloRational embed(std::uint64_t target) const;

    CycloRational inverse() const;
    CycloRational pow(long long exponent) const;

    CycloRational operator-() const;
    CycloRational& operator+=(const CycloRational& rhs);
    CycloRational& operator-=(const CycloRational& rhs);
    CycloRational& operator*=(const CycloRational& rhs);
    CycloRational& operator/=(const CycloRational& rhs);

    friend CycloRational operator+(CycloRational lhs, const CycloRational& rhs) { return lhs += rhs; }
    friend CycloRational operator-(CycloRational lhs, const CycloRational& rhs) { return lhs -= rhs; }
    friend CycloRational operator*(CycloRational lhs, const CycloRational& rhs) { return lhs *= rhs; }
    friend CycloRational operator/(CycloRational lhs, const CycloRational& rhs) { return lhs /= rhs; }

    /// Equality as field elements: orders are unified before comparing.
    friend bool operator==(const CycloRational& lhs, const CycloRational& rhs);
    friend bool operator!=(const CycloRational& lhs, const CycloRational& rhs) { return !(lhs == rhs); }

    /// Display only. Never feeds back into exact computation.
    std::complex<double> to_complex() const;

    /// `m:[c0,c1,...]`, each coordinate as `num/den` in lowest terms.
    std::string to_string() const;
    static CycloRational parse(std::string_view text);

private:
    CycloRational(std::uint64_t order, std::vector<Rational> coeffs, bool reduced);

    std::uint64_t order_;
    std::vector<Rational> coeffs_;
};

/// w^(k mod m) for the primitive root w = exp(2 pi i / m).
CycloRational root_of_unity(std::uint64_t m, long long k);

std::ostream& operator<<(std::ostream& os, const CycloRational& value);

std::uint64_t lcm_order(std::uint64_t a, std::uint64_t b);

}  // namespace diffcomp
