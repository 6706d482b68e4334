#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <boost/multiprecision/gmp.hpp>

#include "schurlab/params.hpp"

namespace schurlab {

using BigInt = mpz_class;
using HighPrecision = boost::multiprecision::mpf_float_50;

/// Every fractional exponent in scope (q^{1/24}, q^{d/8}, q^{-r/2}, ...) is a
/// multiple of 1/24, so series carry their leading exponent in these units.
inline constexpr int kOffsetDenominator = 24;

/// Raised when a requested evaluation tolerance cannot be met at the
/// available truncation. `required_trunc` is the estimated truncation that
/// would meet it, or -1 when the growth model says no truncation will.
class ToleranceUnreachable : public std::runtime_error {
public:
    ToleranceUnreachable(const std::string& what, long required_trunc)
        : std::runtime_error(what), required_trunc_(required_trunc) {}
    long required_trunc() const noexcept { return required_trunc_; }

private:
    long required_trunc_;
};

/// Truncated power series in q with exact integer coefficients.
///
/// Coefficient k multiplies q^{offset24/24 + k} for 0 <= k <= trunc; nothing
/// is known about exponents beyond the truncation unless the series is flagged
/// exact (a polynomial whose omitted coefficients are all zero).
class QSeries {
public:
    QSeries() : coeffs_(1) {}
    QSeries(int offset24, std::vector<BigInt> coeffs, bool exact = false);

    static QSeries zero(int trunc, int offset24 = 0);
    static QSeries one(int trunc);
    /// c * q^exponent, truncated at `trunc` (exponent > trunc gives zero).
    static QSeries monomial(int exponent, const BigInt& c, int trunc);
    /// A polynomial known exactly; coefficients beyond its length are zero.
    static QSeries polynomial(std::vector<BigInt> coeffs, int trunc);

    int offset24() const noexcept { return offset24_; }
    int trunc() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool integral() const noexcept { return offset24_ % kOffsetDenominator == 0; }
    bool exact() const noexcept { return exact_; }
    std::span<const BigInt> coeffs() const noexcept { return coeffs_; }
    const BigInt& operator[](std::size_t k) const { return coeffs_[k]; }
    BigInt& operator[](std::size_t k) { return coeffs_[k]; }
    /// Exponent (in 24ths) of the last known coefficient.
    long top24() const noexcept { return offset24_ + static_cast<long>(kOffsetDenominator) * trunc(); }

    QSeries truncated(int trunc) const;
    /// Multiplies by q^{delta24/24}; only the offset moves.
    QSeries shifted(int delta24) const;
    QSeries negated() const;

    /// In place: *this *= (1 + sign * q^k), sign = +1 or -1.
    void multiply_binomial(int sign, int k);
    /// In place: *this /= (1 + sign * q^k), k >= 1.
    void divide_binomial(int sign, int k);
    /// In place: *this += c * q^{k} * other (other integral-aligned to this).
    void add_shifted(const QSeries& other, int k, const BigInt& c = 1);

    bool operator==(const QSeries& other) const;

private:
    int offset24_ = 0;
    std::vector<BigInt> coeffs_;
    bool exact_ = false;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);

/// Brings two series to a common offset and truncation. Offsets must differ
/// by a whole power of q; the truncation is the coarser absolute top.
std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b);

QSeries multiply(const QSeries& a, const QSeries& b);
/// Inverse of a series with constant term +1 or -1.
QSeries inverse(const QSeries& a);

using Count = std::optional<int>;
inline constexpr std::nullopt_t infinite = std::nullopt;

/// (sign*q^k; q^step)_count truncated at `trunc`.
QSeries pochhammer(int sign, int k, int step, Count count, int trunc);

/// Exact coefficient of q^n (n an integer exponent).
BigInt coefficient(const QSeries& a, long n);
/// Exact coefficient of q^{e24/24}.
BigInt coefficient24(const QSeries& a, long e24);

struct NumericValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

struct ComplexValue {
    std::complex<double> value;
    double tail_bound = 0.0;
};

struct HighPrecisionValue {
    HighPrecision value;
    double tail_bound = 0.0;
};

/// Estimated |sum_{n>trunc} c_n w^n| for |w| = modulus, from geometric
/// extrapolation of the last nonzero coefficients. Returns nullopt when the
/// extrapolated ratio times the modulus is not below 1. Excludes the
/// q^{offset} prefactor.
std::optional<double> tail_estimate(const QSeries& a, double modulus);

NumericValue eval_real(const QSeries& a, double q0);
HighPrecisionValue eval_real_hp(const QSeries& a, double q0);
/// Value at q = e^{-z}, Re z > 0. Rejects when the tail exceeds `tol`.
ComplexValue eval_complex(const QSeries& a, std::complex<double> z, double tol = 1e-12);

/// eta(m tau) = q^{m/24} (q^m; q^m)_inf.
QSeries eta_series(int m, int trunc);

/// theta(1/2 + r tau; d tau) from the product form:
/// -q^{d/8 - r/2} (q^d;q^d)_inf (-q^r;q^d)_inf (-q^{d-r};q^d)_inf.
QSeries theta_half_shift_series(const SchurParams& params, int trunc);

enum class WSign { Plus, Minus };

/// theta(w; d tau) at w = +-(1/2 + r tau) from the bilateral sum over
/// n in 1/2 + Z.
QSeries theta_sum_series(const SchurParams& params, int trunc, WSign sign = WSign::Plus);

/// Numeric Jacobi theta(w; tau) from the bilateral sum, Im tau > 0.
ComplexValue theta_eval(std::complex<double> w, std::complex<double> tau, double tol = 1e-15);

/// log|n| for a nonzero big integer, from its bit length and leading limbs.
double log_abs(const BigInt& n);

}  // namespace schurlab
