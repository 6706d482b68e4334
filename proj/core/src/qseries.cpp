#include "schurlab/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace schurlab {

namespace {

constexpr int kTailWindow = 20;
// Coefficients above this many bits are evaluated term-by-term in log space.
constexpr std::size_t kHornerBitLimit = 960;

bool all_zero_from(const std::vector<BigInt>& c, std::size_t from) {
    for (std::size_t i = from; i < c.size(); ++i) {
        if (sgn(c[i]) != 0) return false;
    }
    return true;
}

long highest_nonzero(std::span<const BigInt> c) {
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
        if (sgn(c[static_cast<std::size_t>(i)]) != 0) return i;
    }
    return -1;
}

std::size_t max_bits(std::span<const BigInt> c) {
    std::size_t bits = 0;
    for (const auto& x : c) {
        if (sgn(x) != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    }
    return bits;
}

// Re-lays `a` on [off, off + 24*trunc]; positions outside its known range are
// zero only if the series is exact.
QSeries relay(const QSeries& a, int off, int trunc) {
    const int shift = (a.offset24() - off) / kOffsetDenominator;
    std::vector<BigInt> out(static_cast<std::size_t>(trunc) + 1);
    bool exact = a.exact();
    for (int k = 0; k <= a.trunc(); ++k) {
        const int idx = k + shift;
        if (idx <= trunc) {
            out[static_cast<std::size_t>(idx)] = a[static_cast<std::size_t>(k)];
        } else if (sgn(a[static_cast<std::size_t>(k)]) != 0) {
            exact = false;
        }
    }
    if (!a.exact() && shift + a.trunc() < trunc) {
        throw std::logic_error("relay would extend a truncated series");
    }
    return QSeries(off, std::move(out), exact);
}

}  // namespace

QSeries::QSeries(int offset24, std::vector<BigInt> coeffs, bool exact)
    : offset24_(offset24), coeffs_(std::move(coeffs)), exact_(exact) {
    if (coeffs_.empty()) throw std::invalid_argument("QSeries needs at least one coefficient");
}

QSeries QSeries::zero(int trunc, int offset24) {
    if (trunc < 0) throw std::invalid_argument("negative truncation");
    return QSeries(offset24, std::vector<BigInt>(static_cast<std::size_t>(trunc) + 1), true);
}

QSeries QSeries::one(int trunc) {
    auto s = zero(trunc);
    s.coeffs_[0] = 1;
    return s;
}

QSeries QSeries::monomial(int exponent, const BigInt& c, int trunc) {
    if (exponent < 0) throw std::invalid_argument("monomial exponent must be non-negative");
    auto s = zero(trunc);
    if (exponent <= trunc) {
        s.coeffs_[static_cast<std::size_t>(exponent)] = c;
    } else if (sgn(c) != 0) {
        s.exact_ = false;
    }
    return s;
}

QSeries QSeries::polynomial(std::vector<BigInt> coeffs, int trunc) {
    if (trunc < 0) throw std::invalid_argument("negative truncation");
    const bool exact = all_zero_from(coeffs, static_cast<std::size_t>(trunc) + 1);
    coeffs.resize(static_cast<std::size_t>(trunc) + 1);
    return QSeries(0, std::move(coeffs), exact);
}

QSeries QSeries::truncated(int t) const {
    if (t < 0) throw std::invalid_argument("negative truncation");
    if (t > trunc() && !exact_) {
        throw std::invalid_argument("cannot extend a truncated series from " + std::to_string(trunc()) +
                                    " to " + std::to_string(t));
    }
    std::vector<BigInt> c(coeffs_.begin(), coeffs_.begin() + std::min(t, trunc()) + 1);
    c.resize(static_cast<std::size_t>(t) + 1);
    const bool ex = exact_ && all_zero_from(coeffs_, static_cast<std::size_t>(t) + 1);
    return QSeries(offset24_, std::move(c), ex);
}

QSeries QSeries::shifted(int delta24) const {
    QSeries s = *this;
    s.offset24_ += delta24;
    return s;
}

QSeries QSeries::negated() const {
    QSeries s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
}

void QSeries::multiply_binomial(int sign, int k) {
    if (k < 0) throw std::invalid_argument("binomial exponent must be non-negative");
    const int n_max = trunc();
    if (k == 0) {
        for (auto& c : coeffs_) c *= (1 + sign);
        return;
    }
    if (exact_ && highest_nonzero(coeffs_) + k > n_max) exact_ = false;
    for (int n = n_max; n >= k; --n) {
        const auto& src = coeffs_[static_cast<std::size_t>(n - k)];
        if (sgn(src) == 0) continue;
        if (sign > 0) {
            coeffs_[static_cast<std::size_t>(n)] += src;
        } else {
            coeffs_[static_cast<std::size_t>(n)] -= src;
        }
    }
}

void QSeries::divide_binomial(int sign, int k) {
    if (k < 1) throw std::invalid_argument("division by (1 + c q^k) needs k >= 1");
    const int n_max = trunc();
    for (int n = k; n <= n_max; ++n) {
        const auto& src = coeffs_[static_cast<std::size_t>(n - k)];
        if (sgn(src) == 0) continue;
        if (sign > 0) {
            coeffs_[static_cast<std::size_t>(n)] -= src;
        } else {
            coeffs_[static_cast<std::size_t>(n)] += src;
        }
    }
    exact_ = false;
}

void QSeries::add_shifted(const QSeries& other, int k, const BigInt& c) {
    if (other.offset24_ != offset24_) throw std::invalid_argument("add_shifted needs equal offsets");
    if (k < 0) throw std::invalid_argument("add_shifted needs k >= 0");
    const int n_max = trunc();
    if (!other.exact_ && k + other.trunc() < n_max) {
        throw std::invalid_argument("add_shifted: source truncation too small");
    }
    const int last = std::min(other.trunc(), n_max - k);
    for (int i = 0; i <= last; ++i) {
        const auto& src = other.coeffs_[static_cast<std::size_t>(i)];
        if (sgn(src) == 0) continue;
        mpz_addmul(coeffs_[static_cast<std::size_t>(i + k)].get_mpz_t(), src.get_mpz_t(), c.get_mpz_t());
    }
    exact_ = exact_ && other.exact_ && (highest_nonzero(other.coeffs_) + k <= n_max || k > n_max);
}

bool QSeries::operator==(const QSeries& other) const {
    return offset24_ == other.offset24_ && coeffs_ == other.coeffs_;
}

std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b) {
    if ((a.offset24() - b.offset24()) % kOffsetDenominator != 0) {
        throw std::invalid_argument("incomparable offsets " + std::to_string(a.offset24()) + "/24 and " +
                                    std::to_string(b.offset24()) + "/24");
    }
    const int off = std::min(a.offset24(), b.offset24());
    long top;
    if (a.exact() && b.exact()) {
        top = std::max(a.top24(), b.top24());
    } else if (a.exact()) {
        top = b.top24();
    } else if (b.exact()) {
        top = a.top24();
    } else {
        top = std::min(a.top24(), b.top24());
    }
    if (top < off) throw std::invalid_argument("series have no common known range");
    const int trunc = static_cast<int>((top - off) / kOffsetDenominator);
    return {relay(a, off, trunc), relay(b, off, trunc)};
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    auto [x, y] = align(a, b);
    std::vector<BigInt> c(x.coeffs().begin(), x.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += y[i];
    return QSeries(x.offset24(), std::move(c), x.exact() && y.exact());
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.negated(); }

QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b); }

QSeries multiply(const QSeries& a, const QSeries& b) {
    const int n_max = std::min(a.trunc(), b.trunc());
    std::vector<BigInt> out(static_cast<std::size_t>(n_max) + 1);
    std::vector<int> nz;
    for (int i = 0; i <= n_max; ++i) {
        if (sgn(a[static_cast<std::size_t>(i)]) != 0) nz.push_back(i);
    }
    for (int i : nz) {
        const auto& ai = a[static_cast<std::size_t>(i)];
        for (int j = 0; i + j <= n_max; ++j) {
            const auto& bj = b[static_cast<std::size_t>(j)];
            if (sgn(bj) == 0) continue;
            mpz_addmul(out[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
        }
    }
    const bool exact =
        a.exact() && b.exact() && highest_nonzero(a.coeffs()) + highest_nonzero(b.coeffs()) <= n_max;
    return QSeries(a.offset24() + b.offset24(), std::move(out), exact);
}

QSeries inverse(const QSeries& a) {
    const BigInt& a0 = a[0];
    if (a0 != 1 && a0 != -1) {
        throw std::invalid_argument("inverse needs constant coefficient +1 or -1, found coefficient of q^" +
                                    std::to_string(a.offset24()) + "/24 = " + a0.get_str());
    }
    const int n_max = a.trunc();
    std::vector<int> nz;
    for (int i = 1; i <= n_max; ++i) {
        if (sgn(a[static_cast<std::size_t>(i)]) != 0) nz.push_back(i);
    }
    std::vector<BigInt> b(static_cast<std::size_t>(n_max) + 1);
    b[0] = a0;
    BigInt acc;
    for (int n = 1; n <= n_max; ++n) {
        acc = 0;
        for (int i : nz) {
            if (i > n) break;
            mpz_addmul(acc.get_mpz_t(), a[static_cast<std::size_t>(i)].get_mpz_t(),
                       b[static_cast<std::size_t>(n - i)].get_mpz_t());
        }
        // a0 is a unit, so b_n = -a0 * acc.
        b[static_cast<std::size_t>(n)] = (a0 > 0) ? BigInt(-acc) : acc;
    }
    return QSeries(-a.offset24(), std::move(b), nz.empty());
}

QSeries pochhammer(int sign, int k, int step, Count count, int trunc) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer sign must be +1 or -1");
    if (k < 0) throw std::invalid_argument("pochhammer needs k >= 0");
    if (step < 1) throw std::invalid_argument("pochhammer step must be positive");
    if (!count && k == 0) {
        throw std::invalid_argument("infinite pochhammer with k = 0 does not converge to a unit series");
    }
    if (count && *count < 0) throw std::invalid_argument("pochhammer count must be non-negative");
    auto s = QSeries::one(trunc);
    // Factor j is (1 - sign q^{k + j*step}).
    for (long j = 0;; ++j) {
        if (count && j >= *count) break;
        const long e = k + j * static_cast<long>(step);
        if (!count && e > trunc) break;
        if (e > trunc) {
            s.multiply_binomial(-sign, trunc + 1);  // marks the result inexact
            continue;
        }
        s.multiply_binomial(-sign, static_cast<int>(e));
    }
    return s;
}

BigInt coefficient24(const QSeries& a, long e24) {
    const long rel = e24 - a.offset24();
    if (rel < 0 || rel % kOffsetDenominator != 0 || rel / kOffsetDenominator > a.trunc()) {
        throw std::out_of_range("exponent " + std::to_string(e24) + "/24 outside the known range [" +
                                std::to_string(a.offset24()) + "/24, " + std::to_string(a.top24()) +
                                "/24] of the series");
    }
    return a[static_cast<std::size_t>(rel / kOffsetDenominator)];
}

BigInt coefficient(const QSeries& a, long n) { return coefficient24(a, n * kOffsetDenominator); }

double log_abs(const BigInt& n) {
    if (sgn(n) == 0) throw std::domain_error("log of zero");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

std::optional<double> tail_estimate(const QSeries& a, double modulus) {
    if (a.exact()) return 0.0;
    const long n_max = a.trunc();
    const long half = std::max<long>(kTailWindow / 2, (n_max + 1) / 16);
    const long lo = std::max<long>(0, n_max - 2 * half + 1);
    const long mid = std::max<long>(lo, n_max - half + 1);
    // Largest log|c| over [from, to], or -inf when all vanish.
    auto envelope = [&a](long from, long to) {
        double best = -INFINITY;
        for (long i = from; i <= to; ++i) {
            const auto& c = a[static_cast<std::size_t>(i)];
            if (sgn(c) != 0) best = std::max(best, log_abs(c));
        }
        return best;
    };
    const double early = envelope(lo, mid - 1);
    const double late = envelope(mid, n_max);
    double log_rho = 0.0;
    if (std::isfinite(early) && std::isfinite(late) && mid > lo) {
        log_rho = std::max(0.0, (late - early) / static_cast<double>(mid - lo));
    }
    double log_m = -INFINITY;
    for (long i = lo; i <= n_max; ++i) {
        const auto& c = a[static_cast<std::size_t>(i)];
        if (sgn(c) != 0) log_m = std::max(log_m, log_abs(c) + log_rho * static_cast<double>(n_max - i));
    }
    if (!std::isfinite(log_m)) log_m = 0.0;
    const double log_mod = std::log(modulus);
    const double log_ratio = log_rho + log_mod;
    if (log_ratio >= 0.0) return std::nullopt;
    return std::exp(log_m + static_cast<double>(n_max + 1) * log_mod) / -std::expm1(log_ratio);
}

namespace {

// Required truncation so that the extrapolated tail drops below tol.
long required_trunc(const QSeries& a, double modulus, double tail, double tol) {
    // Extending by m more terms scales the tail by at most (rho*|q|)^m; use the
    // conservative |q| floor when rho is unavailable.
    const double per_step = std::log(modulus);
    const long extra = static_cast<long>(std::ceil(std::log(tol / tail) / per_step));
    return a.trunc() + std::max(1L, extra);
}

template <typename T>
T sum_terms_logspace(std::span<const BigInt> c, T w, double log_abs_w) {
    // Each term scaled separately; w is only used for its phase.
    T total{};
    const T unit_w = w / static_cast<double>(std::abs(w));
    T phase = T(1);
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n > 0) phase *= unit_w;
        if (sgn(c[n]) == 0) continue;
        const double mag = std::exp(log_abs(c[n]) + static_cast<double>(n) * log_abs_w);
        total += (sgn(c[n]) > 0 ? mag : -mag) * phase;
    }
    return total;
}

}  // namespace

NumericValue eval_real(const QSeries& a, double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("real evaluation needs 0 < q0 < 1");
    const auto tail = tail_estimate(a, q0);
    if (!tail) {
        throw ToleranceUnreachable("coefficient growth ratio times q0 is not below 1; the tail cannot be bounded",
                                   -1);
    }
    const auto c = a.coeffs();
    double value;
    if (max_bits(c) <= kHornerBitLimit) {
        long double acc = 0.0L;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * q0 + static_cast<long double>(it->get_d());
        }
        value = static_cast<double>(acc);
    } else {
        value = sum_terms_logspace<double>(c, q0, std::log(q0));
    }
    const double prefactor = std::exp(static_cast<double>(a.offset24()) / kOffsetDenominator * std::log(q0));
    return {value * prefactor, *tail * prefactor};
}

HighPrecisionValue eval_real_hp(const QSeries& a, double q0) {
    if (!(q0 > 0.0 && q0 < 1.0)) throw std::invalid_argument("real evaluation needs 0 < q0 < 1");
    const auto tail = tail_estimate(a, q0);
    if (!tail) {
        throw ToleranceUnreachable("coefficient growth ratio times q0 is not below 1; the tail cannot be bounded",
                                   -1);
    }
    const HighPrecision q(q0);
    HighPrecision acc = 0;
    const auto c = a.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * q + HighPrecision(boost::multiprecision::mpz_int(it->get_mpz_t()));
    }
    const HighPrecision prefactor =
        boost::multiprecision::pow(q, HighPrecision(a.offset24()) / kOffsetDenominator);
    const double tail_scaled = *tail * std::pow(q0, static_cast<double>(a.offset24()) / kOffsetDenominator);
    return {acc * prefactor, tail_scaled};
}

ComplexValue eval_complex(const QSeries& a, std::complex<double> z, double tol) {
    if (!(z.real() > 0.0)) throw std::invalid_argument("complex evaluation needs Re z > 0");
    const double modulus = std::exp(-z.real());
    const std::complex<double> prefactor = std::exp(-z * (static_cast<double>(a.offset24()) / kOffsetDenominator));
    const auto tail = tail_estimate(a, modulus);
    if (!tail) {
        throw ToleranceUnreachable("coefficient growth ratio times |q| is not below 1 at trunc " +
                                       std::to_string(a.trunc()),
                                   -1);
    }
    const double tail_scaled = *tail * std::abs(prefactor);
    if (tail_scaled > tol) {
        const long need = required_trunc(a, modulus, tail_scaled, tol);
        throw ToleranceUnreachable("tail bound " + std::to_string(tail_scaled) + " exceeds tolerance " +
                                       std::to_string(tol) + " at trunc " + std::to_string(a.trunc()) +
                                       "; estimated required trunc " + std::to_string(need),
                                   need);
    }
    const std::complex<double> w = std::exp(-z);
    const auto c = a.coeffs();
    std::complex<double> value;
    if (max_bits(c) <= kHornerBitLimit) {
        std::complex<long double> acc = 0.0L;
        const std::complex<long double> wl(w.real(), w.imag());
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * wl + static_cast<long double>(it->get_d());
        }
        value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    } else {
        value = sum_terms_logspace<std::complex<double>>(c, w, -z.real());
    }
    return {value * prefactor, tail_scaled};
}

QSeries eta_series(int m, int trunc) {
    if (m < 1) throw std::invalid_argument("eta scale must be positive");
    return pochhammer(1, m, m, infinite, trunc).shifted(m);
}

QSeries theta_half_shift_series(const SchurParams& params, int trunc) {
    const int d = params.d();
    const int r = params.r();
    auto s = pochhammer(1, d, d, infinite, trunc);
    for (long e = r; e <= trunc; e += d) s.multiply_binomial(1, static_cast<int>(e));
    for (long e = d - r; e <= trunc; e += d) s.multiply_binomial(1, static_cast<int>(e));
    return s.negated().shifted(3 * d - 12 * r);
}

QSeries theta_sum_series(const SchurParams& params, int trunc, WSign sign) {
    const long d = params.d();
    const long r = params.r();
    const long s = (sign == WSign::Plus) ? 1 : -1;
    const int offset = static_cast<int>(3 * d - 12 * r);
    // Exponent in 24ths for n = m + 1/2 is 12 d (m + 1/2)^2 + 24 s r (m + 1/2).
    const auto e24 = [&](long m) { return 12 * d * m * m + 12 * d * m + 3 * d + 24 * s * r * m + 12 * s * r; };
    // Half-integer phase e^{2 pi i n (w + 1/2)}: -1 for w = 1/2 + r tau, +1 for its negative.
    const int coeff = (sign == WSign::Plus) ? -1 : 1;
    auto out = QSeries::zero(trunc, offset);
    const long top = offset + 24L * trunc;
    // 12 d m^2 dominates the exponent, so |m| beyond this bound is past the top.
    const long m_bound = static_cast<long>(std::sqrt(static_cast<double>(top + 48 * d * r) / (12.0 * d))) + 2 + r;
    for (long m = -m_bound; m <= m_bound; ++m) {
        const long e = e24(m);
        if (e > top) continue;
        const long rel = e - offset;
        if (rel < 0 || rel % 24 != 0) throw std::logic_error("theta exponent off the 1/24 lattice");
        out[static_cast<std::size_t>(rel / 24)] += coeff;
    }
    return QSeries(offset, std::vector<BigInt>(out.coeffs().begin(), out.coeffs().end()), false);
}

ComplexValue theta_eval(std::complex<double> w, std::complex<double> tau, double tol) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("theta needs Im tau > 0");
    using namespace std::complex_literals;
    const double pi = std::numbers::pi;
    const auto term = [&](double n) { return std::exp(1i * pi * n * n * tau + 2.0i * pi * n * (w + 0.5)); };
    // |term| = exp(-pi n^2 Im tau - 2 pi n Im w) peaks near n = -Im w / Im tau.
    const double centre = std::round(-w.imag() / tau.imag()) + 0.5;
    std::complex<double> total = term(centre);
    double tail = 0.0;
    for (int dir : {-1, 1}) {
        double prev = std::abs(term(centre));
        for (double n = centre + dir;; n += dir) {
            const auto t = term(n);
            const double mag = std::abs(t);
            total += t;
            if (mag < prev && mag < tol * 1e-3) {
                // Ratios of successive terms shrink from here on.
                const double ratio = std::abs(term(n + dir)) / mag;
                tail += mag * ratio / (1.0 - ratio);
                break;
            }
            prev = mag;
        }
    }
    return {total, tail};
}

}  // namespace schurlab
