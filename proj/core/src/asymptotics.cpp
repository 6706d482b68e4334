#include "schurlab/asymptotics.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace schurlab {

using std::numbers::pi;

std::string to_string(Kind kind) { return kind == Kind::B ? "B" : "C"; }

Kind kind_from_string(const std::string& s) {
    if (s == "B" || s == "b") return Kind::B;
    if (s == "C" || s == "c") return Kind::C;
    throw std::invalid_argument("kind must be B or C, got '" + s + "'");
}

LogMagnitude LogMagnitude::of(const BigInt& n) {
    if (sgn(n) <= 0) throw std::domain_error("log magnitude of a non-positive integer");
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return {std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2};
}

long LogMagnitude::exponent10() const { return static_cast<long>(std::floor(log_value / std::numbers::ln10)); }

double LogMagnitude::mantissa() const {
    return std::exp(log_value - static_cast<double>(exponent10()) * std::numbers::ln10);
}

std::string LogMagnitude::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4fe%ld", mantissa(), exponent10());
    return buf;
}

namespace {

// log I_s(x) - x, from the power series summed relative to its largest term.
double log_scaled_bessel(int s, double x) {
    const double half_log = std::log(x / 2.0);
    auto log_term = [&](long k) {
        return static_cast<double>(2 * k + s) * half_log - std::lgamma(static_cast<double>(k) + 1.0) -
               std::lgamma(static_cast<double>(k + s) + 1.0);
    };
    // The terms peak near k = x/2.
    const long k_peak = std::max(0L, static_cast<long>(x / 2.0));
    const double peak = log_term(k_peak);
    const double cutoff = std::log(1e-18);
    long double total = 0.0L;
    for (long k = k_peak;; ++k) {
        const double rel = log_term(k) - peak;
        total += std::exp(static_cast<long double>(rel));
        if (rel < cutoff) break;
    }
    for (long k = k_peak - 1; k >= 0; --k) {
        const double rel = log_term(k) - peak;
        total += std::exp(static_cast<long double>(rel));
        if (rel < cutoff) break;
    }
    return peak + std::log(static_cast<double>(total)) - x;
}

double bessel_argument(const SchurParams& params, long n) {
    return pi * std::sqrt(2.0 * static_cast<double>(n) / (3.0 * params.d()));
}

}  // namespace

double bessel_i(int order, double x, bool scaled) {
    if (x < 0.0) throw std::domain_error("bessel_i needs x >= 0");
    const int s = std::abs(order);
    if (x == 0.0) return s == 0 ? 1.0 : 0.0;
    const double l = log_scaled_bessel(s, x);
    return std::exp(scaled ? l : l + x);
}

AsymptoticConstants constants(const SchurParams& params) {
    const double d = params.d();
    const double r = params.r();
    AsymptoticConstants c;
    c.alphaP1 = 1.0;
    c.alphaP2 = 1.0 / 3.0;
    c.betaP1 = d / 12.0 - r / 2.0 + r * r / (2.0 * d);
    c.betaP2 = 2.0 * d / 27.0 + c.betaP1 / 3.0;
    const double a = pi / std::sqrt(6.0 * d);
    const double b = pi * pi / (6.0 * d);
    c.alpha1 = a * c.alphaP1;
    c.alpha2 = a * c.alphaP2;
    c.beta1 = b * c.betaP1;
    c.beta2 = b * c.betaP2;
    return c;
}

LogMagnitude estimate_coefficient(Kind which, const SchurParams& params, long n, int terms) {
    if (n < 1) throw std::domain_error("estimate_coefficient needs n >= 1");
    const double x = bessel_argument(params, n);
    const double nd = static_cast<double>(n);
    if (terms == 1) {
        const double log_b = x - (1.25 * std::numbers::ln2 + 0.25 * std::log(3.0) + 0.25 * std::log(params.d()) +
                                  0.75 * std::log(nd));
        return {which == Kind::B ? log_b : log_b - std::log(3.0)};
    }
    if (terms != 2) throw std::invalid_argument("terms must be 1 or 2");
    const auto c = constants(params);
    const double alpha = which == Kind::B ? c.alpha1 : c.alpha2;
    const double beta = which == Kind::B ? c.beta1 : c.beta2;
    const double inner = alpha * std::exp(log_scaled_bessel(1, x)) / std::sqrt(nd) +
                         beta * std::exp(log_scaled_bessel(2, x)) / nd;
    if (!(inner > 0.0)) {
        throw std::domain_error("two-term estimate is not positive at n = " + std::to_string(n));
    }
    return {x + std::log(inner)};
}

double exact_cost(Kind which, const SchurParams& params, int n_max) {
    const double n = static_cast<double>(n_max);
    const double product = 2.0 * n * n / params.d();
    return which == Kind::B ? product : 2.0 * product;
}

std::vector<BigInt> exact_coefficients(Kind which, const SchurParams& params, int n_max, int budget) {
    if (n_max < 0) throw std::invalid_argument("exact_coefficients needs N >= 0");
    if (n_max > budget) {
        const double cost = exact_cost(which, params, n_max);
        std::ostringstream msg;
        msg << "N = " << n_max << " exceeds the budget " << budget << " (estimated " << cost
            << " big-integer additions)";
        throw BudgetExceeded(msg.str(), cost);
    }
    const QSeries s = which == Kind::B ? series_E_product(params, n_max) : series_C_bilateral(params, n_max);
    const auto c = s.coeffs();
    return {c.begin(), c.end()};
}

std::shared_ptr<const std::vector<BigInt>> CoefficientCache::get(Kind which, const SchurParams& params, int n_max) {
    const auto key = std::make_tuple(which == Kind::B ? 0 : 1, params.d(), params.r());
    // The lock is held through the build so concurrent callers share one result.
    std::lock_guard lock(mutex_);
    auto it = builds_.find(key);
    if (it != builds_.end() && static_cast<int>(it->second->size()) > n_max) return it->second;
    auto built = std::make_shared<const std::vector<BigInt>>(exact_coefficients(which, params, n_max, budget_));
    builds_[key] = built;
    return built;
}

namespace {

std::shared_ptr<const std::vector<BigInt>> fetch(CoefficientCache* cache, Kind which, const SchurParams& params,
                                                 int n_max) {
    if (cache != nullptr) return cache->get(which, params, n_max);
    return std::make_shared<const std::vector<BigInt>>(exact_coefficients(which, params, n_max));
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(Kind which, const SchurParams& params, const std::vector<long>& n_list,
                                               int terms, CoefficientCache* cache) {
    if (n_list.empty()) return {};
    const long top = *std::max_element(n_list.begin(), n_list.end());
    const auto coeffs = fetch(cache, which, params, static_cast<int>(top));
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (long n : n_list) {
        ConvergenceRow row;
        row.n = n;
        row.exact_log = LogMagnitude::of((*coeffs)[static_cast<std::size_t>(n)]).log_value;
        row.estimate_log = estimate_coefficient(which, params, n, terms).log_value;
        row.ratio = std::exp(row.exact_log - row.estimate_log);
        rows.push_back(row);
    }
    return rows;
}

std::optional<long> crossover(const SchurParams& a, const SchurParams& b, Kind which, int n_max,
                              CoefficientCache* cache) {
    const auto ca = fetch(cache, which, a, n_max);
    const auto cb = fetch(cache, which, b, n_max);
    std::optional<long> n0;
    for (long n = n_max; n >= 0; --n) {
        const auto i = static_cast<std::size_t>(n);
        if (!((*cb)[i] > (*ca)[i])) break;
        n0 = n;
    }
    return n0;
}

ComplexValue eval_F_near_one(int which, const SchurParams& params, std::complex<double> z, double tol, int budget) {
    if (which != 1 && which != 2) throw std::invalid_argument("F index must be 1 or 2");
    if (!(z.real() > 0.0)) throw std::invalid_argument("eval_F_near_one needs Re z > 0");
    const double a = pi * std::sqrt(2.0 / (3.0 * params.d()));
    long trunc = std::max(64L, static_cast<long>(std::ceil(4.0 * std::pow(a / z.real(), 2))));
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (trunc > budget) {
            throw ToleranceUnreachable("required truncation " + std::to_string(trunc) + " exceeds the budget " +
                                           std::to_string(budget),
                                       trunc);
        }
        const int n = static_cast<int>(trunc);
        const QSeries s = which == 1 ? series_E_product(params, n) : series_C_bilateral(params, n);
        try {
            return eval_complex(s, z, tol);
        } catch (const ToleranceUnreachable& e) {
            trunc = e.required_trunc() > trunc ? e.required_trunc() : 2 * trunc;
        }
    }
    throw ToleranceUnreachable("tolerance not reached after repeated truncation growth", trunc);
}

std::complex<double> scaled_F(int which, const SchurParams& params, std::complex<double> z, double tol) {
    const auto v = eval_F_near_one(which, params, z, tol);
    return v.value * std::exp(-pi * pi / (6.0 * params.d() * z));
}

double G_value(const SchurParams& params, double z) {
    if (!(z > 0.0)) throw std::domain_error("G_value needs z > 0");
    const int d = params.d();
    const int r = params.r();
    auto qp = [z](double e) { return std::exp(-z * e); };
    double denom = 1.0;
    double total = 0.0;
    for (long n = 0;; ++n) {
        const double base = static_cast<double>(d) * static_cast<double>(n);
        denom *= (1.0 + qp(base + r)) * (1.0 + qp(base + d - r));
        const double term = qp(base * static_cast<double>(n + 1)) / denom;
        total += term;
        if (term < 1e-18 * total) break;
    }
    return total;
}

GExpansionFit check_G_expansion(const SchurParams& params, const std::vector<double>& z_list, double g0_tol,
                                double g1_rel_tol) {
    if (z_list.size() != 3) throw std::invalid_argument("check_G_expansion needs exactly three z values");
    const double z0 = z_list[0], z1 = z_list[1], z2 = z_list[2];
    const double y0 = G_value(params, z0), y1 = G_value(params, z1), y2 = G_value(params, z2);
    // Quadratic through the three samples; its value and slope at 0.
    const double w0 = y0 / ((z0 - z1) * (z0 - z2));
    const double w1 = y1 / ((z1 - z0) * (z1 - z2));
    const double w2 = y2 / ((z2 - z0) * (z2 - z1));
    GExpansionFit fit;
    fit.g0 = w0 * z1 * z2 + w1 * z0 * z2 + w2 * z0 * z1;
    fit.g1 = -(w0 * (z1 + z2) + w1 * (z0 + z2) + w2 * (z0 + z1));
    const double want0 = 1.0 / 3.0;
    const double want1 = 2.0 * params.d() / 27.0;
    const double dev0 = std::abs(fit.g0 - want0);
    const double dev1 = std::abs(fit.g1 - want1) / want1;
    fit.report.identity_name = "g-expansion";
    fit.report.passed = dev0 < g0_tol && dev1 < g1_rel_tol;
    fit.report.max_deviation = std::max(dev0, dev1 * want1);
    std::ostringstream detail;
    detail.precision(10);
    detail << "G(0) fit " << fit.g0 << " vs " << want0 << " (|dev| " << dev0 << "); G'(0) fit " << fit.g1
           << " vs " << want1 << " (rel dev " << dev1 << ")";
    fit.report.detail = detail.str();
    return fit;
}

}  // namespace schurlab
