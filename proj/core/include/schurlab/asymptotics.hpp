#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "schurlab/identities.hpp"
#include "schurlab/params.hpp"
#include "schurlab/qseries.hpp"

namespace schurlab {

/// Which enumeration function: B_{d,r} (no restriction on the smallest part)
/// or C_{d,r} (smallest part larger than d).
enum class Kind { B, C };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& s);

inline constexpr int kDefaultBudget = 20000;

/// Thrown when an exact build would exceed the configured truncation budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimated_additions)
        : std::runtime_error(what), estimated_additions_(estimated_additions) {}
    double estimated_additions() const noexcept { return estimated_additions_; }

private:
    double estimated_additions_;
};

struct AsymptoticConstants {
    double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
    double alphaP1 = 0, alphaP2 = 0, betaP1 = 0, betaP2 = 0;
};

/// A positive quantity carried as its natural logarithm.
struct LogMagnitude {
    double log_value = 0.0;

    static LogMagnitude of(const BigInt& n);
    double mantissa() const;  // in [1, 10)
    long exponent10() const;
    std::string to_string() const;  // e.g. "3.0316e17"
};

/// Modified Bessel I_s(x) by its power series. With `scaled`, returns
/// e^{-x} I_s(x); terms are summed in log space so any x is safe.
double bessel_i(int order, double x, bool scaled = false);

AsymptoticConstants constants(const SchurParams& params);

/// Leading (terms = 1) or two-term Bessel (terms = 2) estimate of B(n) or C(n).
/// Throws std::domain_error when the two-term estimate is not positive.
LogMagnitude estimate_coefficient(Kind which, const SchurParams& params, long n, int terms);

/// Exact c(0..N) from the series builds; rejects N beyond `budget`.
std::vector<BigInt> exact_coefficients(Kind which, const SchurParams& params, int n_max, int budget = kDefaultBudget);

/// Estimated big-integer additions for exact_coefficients.
double exact_cost(Kind which, const SchurParams& params, int n_max);

/// Shares exact coefficient builds between callers; thread-safe.
class CoefficientCache {
public:
    explicit CoefficientCache(int budget = kDefaultBudget) : budget_(budget) {}
    std::shared_ptr<const std::vector<BigInt>> get(Kind which, const SchurParams& params, int n_max);

private:
    int budget_;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<BigInt>>> builds_;
};

struct ConvergenceRow {
    long n = 0;
    double exact_log = 0.0;
    double estimate_log = 0.0;
    double ratio = 0.0;  // exact / estimate
};

std::vector<ConvergenceRow> convergence_report(Kind which, const SchurParams& params, const std::vector<long>& n_list,
                                               int terms, CoefficientCache* cache = nullptr);

/// Least N0 with coef(b, n) > coef(a, n) for every N0 <= n <= n_max, or nullopt
/// when the inequality fails at n_max.
std::optional<long> crossover(const SchurParams& a, const SchurParams& b, Kind which, int n_max,
                              CoefficientCache* cache = nullptr);

/// F_j(e^{-z}) (j = 1: B generating function, j = 2: C) with a truncation
/// chosen so the evaluation tail is below tol.
ComplexValue eval_F_near_one(int which, const SchurParams& params, std::complex<double> z, double tol,
                             int budget = kDefaultBudget);

/// F_j(e^{-z}) e^{-pi^2/(6 d z)}, the quantity expanded as alpha'_j + beta'_j z + O(z^2).
std::complex<double> scaled_F(int which, const SchurParams& params, std::complex<double> z, double tol = 1e-12);

/// G(e^{-z}) = sum_n q^{dn(n+1)} / (-q^r, -q^{d-r}; q^d)_{n+1}, summed directly.
double G_value(const SchurParams& params, double z);

struct GExpansionFit {
    double g0 = 0.0;
    double g1 = 0.0;
    VerificationReport report;
};

/// Fits G(0) and G'(0) by order-2 Richardson extrapolation over three z
/// values and compares them to 1/3 and 2d/27.
GExpansionFit check_G_expansion(const SchurParams& params, const std::vector<double>& z_list,
                                double g0_tol = 1e-3, double g1_rel_tol = 0.02);

}  // namespace schurlab
