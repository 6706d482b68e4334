#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurlab/params.hpp"
#include "schurlab/qseries.hpp"

namespace schurlab {

/// Series in x whose coefficients are integral QSeries with a shared q-truncation.
class BivariateSeries {
public:
    BivariateSeries(int x_trunc, int q_trunc);
    explicit BivariateSeries(std::vector<QSeries> coeffs);

    int x_trunc() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    int q_trunc() const noexcept { return coeffs_.front().trunc(); }
    const QSeries& operator[](std::size_t m) const { return coeffs_[m]; }
    QSeries& operator[](std::size_t m) { return coeffs_[m]; }
    const std::vector<QSeries>& coeffs() const noexcept { return coeffs_; }

    /// Exact reindexing for x -> q^k x: coefficient m picks up q^{k m}.
    BivariateSeries substitute_scaled(int k) const;
    /// Multiplication by c * x^a * q^b.
    BivariateSeries times_monomial(int x_power, int q_power, const BigInt& c = 1) const;

    friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
    friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b);

private:
    std::vector<QSeries> coeffs_;
};

struct Mismatch {
    long exponent = 0;               // power of q (floor when the series offset is fractional)
    long exponent24 = 0;             // the same exponent in units of 1/24
    std::optional<int> x_degree;     // set for bivariate identities
    std::string lhs;                 // exact decimal or full-precision float
    std::string rhs;
};

struct VerificationReport {
    std::string identity_name;
    int trunc = 0;
    bool passed = false;
    std::optional<Mismatch> first_mismatch;
    std::optional<double> max_deviation;  // numeric checks only
    std::string detail;
};

/// A single-coefficient edit applied to the left-hand side before comparing;
/// every verifier must fail under it.
struct Mutation {
    long index = 0;      // coefficient position counted from the series' leading exponent
    int x_degree = 0;
    BigInt delta = 1;
};

/// (-q^r, -q^{d-r}; q^d)_inf.
QSeries series_E_product(const SchurParams& params, int trunc);

/// A_n = (-q^r, -q^{d-r}; q^d)_n / (q^d; q^d)_n for n = 0..n_max.
std::vector<QSeries> hypergeometric_terms(const SchurParams& params, int n_max, int trunc);

/// f_{d,r}(x; q) = (x; q^d)_inf * sum_n A_n x^n, to x^M and q^N.
BivariateSeries series_f_bivariate(const SchurParams& params, int x_trunc, int q_trunc);

/// Sums the x-coefficients of a bivariate series at x = q^k (k >= 1).
QSeries evaluate_at_q_power(const BivariateSeries& f, int k);

/// f_{d,r}(q^k; q) for k >= 0 from the transformed sum
/// (-x q^r, -x q^{d-r}; q^d)_inf sum_n (x; q^d)_n x^n q^{d n^2} / (q^d, -x q^r, -x q^{d-r}; q^d)_n.
/// At k = 0 only the n = 0 term survives.
QSeries series_f_transformed(const SchurParams& params, int k, int trunc);

enum class QDifferenceForm { Exact, DropFactor };

/// Residual of f(x) = (1 + x q^r + x q^{d-r}) f(x q^d) + x q^d (1 - x q^d) f(x q^{2d}).
VerificationReport verify_qdifference(const SchurParams& params, int x_trunc, int q_trunc,
                                      QDifferenceForm form = QDifferenceForm::Exact,
                                      const std::optional<Mutation>& mutation = std::nullopt);

/// (1 - q^{dn}) A_n = (1 + q^{d(n-1)+r}) (1 + q^{dn-r}) A_{n-1} for 1 <= n <= n_max.
VerificationReport verify_An_recurrence(const SchurParams& params, int n_max, int q_trunc,
                                        const std::optional<Mutation>& mutation = std::nullopt);

/// Andrews' formula for the (3,1) generating function of C.
QSeries series_C_andrews_rhs(int trunc);

/// g_3(-q^a; q^m) = sum_n q^{m n(n+1)} / ((-q^a; q^m)_{n+1} (-q^{m-a}; q^m)_{n+1}), 1 <= a < m.
QSeries series_g3(int a, int m, int trunc);

/// The bilateral-sum form of the C generating function.
QSeries series_C_bilateral(const SchurParams& params, int trunc);

/// The folded bilateral sum alone: sum over n in Z of (-1)^n q^{3dn(n+1)/2} / (1 + q^{r+dn}).
QSeries bilateral_sum(const SchurParams& params, int trunc);

/// -q^{-d/12 + r/2} theta(1/2 + r tau; d tau) / eta(d tau), with the exponent ledger checked.
QSeries series_theta_quotient(const SchurParams& params, int trunc);

/// Coefficient-by-coefficient comparison after alignment to a common offset.
VerificationReport verify_equal(const QSeries& lhs, const QSeries& rhs, const std::string& name,
                                const std::optional<Mutation>& mutation = std::nullopt);

/// Adds the mutation's delta to coefficient `index` of a series.
QSeries mutate(const QSeries& s, const Mutation& m);

/// Named identity checks exposed by the command line.
inline const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = {
        "schur", "andrews-c31", "bilateral", "theta-quotient", "univ-factorization", "qdifference",
        "an-recurrence", "triple-product", "rr", "euler", "alder-andrews"};
    return names;
}

struct IdentityRequest {
    std::string name;
    std::optional<int> d;               // required by the parameterized identities
    std::optional<int> r;
    int trunc = 200;
    int x_trunc = 5;                    // qdifference
    int n_max = 8;                      // an-recurrence
    std::optional<Mutation> mutation;
};

VerificationReport verify_identity(const IdentityRequest& request);

}  // namespace schurlab
