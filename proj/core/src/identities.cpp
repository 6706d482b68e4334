#include "schurlab/identities.hpp"

#include <algorithm>
#include <stdexcept>

#include "schurlab/partitions.hpp"

namespace schurlab {

namespace {

SchurParams require_params(const IdentityRequest& req) {
    if (!req.d || !req.r) throw std::invalid_argument("identity '" + req.name + "' needs --d and --r");
    return SchurParams(*req.d, *req.r);
}

VerificationReport pass_report(const std::string& name, int trunc) {
    VerificationReport rep;
    rep.identity_name = name;
    rep.trunc = trunc;
    rep.passed = true;
    return rep;
}

// Runs checks in order and returns the first failure, or a pass under `name`.
template <typename... Checks>
VerificationReport first_failure(const std::string& name, int trunc, Checks&&... checks) {
    VerificationReport out = pass_report(name, trunc);
    bool failed = false;
    auto run = [&](auto&& check) {
        if (failed) return;
        auto rep = check();
        if (!rep.passed) {
            failed = true;
            rep.detail = rep.identity_name + (rep.detail.empty() ? "" : ": " + rep.detail);
            rep.identity_name = name;
            out = std::move(rep);
        } else if (!rep.detail.empty()) {
            out.detail += (out.detail.empty() ? "" : "; ") + rep.detail;
        }
    };
    (run(checks), ...);
    return out;
}

// Strict inequality lhs(n) > rhs(n) on [lo, hi].
VerificationReport verify_greater(const QSeries& lhs, const QSeries& rhs, long lo, long hi, const std::string& name) {
    auto rep = pass_report(name, static_cast<int>(hi));
    for (long n = lo; n <= hi; ++n) {
        const auto& a = lhs[static_cast<std::size_t>(n)];
        const auto& b = rhs[static_cast<std::size_t>(n)];
        if (!(a > b)) {
            rep.passed = false;
            rep.first_mismatch = Mismatch{n, n * kOffsetDenominator, std::nullopt, a.get_str(), b.get_str()};
            rep.detail = "strict inequality fails";
            return rep;
        }
    }
    return rep;
}

}  // namespace

BivariateSeries::BivariateSeries(int x_trunc, int q_trunc) {
    if (x_trunc < 0) throw std::invalid_argument("negative x truncation");
    coeffs_.assign(static_cast<std::size_t>(x_trunc) + 1, QSeries::zero(q_trunc));
}

BivariateSeries::BivariateSeries(std::vector<QSeries> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("bivariate series needs at least one coefficient");
    for (const auto& c : coeffs_) {
        if (c.offset24() != 0 || c.trunc() != coeffs_.front().trunc()) {
            throw std::invalid_argument("bivariate coefficients must share trunc and have offset 0");
        }
    }
}

BivariateSeries BivariateSeries::substitute_scaled(int k) const {
    BivariateSeries out(x_trunc(), q_trunc());
    for (int m = 0; m <= x_trunc(); ++m) {
        out.coeffs_[static_cast<std::size_t>(m)].add_shifted(coeffs_[static_cast<std::size_t>(m)], k * m);
    }
    return out;
}

BivariateSeries BivariateSeries::times_monomial(int x_power, int q_power, const BigInt& c) const {
    BivariateSeries out(x_trunc(), q_trunc());
    for (int m = 0; m + x_power <= x_trunc(); ++m) {
        out.coeffs_[static_cast<std::size_t>(m + x_power)].add_shifted(coeffs_[static_cast<std::size_t>(m)], q_power,
                                                                        c);
    }
    return out;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.x_trunc() != b.x_trunc() || a.q_trunc() != b.q_trunc()) {
        throw std::invalid_argument("bivariate truncations differ");
    }
    std::vector<QSeries> c;
    for (int m = 0; m <= a.x_trunc(); ++m) c.push_back(a[static_cast<std::size_t>(m)] + b[static_cast<std::size_t>(m)]);
    return BivariateSeries(std::move(c));
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
    std::vector<QSeries> neg;
    for (const auto& c : b.coeffs()) neg.push_back(c.negated());
    return a + BivariateSeries(std::move(neg));
}

QSeries series_E_product(const SchurParams& params, int trunc) {
    auto s = QSeries::one(trunc);
    for (long e = params.r(); e <= trunc; e += params.d()) s.multiply_binomial(1, static_cast<int>(e));
    for (long e = params.dr(); e <= trunc; e += params.d()) s.multiply_binomial(1, static_cast<int>(e));
    return s;
}

std::vector<QSeries> hypergeometric_terms(const SchurParams& params, int n_max, int trunc) {
    const int d = params.d();
    std::vector<QSeries> terms;
    terms.reserve(static_cast<std::size_t>(n_max) + 1);
    terms.push_back(QSeries::one(trunc));
    for (int n = 1; n <= n_max; ++n) {
        QSeries next = terms.back();
        next.multiply_binomial(1, std::min(d * (n - 1) + params.r(), trunc + 1));
        next.multiply_binomial(1, std::min(d * n - params.r(), trunc + 1));
        if (d * n <= trunc) next.divide_binomial(-1, d * n);
        terms.push_back(std::move(next));
    }
    return terms;
}

BivariateSeries series_f_bivariate(const SchurParams& params, int x_trunc, int q_trunc) {
    const int d = params.d();
    const auto a = hypergeometric_terms(params, x_trunc, q_trunc);
    // (x; q^d)_inf = sum_k (-1)^k q^{d k(k-1)/2} x^k / (q^d; q^d)_k.
    std::vector<QSeries> euler;
    QSeries denom_inv = QSeries::one(q_trunc);
    for (int k = 0; k <= x_trunc; ++k) {
        if (k > 0 && d * k <= q_trunc) denom_inv.divide_binomial(-1, d * k);
        auto term = QSeries::zero(q_trunc);
        const long shift = static_cast<long>(d) * k * (k - 1) / 2;
        if (shift <= q_trunc) term.add_shifted(denom_inv, static_cast<int>(shift), (k % 2 == 0) ? 1 : -1);
        euler.push_back(std::move(term));
    }
    BivariateSeries f(x_trunc, q_trunc);
    for (int m = 0; m <= x_trunc; ++m) {
        auto acc = QSeries::zero(q_trunc);
        for (int k = 0; k <= m; ++k) acc = acc + multiply(euler[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(m - k)]);
        f[static_cast<std::size_t>(m)] = std::move(acc);
    }
    return f;
}

QSeries series_f_transformed(const SchurParams& params, int k, int trunc) {
    if (k < 0) throw std::invalid_argument("series_f_transformed needs k >= 0");
    const int d = params.d();
    auto sum = QSeries::one(trunc);
    auto cur = QSeries::one(trunc);
    for (long n = 1; k > 0; ++n) {
        const long shift = static_cast<long>(k) * n + static_cast<long>(d) * n * n;
        if (shift > trunc) break;
        const long base = static_cast<long>(d) * (n - 1);
        if (k + base <= trunc) cur.multiply_binomial(-1, static_cast<int>(k + base));
        cur.divide_binomial(-1, static_cast<int>(base + d));
        cur.divide_binomial(1, static_cast<int>(k + base + params.r()));
        cur.divide_binomial(1, static_cast<int>(k + base + params.dr()));
        sum.add_shifted(cur, static_cast<int>(shift));
    }
    for (long e = k + params.r(); e <= trunc; e += d) sum.multiply_binomial(1, static_cast<int>(e));
    for (long e = k + params.dr(); e <= trunc; e += d) sum.multiply_binomial(1, static_cast<int>(e));
    return sum;
}

QSeries evaluate_at_q_power(const BivariateSeries& f, int k) {
    if (k < 1) throw std::invalid_argument("evaluation at x = q^k needs k >= 1");
    // Every part is at least 1, so x^m carries q^{>= m}; the first missing
    // x-degree M+1 therefore contributes only from q^{(k+1)(M+1)} on.
    const long limit = static_cast<long>(k + 1) * (f.x_trunc() + 1) - 1;
    const int trunc = static_cast<int>(std::min<long>(f.q_trunc(), limit));
    auto out = QSeries::zero(trunc);
    for (int m = 0; m <= f.x_trunc(); ++m) {
        if (static_cast<long>(k) * m > trunc) break;
        out.add_shifted(f[static_cast<std::size_t>(m)].truncated(trunc), k * m);
    }
    return QSeries(0, std::vector<BigInt>(out.coeffs().begin(), out.coeffs().end()));
}

VerificationReport verify_qdifference(const SchurParams& params, int x_trunc, int q_trunc, QDifferenceForm form,
                                      const std::optional<Mutation>& mutation) {
    const int d = params.d();
    auto f = series_f_bivariate(params, x_trunc, q_trunc);
    if (mutation) {
        auto& c = f[static_cast<std::size_t>(mutation->x_degree)];
        c = mutate(c, *mutation);
    }
    const auto f1 = f.substitute_scaled(d);
    const auto f2 = f.substitute_scaled(2 * d);
    auto rhs = f1 + f1.times_monomial(1, params.r()) + f1.times_monomial(1, params.dr()) + f2.times_monomial(1, d);
    if (form == QDifferenceForm::Exact) rhs = rhs - f2.times_monomial(2, 2 * d);

    auto rep = pass_report("qdifference", q_trunc);
    for (int m = 0; m <= x_trunc; ++m) {
        for (int n = 0; n <= q_trunc; ++n) {
            const auto& l = f[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
            const auto& r = rhs[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
            if (l != r) {
                rep.passed = false;
                rep.first_mismatch = Mismatch{n, 24L * n, m, l.get_str(), r.get_str()};
                return rep;
            }
        }
    }
    return rep;
}

VerificationReport verify_An_recurrence(const SchurParams& params, int n_max, int q_trunc,
                                        const std::optional<Mutation>& mutation) {
    if (n_max < 1) throw std::invalid_argument("A_n recurrence needs n_max >= 1");
    const int d = params.d();
    const int r = params.r();
    // Closed form from the Pochhammer quotient, independent of the recurrence.
    auto closed = [&](int n) {
        auto num = multiply(pochhammer(-1, r, d, n, q_trunc), pochhammer(-1, d - r, d, n, q_trunc));
        auto a = multiply(num, inverse(pochhammer(1, d, d, n, q_trunc)));
        if (mutation && mutation->x_degree == n) a = mutate(a, *mutation);
        return a;
    };
    auto rep = pass_report("an-recurrence", q_trunc);
    QSeries prev = closed(0);
    for (int n = 1; n <= n_max; ++n) {
        QSeries cur = closed(n);
        QSeries lhs = cur;
        lhs.multiply_binomial(-1, std::min(d * n, q_trunc + 1));
        QSeries rhs = prev;
        rhs.multiply_binomial(1, std::min(d * (n - 1) + r, q_trunc + 1));
        rhs.multiply_binomial(1, std::min(d * n - r, q_trunc + 1));
        for (int k = 0; k <= q_trunc; ++k) {
            if (lhs[static_cast<std::size_t>(k)] != rhs[static_cast<std::size_t>(k)]) {
                rep.passed = false;
                rep.first_mismatch = Mismatch{k, 24L * k, n, lhs[static_cast<std::size_t>(k)].get_str(),
                                              rhs[static_cast<std::size_t>(k)].get_str()};
                return rep;
            }
        }
        prev = std::move(cur);
    }
    return rep;
}

QSeries series_C_andrews_rhs(int trunc) {
    auto prefactor = QSeries::one(trunc);
    for (int k = 1; k <= trunc; ++k) prefactor.multiply_binomial(1, k);
    prefactor = multiply(prefactor, inverse(pochhammer(1, 6, 6, infinite, trunc)));

    auto sum = QSeries::zero(trunc);
    for (long n = 0;; ++n) {
        const long lead = 9 * n * (n + 1) / 2;
        if (lead > trunc) break;
        auto numer = QSeries::monomial(static_cast<int>(lead), (n % 2 == 0) ? 1 : -1, trunc);
        numer.multiply_binomial(-1, static_cast<int>(std::min<long>(6 * n + 3, trunc + 1)));
        auto denom = QSeries::one(trunc);
        denom.multiply_binomial(1, static_cast<int>(std::min<long>(3 * n + 1, trunc + 1)));
        denom.multiply_binomial(1, static_cast<int>(std::min<long>(3 * n + 2, trunc + 1)));
        sum = sum + multiply(numer, inverse(denom));
    }
    return multiply(prefactor, sum);
}

QSeries series_g3(int a, int m, int trunc) {
    if (m < 2 || a < 1 || a >= m) {
        throw std::invalid_argument("g3(-q^a; q^m) needs 1 <= a < m, got a=" + std::to_string(a) +
                                    ", m=" + std::to_string(m));
    }
    // term_n = 1 / ((-q^a; q^m)_{n+1} (-q^{m-a}; q^m)_{n+1}), updated one factor pair at a time.
    auto term = QSeries::one(trunc);
    auto out = QSeries::zero(trunc);
    for (long n = 0;; ++n) {
        const long e_a = a + static_cast<long>(m) * n;
        const long e_b = (m - a) + static_cast<long>(m) * n;
        if (e_a <= trunc) term.divide_binomial(1, static_cast<int>(e_a));
        if (e_b <= trunc) term.divide_binomial(1, static_cast<int>(e_b));
        const long lead = static_cast<long>(m) * n * (n + 1);
        if (lead > trunc) break;
        out.add_shifted(term, static_cast<int>(lead));
    }
    return QSeries(0, std::vector<BigInt>(out.coeffs().begin(), out.coeffs().end()));
}

QSeries bilateral_sum(const SchurParams& params, int trunc) {
    const long d = params.d();
    const long r = params.r();
    std::vector<BigInt> c(static_cast<std::size_t>(trunc) + 1);
    // sign * q^base / (1 + q^step) = sign * sum_j (-1)^j q^{base + j step}.
    auto add_geometric = [&](long base, long step, int sign) {
        for (long e = base, j = 0; e <= trunc; e += step, ++j) {
            c[static_cast<std::size_t>(e)] += ((j % 2 == 0) ? sign : -sign);
        }
    };
    // n >= 0.
    for (long n = 0;; ++n) {
        const long base = 3 * d * n * (n + 1) / 2;
        if (base > trunc) break;
        add_geometric(base, r + d * n, (n % 2 == 0) ? 1 : -1);
    }
    // n = -m-1 for m >= 0: 1/(1 + q^{r - d(m+1)}) = q^{d(m+1)-r} / (1 + q^{d(m+1)-r}).
    for (long m = 0;; ++m) {
        const long step = d * (m + 1) - r;
        const long base = 3 * d * m * (m + 1) / 2 + step;
        if (base > trunc) break;
        add_geometric(base, step, (m % 2 == 0) ? -1 : 1);
    }
    return QSeries(0, std::move(c));
}

QSeries series_C_bilateral(const SchurParams& params, int trunc) {
    const int d = params.d();
    auto s = bilateral_sum(params, trunc);
    for (long e = params.r(); e <= trunc; e += d) s.multiply_binomial(1, static_cast<int>(e));
    for (long e = params.dr(); e <= trunc; e += d) s.multiply_binomial(1, static_cast<int>(e));
    for (long e = d; e <= trunc; e += d) s.divide_binomial(-1, static_cast<int>(e));
    return s;
}

QSeries series_theta_quotient(const SchurParams& params, int trunc) {
    const int d = params.d();
    const int r = params.r();
    const auto theta = theta_half_shift_series(params, trunc);
    const auto eta = eta_series(d, trunc);
    // -q^{-d/12 + r/2}, i.e. -q^{(-2d + 12 r)/24}.
    auto out = multiply(theta, inverse(eta)).negated().shifted(-2 * d + 12 * r);
    if (out.offset24() != 0) {
        throw std::logic_error("theta quotient has non-integral offset " + std::to_string(out.offset24()) + "/24");
    }
    return out;
}

QSeries mutate(const QSeries& s, const Mutation& m) {
    if (m.index < 0 || m.index > s.trunc()) throw std::out_of_range("mutation index outside the series");
    QSeries out = s;
    out[static_cast<std::size_t>(m.index)] += m.delta;
    return out;
}

VerificationReport verify_equal(const QSeries& lhs_in, const QSeries& rhs_in, const std::string& name,
                                const std::optional<Mutation>& mutation) {
    const QSeries lhs = mutation ? mutate(lhs_in, *mutation) : lhs_in;
    auto [a, b] = align(lhs, rhs_in);
    auto rep = pass_report(name, a.trunc());
    for (int k = 0; k <= a.trunc(); ++k) {
        if (a[static_cast<std::size_t>(k)] != b[static_cast<std::size_t>(k)]) {
            const long e24 = a.offset24() + 24L * k;
            const long e = (e24 >= 0) ? e24 / 24 : -((-e24 + 23) / 24);
            rep.passed = false;
            rep.first_mismatch =
                Mismatch{e, e24, std::nullopt, a[static_cast<std::size_t>(k)].get_str(), b[static_cast<std::size_t>(k)].get_str()};
            return rep;
        }
    }
    return rep;
}

VerificationReport verify_identity(const IdentityRequest& req) {
    const int n = req.trunc;
    if (n < 0) throw std::invalid_argument("truncation must be non-negative");
    const auto& mut = req.mutation;
    const std::string& name = req.name;

    if (name == "schur") {
        const auto p = require_params(req);
        const auto e = series_E_product(p, n);
        return first_failure(
            name, n, [&] { return verify_equal(e, oracle_series(count_schur_table(p, 0, n)), "E product vs B oracle", mut); },
            [&] { return verify_equal(e, oracle_series(count_distinct_congruent_table(p, n)), "E product vs E oracle"); });
    }
    if (name == "andrews-c31") {
        const SchurParams p(3, 1);
        return verify_equal(series_C_andrews_rhs(n), series_C_bilateral(p, n), name, mut);
    }
    if (name == "bilateral") {
        const auto p = require_params(req);
        const auto c = series_C_bilateral(p, n);
        return first_failure(
            name, n,
            [&] { return verify_equal(c, multiply(series_E_product(p, n), series_g3(p.r(), p.d(), n)), "bilateral vs E*g3", mut); },
            [&] { return verify_equal(c, oracle_series(count_schur_table(p, p.d(), n)), "bilateral vs C oracle"); });
    }
    if (name == "theta-quotient") {
        const auto p = require_params(req);
        return verify_equal(series_theta_quotient(p, n), series_E_product(p, n), name, mut);
    }
    if (name == "univ-factorization") {
        const auto p = require_params(req);
        return verify_equal(multiply(series_theta_quotient(p, n), series_g3(p.r(), p.d(), n)), series_C_bilateral(p, n),
                            name, mut);
    }
    if (name == "qdifference") {
        return verify_qdifference(require_params(req), req.x_trunc, n, QDifferenceForm::Exact, mut);
    }
    if (name == "an-recurrence") {
        return verify_An_recurrence(require_params(req), req.n_max, n, mut);
    }
    if (name == "triple-product") {
        const auto p = require_params(req);
        return verify_equal(theta_sum_series(p, n), theta_half_shift_series(p, n), name, mut);
    }
    if (name == "rr") {
        return first_failure(
            name, n,
            [&] {
                return verify_equal(oracle_series(count_gap_partitions_table(2, 1, n)),
                                    oracle_series(count_congruence_classes_table(5, {1, 4}, n)), "q_{2,1} vs Q_{2,1}", mut);
            },
            [&] {
                return verify_equal(oracle_series(count_gap_partitions_table(2, 2, n)),
                                    oracle_series(count_congruence_classes_table(5, {2, 3}, n)), "q_{2,2} vs Q_{2,2}");
            });
    }
    if (name == "euler") {
        return verify_equal(oracle_series(count_distinct_table(n)), oracle_series(count_congruence_classes_table(2, {1}, n)),
                            name, mut);
    }
    if (name == "alder-andrews") {
        std::vector<int> ds;
        if (req.d) {
            if (*req.d < 3) throw std::invalid_argument("alder-andrews needs d >= 3");
            ds.push_back(*req.d);
        } else {
            ds = {4, 5, 6, 7, 8};
        }
        VerificationReport out = pass_report(name, n);
        for (int d : ds) {
            auto lhs = oracle_series(count_gap_partitions_table(d, 1, n));
            if (mut) lhs = mutate(lhs, *mut);
            const auto rhs = oracle_series(count_congruence_classes_table(d + 3, {1, d + 2}, n));
            auto rep = verify_greater(lhs, rhs, 2L * d + 9, n, name);
            if (!rep.passed) {
                rep.detail = "q_{" + std::to_string(d) + ",1}(n) > Q_{" + std::to_string(d) + ",1}(n) fails";
                return rep;
            }
        }
        return out;
    }
    throw std::invalid_argument("unknown identity '" + name + "'");
}

}  // namespace schurlab
