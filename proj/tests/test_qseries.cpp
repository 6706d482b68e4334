#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "schurlab/identities.hpp"
#include "schurlab/qseries.hpp"

using namespace schurlab;

namespace {

QSeries poly(std::vector<BigInt> c, int trunc = 8) { return QSeries::polynomial(std::move(c), trunc); }

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<BigInt> coeffs_of(const QSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

}  // namespace

TEST_CASE("multiplication of small polynomials") {
    CHECK(coeffs_of(multiply(poly(big({1, 1})), poly(big({1, -1})))) == big({1, 0, -1, 0, 0, 0, 0, 0, 0}));
    CHECK(multiply(poly(big({1, 1})), poly(big({1, -1}))).exact());
    CHECK(coeffs_of(multiply(poly(big({1, 1, 1})), poly(big({1, 1, 1})))) == big({1, 2, 3, 2, 1, 0, 0, 0, 0}));
    CHECK(coeffs_of(multiply(poly(big({1, 1}), 1), poly(big({1, -1}), 1))) == big({1, 0}));

    auto prod = QSeries::one(12);
    for (int n = 1; n <= 12; ++n) prod.multiply_binomial(-1, n);
    CHECK(coeffs_of(prod) == big({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1}));
}

TEST_CASE("multiplication truncates to the coarser input and adds offsets") {
    const auto a = QSeries(0, big({1, 2, 3, 4, 5, 6}));
    const auto b = QSeries(24, big({1, 1, 1}));
    const auto c = multiply(a, b);
    CHECK(c.offset24() == 24);
    CHECK(c.trunc() == 2);
    CHECK(coeffs_of(c) == big({1, 3, 6}));
}

TEST_CASE("inverse") {
    CHECK(coeffs_of(inverse(QSeries(0, big({1, -1, 0, 0, 0, 0})))) == big({1, 1, 1, 1, 1, 1}));
    CHECK(coeffs_of(inverse(QSeries::one(4))) == big({1, 0, 0, 0, 0}));
    CHECK(coeffs_of(inverse(QSeries(0, big({1, 1, 1, 1, 1, 2, 2})))) == big({1, -1, 0, 0, 0, -1, 1}));
    CHECK(coeffs_of(inverse(QSeries(0, big({-1, 1, 0})))) == big({-1, -1, -1}));
}

TEST_CASE("inverse rejects a non-unit constant term") {
    CHECK_THROWS_WITH_AS(inverse(QSeries(0, big({2, 1}))), doctest::Contains("2"), std::invalid_argument);
    CHECK_THROWS_AS(inverse(QSeries(0, big({0, 1}))), std::invalid_argument);
}

TEST_CASE("ring laws to truncation") {
    const auto a = series_E_product(SchurParams(3, 1), 40);
    const auto b = series_g3(1, 3, 40);
    const auto c = eta_series(1, 40).shifted(-1);
    CHECK(multiply(a, b) == multiply(b, a));
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    for (const auto& s : {a, b, c}) {
        const auto one = multiply(s, inverse(s));
        CHECK(coeffs_of(one) == coeffs_of(QSeries::one(40)));
    }
}

TEST_CASE("addition aligns offsets without inventing coefficients") {
    const auto a = QSeries(0, big({1, 1, 1, 1}));
    const auto b = QSeries(24, big({1, 1}));
    const auto s = a + b;
    CHECK(s.trunc() == 2);
    CHECK(coeffs_of(s) == big({1, 2, 2}));
    CHECK_THROWS_AS(QSeries(0, big({1, 1})) + QSeries(12, big({1, 1})), std::invalid_argument);
}

TEST_CASE("pochhammer") {
    CHECK(coeffs_of(pochhammer(1, 1, 1, 2, 3)) == big({1, -1, -1, 1}));
    CHECK(coeffs_of(pochhammer(1, 5, 2, 0, 4)) == big({1, 0, 0, 0, 0}));
    CHECK(coeffs_of(pochhammer(-1, 1, 3, infinite, 6)) == big({1, 1, 0, 0, 1, 1, 0}));
    CHECK_THROWS_AS(pochhammer(1, 0, 1, infinite, 5), std::invalid_argument);
}

TEST_CASE("pochhammer factorization") {
    for (int sign : {1, -1}) {
        for (auto [k, m, n, n2] : {std::tuple{1, 1, 3, 4}, {2, 3, 2, 5}, {0, 2, 4, 1}}) {
            const auto left = multiply(pochhammer(sign, k, m, n, 30), pochhammer(sign, k + n * m, m, n2, 30));
            CHECK(left == pochhammer(sign, k, m, n + n2, 30));
        }
    }
}

TEST_CASE("coefficient extraction") {
    const auto p = pochhammer(-1, 1, 3, infinite, 6);
    CHECK(coefficient(p, 5) == 1);
    CHECK(coefficient(p, 2) == 0);
    CHECK(coefficient(p, 0) == 1);
    CHECK_THROWS_AS(coefficient(p, 7), std::out_of_range);
    CHECK_THROWS_AS(coefficient(p, -1), std::out_of_range);
    CHECK_THROWS_AS(coefficient(eta_series(1, 5), 1), std::out_of_range);
    CHECK(coefficient24(eta_series(1, 5), 25) == -1);
}

TEST_CASE("real evaluation") {
    const auto one_minus_q = QSeries::polynomial(big({1, -1}), 1);
    const auto v = eval_real(one_minus_q, 0.5);
    CHECK(v.value == doctest::Approx(0.5));
    CHECK(v.tail_bound == 0.0);

    const auto geo = QSeries(0, std::vector<BigInt>(51, 1));
    const auto g = eval_real(geo, 0.5);
    CHECK(std::abs(g.value - (2.0 - 2.0 * std::pow(0.5, 51))) < 1e-15);
    CHECK(std::abs(2.0 - g.value) <= g.tail_bound * 1.0000001);

    const auto e = eval_real(series_E_product(SchurParams(3, 1), 2000), 0.9);
    CHECK(e.tail_bound < 1e-6);
    double direct = 1.0;
    for (int n = 0; n < 400; ++n) direct *= (1.0 + std::pow(0.9, 1 + 3 * n)) * (1.0 + std::pow(0.9, 2 + 3 * n));
    CHECK(std::abs(e.value - direct) < 1e-6 * direct);

    CHECK_THROWS_AS(eval_real(one_minus_q, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(eval_real(one_minus_q, 0.0), std::invalid_argument);
}

TEST_CASE("high-precision evaluation carries at least 50 digits") {
    const auto geo = QSeries::polynomial(std::vector<BigInt>(11, 1), 10);
    const auto v = eval_real_hp(geo, 0.5);
    const HighPrecision want = HighPrecision(2) - HighPrecision(2) * boost::multiprecision::pow(HighPrecision(0.5), 11);
    CHECK(boost::multiprecision::abs(v.value - want) < HighPrecision("1e-49"));
}

TEST_CASE("complex evaluation") {
    const auto one = QSeries::polynomial(big({1}), 0);
    CHECK(std::abs(eval_complex(one, {0.3, 1.7}).value - 1.0) < 1e-15);

    const auto geo = QSeries(0, std::vector<BigInt>(120, 1));
    const auto c = eval_complex(geo, std::log(2.0));
    const auto r = eval_real(geo, 0.5);
    CHECK(std::abs(c.value - r.value) <= 1e-14 + c.tail_bound + r.tail_bound);

    const auto e = series_E_product(SchurParams(3, 1), 1500);
    const double at_zero = std::abs(eval_complex(e, {0.1, 0.0}).value);
    const double at_pi = std::abs(eval_complex(e, {0.1, std::numbers::pi}).value);
    CHECK(at_pi < at_zero);
    CHECK(at_pi < 1e-2 * at_zero);
}

TEST_CASE("complex evaluation reports the truncation it needs") {
    const auto e = series_E_product(SchurParams(3, 1), 100);
    try {
        eval_complex(e, {0.2, 0.0}, 1e-12);
        FAIL("expected ToleranceUnreachable");
    } catch (const ToleranceUnreachable& ex) {
        CHECK(ex.required_trunc() > 100);
    }
}

TEST_CASE("eta series") {
    const auto e1 = eta_series(1, 12);
    CHECK(e1.offset24() == 1);
    CHECK(coeffs_of(e1) == big({1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1}));
    const auto e3 = eta_series(3, 6);
    CHECK(e3.offset24() == 3);
    CHECK(coeffs_of(e3) == big({1, 0, 0, -1, 0, 0, -1}));
    for (int m = 1; m <= 6; ++m) CHECK(eta_series(m, 10)[0] == 1);
}

TEST_CASE("eta inversion numerics") {
    const auto eta = eta_series(1, 200);
    for (double t : {0.5, 1.0, 2.0}) {
        const auto lhs = eval_complex(eta, 2.0 * std::numbers::pi / t);
        const auto rhs = eval_complex(eta, 2.0 * std::numbers::pi * t);
        CHECK(std::abs(lhs.value - std::sqrt(t) * rhs.value) < 1e-8);
    }
}

TEST_CASE("theta half-shift series offsets") {
    const auto t31 = theta_half_shift_series(SchurParams(3, 1), 10);
    CHECK(t31.offset24() == -3);
    CHECK(t31[0] == -1);
    CHECK(theta_half_shift_series(SchurParams(5, 2), 10).offset24() == -9);
}

TEST_CASE("triple product instance") {
    for (auto [d, r] : {std::pair{3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {7, 3}, {8, 3}}) {
        const SchurParams p(d, r);
        CHECK(theta_sum_series(p, 200) == theta_half_shift_series(p, 200));
        CHECK(theta_sum_series(p, 60, WSign::Minus) == theta_sum_series(p, 60, WSign::Plus).negated());
    }
}

TEST_CASE("theta inversion numerics") {
    using namespace std::complex_literals;
    for (auto [s, t] : {std::pair{0.1, 0.5}, {0.2, 1.0}, {0.05, 0.8}}) {
        const std::complex<double> tau = 1i * t;
        const std::complex<double> w = 1i * s;
        const auto lhs = theta_eval(w / tau, -1.0 / tau);
        const auto rhs = -1i * std::sqrt(-1i * tau) * std::exp(1i * std::numbers::pi * w * w / tau) * theta_eval(w, tau).value;
        CHECK(std::abs(lhs.value - rhs) < 1e-6);
    }
}

TEST_CASE("theta series agrees with direct summation") {
    using namespace std::complex_literals;
    const SchurParams p(5, 2);
    const double t = 0.25;
    const auto series = eval_complex(theta_half_shift_series(p, 300), 2.0 * std::numbers::pi * t);
    const auto direct = theta_eval(0.5 + 1i * (p.r() * t), 1i * (p.d() * t));
    CHECK(std::abs(series.value - direct.value) < 1e-10);
}
