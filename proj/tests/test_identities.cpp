#include "doctest.h"
#include "schurlab/identities.hpp"
#include "schurlab/partitions.hpp"

using namespace schurlab;

namespace {

std::vector<BigInt> coeffs_of(const QSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

const std::vector<SchurParams> kParams = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {7, 3}};

}  // namespace

TEST_CASE("E product") {
    CHECK(coeffs_of(series_E_product(SchurParams(3, 1), 6)) == std::vector<BigInt>{1, 1, 1, 1, 1, 2, 2});
    CHECK(coeffs_of(series_E_product(SchurParams(5, 2), 5)) == std::vector<BigInt>{1, 0, 1, 1, 0, 1});
    for (const auto& p : kParams) CHECK(series_E_product(p, 10)[0] == 1);
}

TEST_CASE("oracle agreement for d <= 6") {
    for (int d = 3; d <= 6; ++d) {
        for (int r = 1; 2 * r < d; ++r) {
            const SchurParams p(d, r);
            CHECK(series_E_product(p, 50) == oracle_series(count_distinct_congruent_table(p, 50)));
            CHECK(series_E_product(p, 50) == oracle_series(count_schur_table(p, 0, 50)));
            CHECK(series_C_bilateral(p, 50) == oracle_series(count_schur_table(p, d, 50)));
        }
    }
}

TEST_CASE("bivariate f counts partitions by number of parts") {
    const SchurParams p(3, 1);
    const auto f = series_f_bivariate(p, 6, 25);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 25; ++n) CHECK(f[m][n] == count_schur_by_parts(p, 0, n, m));
    const auto a = hypergeometric_terms(p, 3, 10);
    CHECK(coeffs_of(a[0]) == coeffs_of(QSeries::one(10)));
}

TEST_CASE("f collapses to the products at x = 1 and x = q^d") {
    for (const auto& p : kParams) {
        CHECK(series_f_transformed(p, 0, 80) == series_E_product(p, 80));
        CHECK(series_f_transformed(p, p.d(), 80) == series_C_bilateral(p, 80));
    }
}

TEST_CASE("bivariate f at x = q^d gives C") {
    for (const auto& p : kParams) {
        const auto f = series_f_bivariate(p, 12, 60);
        const auto c = evaluate_at_q_power(f, p.d());
        CHECK(verify_equal(c, series_C_bilateral(p, 60), "f(q^d) vs C").passed);
    }
}

TEST_CASE("q-difference equation") {
    CHECK(verify_qdifference(SchurParams(3, 1), 5, 20).passed);
    CHECK(verify_qdifference(SchurParams(5, 2), 4, 20).passed);
    for (const auto& p : kParams) CHECK(verify_qdifference(p, 5, 40).passed);
    const auto dropped = verify_qdifference(SchurParams(3, 1), 5, 20, QDifferenceForm::DropFactor);
    CHECK_FALSE(dropped.passed);
    REQUIRE(dropped.first_mismatch.has_value());
    CHECK(dropped.first_mismatch->x_degree.has_value());
}

TEST_CASE("A_n recurrence") {
    CHECK(verify_An_recurrence(SchurParams(3, 1), 6, 60).passed);
    CHECK(verify_An_recurrence(SchurParams(4, 1), 5, 50).passed);
    for (const auto& p : kParams) CHECK(verify_An_recurrence(p, 8, 80).passed);
    // n = 1: (1 - q^d) A_1 = (1 + q^r)(1 + q^{d-r}).
    const SchurParams p(5, 2);
    const auto a = hypergeometric_terms(p, 1, 20);
    auto lhs = a[1];
    lhs.multiply_binomial(-1, 5);
    CHECK(coeffs_of(lhs) == coeffs_of(multiply(QSeries::polynomial({1, 0, 1}, 20), QSeries::polynomial({1, 0, 0, 1}, 20))));
}

TEST_CASE("Andrews' formula") {
    const auto c = series_C_andrews_rhs(12);
    CHECK(coeffs_of(c) == std::vector<BigInt>{1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 2});
    CHECK(series_C_andrews_rhs(12) == series_C_bilateral(SchurParams(3, 1), 12));
    CHECK(verify_equal(series_C_andrews_rhs(200), series_C_bilateral(SchurParams(3, 1), 200), "andrews").passed);
}

TEST_CASE("g3 expansions") {
    CHECK(coeffs_of(series_g3(1, 3, 6)) == std::vector<BigInt>{1, -1, 0, 0, 1, -1, 1});
    CHECK(coeffs_of(series_g3(2, 5, 4)) == std::vector<BigInt>{1, 0, -1, -1, 1});
    for (auto [a, m] : {std::pair{1, 3}, {2, 5}, {1, 2}, {4, 5}}) CHECK(series_g3(a, m, 10)[0] == 1);
    CHECK_THROWS_AS(series_g3(0, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(series_g3(3, 3, 5), std::invalid_argument);
}

TEST_CASE("bilateral form") {
    for (const auto& p : kParams) {
        const auto c = series_C_bilateral(p, 100);
        CHECK(c == multiply(series_E_product(p, 100), series_g3(p.r(), p.d(), 100)));
        for (int n = 1; n <= p.d(); ++n) CHECK(c[n] == 0);
    }
}

TEST_CASE("folded bilateral sum against a two-sided truncation") {
    // Terms n in [-K, K] summed with each negative-index term expanded by hand.
    for (const auto& p : {SchurParams(3, 1), SchurParams(5, 2)}) {
        const int d = p.d(), r = p.r(), N = 60;
        auto direct = QSeries::zero(N);
        for (long n = -8; n <= 8; ++n) {
            const long e = 3L * d * n * (n + 1) / 2;
            const long shift = r + d * n;
            const int sign = (n % 2 == 0) ? 1 : -1;
            if (shift > 0) {
                if (e > N) continue;
                auto t = QSeries::one(N);
                t.divide_binomial(1, static_cast<int>(shift));
                direct.add_shifted(t, static_cast<int>(e), sign);
            } else {
                // 1/(1 + q^{-s}) = q^s / (1 + q^s) with s = -shift > 0.
                const long s = -shift;
                if (e + s > N) continue;
                auto t = QSeries::one(N);
                t.divide_binomial(1, static_cast<int>(s));
                direct.add_shifted(t, static_cast<int>(e + s), sign);
            }
        }
        CHECK(bilateral_sum(p, N) == direct);
    }
}

TEST_CASE("theta quotient") {
    CHECK(series_theta_quotient(SchurParams(3, 1), 6) == series_E_product(SchurParams(3, 1), 6));
    CHECK(series_theta_quotient(SchurParams(5, 2), 40) == series_E_product(SchurParams(5, 2), 40));
    for (const auto& p : kParams) {
        const auto t = series_theta_quotient(p, 200);
        CHECK(t.offset24() == 0);
        CHECK(verify_equal(t, series_E_product(p, 200), "theta quotient").passed);
        // -2d + (3d - 12r) + 12r - d = 0.
        CHECK(-2 * p.d() + (3 * p.d() - 12 * p.r()) + 12 * p.r() - p.d() == 0);
    }
}

TEST_CASE("theta quotient times g3 gives C") {
    for (const auto& p : kParams) {
        CHECK(verify_equal(multiply(series_theta_quotient(p, 200), series_g3(p.r(), p.d(), 200)),
                           oracle_series(count_schur_table(p, p.d(), 200)), "univ")
                  .passed);
    }
}

TEST_CASE("verify_equal") {
    CHECK(verify_equal(series_E_product(SchurParams(3, 1), 100), series_theta_quotient(SchurParams(3, 1), 100), "E").passed);
    const auto rep = verify_equal(QSeries::polynomial({1, 1}, 1), QSeries::polynomial({1, -1}, 1), "1+q vs 1-q");
    CHECK_FALSE(rep.passed);
    REQUIRE(rep.first_mismatch.has_value());
    CHECK(rep.first_mismatch->exponent == 1);
    CHECK(rep.first_mismatch->lhs == "1");
    CHECK(rep.first_mismatch->rhs == "-1");
    CHECK_THROWS_AS(verify_equal(QSeries(0, {1, 1}), QSeries(12, {1, 1}), "bad"), std::invalid_argument);
}

TEST_CASE("every named identity passes and fails under mutation") {
    for (const auto& name : identity_names()) {
        CAPTURE(name);
        IdentityRequest req;
        req.name = name;
        if (name != "andrews-c31" && name != "rr" && name != "euler" && name != "alder-andrews") {
            req.d = 4;
            req.r = 1;
        }
        req.trunc = name == "qdifference" ? 30 : 80;
        CHECK(verify_identity(req).passed);
        req.mutation = name == "alder-andrews" ? Mutation{20, 0, -1000000} : Mutation{7, 1, 1};
        const auto bad = verify_identity(req);
        CHECK_FALSE(bad.passed);
        CHECK(bad.first_mismatch.has_value());
    }
}

TEST_CASE("mutation is located at the mutated exponent") {
    IdentityRequest req{"andrews-c31", std::nullopt, std::nullopt, 60, 5, 8, Mutation{9, 0, 3}};
    const auto rep = verify_identity(req);
    REQUIRE(rep.first_mismatch.has_value());
    CHECK(rep.first_mismatch->exponent == 9);
}

TEST_CASE("unknown identities and missing parameters are rejected") {
    CHECK_THROWS_AS(verify_identity({"nope"}), std::invalid_argument);
    CHECK_THROWS_AS(verify_identity({"schur"}), std::invalid_argument);
}

TEST_CASE("Alder-Andrews window") {
    IdentityRequest req;
    req.name = "alder-andrews";
    req.trunc = 200;
    CHECK(verify_identity(req).passed);
}
