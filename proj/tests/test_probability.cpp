#include <cmath>

#include "doctest.h"
#include "schurlab/identities.hpp"
#include "schurlab/partitions.hpp"
#include "schurlab/probability.hpp"

using namespace schurlab;

namespace {

double prod_inverse(int d, double q) {
    double p = 1.0;
    for (int n = 1; n < 2000; ++n) p /= 1.0 + std::pow(q, d * n);
    return p;
}

const SimulationEstimate& find(const SimulationReport& rep, const std::string& name) {
    for (const auto& e : rep.estimates)
        if (e.name == name) return e;
    throw std::runtime_error("missing estimate " + name);
}

}  // namespace

TEST_CASE("event probabilities") {
    CHECK(event_prob(1, 0.5) == doctest::Approx(1.0 / 3.0));
    CHECK(event_prob(2, 0.5) == doctest::Approx(0.2));
    CHECK(event_prob(3, 1e-9) < 1e-20);
    CHECK(event_prob(4, 0.7) + event_complement(4, 0.7) == doctest::Approx(1.0));
}

TEST_CASE("truncation index") {
    const ProbabilityModel m(SchurParams(3, 1), 0.5);
    CHECK(m.J() == static_cast<long>(std::ceil(std::log(1e-9 * 0.5) / std::log(0.5))));
    CHECK(std::pow(0.5, m.J() + 1) / 0.5 <= 1e-9);
    CHECK_THROWS_AS(ProbabilityModel(SchurParams(3, 1), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityModel(SchurParams(3, 1), 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("predicates") {
    const SchurParams p(3, 1);
    const EventConfiguration none(20);
    CHECK(satisfies_U(none, p));
    CHECK(satisfies_V(none, p));

    const auto c12 = EventConfiguration::from_indices(20, {1, 2});
    CHECK_FALSE(satisfies_U(c12, p));
    CHECK(satisfies_V(c12, p));

    CHECK(satisfies_U(EventConfiguration::from_indices(20, {4, 7}), p));
    CHECK_FALSE(satisfies_U(EventConfiguration::from_indices(20, {3, 6}), p));
    CHECK_FALSE(satisfies_U(EventConfiguration::from_indices(20, {3, 4}), p));

    const auto c = EventConfiguration::from_indices(5, {5});
    CHECK(c.occurred(5));
    CHECK_FALSE(c.occurred(6));
    CHECK_FALSE(c.occurred(0));
    CHECK_THROWS_AS(EventConfiguration::from_indices(5, {6}), std::out_of_range);
}

TEST_CASE("irrelevant indices do not matter") {
    for (auto p : {SchurParams(5, 2), SchurParams(7, 2)}) {
        const long J = 40;
        const auto base = EventConfiguration::from_indices(J, {p.r(), 2L * p.d(), 3L * p.d() + p.d() - p.r()});
        for (long j = 1; j <= J; ++j) {
            const long m = j % p.d();
            if (m == 0 || m == p.r() || m == p.d() - p.r()) continue;
            auto flipped = base;
            flipped.set(j, !base.occurred(j));
            CHECK(satisfies_U(flipped, p) == satisfies_U(base, p));
            CHECK(satisfies_V(flipped, p) == satisfies_V(base, p));
        }
    }
}

TEST_CASE("U matches Schur admissibility on every small configuration") {
    for (auto p : {SchurParams(3, 1), SchurParams(4, 1), SchurParams(5, 2)}) {
        std::vector<long> relevant;
        for (long j = 1; j <= 12; ++j) {
            const long m = j % p.d();
            if (m == 0 || m == p.r() || m == p.d() - p.r()) relevant.push_back(j);
        }
        for (unsigned mask = 0; mask < (1u << relevant.size()); ++mask) {
            std::vector<long> on;
            for (std::size_t i = 0; i < relevant.size(); ++i)
                if (mask & (1u << i)) on.push_back(relevant[i]);
            const auto config = EventConfiguration::from_indices(12, on);
            const Partition part(std::vector<long>(on.rbegin(), on.rend()));
            CHECK(satisfies_U(config, p) == is_schur_admissible(part, p, 0));
        }
    }
}

TEST_CASE("V is implied by U") {
    const SchurParams p(3, 1);
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
        EventConfiguration c(12);
        for (long j = 1; j <= 12; ++j)
            if (mask & (1u << (j - 1))) c.set(j);
        if (satisfies_U(c, p)) CHECK(satisfies_V(c, p));
    }
}

TEST_CASE("P(U) is the reciprocal product") {
    const auto v = exact_prob_Uk(SchurParams(3, 1), 0.5, 0);
    CHECK(v.value == doctest::Approx(0.8733).epsilon(1e-4));
    for (auto p : {SchurParams(3, 1), SchurParams(5, 2), SchurParams(7, 3)}) {
        for (double q : {0.2, 0.5, 0.8}) {
            CHECK(std::abs(exact_prob_Uk(p, q, 0).value - prod_inverse(p.d(), q)) < 1e-12);
        }
    }
}

TEST_CASE("P(U_k) rises toward 1") {
    for (auto p : {SchurParams(3, 1), SchurParams(5, 2)}) {
        double previous = 0.0;
        for (long k = 0; k <= 5; ++k) {
            const double v = exact_prob_Uk(p, 0.6, k).value;
            CHECK(v > previous);
            CHECK(v < 1.0);
            previous = v;
        }
        CHECK(exact_prob_Uk(p, 1e-6, 0).value == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(exact_prob_Uk(p, 1e-6, 3).value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("transformed and direct forms of h agree") {
    for (auto p : {SchurParams(3, 1), SchurParams(4, 1), SchurParams(5, 2)}) {
        for (double q : {0.3, 0.6}) {
            for (double x : {0.0, 0.1, 0.5, 0.9}) {
                CHECK(std::abs(h_value(p, q, x).value - h_value_direct(p, q, x).value) < 1e-13);
            }
        }
    }
    CHECK(h_value(SchurParams(3, 1), 0.5, 0.0).value == doctest::Approx(1.0));
    CHECK_THROWS_AS(h_value_direct(SchurParams(3, 1), 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("conditional probability identities") {
    const auto g = g3_numeric(SchurParams(3, 1), 0.3);
    CHECK(g.value == doctest::Approx(0.706).epsilon(1e-3));
    CHECK(theorem_prob_check(SchurParams(3, 1), 0.3, 1e-3).passed);
    CHECK(theorem_prob_check(SchurParams(3, 1), 0.5, 1e-6).passed);
    CHECK(theorem_prob_check(SchurParams(5, 2), 0.4, 1e-6).passed);
    CHECK(theorem_prob_check(SchurParams(7, 2), 0.7, 1e-6).passed);
    CHECK(theorem_prob_check(SchurParams(4, 1), 0.01, 1e-9).passed);
    CHECK(g3_numeric(SchurParams(4, 1), 0.01).value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("U_k recurrence") {
    CHECK(verify_Uk_recurrence(SchurParams(3, 1), 0.5, 6, 1e-10).passed);
    CHECK(verify_Uk_recurrence(SchurParams(5, 2), 0.6, 5, 1e-10).passed);
    CHECK(verify_Uk_recurrence(SchurParams(7, 3), 0.8, 6, 1e-10).passed);
    const auto bad = verify_Uk_recurrence(SchurParams(3, 1), 0.5, 6, 1e-10, Perturbation{4, 1e-3});
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.first_mismatch.has_value());
}

TEST_CASE("g3 stays below 1") {
    for (auto p : {SchurParams(3, 1), SchurParams(4, 1), SchurParams(5, 1), SchurParams(5, 2), SchurParams(7, 3)}) {
        for (int i = 1; i <= 9; ++i) {
            const auto v = g3_numeric(p, 0.1 * i);
            CHECK(v.value + v.tail_bound < 1.0);
        }
    }
}

TEST_CASE("simulation agrees with exact targets") {
    const auto rep = simulate(SchurParams(3, 1), 0.5, 100000, 42);
    CHECK(rep.trials == 100000);
    CHECK(rep.estimates.size() == 4);
    const auto& u = find(rep, "P(U)");
    CHECK(u.target == doctest::Approx(0.8733).epsilon(1e-4));
    CHECK(std::abs(u.z) < 4.0);
    CHECK(rep.within(4.0));
    CHECK(find(rep, "P(U|V)").trials == find(rep, "P(V)").hits);
    CHECK(find(rep, "P(F|U)").trials == u.hits);

    const auto rep3 = simulate(SchurParams(3, 1), 0.3, 200000, 7);
    CHECK(find(rep3, "P(F|U)").target == doctest::Approx(0.706).epsilon(1e-3));
    CHECK(rep3.within(4.0));
}

TEST_CASE("simulation is independent of the worker count") {
    const auto one = simulate(SchurParams(5, 2), 0.4, 20000, 9, 1);
    const auto four = simulate(SchurParams(5, 2), 0.4, 20000, 9, 4);
    REQUIRE(one.estimates.size() == four.estimates.size());
    for (std::size_t i = 0; i < one.estimates.size(); ++i) {
        CHECK(one.estimates[i].hits == four.estimates[i].hits);
        CHECK(one.estimates[i].trials == four.estimates[i].trials);
    }
    const auto other_seed = simulate(SchurParams(5, 2), 0.4, 20000, 10, 1);
    CHECK(other_seed.estimates[0].hits != one.estimates[0].hits);
}

TEST_CASE("near-empty configurations") {
    const auto rep = simulate(SchurParams(3, 1), 0.01, 20000, 1);
    for (const auto& e : rep.estimates) CHECK(e.estimate > 0.97);
    CHECK_THROWS_AS(simulate(SchurParams(3, 1), 0.5, 0, 1), std::invalid_argument);
}
