#include "doctest.h"
#include "schurlab/partitions.hpp"

using namespace schurlab;

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(SchurParams(3, 1));
    CHECK_NOTHROW(SchurParams(8, 3));
    CHECK_THROWS_AS(SchurParams(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(SchurParams(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(SchurParams(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(SchurParams(6, 3), std::invalid_argument);
    // Non-coprime pairs are taken as given.
    CHECK_NOTHROW(SchurParams(6, 2));
}

TEST_CASE("partition invariants") {
    CHECK(Partition().weight() == 0);
    CHECK(Partition({5, 3, 3, 1}).weight() == 12);
    CHECK_THROWS_AS(Partition({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({3, 0}), std::invalid_argument);
}

TEST_CASE("admissibility") {
    const SchurParams p(3, 1);
    CHECK(is_schur_admissible(Partition(), p, 0));
    CHECK(is_schur_admissible(Partition(), SchurParams(7, 2), 7));
    CHECK(is_schur_admissible(Partition({4, 1}), p, 0));
    CHECK_FALSE(is_schur_admissible(Partition({6, 3}), p, 0));
    CHECK(is_schur_admissible(Partition({7, 3}), p, 0));
    CHECK_FALSE(is_schur_admissible(Partition({4, 1}), p, 3));
    CHECK_FALSE(is_schur_admissible(Partition({3, 2}), p, 0));
    CHECK_FALSE(is_schur_admissible(Partition({6}), SchurParams(5, 2), 0));
}

TEST_CASE("Schur-type counts") {
    const SchurParams p(3, 1);
    CHECK(count_schur(p, 0, 6) == 2);
    CHECK(count_schur(p, 3, 11) == 2);
    for (auto [d, r] : {std::pair{3, 1}, {5, 2}, {7, 3}}) {
        CHECK(count_schur(SchurParams(d, r), 0, 0) == 1);
        CHECK(count_schur(SchurParams(d, r), d, 0) == 1);
    }
    const auto table = count_schur_table(p, 0, 6);
    CHECK(table == std::vector<BigInt>{1, 1, 1, 1, 1, 2, 2});
}

TEST_CASE("backtracking enumerator agrees with the memoized counter") {
    for (auto [d, r] : {std::pair{3, 1}, {4, 1}, {5, 2}}) {
        const SchurParams p(d, r);
        for (long j : {0L, static_cast<long>(d)}) {
            for (long n = 0; n <= 30; ++n) {
                long listed = 0;
                for_each_schur_partition(p, j, n, [&](const Partition& part) {
                    CHECK(part.weight() == n);
                    CHECK(is_schur_admissible(part, p, j));
                    ++listed;
                });
                CHECK(count_schur(p, j, n) == listed);
            }
        }
    }
}

TEST_CASE("admissibility filter over all partitions agrees with the counter") {
    const SchurParams p(4, 1);
    for (long n = 0; n <= 22; ++n) {
        long admissible = 0;
        for_each_partition(n, [&](const Partition& part) { admissible += is_schur_admissible(part, p, 0); });
        CHECK(count_schur(p, 0, n) == admissible);
    }
}

TEST_CASE("counts by number of parts") {
    const SchurParams p(3, 1);
    CHECK(count_schur_by_parts(p, 0, 6, 1) == 1);
    CHECK(count_schur_by_parts(p, 0, 6, 2) == 1);
    CHECK(count_schur_by_parts(SchurParams(7, 2), 0, 0, 0) == 1);
    for (long n = 0; n <= 30; ++n) {
        BigInt total = 0;
        for (long m = 0; m <= n; ++m) total += count_schur_by_parts(p, 0, n, m);
        CHECK(total == count_schur(p, 0, n));
    }
}

TEST_CASE("distinct congruent parts") {
    const SchurParams p(3, 1);
    CHECK(count_distinct_congruent(p, 5) == 2);
    CHECK(count_distinct_congruent(p, 6) == 2);
    CHECK(count_distinct_congruent(SchurParams(5, 2), 0) == 1);
}

TEST_CASE("congruence classes") {
    CHECK(count_congruence_classes(5, {1, 4}, 4) == 2);
    CHECK(count_congruence_classes(5, {2, 3}, 4) == 1);
    CHECK(count_congruence_classes(7, {3}, 0) == 1);
    CHECK(count_congruence_classes(5, {6, -1}, 4) == 2);
    CHECK_THROWS_AS(count_congruence_classes(5, {}, 4), std::invalid_argument);
    CHECK_THROWS_AS(count_congruence_classes(5, {5}, 4), std::invalid_argument);
}

TEST_CASE("gap partitions") {
    CHECK(count_gap_partitions(2, 1, 4) == 2);
    CHECK(count_gap_partitions(2, 2, 4) == 1);
    CHECK(count_gap_partitions(3, 2, 0) == 1);
}

TEST_CASE("Rogers-Ramanujan, Euler and the mod 6 form of Schur") {
    const auto q21 = count_gap_partitions_table(2, 1, 80);
    const auto q22 = count_gap_partitions_table(2, 2, 80);
    const auto rr1 = count_congruence_classes_table(5, {1, 4}, 80);
    const auto rr2 = count_congruence_classes_table(5, {2, 3}, 80);
    CHECK(q21 == rr1);
    CHECK(q22 == rr2);
    CHECK(count_distinct_table(80) == count_congruence_classes_table(2, {1}, 80));
    CHECK(count_distinct_congruent_table(SchurParams(3, 1), 80) == count_congruence_classes_table(6, {1, 5}, 80));
}

TEST_CASE("Schur's identity between the oracles") {
    for (int d = 3; d <= 8; ++d) {
        for (int r = 1; 2 * r < d; ++r) {
            const SchurParams p(d, r);
            CHECK(count_schur_table(p, 0, 60) == count_distinct_congruent_table(p, 60));
        }
    }
}

TEST_CASE("refinement by the smallest part") {
    for (auto [d, r] : {std::pair{3, 1}, {5, 2}, {7, 3}}) {
        const SchurParams p(d, r);
        const auto b = count_schur_table(p, 0, 60);
        const auto c = count_schur_table(p, d, 60);
        for (long n = 0; n <= 60; ++n) CHECK(c[n] <= b[n]);
        for (long n = 1; n <= d; ++n) CHECK(c[n] == 0);
    }
}

TEST_CASE("oracle series") {
    const auto s = oracle_series({1, 0, 2});
    CHECK(s.offset24() == 0);
    CHECK(s.trunc() == 2);
    CHECK(s[2] == 2);
}
