#pragma once

// Brute-force counting oracles. Nothing here touches generating functions:
// every count comes from a recursive descent over parts, largest first.

#include <functional>
#include <set>
#include <vector>

#include "schurlab/params.hpp"
#include "schurlab/qseries.hpp"

namespace schurlab {

/// Parts in weakly decreasing order; the empty partition has weight 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<long> parts);

    const std::vector<long>& parts() const noexcept { return parts_; }
    long weight() const noexcept;
    std::size_t size() const noexcept { return parts_.size(); }
    bool operator==(const Partition&) const = default;

private:
    std::vector<long> parts_;
};

/// Every part exceeds `min_exclusive`, lies in residue 0 or +-r mod d,
/// consecutive parts differ by at least d, and by more than d when the larger
/// one is divisible by d.
bool is_schur_admissible(const Partition& p, const SchurParams& params, long min_exclusive);

/// B_{d,r}(n) for min_exclusive = 0, C_{d,r}(n) for min_exclusive = d.
BigInt count_schur(const SchurParams& params, long min_exclusive, long n);

/// beta_{d,r,j}(n, m): the partitions counted by count_schur with exactly m parts.
BigInt count_schur_by_parts(const SchurParams& params, long min_exclusive, long n, long m);

/// E_{d,r}(n): distinct parts congruent to +-r mod d.
BigInt count_distinct_congruent(const SchurParams& params, long n);

/// Partitions of n (any multiplicities) with every part in one of `residues` mod `modulus`.
BigInt count_congruence_classes(long modulus, const std::set<long>& residues, long n);

/// q_{gap,min_part}(n): consecutive differences >= gap and smallest part >= min_part.
BigInt count_gap_partitions(long gap, long min_part, long n);

/// Partitions of n into distinct parts.
BigInt count_distinct(long n);

/// Lists the partitions behind count_schur by plain backtracking (no memo).
void for_each_schur_partition(const SchurParams& params, long min_exclusive, long n,
                              const std::function<void(const Partition&)>& visit);

/// Lists every partition of n (used to cross-check the admissibility test).
void for_each_partition(long n, const std::function<void(const Partition&)>& visit);

// Tables for n = 0..n_max sharing one memo across n.
std::vector<BigInt> count_schur_table(const SchurParams& params, long min_exclusive, long n_max);
std::vector<BigInt> count_distinct_congruent_table(const SchurParams& params, long n_max);
std::vector<BigInt> count_congruence_classes_table(long modulus, const std::set<long>& residues, long n_max);
std::vector<BigInt> count_gap_partitions_table(long gap, long min_part, long n_max);
std::vector<BigInt> count_distinct_table(long n_max);

/// A count table as a QSeries with offset 0 and trunc = size - 1.
QSeries oracle_series(std::vector<BigInt> counts);

}  // namespace schurlab
