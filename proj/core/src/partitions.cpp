#include "schurlab/partitions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace schurlab {

namespace {

// Counts partitions built largest part first. `allowed(p)` filters parts and
// `next_max(p)` bounds the part that may follow p. Memoized on
// (remaining weight, bound), which fully determines the remaining choices.
class DescentCounter {
public:
    DescentCounter(std::function<bool(long)> allowed, std::function<long(long)> next_max)
        : allowed_(std::move(allowed)), next_max_(std::move(next_max)) {}

    BigInt count(long n) { return count(n, n); }

    std::vector<BigInt> table(long n_max) {
        std::vector<BigInt> out;
        out.reserve(static_cast<std::size_t>(n_max) + 1);
        for (long n = 0; n <= n_max; ++n) out.push_back(count(n, n));
        return out;
    }

private:
    BigInt count(long rem, long bound) {
        if (rem == 0) return 1;
        bound = std::min(bound, rem);
        if (bound <= 0) return 0;
        ensure(rem);
        auto& slot = memo_[static_cast<std::size_t>(rem)][static_cast<std::size_t>(bound)];
        if (slot) return *slot;
        BigInt total = 0;
        for (long p = bound; p >= 1; --p) {
            if (allowed_(p)) total += count(rem - p, next_max_(p));
        }
        slot = total;
        return total;
    }

    void ensure(long rem) {
        if (static_cast<long>(memo_.size()) <= rem) memo_.resize(static_cast<std::size_t>(rem) + 1);
        auto& row = memo_[static_cast<std::size_t>(rem)];
        if (static_cast<long>(row.size()) <= rem) row.resize(static_cast<std::size_t>(rem) + 1);
    }

    std::function<bool(long)> allowed_;
    std::function<long(long)> next_max_;
    std::vector<std::vector<std::optional<BigInt>>> memo_;
};

void require_non_negative(long n) {
    if (n < 0) throw std::invalid_argument("partition weight must be non-negative, got " + std::to_string(n));
}

long schur_next_max(const SchurParams& params, long part) {
    return part - params.d() - (part % params.d() == 0 ? 1 : 0);
}

DescentCounter schur_counter(const SchurParams& params, long min_exclusive) {
    return DescentCounter([params, min_exclusive](long p) { return p > min_exclusive && params.admissible_residue(p); },
                          [params](long p) { return schur_next_max(params, p); });
}

DescentCounter distinct_congruent_counter(const SchurParams& params) {
    return DescentCounter(
        [params](long p) {
            const long m = p % params.d();
            return m == params.r() || m == params.dr();
        },
        [](long p) { return p - 1; });
}

std::set<long> normalize_residues(long modulus, const std::set<long>& residues) {
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    if (residues.empty()) throw std::invalid_argument("residue set must be non-empty");
    std::set<long> out;
    for (long r : residues) out.insert(((r % modulus) + modulus) % modulus);
    if (modulus > 1 && out.count(0) != 0) {
        throw std::invalid_argument("residues must be non-zero modulo " + std::to_string(modulus));
    }
    return out;
}

DescentCounter congruence_counter(long modulus, const std::set<long>& residues) {
    auto res = normalize_residues(modulus, residues);
    return DescentCounter([modulus, res](long p) { return res.count(p % modulus) != 0; }, [](long p) { return p; });
}

DescentCounter gap_counter(long gap, long min_part) {
    if (gap < 1) throw std::invalid_argument("gap must be at least 1");
    if (min_part < 1) throw std::invalid_argument("minimum part must be at least 1");
    return DescentCounter([min_part](long p) { return p >= min_part; }, [gap](long p) { return p - gap; });
}

void schur_backtrack(const SchurParams& params, long min_exclusive, long rem, long bound, std::vector<long>& parts,
                     const std::function<void(const Partition&)>& visit) {
    if (rem == 0) {
        visit(Partition(parts));
        return;
    }
    for (long p = std::min(bound, rem); p > min_exclusive; --p) {
        if (!params.admissible_residue(p)) continue;
        parts.push_back(p);
        schur_backtrack(params, min_exclusive, rem - p, schur_next_max(params, p), parts, visit);
        parts.pop_back();
    }
}

void plain_backtrack(long rem, long bound, std::vector<long>& parts, const std::function<void(const Partition&)>& visit) {
    if (rem == 0) {
        visit(Partition(parts));
        return;
    }
    for (long p = std::min(bound, rem); p >= 1; --p) {
        parts.push_back(p);
        plain_backtrack(rem - p, p, parts, visit);
        parts.pop_back();
    }
}

}  // namespace

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

long Partition::weight() const noexcept {
    long w = 0;
    for (long p : parts_) w += p;
    return w;
}

bool is_schur_admissible(const Partition& p, const SchurParams& params, long min_exclusive) {
    const auto& parts = p.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= min_exclusive || !params.admissible_residue(parts[i])) return false;
        if (i + 1 < parts.size()) {
            const long gap = parts[i] - parts[i + 1];
            if (gap < params.d()) return false;
            if (parts[i] % params.d() == 0 && gap == params.d()) return false;
        }
    }
    return true;
}

BigInt count_schur(const SchurParams& params, long min_exclusive, long n) {
    require_non_negative(n);
    return schur_counter(params, min_exclusive).count(n);
}

std::vector<BigInt> count_schur_table(const SchurParams& params, long min_exclusive, long n_max) {
    require_non_negative(n_max);
    return schur_counter(params, min_exclusive).table(n_max);
}

BigInt count_schur_by_parts(const SchurParams& params, long min_exclusive, long n, long m) {
    require_non_negative(n);
    if (m < 0) return 0;
    std::map<std::tuple<long, long, long>, BigInt> memo;
    std::function<BigInt(long, long, long)> go = [&](long rem, long bound, long left) -> BigInt {
        if (rem == 0) return left == 0 ? 1 : 0;
        if (left == 0) return 0;
        bound = std::min(bound, rem);
        const auto key = std::make_tuple(rem, bound, left);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigInt total = 0;
        for (long p = bound; p > min_exclusive; --p) {
            if (params.admissible_residue(p)) total += go(rem - p, schur_next_max(params, p), left - 1);
        }
        memo.emplace(key, total);
        return total;
    };
    return go(n, n, m);
}

BigInt count_distinct_congruent(const SchurParams& params, long n) {
    require_non_negative(n);
    return distinct_congruent_counter(params).count(n);
}

std::vector<BigInt> count_distinct_congruent_table(const SchurParams& params, long n_max) {
    require_non_negative(n_max);
    return distinct_congruent_counter(params).table(n_max);
}

BigInt count_congruence_classes(long modulus, const std::set<long>& residues, long n) {
    require_non_negative(n);
    return congruence_counter(modulus, residues).count(n);
}

std::vector<BigInt> count_congruence_classes_table(long modulus, const std::set<long>& residues, long n_max) {
    require_non_negative(n_max);
    return congruence_counter(modulus, residues).table(n_max);
}

BigInt count_gap_partitions(long gap, long min_part, long n) {
    require_non_negative(n);
    return gap_counter(gap, min_part).count(n);
}

std::vector<BigInt> count_gap_partitions_table(long gap, long min_part, long n_max) {
    require_non_negative(n_max);
    return gap_counter(gap, min_part).table(n_max);
}

BigInt count_distinct(long n) { return count_gap_partitions(1, 1, n); }

std::vector<BigInt> count_distinct_table(long n_max) { return count_gap_partitions_table(1, 1, n_max); }

void for_each_schur_partition(const SchurParams& params, long min_exclusive, long n,
                              const std::function<void(const Partition&)>& visit) {
    require_non_negative(n);
    std::vector<long> parts;
    schur_backtrack(params, min_exclusive, n, n, parts, visit);
}

void for_each_partition(long n, const std::function<void(const Partition&)>& visit) {
    require_non_negative(n);
    std::vector<long> parts;
    plain_backtrack(n, n, parts, visit);
}

QSeries oracle_series(std::vector<BigInt> counts) {
    if (counts.empty()) throw std::invalid_argument("empty count table");
    return QSeries(0, std::move(counts));
}

}  // namespace schurlab
