#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace schurlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    /// Smaller truncations and trial counts; the same checks.
    bool quick = false;
    /// Identity whose left-hand side gets a one-coefficient mutation (negative control).
    std::optional<std::string> mutate;
    std::uint64_t seed = 42;
    int workers = 1;
    /// Restrict to these criterion ids; empty runs all.
    std::set<int> only;
    std::function<void(const CriterionResult&)> on_result;
};

/// Golden crossover indices, recorded from exact scans up to 2000.
inline constexpr long kGoldenCrossover52vs51 = 329;  // B_{5,1}(n) > B_{5,2}(n) from here on
inline constexpr long kGoldenCrossover41vs31 = 5;    // B_{3,1}(n) > B_{4,1}(n) from here on

/// Number of acceptance criteria.
inline constexpr int kCriterionCount = 16;

/// Runs the acceptance criteria in order and returns one result per criterion.
std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// Identities that verify-all can mutate.
const std::vector<std::string>& mutable_identities();

}  // namespace schurlab
