#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurlab/identities.hpp"
#include "schurlab/params.hpp"
#include "schurlab/qseries.hpp"

namespace schurlab {

/// p_j = q^j / (1 + q^j), the probability of E_j.
double event_prob(long j, double q);
/// 1 / (1 + q^j), the probability of F_j.
double event_complement(long j, double q);

inline constexpr double kDefaultEpsilon = 1e-9;

/// The independent events E_1..E_J; indices beyond J are dropped, and the
/// probability that any of them occurs is below epsilon.
class ProbabilityModel {
public:
    ProbabilityModel(const SchurParams& params, double q, double epsilon = kDefaultEpsilon);

    const SchurParams& params() const noexcept { return params_; }
    double q() const noexcept { return q_; }
    long J() const noexcept { return J_; }
    double epsilon() const noexcept { return epsilon_; }
    double p(long j) const { return event_prob(j, q_); }

private:
    SchurParams params_;
    double q_;
    double epsilon_;
    long J_;
};

/// Occurrence flags for E_1..E_J.
class EventConfiguration {
public:
    explicit EventConfiguration(long J) : occurred_(static_cast<std::size_t>(J), false) {}
    static EventConfiguration from_indices(long J, const std::vector<long>& indices);

    long J() const noexcept { return static_cast<long>(occurred_.size()); }
    /// False for j outside 1..J.
    bool occurred(long j) const;
    void set(long j, bool value = true);

private:
    std::vector<bool> occurred_;
};

/// The gap conditions of U imposed from block k on (k = 0 gives U, k = 1 gives V).
bool satisfies_from(const EventConfiguration& config, const SchurParams& params, long k);
bool satisfies_U(const EventConfiguration& config, const SchurParams& params);
bool satisfies_V(const EventConfiguration& config, const SchurParams& params);

/// h_{d,r}(x) for 0 <= x <= 1, summed in the transformed form whose terms
/// carry q^{d n^2}; tail_bound bounds the series and product truncation.
NumericValue h_value(const SchurParams& params, double q, double x, double tol = 1e-15);

/// h_{d,r}(x) from (x; q^d)_inf sum_n A_n x^n over the three products; needs x < 1.
NumericValue h_value_direct(const SchurParams& params, double q, double x, double tol = 1e-15);

/// P(conditions hold from block k) = h_{d,r}(q^{kd}).
NumericValue exact_prob_Uk(const SchurParams& params, double q, long k, double tol = 1e-15);

/// g_3(-q^r; q^d) from the exact series, truncation doubled until the tail is below tol.
NumericValue g3_numeric(const SchurParams& params, double q, double tol = 1e-12);

VerificationReport theorem_prob_check(const SchurParams& params, double q, double tol);

/// Adds delta to p_j wherever the recurrence uses it (negative control).
struct Perturbation {
    long j = 1;
    double delta = 1e-3;
};

VerificationReport verify_Uk_recurrence(const SchurParams& params, double q, long k_max, double tol,
                                        const std::optional<Perturbation>& perturbation = std::nullopt);

struct SimulationEstimate {
    std::string name;           // "P(U)", "P(V)", "P(U|V)", "P(F|U)"
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;   // conditioning-event trials for conditional quantities
    double estimate = 0.0;
    double std_error = 0.0;     // from the estimate's binomial variance
    double target = 0.0;
    double z = 0.0;             // against the target's binomial standard error
};

struct SimulationReport {
    int d = 0;
    int r = 0;
    double q = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    long J = 0;
    double epsilon = 0.0;
    std::vector<SimulationEstimate> estimates;

    /// True when every |z| is at most k.
    bool within(double k) const;
};

/// Seeded Monte Carlo over E_1..E_J. Trial t draws from a splitmix64 stream
/// keyed by (seed, t), so results do not depend on the worker count.
SimulationReport simulate(const SchurParams& params, double q, std::uint64_t trials, std::uint64_t seed,
                          int workers = 1, double epsilon = kDefaultEpsilon);

}  // namespace schurlab
