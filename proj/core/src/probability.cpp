#include "schurlab/probability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace schurlab {

namespace {

void require_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

double event_prob(long j, double q) {
    const double t = std::pow(q, static_cast<double>(j));
    return t / (1.0 + t);
}

double event_complement(long j, double q) { return 1.0 / (1.0 + std::pow(q, static_cast<double>(j))); }

ProbabilityModel::ProbabilityModel(const SchurParams& params, double q, double epsilon)
    : params_(params), q_(q), epsilon_(epsilon) {
    require_q(q);
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    J_ = std::max(1L, static_cast<long>(std::ceil(std::log(epsilon * (1.0 - q)) / std::log(q))));
    const double tail = std::pow(q, static_cast<double>(J_ + 1)) / (1.0 - q);
    if (tail > epsilon) throw std::logic_error("event truncation does not meet its tail bound");
}

EventConfiguration EventConfiguration::from_indices(long J, const std::vector<long>& indices) {
    EventConfiguration c(J);
    for (long j : indices) c.set(j);
    return c;
}

bool EventConfiguration::occurred(long j) const {
    return j >= 1 && j <= J() && occurred_[static_cast<std::size_t>(j - 1)];
}

void EventConfiguration::set(long j, bool value) {
    if (j < 1 || j > J()) throw std::out_of_range("event index " + std::to_string(j) + " outside 1.." + std::to_string(J()));
    occurred_[static_cast<std::size_t>(j - 1)] = value;
}

bool satisfies_from(const EventConfiguration& config, const SchurParams& params, long k) {
    const long d = params.d();
    const long r = params.r();
    auto e = [&config](long j) { return config.occurred(j); };
    for (long n = k; n * d + r <= config.J(); ++n) {
        const long a = n * d + r;
        const long b = n * d + d - r;
        const long c = (n + 1) * d;
        if (e(a) && (e(b) || e(c))) return false;
        if (e(b) && (e(c) || e(c + r))) return false;
        if (e(c) && (e(c + r) || e(c + d - r) || e(c + d))) return false;
    }
    return true;
}

bool satisfies_U(const EventConfiguration& config, const SchurParams& params) {
    return satisfies_from(config, params, 0);
}

bool satisfies_V(const EventConfiguration& config, const SchurParams& params) {
    return satisfies_from(config, params, 1);
}

namespace {

constexpr long kMaxTerms = 1000000;

// prod_{n>=0} (1 + sign * x q^{start + step n}) with its relative truncation error.
NumericValue product(int sign, double x, double q, double start, double step, double tol) {
    double value = 1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        const double y = x * std::pow(q, start + step * static_cast<double>(n));
        value *= 1.0 + sign * y;
        if (y < tol * 1e-3) {
            const double rest = y / (1.0 - std::pow(q, step));
            return {value, 2.0 * rest * std::abs(value)};
        }
    }
    throw ToleranceUnreachable("infinite product did not settle", -1);
}

}  // namespace

NumericValue h_value(const SchurParams& params, double q, double x, double tol) {
    require_q(q);
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("h_value needs 0 <= x <= 1");
    const double d = params.d();
    const double r = params.r();
    const double qd = std::pow(q, d);
    double term = 1.0;
    double sum = 1.0;
    double series_tail = -1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        const double qdn = std::pow(qd, static_cast<double>(n));
        const double ratio = (1.0 - x * qdn) * x * std::pow(qd, 2.0 * static_cast<double>(n) + 1.0) /
                             ((1.0 - qdn * qd) * (1.0 + x * qdn * std::pow(q, r)) * (1.0 + x * qdn * std::pow(q, d - r)));
        term *= ratio;
        sum += term;
        // The ratios shrink geometrically from here on.
        const double bound = ratio < 0.5 ? std::abs(term) * ratio / (1.0 - ratio) : INFINITY;
        if (bound < tol * 1e-3 || term == 0.0) {
            series_tail = bound == INFINITY ? 0.0 : bound;
            break;
        }
    }
    if (series_tail < 0.0) throw ToleranceUnreachable("h series did not converge", -1);
    const auto denom = product(1, x, q, d, d, tol);
    const double value = sum / denom.value;
    const double tail = series_tail / denom.value + std::abs(value) * denom.tail_bound / denom.value;
    if (tail > tol) throw ToleranceUnreachable("h tail " + fmt(tail) + " exceeds tolerance", -1);
    return {value, tail};
}

NumericValue h_value_direct(const SchurParams& params, double q, double x, double tol) {
    require_q(q);
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("h_value_direct needs 0 <= x < 1");
    const double d = params.d();
    const double r = params.r();
    double term = 1.0;
    double sum = 1.0;
    double series_tail = -1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        const double qdn = std::pow(q, d * static_cast<double>(n));
        const double ratio = x * (1.0 + qdn * std::pow(q, r)) * (1.0 + qdn * std::pow(q, d - r)) /
                             (1.0 - qdn * std::pow(q, d));
        term *= ratio;
        sum += term;
        if (ratio < 1.0) {
            const double bound = term * ratio / (1.0 - ratio);
            if (bound < tol * 1e-3) {
                series_tail = bound;
                break;
            }
        }
    }
    if (series_tail < 0.0) throw ToleranceUnreachable("f series did not converge", -1);
    const auto num = product(-1, x, q, 0.0, d, tol);
    const auto pr = product(1, x, q, r, d, tol);
    const auto pdr = product(1, x, q, d - r, d, tol);
    const auto pd = product(1, x, q, d, d, tol);
    const double den = pr.value * pdr.value * pd.value;
    const double value = num.value * sum / den;
    const double rel = num.tail_bound / std::abs(num.value) + pr.tail_bound / pr.value +
                       pdr.tail_bound / pdr.value + pd.tail_bound / pd.value;
    return {value, std::abs(num.value) * series_tail / den + std::abs(value) * rel};
}

NumericValue exact_prob_Uk(const SchurParams& params, double q, long k, double tol) {
    if (k < 0) throw std::invalid_argument("block index k must be >= 0");
    return h_value(params, q, std::pow(q, static_cast<double>(k * params.d())), tol);
}

NumericValue g3_numeric(const SchurParams& params, double q, double tol) {
    require_q(q);
    for (int trunc = 64; trunc <= (1 << 16); trunc *= 2) {
        const QSeries s = series_g3(params.r(), params.d(), trunc);
        try {
            const auto v = eval_real(s, q);
            if (v.tail_bound <= tol) return v;
        } catch (const ToleranceUnreachable&) {
        }
    }
    throw ToleranceUnreachable("g3 tail stays above " + fmt(tol) + " up to truncation 65536", -1);
}

VerificationReport theorem_prob_check(const SchurParams& params, double q, double tol) {
    const double inner_tol = std::min(1e-13, tol * 1e-3);
    const double pu = exact_prob_Uk(params, q, 0, inner_tol).value;
    const double pv = exact_prob_Uk(params, q, 1, inner_tol).value;
    const auto g3 = g3_numeric(params, q, inner_tol);
    const long d = params.d();
    const long r = params.r();
    const double fbar = event_complement(r, q) * event_complement(d - r, q) * event_complement(d, q);

    const double lhs1 = pu / pv;
    const double rhs1 = fbar / g3.value;
    const double lhs2 = fbar * pv / pu;
    const double rhs2 = g3.value;
    const double dev1 = std::abs(lhs1 - rhs1);
    const double dev2 = std::abs(lhs2 - rhs2);

    VerificationReport rep;
    rep.identity_name = "prob-check";
    rep.max_deviation = std::max(dev1, dev2);
    rep.passed = dev1 < tol && dev2 < tol;
    if (!rep.passed) {
        const bool first = !(dev1 < tol);
        rep.first_mismatch = Mismatch{first ? 1 : 2, first ? 24 : 48, std::nullopt, fmt(first ? lhs1 : lhs2),
                                      fmt(first ? rhs1 : rhs2)};
    }
    std::ostringstream detail;
    detail.precision(12);
    detail << "P(U|V) " << lhs1 << " vs " << rhs1 << "; P(F|U) " << lhs2 << " vs g3 " << rhs2;
    rep.detail = detail.str();
    return rep;
}

VerificationReport verify_Uk_recurrence(const SchurParams& params, double q, long k_max, double tol,
                                        const std::optional<Perturbation>& perturbation) {
    require_q(q);
    const long d = params.d();
    const long r = params.r();
    auto p = [&](long j) {
        double v = event_prob(j, q);
        if (perturbation && perturbation->j == j) v += perturbation->delta;
        return v;
    };
    auto pb = [&](long j) { return 1.0 - p(j); };
    std::vector<double> h;
    for (long k = 0; k <= k_max + 2; ++k) h.push_back(exact_prob_Uk(params, q, k, tol * 1e-3).value);

    VerificationReport rep;
    rep.identity_name = "uk-recurrence";
    rep.trunc = static_cast<int>(k_max);
    rep.passed = true;
    double worst = 0.0;
    for (long k = 0; k <= k_max; ++k) {
        const long a = k * d + r, b = k * d + d - r, c = (k + 1) * d;
        const long a2 = a + d, b2 = b + d, c2 = c + d;
        const double one_step = p(a) * pb(b) * pb(c) + pb(a) * p(b) * pb(c) + pb(a) * pb(b) * pb(c);
        const double two_step =
            pb(a) * pb(b) * p(c) * pb(a2) * pb(b2) * pb(c2) - pb(a) * p(b) * pb(c) * p(a2) * pb(b2) * pb(c2);
        const auto i = static_cast<std::size_t>(k);
        const double rhs = one_step * h[i + 1] + two_step * h[i + 2];
        const double dev = std::abs(h[i] - rhs);
        worst = std::max(worst, dev);
        if (!(dev < tol) && rep.passed) {
            rep.passed = false;
            rep.first_mismatch = Mismatch{k, 24 * k, std::nullopt, fmt(h[i]), fmt(rhs)};
        }
    }
    rep.max_deviation = worst;
    rep.detail = rep.passed ? "recurrence holds for k = 0.." + std::to_string(k_max)
                            : "recurrence fails first at k = " + std::to_string(rep.first_mismatch->exponent);
    return rep;
}

bool SimulationReport::within(double k) const {
    return std::all_of(estimates.begin(), estimates.end(),
                       [k](const SimulationEstimate& e) { return std::abs(e.z) <= k; });
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Tally {
    std::uint64_t u = 0, v = 0, fu = 0;
};

Tally run_trials(const SchurParams& params, const std::vector<double>& probs, std::uint64_t seed,
                 std::uint64_t begin, std::uint64_t end) {
    const long J = static_cast<long>(probs.size());
    const long d = params.d();
    const long r = params.r();
    EventConfiguration config(J);
    Tally t;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        // Stream for this trial: seed mixed with the trial index.
        std::uint64_t key = seed ^ 0x6A09E667F3BCC909ULL;
        std::uint64_t state = splitmix64(key) ^ trial;
        state = splitmix64(state);
        for (long j = 1; j <= J; ++j) {
            const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            config.set(j, u < probs[static_cast<std::size_t>(j - 1)]);
        }
        const bool in_v = satisfies_V(config, params);
        const bool in_u = in_v && satisfies_U(config, params);
        t.v += in_v;
        t.u += in_u;
        t.fu += in_u && !config.occurred(r) && !config.occurred(d - r) && !config.occurred(d);
    }
    return t;
}

SimulationEstimate estimate(std::string name, std::uint64_t hits, std::uint64_t trials, double target) {
    SimulationEstimate e;
    e.name = std::move(name);
    e.hits = hits;
    e.trials = trials;
    e.target = target;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    e.estimate = static_cast<double>(hits) / n;
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
    const double target_se = std::sqrt(target * (1.0 - target) / n);
    const double diff = e.estimate - target;
    e.z = target_se > 0.0 ? diff / target_se : (diff == 0.0 ? 0.0 : INFINITY);
    return e;
}

}  // namespace

SimulationReport simulate(const SchurParams& params, double q, std::uint64_t trials, std::uint64_t seed, int workers,
                          double epsilon) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const ProbabilityModel model(params, q, epsilon);
    std::vector<double> probs;
    for (long j = 1; j <= model.J(); ++j) probs.push_back(model.p(j));

    const auto w = static_cast<std::uint64_t>(std::max(1, workers));
    std::vector<Tally> parts(w);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + w - 1) / w;
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t begin = std::min(trials, i * chunk);
        const std::uint64_t end = std::min(trials, begin + chunk);
        if (w == 1) {
            parts[i] = run_trials(params, probs, seed, begin, end);
        } else {
            pool.emplace_back([&, i, begin, end] { parts[i] = run_trials(params, probs, seed, begin, end); });
        }
    }
    for (auto& th : pool) th.join();
    Tally total;
    for (const auto& t : parts) {
        total.u += t.u;
        total.v += t.v;
        total.fu += t.fu;
    }

    const double pu = exact_prob_Uk(params, q, 0).value;
    const double pv = exact_prob_Uk(params, q, 1).value;
    const double g3 = g3_numeric(params, q).value;
    const long d = params.d();
    const long r = params.r();
    const double fbar = event_complement(r, q) * event_complement(d - r, q) * event_complement(d, q);

    SimulationReport rep;
    rep.d = params.d();
    rep.r = params.r();
    rep.q = q;
    rep.trials = trials;
    rep.seed = seed;
    rep.J = model.J();
    rep.epsilon = epsilon;
    rep.estimates.push_back(estimate("P(U)", total.u, trials, pu));
    rep.estimates.push_back(estimate("P(V)", total.v, trials, pv));
    rep.estimates.push_back(estimate("P(U|V)", total.u, total.v, fbar / g3));
    rep.estimates.push_back(estimate("P(F|U)", total.fu, total.u, g3));
    return rep;
}

}  // namespace schurlab
