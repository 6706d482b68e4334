#include "schurlab/suite.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "schurlab/asymptotics.hpp"
#include "schurlab/identities.hpp"
#include "schurlab/partitions.hpp"
#include "schurlab/probability.hpp"

namespace schurlab {

const std::vector<std::string>& mutable_identities() { return identity_names(); }

namespace {

using std::numbers::pi;

const std::vector<SchurParams>& core_params() {
    static const std::vector<SchurParams> set = {{3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {7, 3}};
    return set;
}

std::string label(const SchurParams& p) {
    return "(" + std::to_string(p.d()) + "," + std::to_string(p.r()) + ")";
}

Mutation default_mutation(const std::string& identity) {
    // The Alder-Andrews check is an inequality, so the edit must push the
    // left side down past the right.
    if (identity == "alder-andrews") return Mutation{20, 0, -1000000};
    return Mutation{5, 1, 1};
}

std::string describe_failure(const VerificationReport& rep) {
    std::ostringstream out;
    out << rep.identity_name << " failed";
    if (rep.first_mismatch) {
        const auto& m = *rep.first_mismatch;
        out << " at exponent " << m.exponent;
        if (m.x_degree) out << " (x^" << *m.x_degree << ")";
        out << ": " << m.lhs << " != " << m.rhs;
    }
    if (!rep.detail.empty()) out << " [" << rep.detail << "]";
    return out.str();
}

class Criterion {
public:
    Criterion(const SuiteOptions& opts, int id, std::string title) : opts_(opts), start_(clock::now()) {
        result_.id = id;
        result_.title = std::move(title);
        result_.passed = true;
    }

    std::optional<Mutation> mutation(const std::string& identity) const {
        if (opts_.mutate && *opts_.mutate == identity) return default_mutation(identity);
        return std::nullopt;
    }

    /// Runs a named identity; records the first failure.
    bool identity(const std::string& name, std::optional<int> d, std::optional<int> r, int trunc, int x_trunc = 5,
                  int n_max = 8) {
        IdentityRequest req;
        req.name = name;
        req.d = d;
        req.r = r;
        req.trunc = trunc;
        req.x_trunc = x_trunc;
        req.n_max = n_max;
        req.mutation = mutation(name);
        const auto rep = verify_identity(req);
        std::string where = name;
        if (d) where += " d=" + std::to_string(*d);
        if (r) where += " r=" + std::to_string(*r);
        return check(rep.passed, where + ": " + describe_failure(rep));
    }

    bool check(bool ok, const std::string& failure) {
        if (!ok && result_.passed) {
            result_.passed = false;
            result_.detail = failure;
        }
        return ok;
    }

    void note(const std::string& text) {
        if (!result_.passed) return;
        if (!result_.detail.empty()) result_.detail += "; ";
        result_.detail += text;
    }

    void time_limit(double seconds) {
        const double used = elapsed();
        if (!opts_.quick) {
            std::ostringstream out;
            out << "took " << used << " s, limit " << seconds << " s";
            check(used < seconds, out.str());
        }
    }

    CriterionResult finish() {
        result_.seconds = elapsed();
        return result_;
    }

private:
    using clock = std::chrono::steady_clock;
    double elapsed() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

    const SuiteOptions& opts_;
    clock::time_point start_;
    CriterionResult result_;
};

std::string num(double v, int precision = 6) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

CriterionResult schur_oracles(const SuiteOptions& o) {
    Criterion c(o, 1, "product = Schur-type count = distinct congruent count");
    const int n = o.quick ? 40 : 60;
    for (int d = 3; d <= 8; ++d)
        for (int r = 1; 2 * r < d; ++r) c.identity("schur", d, r, n);
    c.note("d = 3..8, n <= " + std::to_string(n));
    c.time_limit(10);
    return c.finish();
}

CriterionResult andrews(const SuiteOptions& o) {
    Criterion c(o, 2, "Andrews' (3,1) formula = bilateral form = C oracle");
    const int n = o.quick ? 100 : 200;
    c.identity("andrews-c31", std::nullopt, std::nullopt, n);
    const SchurParams p(3, 1);
    const auto rep = verify_equal(series_C_andrews_rhs(60), oracle_series(count_schur_table(p, 3, 60)),
                                  "andrews vs C oracle");
    c.check(rep.passed, describe_failure(rep));
    c.note("to q^" + std::to_string(n) + ", oracle n <= 60");
    c.time_limit(5);
    return c.finish();
}

CriterionResult universal(const SuiteOptions& o) {
    Criterion c(o, 3, "theta quotient * g3 = C");
    const int n = o.quick ? 100 : 200;
    for (const auto& p : core_params()) c.identity("univ-factorization", p.d(), p.r(), n);
    c.note("6 parameter pairs to q^" + std::to_string(n));
    c.time_limit(20);
    return c.finish();
}

CriterionResult modular_b(const SuiteOptions& o) {
    Criterion c(o, 4, "theta quotient = product, offset 0");
    const int n = o.quick ? 100 : 200;
    for (const auto& p : core_params()) {
        c.identity("theta-quotient", p.d(), p.r(), n);
        c.check(series_theta_quotient(p, n).offset24() == 0, "theta quotient offset nonzero at " + label(p));
    }
    c.note("6 parameter pairs to q^" + std::to_string(n));
    return c.finish();
}

CriterionResult recurrences(const SuiteOptions& o) {
    Criterion c(o, 5, "q-difference equation, A_n recurrence, bivariate counts");
    for (const auto& p : core_params()) {
        c.identity("qdifference", p.d(), p.r(), o.quick ? 30 : 40, 5);
        c.identity("an-recurrence", p.d(), p.r(), o.quick ? 60 : 80, 5, 8);
    }
    const SchurParams p(3, 1);
    const int n = 25;
    const auto f = series_f_bivariate(p, 8, n);
    for (int m = 0; m <= 8; ++m) {
        for (int k = 0; k <= n; ++k) {
            const BigInt want = count_schur_by_parts(p, 0, k, m);
            if (!c.check(f[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] == want,
                         "bivariate x^" + std::to_string(m) + " q^" + std::to_string(k) + " differs from the count " +
                             want.get_str()))
                break;
        }
    }
    c.note("(M,N) = (5,40), (n_max,N) = (8,80), bivariate (3,1) n <= 25");
    return c.finish();
}

CriterionResult triple_product(const SuiteOptions& o) {
    Criterion c(o, 6, "theta sum = theta product");
    const int n = o.quick ? 100 : 200;
    auto params = core_params();
    params.insert(params.end(), {SchurParams(6, 1), SchurParams(8, 3)});
    for (const auto& p : params) c.identity("triple-product", p.d(), p.r(), n);
    c.note(std::to_string(params.size()) + " parameter pairs to q^" + std::to_string(n));
    return c.finish();
}

CriterionResult inversions(const SuiteOptions& o) {
    using namespace std::complex_literals;
    Criterion c(o, 7, "eta and theta inversion numerics");
    const auto eta = eta_series(1, 200);
    double worst_eta = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        // eta(i t) is the series at q = e^{-2 pi t}.
        const auto lhs = eval_complex(eta, 2.0 * pi / t);
        const auto rhs = eval_complex(eta, 2.0 * pi * t);
        const double dev = std::abs(lhs.value - std::sqrt(t) * rhs.value);
        worst_eta = std::max(worst_eta, dev);
        c.check(dev < 1e-8 + lhs.tail_bound + rhs.tail_bound, "eta inversion at t = " + num(t) + " off by " + num(dev));
    }
    double worst_theta = 0.0;
    for (auto [s, t] : {std::pair{0.1, 0.5}, {0.2, 1.0}, {0.05, 0.8}, {0.3, 1.5}}) {
        const std::complex<double> tau = 1i * t;
        const std::complex<double> w = 1i * s;
        const auto lhs = theta_eval(w / tau, -1.0 / tau);
        const auto base = theta_eval(w, tau);
        const auto factor = -1i * std::sqrt(-1i * tau) * std::exp(1i * pi * w * w / tau);
        const double dev = std::abs(lhs.value - factor * base.value);
        worst_theta = std::max(worst_theta, dev);
        c.check(dev < 1e-6 + lhs.tail_bound + std::abs(factor) * base.tail_bound,
                "theta inversion at (s,t) = (" + num(s) + "," + num(t) + ") off by " + num(dev));
    }
    // The theta series specialization against direct summation.
    for (const auto& p : {SchurParams(3, 1), SchurParams(5, 2)}) {
        const double t = 0.3;
        const auto series = eval_complex(theta_half_shift_series(p, 200), 2.0 * pi * t);
        const auto direct = theta_eval(0.5 + 1i * (p.r() * t), 1i * (p.d() * t));
        const double dev = std::abs(series.value - direct.value);
        c.check(dev < 1e-10, "theta series vs summation at " + label(p) + " off by " + num(dev));
    }
    c.note("max eta deviation " + num(worst_eta, 3) + ", max theta deviation " + num(worst_theta, 3));
    c.time_limit(5);
    return c.finish();
}

CriterionResult c_over_b(const SuiteOptions& o, CoefficientCache& cache) {
    Criterion c(o, 8, "3C(n)/B(n) -> 1");
    const std::vector<long> ns = o.quick ? std::vector<long>{300, 600, 1200} : std::vector<long>{1250, 2500, 5000};
    std::ostringstream summary;
    for (const auto& p : {SchurParams(3, 1), SchurParams(5, 2)}) {
        const auto b = cache.get(Kind::B, p, static_cast<int>(ns.back()));
        const auto cc = cache.get(Kind::C, p, static_cast<int>(ns.back()));
        double prev = INFINITY;
        for (long n : ns) {
            const auto i = static_cast<std::size_t>(n);
            const double ratio =
                3.0 * std::exp(LogMagnitude::of((*cc)[i]).log_value - LogMagnitude::of((*b)[i]).log_value);
            const double dev = std::abs(ratio - 1.0);
            c.check(dev < prev, label(p) + ": |3C/B - 1| did not decrease at n = " + std::to_string(n));
            prev = dev;
        }
        c.check(prev < 0.05, label(p) + ": |3C/B - 1| = " + num(prev) + " at n = " + std::to_string(ns.back()));
        summary << label(p) << " " << num(prev, 4) << " ";
    }
    c.note("|3C/B - 1| at n = " + std::to_string(ns.back()) + ": " + summary.str());
    c.time_limit(120);
    return c.finish();
}

CriterionResult two_term(const SuiteOptions& o, CoefficientCache& cache) {
    Criterion c(o, 9, "two-term Bessel expansion converges and beats one term");
    const std::vector<long> ns = o.quick ? std::vector<long>{250, 1000, 4000} : std::vector<long>{1000, 4000, 16000};
    const SchurParams p(3, 1);
    const auto two = convergence_report(Kind::B, p, ns, 2, &cache);
    const auto one = convergence_report(Kind::B, p, ns, 1, &cache);
    double prev = INFINITY;
    std::ostringstream summary;
    summary.precision(3);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double e2 = std::abs(two[i].ratio - 1.0);
        const double e1 = std::abs(one[i].ratio - 1.0);
        c.check(e2 < prev, "|ratio - 1| did not decrease at n = " + std::to_string(ns[i]));
        c.check(e2 < e1, "two terms not closer than one at n = " + std::to_string(ns[i]));
        prev = e2;
        summary << "n=" << ns[i] << ": " << e2 << " vs " << e1 << " ";
    }
    c.check(prev < 0.05, "|ratio - 1| = " + num(prev) + " at the largest n");
    c.note("|ratio - 1| two terms vs one: " + summary.str());
    c.time_limit(300);
    return c.finish();
}

CriterionResult near_one(const SuiteOptions& o) {
    Criterion c(o, 10, "G(0), G'(0) and F_1 near q = 1");
    for (const auto& p : {SchurParams(3, 1), SchurParams(5, 1), SchurParams(5, 2)}) {
        const auto fit = check_G_expansion(p, {0.2, 0.1, 0.05});
        c.check(fit.report.passed, label(p) + ": " + fit.report.detail);
    }
    const SchurParams p(3, 1);
    const auto k = constants(p);
    std::vector<double> residual;
    for (double z : {0.2, 0.1, 0.05}) {
        residual.push_back(std::abs(scaled_F(1, p, z) - (k.alphaP1 + k.betaP1 * z)));
    }
    std::ostringstream ratios;
    for (std::size_t i = 0; i + 1 < residual.size(); ++i) {
        const double ratio = residual[i] / residual[i + 1];
        ratios << num(ratio, 4) << " ";
        c.check(ratio >= 2.5 && ratio <= 6.5, "residual ratio " + num(ratio) + " outside [2.5, 6.5]");
    }
    c.note("F_1 residual ratios " + ratios.str());
    return c.finish();
}

CriterionResult inequalities(const SuiteOptions& o, CoefficientCache& cache) {
    Criterion c(o, 11, "inequality crossovers");
    const int n_max = o.quick ? 1000 : 2000;
    const auto same_d = crossover(SchurParams(5, 2), SchurParams(5, 1), Kind::B, n_max, &cache);
    const auto cross_d = crossover(SchurParams(4, 1), SchurParams(3, 1), Kind::B, n_max, &cache);
    const auto reversed = crossover(SchurParams(5, 1), SchurParams(5, 2), Kind::B, n_max, &cache);
    c.check(same_d && *same_d == kGoldenCrossover52vs51,
            "B_{5,1} > B_{5,2} crossover " + (same_d ? std::to_string(*same_d) : std::string("absent")) +
                ", golden " + std::to_string(kGoldenCrossover52vs51));
    c.check(cross_d && *cross_d == kGoldenCrossover41vs31,
            "B_{3,1} > B_{4,1} crossover " + (cross_d ? std::to_string(*cross_d) : std::string("absent")) +
                ", golden " + std::to_string(kGoldenCrossover41vs31));
    c.note("N0 = " + std::to_string(kGoldenCrossover52vs51) + " for B_{5,1} > B_{5,2} and " +
           std::to_string(kGoldenCrossover41vs31) + " for B_{3,1} > B_{4,1} on [N0, " + std::to_string(n_max) +
           "]; B_{5,2} > B_{5,1} " + (reversed ? "stabilizes" : "never stabilizes"));
    c.time_limit(60);
    return c.finish();
}

CriterionResult alder_andrews(const SuiteOptions& o) {
    Criterion c(o, 12, "Alder-Andrews window");
    const int n = o.quick ? 100 : 200;
    c.identity("alder-andrews", std::nullopt, std::nullopt, n);
    c.note("d = 4..8, 2d+9 <= n <= " + std::to_string(n));
    c.time_limit(30);
    return c.finish();
}

CriterionResult classical(const SuiteOptions& o) {
    Criterion c(o, 13, "Rogers-Ramanujan and Euler");
    c.identity("rr", std::nullopt, std::nullopt, 80);
    c.identity("euler", std::nullopt, std::nullopt, 80);
    c.note("n <= 80");
    c.time_limit(5);
    return c.finish();
}

CriterionResult probability(const SuiteOptions& o) {
    Criterion c(o, 14, "conditional probabilities and g3");
    for (auto [p, q] : {std::pair{SchurParams(3, 1), 0.3}, {SchurParams(3, 1), 0.5}, {SchurParams(5, 2), 0.4}}) {
        const auto rep = theorem_prob_check(p, q, 1e-6);
        c.check(rep.passed, label(p) + " q=" + num(q) + ": " + rep.detail);
    }
    for (auto [p, q, k] : {std::tuple{SchurParams(3, 1), 0.5, 6L}, {SchurParams(5, 2), 0.6, 5L}}) {
        const auto rep = verify_Uk_recurrence(p, q, k, 1e-10);
        c.check(rep.passed, label(p) + " q=" + num(q) + ": " + describe_failure(rep));
    }
    const std::uint64_t scale = o.quick ? 5 : 1;
    double worst = 0.0;
    for (auto [p, q, trials] : {std::tuple{SchurParams(3, 1), 0.5, std::uint64_t{100000}},
                                {SchurParams(3, 1), 0.3, std::uint64_t{1000000}},
                                {SchurParams(5, 2), 0.4, std::uint64_t{200000}}}) {
        const auto rep = simulate(p, q, trials / scale, o.seed, o.workers);
        for (const auto& e : rep.estimates) {
            worst = std::max(worst, std::abs(e.z));
            c.check(std::abs(e.z) <= 4.0, label(p) + " q=" + num(q) + " " + e.name + " z = " + num(e.z));
        }
    }
    c.note("max |z| " + num(worst, 3) + " (seed " + std::to_string(o.seed) + ")");
    c.time_limit(120);
    return c.finish();
}

CriterionResult g3_bound(const SuiteOptions& o) {
    Criterion c(o, 15, "g3 < 1 on the q grid");
    double closest = INFINITY;
    for (const auto& p : {SchurParams(3, 1), SchurParams(4, 1), SchurParams(5, 1), SchurParams(5, 2), SchurParams(7, 3)}) {
        for (int i = 1; i <= 9; ++i) {
            const double q = i / 10.0;
            const auto v = g3_numeric(p, q);
            const double margin = 1.0 - v.tail_bound - v.value;
            closest = std::min(closest, margin);
            c.check(margin > 0.0, label(p) + " q=" + num(q) + ": g3 = " + num(v.value, 17) + ", tail " + num(v.tail_bound));
        }
    }
    c.note("smallest margin " + num(closest, 4));
    return c.finish();
}

CriterionResult negative_controls(const SuiteOptions& o) {
    Criterion c(o, 16, "negative controls");
    int caught = 0;
    for (const auto& name : identity_names()) {
        IdentityRequest req;
        req.name = name;
        if (name != "andrews-c31" && name != "rr" && name != "euler" && name != "alder-andrews") {
            req.d = 5;
            req.r = 2;
        }
        req.trunc = name == "qdifference" ? 30 : 60;
        req.mutation = default_mutation(name);
        const auto rep = verify_identity(req);
        if (c.check(!rep.passed && rep.first_mismatch.has_value(), name + " missed a mutation")) ++caught;
    }
    const auto dropped = verify_qdifference(SchurParams(3, 1), 5, 30, QDifferenceForm::DropFactor);
    if (c.check(!dropped.passed && dropped.first_mismatch.has_value(), "q-difference with a dropped factor passed"))
        ++caught;
    const auto perturbed = verify_Uk_recurrence(SchurParams(3, 1), 0.5, 6, 1e-10, Perturbation{4, 1e-3});
    if (c.check(!perturbed.passed && perturbed.first_mismatch.has_value(), "perturbed p_4 passed the recurrence"))
        ++caught;
    const auto mismatch = verify_equal(QSeries::polynomial({1, 1}, 1), QSeries::polynomial({1, -1}, 1), "1+q vs 1-q");
    if (c.check(!mismatch.passed && mismatch.first_mismatch && mismatch.first_mismatch->exponent == 1,
                "1+q vs 1-q not located at exponent 1"))
        ++caught;
    c.note(std::to_string(caught) + " verifiers caught their mutation");
    return c.finish();
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
    CoefficientCache cache;
    using Runner = std::function<CriterionResult()>;
    const std::vector<Runner> runners = {
        [&] { return schur_oracles(options); },       [&] { return andrews(options); },
        [&] { return universal(options); },           [&] { return modular_b(options); },
        [&] { return recurrences(options); },         [&] { return triple_product(options); },
        [&] { return inversions(options); },          [&] { return c_over_b(options, cache); },
        [&] { return two_term(options, cache); },     [&] { return near_one(options); },
        [&] { return inequalities(options, cache); }, [&] { return alder_andrews(options); },
        [&] { return classical(options); },           [&] { return probability(options); },
        [&] { return g3_bound(options); },            [&] { return negative_controls(options); },
    };
    std::vector<CriterionResult> results;
    for (std::size_t i = 0; i < runners.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!options.only.empty() && !options.only.contains(id)) continue;
        CriterionResult r;
        try {
            r = runners[i]();
        } catch (const std::exception& e) {
            r.id = id;
            r.title = "criterion " + std::to_string(id);
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        if (options.on_result) options.on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace schurlab
