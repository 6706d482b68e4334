#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "schurlab/asymptotics.hpp"
#include "schurlab/identities.hpp"
#include "schurlab/partitions.hpp"
#include "schurlab/probability.hpp"
#include "schurlab/serialize.hpp"
#include "schurlab/suite.hpp"

namespace schurlab::cli {

namespace {

struct Config {
    std::string format = "plain";
    std::string output;
    int d = 3;
    int r = 1;
    std::string kind = "B";
    long max_n = 20;
    long parts = -1;
    std::string series = "E";
    int trunc = 200;
    std::string identity;
    int x_trunc = 5;
    int n_max = 8;
    long mutate_index = -1;
    int mutate_x = 0;
    std::vector<long> n_list = {1000, 4000, 16000};
    int terms = 2;
    int budget = kDefaultBudget;
    double z_re = 0.1;
    double z_im = 0.0;
    std::vector<double> z_list = {0.2, 0.1, 0.05};
    int which = 1;
    double tol = 1e-12;
    int da = 5, ra = 2, db = 5, rb = 1;
    double q = 0.5;
    long k = 0;
    long k_max = 6;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
    double epsilon = kDefaultEpsilon;
    bool quick = false;
    std::string mutate;
};

// A verification outcome distinct from a usage error.
struct Outcome {
    std::string text;
    bool passed = true;
};

std::string series_plain(const QSeries& s) {
    std::ostringstream out;
    bool first = true;
    auto exponent = [&](long e24) {
        if (e24 % 24 == 0) return std::to_string(e24 / 24);
        return std::to_string(e24) + "/24";
    };
    for (int i = 0; i <= s.trunc(); ++i) {
        const BigInt& c = s[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        const long e24 = s.offset24() + 24L * i;
        BigInt mag = abs(c);
        out << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
        if (e24 == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << "q^" << exponent(e24);
        }
        first = false;
    }
    if (first) out << "0";
    if (!s.exact()) out << " + O(q^" << exponent(s.offset24() + 24L * (s.trunc() + 1)) << ")";
    return out.str() + "\n";
}

std::string series_csv(const QSeries& s) {
    std::ostringstream out;
    const bool integral = s.offset24() % 24 == 0;
    out << (integral ? "n,value\n" : "exponent24,value\n");
    for (int i = 0; i <= s.trunc(); ++i) {
        const long e24 = s.offset24() + 24L * i;
        out << (integral ? e24 / 24 : e24) << ',' << s[static_cast<std::size_t>(i)].get_str() << '\n';
    }
    return out.str();
}

std::string report_plain(const VerificationReport& r) {
    std::ostringstream out;
    out << (r.passed ? "PASS " : "FAIL ") << r.identity_name << " (trunc " << r.trunc << ")";
    if (r.first_mismatch) {
        const auto& m = *r.first_mismatch;
        out << ": first mismatch at exponent " << m.exponent;
        if (m.exponent24 != 24 * m.exponent) out << " (" << m.exponent24 << "/24)";
        if (m.x_degree) out << ", x^" << *m.x_degree;
        out << ": " << m.lhs << " != " << m.rhs;
    }
    if (r.max_deviation) out << "; max deviation " << format_double(*r.max_deviation);
    if (!r.detail.empty()) out << "; " << r.detail;
    return out.str() + "\n";
}

std::string report_csv(const VerificationReport& r) {
    std::ostringstream out;
    out << "identity,trunc,passed,exponent,exponent24,x_degree,lhs,rhs,max_deviation\n";
    out << r.identity_name << ',' << r.trunc << ',' << (r.passed ? "true" : "false") << ',';
    if (r.first_mismatch) {
        const auto& m = *r.first_mismatch;
        out << m.exponent << ',' << m.exponent24 << ',' << (m.x_degree ? std::to_string(*m.x_degree) : "") << ','
            << m.lhs << ',' << m.rhs;
    } else {
        out << ",,,,";
    }
    out << ',' << (r.max_deviation ? format_double(*r.max_deviation) : "") << '\n';
    return out.str();
}

Outcome emit_report(const VerificationReport& r, const std::string& format) {
    if (format == "json") return {report_to_json(r) + "\n", r.passed};
    if (format == "csv") return {report_csv(r), r.passed};
    return {report_plain(r), r.passed};
}

Outcome do_count(const Config& c) {
    const SchurParams p(c.d, c.r);
    std::vector<BigInt> values;
    if (c.kind == "B" || c.kind == "C") {
        const long min_exclusive = c.kind == "B" ? 0 : c.d;
        if (c.parts >= 0) {
            for (long n = 0; n <= c.max_n; ++n) values.push_back(count_schur_by_parts(p, min_exclusive, n, c.parts));
        } else {
            values = count_schur_table(p, min_exclusive, c.max_n);
        }
    } else if (c.kind == "E") {
        values = count_distinct_congruent_table(p, c.max_n);
    } else {
        values = count_distinct_table(c.max_n);
    }
    if (c.format == "csv") return {coefficients_to_csv(values)};
    if (c.format == "json") return {series_to_json(oracle_series(values), 2) + "\n"};
    std::ostringstream out;
    for (std::size_t n = 0; n < values.size(); ++n) out << n << ' ' << values[n].get_str() << '\n';
    return {out.str()};
}

QSeries build_series(const Config& c) {
    const SchurParams p(c.d, c.r);
    const std::string& s = c.series;
    if (s == "E") return series_E_product(p, c.trunc);
    if (s == "C") return series_C_bilateral(p, c.trunc);
    if (s == "C-andrews") return series_C_andrews_rhs(c.trunc);
    if (s == "g3") return series_g3(c.r, c.d, c.trunc);
    if (s == "theta-quotient") return series_theta_quotient(p, c.trunc);
    if (s == "theta-sum") return theta_sum_series(p, c.trunc);
    if (s == "theta-product") return theta_half_shift_series(p, c.trunc);
    if (s == "bilateral-sum") return bilateral_sum(p, c.trunc);
    return eta_series(c.d, c.trunc);
}

Outcome do_series(const Config& c) {
    const QSeries s = build_series(c);
    if (c.format == "csv") return {series_csv(s)};
    if (c.format == "json") return {series_to_json(s, 2) + "\n"};
    return {series_plain(s)};
}

Outcome do_verify(const Config& c, bool d_given, bool r_given) {
    IdentityRequest req;
    req.name = c.identity;
    if (d_given || c.identity != "alder-andrews") req.d = c.d;
    if (r_given || c.identity != "alder-andrews") req.r = c.r;
    req.trunc = c.trunc;
    req.x_trunc = c.x_trunc;
    req.n_max = c.n_max;
    if (c.mutate_index >= 0) req.mutation = Mutation{c.mutate_index, c.mutate_x, 1};
    return emit_report(verify_identity(req), c.format);
}

Outcome do_convergence(const Config& c) {
    const auto rows = convergence_report(kind_from_string(c.kind), SchurParams(c.d, c.r), c.n_list, c.terms);
    if (c.format == "csv") return {convergence_to_csv(rows)};
    if (c.format == "json") return {convergence_to_json(rows) + "\n"};
    std::ostringstream out;
    for (const auto& row : rows) {
        out << "n=" << row.n << " exact=" << LogMagnitude{row.exact_log}.to_string()
            << " estimate=" << LogMagnitude{row.estimate_log}.to_string() << " ratio=" << format_double(row.ratio)
            << '\n';
    }
    return {out.str()};
}

Outcome do_constants(const Config& c) {
    const auto k = constants(SchurParams(c.d, c.r));
    const std::vector<std::pair<std::string, double>> rows = {
        {"alpha1", k.alpha1},   {"alpha2", k.alpha2},   {"beta1", k.beta1},   {"beta2", k.beta2},
        {"alphaP1", k.alphaP1}, {"alphaP2", k.alphaP2}, {"betaP1", k.betaP1}, {"betaP2", k.betaP2}};
    std::ostringstream out;
    if (c.format == "json") {
        out << "{\"schema_version\": " << kSchemaVersion << ", \"d\": " << c.d << ", \"r\": " << c.r;
        for (const auto& [name, v] : rows) out << ", \"" << name << "\": \"" << format_double(v) << '"';
        out << "}\n";
    } else {
        if (c.format == "csv") out << "name,value\n";
        for (const auto& [name, v] : rows) out << name << (c.format == "csv" ? "," : " ") << format_double(v) << '\n';
    }
    return {out.str()};
}

Outcome do_g_expansion(const Config& c) {
    const auto fit = check_G_expansion(SchurParams(c.d, c.r), c.z_list);
    return emit_report(fit.report, c.format);
}

Outcome do_f_near_one(const Config& c) {
    const SchurParams p(c.d, c.r);
    const std::complex<double> z(c.z_re, c.z_im);
    const auto v = eval_F_near_one(c.which, p, z, c.tol, c.budget);
    const auto scaled = v.value * std::exp(-std::numbers::pi * std::numbers::pi / (6.0 * c.d * z));
    std::ostringstream out;
    if (c.format == "json") {
        out << "{\"schema_version\": " << kSchemaVersion << ", \"which\": " << c.which << ", \"re\": \""
            << format_double(v.value.real()) << "\", \"im\": \"" << format_double(v.value.imag())
            << "\", \"tail_bound\": \"" << format_double(v.tail_bound) << "\", \"scaled_re\": \""
            << format_double(scaled.real()) << "\", \"scaled_im\": \"" << format_double(scaled.imag()) << "\"}\n";
    } else if (c.format == "csv") {
        out << "re,im,tail_bound,scaled_re,scaled_im\n"
            << format_double(v.value.real()) << ',' << format_double(v.value.imag()) << ','
            << format_double(v.tail_bound) << ',' << format_double(scaled.real()) << ','
            << format_double(scaled.imag()) << '\n';
    } else {
        out << "F_" << c.which << " = " << format_double(v.value.real()) << " + " << format_double(v.value.imag())
            << "i (tail " << format_double(v.tail_bound) << "); scaled " << format_double(scaled.real()) << " + "
            << format_double(scaled.imag()) << "i\n";
    }
    return {out.str()};
}

Outcome do_crossover(const Config& c) {
    const auto n0 = crossover(SchurParams(c.da, c.ra), SchurParams(c.db, c.rb), kind_from_string(c.kind),
                              static_cast<int>(c.max_n));
    std::ostringstream out;
    const std::string value = n0 ? std::to_string(*n0) : "";
    if (c.format == "json") {
        out << "{\"schema_version\": " << kSchemaVersion << ", \"n0\": " << (n0 ? value : "null")
            << ", \"n_max\": " << c.max_n << "}\n";
    } else if (c.format == "csv") {
        out << "n0,n_max\n" << value << ',' << c.max_n << '\n';
    } else {
        out << (n0 ? "N0 = " + value : std::string("no crossover")) << " (window up to " << c.max_n << ")\n";
    }
    return {out.str()};
}

Outcome do_prob_exact(const Config& c) {
    const auto v = exact_prob_Uk(SchurParams(c.d, c.r), c.q, c.k);
    std::ostringstream out;
    if (c.format == "json") {
        out << "{\"schema_version\": " << kSchemaVersion << ", \"k\": " << c.k << ", \"value\": \""
            << format_double(v.value) << "\", \"tail_bound\": \"" << format_double(v.tail_bound) << "\"}\n";
    } else if (c.format == "csv") {
        out << "k,value,tail_bound\n" << c.k << ',' << format_double(v.value) << ',' << format_double(v.tail_bound) << '\n';
    } else {
        out << "P(U_" << c.k << ") = " << format_double(v.value) << " (tail " << format_double(v.tail_bound) << ")\n";
    }
    return {out.str()};
}

Outcome do_simulate(const Config& c) {
    const auto rep = simulate(SchurParams(c.d, c.r), c.q, c.trials, c.seed, c.workers, c.epsilon);
    if (c.format == "json") return {simulation_to_json(rep) + "\n"};
    if (c.format == "csv") return {simulation_to_csv(rep)};
    std::ostringstream out;
    out << "trials " << rep.trials << ", seed " << rep.seed << ", J " << rep.J << " (epsilon " << rep.epsilon << ")\n";
    for (const auto& e : rep.estimates) {
        out << e.name << " = " << format_double(e.estimate) << " +- " << format_double(e.std_error) << ", target "
            << format_double(e.target) << ", z " << format_double(e.z) << '\n';
    }
    return {out.str()};
}

Outcome do_verify_all(const Config& c, std::ostream& err) {
    SuiteOptions opts;
    opts.quick = c.quick;
    opts.seed = c.seed;
    opts.workers = c.workers;
    if (!c.mutate.empty()) opts.mutate = c.mutate;
    opts.on_result = [&err](const CriterionResult& r) {
        err << (r.passed ? "[pass] " : "[FAIL] ") << r.id << ' ' << r.title << '\n';
    };
    const auto results = run_suite(opts);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    std::ostringstream out;
    if (c.format == "json") {
        out << suite_to_json(results) << '\n';
    } else if (c.format == "csv") {
        out << "id,title,passed,seconds,detail\n";
        for (const auto& r : results) {
            std::string detail = r.detail;
            for (char& ch : detail) {
                if (ch == ',') ch = ';';
            }
            out << r.id << ',' << r.title << ',' << (r.passed ? "true" : "false") << ',' << format_double(r.seconds)
                << ',' << detail << '\n';
        }
    } else {
        for (const auto& r : results) {
            char line[160];
            std::snprintf(line, sizeof line, "%2d  %-4s  %7.2fs  %s", r.id, r.passed ? "PASS" : "FAIL", r.seconds,
                          r.title.c_str());
            out << line << "\n      " << r.detail << '\n';
        }
        out << (all ? "all criteria pass" : "some criteria FAIL") << '\n';
    }
    return {out.str(), all};
}

std::string output_path(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') return (fs::path(dir) / p).string();
    return path;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Exact verification and asymptotics for Schur-type partition functions", "schurlab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "schurlab 0.1.0");
    app.footer(std::string("Exit codes: 0 pass, 1 verification failure, 2 usage error.\nRelative --output paths "
                           "resolve against $") +
               kOutDirEnv + " when it is set.");

    auto common = [&c](CLI::App* sub) {
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"plain", "csv", "json"}));
        sub->add_option("--output,-o", c.output, "Write the report to this file");
    };
    auto params = [&c](CLI::App* sub) {
        sub->add_option("--d", c.d, "Modulus d >= 3");
        sub->add_option("--r", c.r, "Residue 1 <= r < d/2");
    };

    auto* count = app.add_subcommand("count", "Brute-force partition counts for n = 0..max-n.\nCSV columns: n,value");
    params(count);
    common(count);
    count->add_option("--kind", c.kind, "B, C, E (distinct parts = +-r mod d) or distinct")
        ->check(CLI::IsMember({"B", "C", "E", "distinct"}));
    count->add_option("--max-n", c.max_n, "Largest n")->check(CLI::NonNegativeNumber);
    count->add_option("--parts", c.parts, "Only partitions with exactly this many parts (B and C)");

    auto* series = app.add_subcommand(
        "series", "Expand a generating function.\nCSV columns: n,value (or exponent24,value for fractional offsets)");
    params(series);
    common(series);
    series->add_option("--name", c.series, "Series to build")
        ->check(CLI::IsMember(
            {"E", "C", "C-andrews", "g3", "theta-quotient", "theta-sum", "theta-product", "bilateral-sum", "eta"}));
    series->add_option("--trunc", c.trunc, "Truncation")->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand(
        "verify",
        "Check one identity exactly.\nCSV columns: identity,trunc,passed,exponent,exponent24,x_degree,lhs,rhs,max_deviation");
    params(verify);
    common(verify);
    verify->add_option("--identity", c.identity, "Identity name")->required()->check(CLI::IsMember(identity_names()));
    verify->add_option("--trunc", c.trunc, "q truncation")->check(CLI::NonNegativeNumber);
    verify->add_option("--x-trunc", c.x_trunc, "x truncation (qdifference)")->check(CLI::NonNegativeNumber);
    verify->add_option("--n-max", c.n_max, "Largest n (an-recurrence)")->check(CLI::PositiveNumber);
    verify->add_option("--mutate-index", c.mutate_index, "Add 1 to this left-hand coefficient (negative control)");
    verify->add_option("--mutate-x", c.mutate_x, "x-degree of the mutated coefficient");

    auto* asym = app.add_subcommand("asymptotics", "Asymptotic expansions and near-1 checks");
    asym->require_subcommand(1);
    auto* conv = asym->add_subcommand(
        "convergence", "Exact coefficients against the Bessel estimate.\nCSV columns: n,exact_log,estimate_log,ratio");
    params(conv);
    common(conv);
    conv->add_option("--kind", c.kind, "B or C")->check(CLI::IsMember({"B", "C"}));
    conv->add_option("--n", c.n_list, "Indices n")->check(CLI::PositiveNumber);
    conv->add_option("--terms", c.terms, "1 or 2")->check(CLI::IsMember({1, 2}));
    auto* consts = asym->add_subcommand("constants", "The expansion constants.\nCSV columns: name,value");
    params(consts);
    common(consts);
    auto* gexp = asym->add_subcommand("g-expansion", "Fit G(0) and G'(0) by extrapolation");
    params(gexp);
    common(gexp);
    gexp->add_option("--z", c.z_list, "Three positive z values")->expected(3);
    auto* fnear = asym->add_subcommand("f-near-one",
                                       "F_j(e^-z) and its scaled value.\nCSV columns: re,im,tail_bound,scaled_re,scaled_im");
    params(fnear);
    common(fnear);
    fnear->add_option("--which", c.which, "1 (B) or 2 (C)")->check(CLI::IsMember({1, 2}));
    fnear->add_option("--z", c.z_re, "Re z > 0");
    fnear->add_option("--z-imag", c.z_im, "Im z");
    fnear->add_option("--tol", c.tol, "Absolute tolerance");
    fnear->add_option("--budget", c.budget, "Largest truncation allowed");

    auto* cross = app.add_subcommand(
        "crossover", "Least N0 with coefficient(b, n) > coefficient(a, n) on [N0, max-n].\nCSV columns: n0,n_max");
    common(cross);
    cross->add_option("--d-a", c.da, "d of sequence a");
    cross->add_option("--r-a", c.ra, "r of sequence a");
    cross->add_option("--d-b", c.db, "d of sequence b");
    cross->add_option("--r-b", c.rb, "r of sequence b");
    cross->add_option("--kind", c.kind, "B or C")->check(CLI::IsMember({"B", "C"}));
    cross->add_option("--max-n", c.max_n, "Window end")->check(CLI::PositiveNumber);

    auto* prob = app.add_subcommand("prob", "Exact probabilities of the gap events");
    prob->require_subcommand(1);
    auto* pexact = prob->add_subcommand("exact", "P(conditions from block k).\nCSV columns: k,value,tail_bound");
    auto* pcheck = prob->add_subcommand("check", "Both conditional probability identities");
    auto* prec = prob->add_subcommand("recurrence", "The two-step recurrence in k");
    for (auto* sub : {pexact, pcheck, prec}) {
        params(sub);
        common(sub);
        sub->add_option("--q", c.q, "0 < q < 1");
    }
    pexact->add_option("--k", c.k, "Block index")->check(CLI::NonNegativeNumber);
    pcheck->add_option("--tol", c.tol, "Tolerance");
    prec->add_option("--k-max", c.k_max, "Largest k")->check(CLI::NonNegativeNumber);
    prec->add_option("--tol", c.tol, "Tolerance");

    auto* sim = app.add_subcommand("simulate",
                                   "Monte Carlo estimates.\nCSV columns: quantity,hits,trials,estimate,stderr,target,z");
    params(sim);
    common(sim);
    sim->add_option("--q", c.q, "0 < q < 1");
    sim->add_option("--trials", c.trials, "Number of trials")->check(CLI::PositiveNumber);
    sim->add_option("--seed", c.seed, "Seed");
    sim->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    sim->add_option("--epsilon", c.epsilon, "Tail probability bound");

    auto* all = app.add_subcommand("verify-all", "Run every acceptance criterion.\nCSV columns: id,title,passed,seconds,detail");
    common(all);
    all->add_flag("--quick", c.quick, "Reduced truncations and trial counts");
    all->add_option("--mutate", c.mutate, "Mutate this identity (negative control)")->check(CLI::IsMember(identity_names()));
    all->add_option("--seed", c.seed, "Simulation seed");
    all->add_option("--workers", c.workers, "Simulation worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::CallForVersion& e) {
        out << "schurlab 0.1.0\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Outcome result;
    try {
        auto was = [](CLI::App* sub) { return sub->parsed(); };
        if (was(count)) {
            result = do_count(c);
        } else if (was(series)) {
            result = do_series(c);
        } else if (was(verify)) {
            result = do_verify(c, verify->count("--d") > 0, verify->count("--r") > 0);
        } else if (was(conv)) {
            result = do_convergence(c);
        } else if (was(consts)) {
            result = do_constants(c);
        } else if (was(gexp)) {
            result = do_g_expansion(c);
        } else if (was(fnear)) {
            result = do_f_near_one(c);
        } else if (was(cross)) {
            result = do_crossover(c);
        } else if (was(pexact)) {
            result = do_prob_exact(c);
        } else if (was(pcheck)) {
            result = emit_report(theorem_prob_check(SchurParams(c.d, c.r), c.q, c.tol == 1e-12 ? 1e-6 : c.tol), c.format);
        } else if (was(prec)) {
            result = emit_report(verify_Uk_recurrence(SchurParams(c.d, c.r), c.q, c.k_max, c.tol == 1e-12 ? 1e-10 : c.tol),
                                 c.format);
        } else if (was(sim)) {
            result = do_simulate(c);
        } else {
            result = do_verify_all(c, err);
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ToleranceUnreachable& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    if (c.output.empty()) {
        out << result.text;
    } else {
        const std::string path = output_path(c.output);
        std::ofstream file(path);
        if (!file) {
            err << "error: cannot write " << path << "\n";
            return kExitUsage;
        }
        file << result.text;
    }
    if (!result.passed) err << "verification failed\n";
    return result.passed ? kExitPass : kExitFailure;
}

}  // namespace schurlab::cli
