#include "schurlab/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace schurlab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

json mismatch_json(const Mismatch& m) {
    json j = {{"exponent", m.exponent}, {"exponent24", m.exponent24}, {"lhs", m.lhs}, {"rhs", m.rhs}};
    j["x_degree"] = m.x_degree ? json(*m.x_degree) : json(nullptr);
    return j;
}

json report_json(const VerificationReport& r) {
    json j = {{"identity", r.identity_name}, {"trunc", r.trunc}, {"passed", r.passed}, {"detail", r.detail}};
    j["first_mismatch"] = r.first_mismatch ? mismatch_json(*r.first_mismatch) : json(nullptr);
    j["max_deviation"] = r.max_deviation ? json(format_double(*r.max_deviation)) : json(nullptr);
    return j;
}

std::string dump(json j, int indent) {
    j["schema_version"] = kSchemaVersion;
    return j.dump(indent);
}

}  // namespace

std::string series_to_json(const QSeries& s, int indent) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(c.get_str());
    return dump({{"offset24", s.offset24()}, {"trunc", s.trunc()}, {"exact", s.exact()}, {"coeffs", coeffs}}, indent);
}

QSeries series_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion) throw std::invalid_argument("unsupported schema_version");
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
    if (static_cast<long>(coeffs.size()) != j.at("trunc").get<long>() + 1) {
        throw std::invalid_argument("coefficient count does not match trunc");
    }
    return QSeries(j.at("offset24").get<long>(), std::move(coeffs), j.value("exact", false));
}

std::string report_to_json(const VerificationReport& r, int indent) { return dump(report_json(r), indent); }

std::string simulation_to_json(const SimulationReport& r, int indent) {
    json est = json::array();
    for (const auto& e : r.estimates) {
        est.push_back({{"quantity", e.name},
                       {"hits", e.hits},
                       {"trials", e.trials},
                       {"estimate", format_double(e.estimate)},
                       {"stderr", format_double(e.std_error)},
                       {"target", format_double(e.target)},
                       {"z", format_double(e.z)}});
    }
    return dump({{"d", r.d},
                 {"r", r.r},
                 {"q", format_double(r.q)},
                 {"trials", r.trials},
                 {"seed", r.seed},
                 {"J", r.J},
                 {"epsilon", format_double(r.epsilon)},
                 {"estimates", est}},
                indent);
}

std::string convergence_to_json(const std::vector<ConvergenceRow>& rows, int indent) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back({{"n", row.n},
                       {"exact_log", format_double(row.exact_log)},
                       {"estimate_log", format_double(row.estimate_log)},
                       {"ratio", format_double(row.ratio)}});
    }
    return dump({{"rows", arr}}, indent);
}

std::string suite_to_json(const std::vector<CriterionResult>& results, int indent) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"detail", r.detail},
                       {"seconds", format_double(r.seconds)}});
    }
    return dump({{"passed", all}, {"criteria", arr}}, indent);
}

std::string coefficients_to_csv(const std::vector<BigInt>& coeffs, long first_exponent) {
    std::ostringstream out;
    out << "n,value\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) out << first_exponent + static_cast<long>(i) << ',' << coeffs[i].get_str() << '\n';
    return out.str();
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "n,exact_log,estimate_log,ratio\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.exact_log) << ',' << format_double(r.estimate_log) << ','
            << format_double(r.ratio) << '\n';
    }
    return out.str();
}

std::string simulation_to_csv(const SimulationReport& r) {
    std::ostringstream out;
    out << "quantity,hits,trials,estimate,stderr,target,z\n";
    for (const auto& e : r.estimates) {
        out << e.name << ',' << e.hits << ',' << e.trials << ',' << format_double(e.estimate) << ','
            << format_double(e.std_error) << ',' << format_double(e.target) << ',' << format_double(e.z) << '\n';
    }
    return out.str();
}

}  // namespace schurlab
