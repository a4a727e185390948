#include "dcsbox/report_io.hpp"

#include "dcsbox/errors.hpp"

#include <json.hpp>

namespace dcsbox {

using ojson = nlohmann::ordered_json;

namespace {

ojson rational_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}, {"value", r.to_double()}}; }

Rational rational_from(const ojson& j) { return {j.at("num").get<std::uint64_t>(), j.at("den").get<std::uint64_t>()}; }

ojson histogram_json(const std::map<std::uint32_t, std::uint64_t>& h) {
    ojson arr = ojson::array();
    for (const auto& [value, count] : h) arr.push_back({value, count});
    return arr;
}

std::map<std::uint32_t, std::uint64_t> histogram_from(const ojson& j) {
    std::map<std::uint32_t, std::uint64_t> h;
    for (const auto& pair : j) h[pair.at(0).get<std::uint32_t>()] = pair.at(1).get<std::uint64_t>();
    return h;
}

std::string histogram_csv(std::string_view header, const std::map<std::uint32_t, std::uint64_t>& h) {
    std::string out(header);
    out += '\n';
    for (const auto& [value, count] : h) out += std::to_string(value) + "," + std::to_string(count) + "\n";
    return out;
}

}  // namespace

std::string report_to_json(const CryptoReport& r) {
    ojson j;
    j["n"] = r.n;
    j["provenance"] = r.provenance;
    j["bijective"] = r.bijective;
    j["per_bit_nonlinearity"] = r.per_bit_nonlinearity;
    j["min_nl"] = r.min_nl;
    j["avg_nl"] = r.avg_nl;
    j["component_min_nl"] = r.component_min_nl;
    j["heuristic_nl_bound"] = r.heuristic_nl_bound;
    j["ddt_max"] = r.ddt_max;
    j["ddt_max_prob"] = rational_json(r.ddt_max_prob);
    j["ddt_histogram"] = histogram_json(r.ddt_histogram);
    j["lat_max_abs"] = r.lat_max_abs;
    j["linear_prob_max"] = rational_json(r.linear_prob_max);
    j["lat_histogram"] = histogram_json(r.lat_histogram);
    j["per_bit_degree"] = r.per_bit_degree;
    j["anf_monomial_counts"] = r.anf_monomial_counts;
    if (r.uniformity_chi2) {
        const auto& c = *r.uniformity_chi2;
        j["uniformity_chi2"] = {{"statistic", c.statistic}, {"dof", c.dof},     {"samples", c.samples},
                                {"lower", c.lower},         {"upper", c.upper}, {"pass", c.pass}};
    } else {
        j["uniformity_chi2"] = nullptr;
    }
    return j.dump(2) + "\n";
}

CryptoReport report_from_json(std::string_view text) {
    try {
        const auto j = ojson::parse(text);
        CryptoReport r;
        r.n = j.at("n").get<unsigned>();
        r.provenance = j.at("provenance").get<std::string>();
        r.bijective = j.at("bijective").get<bool>();
        r.per_bit_nonlinearity = j.at("per_bit_nonlinearity").get<std::vector<std::uint32_t>>();
        r.min_nl = j.at("min_nl").get<std::uint32_t>();
        r.avg_nl = j.at("avg_nl").get<double>();
        r.component_min_nl = j.at("component_min_nl").get<std::uint32_t>();
        r.heuristic_nl_bound = j.at("heuristic_nl_bound").get<double>();
        r.ddt_max = j.at("ddt_max").get<std::uint32_t>();
        r.ddt_max_prob = rational_from(j.at("ddt_max_prob"));
        r.ddt_histogram = histogram_from(j.at("ddt_histogram"));
        r.lat_max_abs = j.at("lat_max_abs").get<std::uint32_t>();
        r.linear_prob_max = rational_from(j.at("linear_prob_max"));
        r.lat_histogram = histogram_from(j.at("lat_histogram"));
        r.per_bit_degree = j.at("per_bit_degree").get<std::vector<unsigned>>();
        r.anf_monomial_counts = j.at("anf_monomial_counts").get<std::vector<double>>();
        if (const auto& c = j.at("uniformity_chi2"); !c.is_null()) {
            r.uniformity_chi2 = ChiSquareResult{c.at("statistic").get<double>(), c.at("dof").get<unsigned>(),
                                                c.at("samples").get<std::uint64_t>(), c.at("lower").get<double>(),
                                                c.at("upper").get<double>(), c.at("pass").get<bool>()};
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string ddt_histogram_csv(const CryptoReport& r) { return histogram_csv("value,count", r.ddt_histogram); }

std::string lat_histogram_csv(const CryptoReport& r) { return histogram_csv("abs_bias,count", r.lat_histogram); }

}  // namespace dcsbox
