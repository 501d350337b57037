#include "wscov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wscov/errors.hpp"

namespace wscov::io {

namespace {

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

nlohmann::json intervals_json(const std::vector<Interval>& xs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Interval& iv : xs) arr.push_back({iv.lo, iv.hi});
    return arr;
}

}  // namespace

void write_density_csv(std::ostream& os, const DensityCurve& curve) {
    os << "x,density\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i) os << sci(curve.xs[i]) << ',' << sci(curve.fs[i]) << '\n';
}

nlohmann::json density_json(const DensityCurve& curve) {
    return {{"x", curve.xs},
            {"density", curve.fs},
            {"epsilon", curve.epsilon},
            {"zero_atom", curve.zero_atom},
            {"total_mass", curve.total_mass()}};
}

nlohmann::json support_json(const SupportReport& report) {
    return {{"intervals", intervals_json(report.support_intervals)},
            {"gaps", intervals_json(report.gaps)},
            {"threshold", report.threshold}};
}

void write_support_csv(std::ostream& os, const SupportReport& report) {
    os << "kind,lo,hi\n";
    for (const Interval& iv : report.support_intervals) os << "support," << sci(iv.lo) << ',' << sci(iv.hi) << '\n';
    for (const Interval& iv : report.gaps) os << "gap," << sci(iv.lo) << ',' << sci(iv.hi) << '\n';
}

void write_spectrum_csv(std::ostream& os, const EmpiricalSpectrum& spec) {
    os << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) os << i << ',' << sci(spec.eigenvalues[i]) << '\n';
}

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigParseError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigParseError("config line " + std::to_string(line_no) + ": empty key");
        if (!out.emplace(key, value).second) {
            throw ConfigParseError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace wscov::io
