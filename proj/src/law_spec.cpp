// Text form of laws: dirac:w, mix:p1@x1,p2@x2,..., unif:lo,hi, ewma:alpha.

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <vector>

#include "wscov/errors.hpp"
#include "wscov/laws.hpp"

namespace wscov {

namespace {

double parse_number(std::string_view token, std::string_view whole) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw LawParseError("malformed number '" + std::string(token) + "' in law '" + std::string(whole) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

void append_number(std::string& out, double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    out.append(buf, ptr);
}

struct Parsed {
    std::string_view kind;
    std::string_view body;
};

Parsed split_kind(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw LawParseError("law '" + std::string(text) + "' lacks a 'kind:' prefix");
    }
    return {text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<Atom> parse_atoms(std::string_view body, std::string_view whole) {
    std::vector<Atom> atoms;
    for (std::string_view item : split(body, ',')) {
        const std::size_t at = item.find('@');
        if (at == std::string_view::npos) {
            throw LawParseError("mixture atom '" + std::string(item) + "' must be mass@location");
        }
        atoms.push_back({parse_number(item.substr(0, at), whole), parse_number(item.substr(at + 1), whole)});
    }
    return atoms;
}

template <class Law>
Law rethrow_as_parse_error(std::string_view whole, auto&& make) {
    try {
        return make();
    } catch (const LawParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw LawParseError("invalid law '" + std::string(whole) + "': " + e.what());
    }
}

void format_atoms(std::string& out, const AtomicMixture& m) {
    out += "mix:";
    bool first = true;
    for (const Atom& a : m.atoms()) {
        if (!first) out += ',';
        first = false;
        append_number(out, a.mass);
        out += '@';
        append_number(out, a.location);
    }
}

}  // namespace

SpectralLaw parse_spectral_law(std::string_view text) {
    const auto [kind, body] = split_kind(text);
    return rethrow_as_parse_error<SpectralLaw>(text, [&]() -> SpectralLaw {
        if (kind == "dirac") return SpectralLaw::point_mass(parse_number(body, text));
        if (kind == "mix") return SpectralLaw::mixture(parse_atoms(body, text));
        throw LawParseError("unknown population law kind '" + std::string(kind) + "' (expected dirac or mix)");
    });
}

WeightLaw parse_weight_law(std::string_view text) {
    const auto [kind, body] = split_kind(text);
    return rethrow_as_parse_error<WeightLaw>(text, [&]() -> WeightLaw {
        if (kind == "dirac") return WeightLaw::point_mass(parse_number(body, text));
        if (kind == "mix") return WeightLaw::mixture(parse_atoms(body, text));
        if (kind == "unif") {
            const auto parts = split(body, ',');
            if (parts.size() != 2) throw LawParseError("unif expects 'unif:lo,hi', got '" + std::string(text) + "'");
            return WeightLaw::uniform(parse_number(parts[0], text), parse_number(parts[1], text));
        }
        if (kind == "ewma") return WeightLaw::exp_weighted(parse_number(body, text));
        throw LawParseError("unknown weight law kind '" + std::string(kind) + "'");
    });
}

std::string format_law(const SpectralLaw& law) {
    std::string out;
    if (const auto* p = std::get_if<PointMass>(&law.variant())) {
        out += "dirac:";
        append_number(out, p->location);
    } else {
        format_atoms(out, std::get<AtomicMixture>(law.variant()));
    }
    return out;
}

std::string format_law(const WeightLaw& law) {
    std::string out;
    const auto& v = law.variant();
    if (const auto* p = std::get_if<PointMass>(&v)) {
        out += "dirac:";
        append_number(out, p->location);
    } else if (const auto* m = std::get_if<AtomicMixture>(&v)) {
        format_atoms(out, *m);
    } else if (const auto* u = std::get_if<Uniform>(&v)) {
        out += "unif:";
        append_number(out, u->lo);
        out += ',';
        append_number(out, u->hi);
    } else {
        out += "ewma:";
        append_number(out, std::get<ExpWeighted>(v).alpha);
    }
    return out;
}

}  // namespace wscov
