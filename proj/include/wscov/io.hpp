#pragma once

// Text artifacts: density and spectrum CSV, support JSON, and the flat
// key = value config format read by the command-line tool.

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wscov/density.hpp"
#include "wscov/sim.hpp"

namespace wscov::io {

/// Header `x,density`, then one row per grid point in %.16e.
void write_density_csv(std::ostream& os, const DensityCurve& curve);
nlohmann::json density_json(const DensityCurve& curve);

/// {"intervals": [[a, b], ...], "gaps": [[a, b], ...], "threshold": t}.
nlohmann::json support_json(const SupportReport& report);
/// Header `kind,lo,hi` with kind in {support, gap}.
void write_support_csv(std::ostream& os, const SupportReport& report);

/// Header `index,eigenvalue`, ascending, index from 0.
void write_spectrum_csv(std::ostream& os, const EmpiricalSpectrum& spec);

/// One `key = value` per line. Blank lines and lines starting with '#' are
/// skipped; keys and values are trimmed. Duplicate keys are rejected.
/// Throws ConfigParseError naming the line.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace wscov::io
