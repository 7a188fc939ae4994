#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "solenoid/config.hpp"
#include "solenoid/report.hpp"

namespace solenoid {

/// Command-line overrides; unset fields fall back to the config's [run]
/// section and then to the defaults (K = 6 capped by the chain length,
/// L = 8, λ = 1/2, seed = 1).
struct CommandOptions {
  std::optional<int> depth;
  std::optional<int> words;
  std::optional<Rational> lambda;
  std::optional<std::uint64_t> seed;
  std::string word;
  std::string at;
};

ReportNode classify(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input);
ReportNode compare(const ConfigFile& a, const ConfigFile& b, const CommandOptions& opts, const std::string& input_a,
                   const std::string& input_b);
ReportNode code(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input);
ReportNode holonomy(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input);
ReportNode measure(const ConfigFile& cfg, const CommandOptions& opts, const std::string& input);

}  // namespace solenoid
