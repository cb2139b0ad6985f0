#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nml/json_io.hpp"
#include "nml/report.hpp"

namespace nml::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// FNV-1a 64 of the bytes, as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

struct RunReport {
  RunReport() = default;
  explicit RunReport(std::string cmd, std::optional<std::string> digest = std::nullopt)
      : command(std::move(cmd)), input_digest(std::move(digest)) {}

  std::string command;
  std::optional<std::string> input_digest;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rng;
  std::vector<PropertyReport> reports;
  io::Json output = io::Json::object();
  std::optional<double> wall_time;

  /// False iff some report fails.
  bool passed() const;
  io::Json to_json() const;
  static RunReport from_json(const io::Json& j);
};

/// Runs one command line (without the program name). JSON goes to `out`
/// (or the --report file), the human summary to `err`. Returns 0 when every
/// report holds, 1 when one fails, 2 on bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nml::cli
