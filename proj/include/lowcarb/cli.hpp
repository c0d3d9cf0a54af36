#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lowcarb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct ManifestInput {
  std::string role;  // flag name, e.g. "spec"
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<ManifestInput> inputs;
  std::string output_dir;
  std::string tool_version;
  std::string inputs_sha256;  // over role, path-free digest pairs
  std::string created_utc;
};

std::string sha256_hex(std::string_view data);
std::string manifest_to_json(const RunManifest& manifest);

// Runs one subcommand. `args` excludes the program name. Reports go to the
// output directory; a short summary goes to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 1 domain/validation, 2 usage, 3 I/O.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Directory holding the bundled fixtures used as flag defaults.
std::filesystem::path data_dir();

}  // namespace lowcarb::cli
