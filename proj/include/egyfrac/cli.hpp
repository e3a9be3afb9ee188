#pragma once

// Command-line front end. Kept as a library so tests can drive it without
// spawning processes.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace egyfrac::cli {

// Exit codes. Solver status maps to 0/1/2.
inline constexpr int kExitFound = 0;
inline constexpr int kExitNone = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitInconclusive = 5;
inline constexpr int kExitInfeasible = 6;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitIo = 74;

/// What produced an artifact. Same manifest and deterministic mode give
/// byte-identical output.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string input_digest;  // sha256 over the input files, hex; empty if none
  std::string output_path;
  std::string to_json() const;
};

std::string sha256_hex(std::string_view data);

/// --out, else $EGYFRAC_OUT_DIR, else ./egyfrac-out.
std::filesystem::path output_root(const std::string& flag);

std::string read_file(const std::filesystem::path& p);
/// Creates parent directories as needed.
void write_file(const std::filesystem::path& p, std::string_view data);

/// RFC 4180: CRLF line ends; fields with comma, quote, CR or LF are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return buf_; }

 private:
  void emit(const std::vector<std::string>& fields);
  std::size_t width_;
  std::string buf_;
};

std::string csv_field(std::string_view s);

/// Runs one command. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egyfrac::cli
