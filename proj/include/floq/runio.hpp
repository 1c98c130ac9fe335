#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "floq/tracer.hpp"

namespace floq {

enum class RunMode { Trace, OracleCheck, Bound };

struct RunSpec {
  RunMode mode = RunMode::Trace;
  double omega_ratio = 2.0 / 3.0;
  int n0 = 0;
  int r = 30;
  int start_n = 0;  // defaults to n0 when the flag is omitted
  double lambda_max = 8.0;
  double check_lambda = 1.0;  // amplitude probed by oracle-check
  NumericsConfig numerics{};
  std::string output_path = "floquet_trace.csv";
  bool both_r = false;  // run r=20 and r=30 traces concurrently
};

// Thrown for --help / --version; carries the text to print.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const char* what() const noexcept override { return text_.c_str(); }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

// Parses argv (without the program name).  Unknown flags, malformed values
// and inconsistent window specs raise InvalidParameter with usage text;
// resonant omega_ratio raises ResonantDrive.
RunSpec parse_args(const std::vector<std::string>& args);

// Atomic CSV write (temp file + rename); byte-identical for identical input.
void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& records);

// Executes the run; returns kExitOk or kExitCheckFailed.  Config / resonance /
// I/O failures propagate as exceptions (mapped to codes by cli_main).
int run(const RunSpec& spec, std::ostream& out);

int cli_main(int argc, const char* const* argv);

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResonance = 3;
inline constexpr int kExitIoError = 4;
inline constexpr int kExitInternal = 5;

}  // namespace floq
