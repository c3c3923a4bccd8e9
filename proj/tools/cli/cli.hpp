#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoisson/classical.hpp"
#include "qpoisson/domain.hpp"
#include "qpoisson/pipeline.hpp"
#include "qpoisson/spectral.hpp"

namespace qpoisson::cli {

/// Bad command line. The message is one line and names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the formatted help text.
struct HelpRequested {
  std::string text;
};

enum class Command { Solve, Classical, Compare, Bench, Sweep, ListSources };

struct RunConfig {
  Command command = Command::Solve;
  double lx = 1.0;
  double ly = 1.0;
  int n = 5;
  int m = 5;
  SourceSpec source = SourceSpec::sinusoid(1, 1);
  std::uint64_t shots = 10000;
  std::uint64_t seed = 42;
  EstimateMode mode = EstimateMode::Sampled;
  CorrectionKind correction = CorrectionKind::SinusoidProfile;
  std::optional<Truncation> truncation;
  SignConvention sign = SignConvention::Poisson;
  bool shift_enabled = false;
  QftImpl qft = QftImpl::Circuit;
  bool dominant_mode_only = false;
  std::optional<QuadratureSpec> quadrature;  // default_quadrature(grid) when absent
  std::optional<ModeCount> modes;            // full width when absent
  std::filesystem::path output_dir = ".";
  int repeat = 1;
  bool parallel = false;
  int sweep_first = 3;
  int sweep_last = 8;
  bool plot = false;
  bool write_counts = false;
  bool write_state = false;
  bool write_source = false;

  Grid2D grid() const { return build_grid(lx, ly, n, m); }
  /// Source after the optional harmonic shift.
  SourceSpec effective_source() const;
  QuantumOptions quantum_options() const;
};

/// Parses arguments without the program name. Throws UsageError or
/// HelpRequested.
RunConfig parse_args(std::span<const std::string> args);

/// Runs the command. Returns 0 on success and 1 on a pipeline or I/O error,
/// which is reported on `err`. Either every output file is written or none.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit code 2 for usage errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qpoisson::cli
