#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <system_error>
#include <utility>

#include <CLI11.hpp>

#include "qpoisson/bench.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson::cli {
namespace {

constexpr const char* kCommandNames[] = {"solve", "classical", "compare",
                                         "bench", "sweep",     "list-sources"};

std::optional<Command> parse_command(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  return std::nullopt;
}

[[noreturn]] void usage(std::string_view flag, std::string_view reason) {
  throw UsageError(std::string(flag) + ": " + std::string(reason));
}

template <typename T, typename Parse>
T parse_name(std::string_view flag, const std::string& text, Parse parse) {
  const auto value = parse(text);
  if (!value) usage(flag, "unknown value '" + text + "'");
  return *value;
}

// Everything CLI11 binds to, before validation.
struct RawArgs {
  std::string command;
  std::string source = "sinusoid";
  int k1 = 1;
  int k2 = 1;
  double x0 = 0.5;
  double y0 = 0.5;
  std::pair<int, int> qubits{5, 5};
  double lx = 1.0;
  double ly = 1.0;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 42;
  std::string mode = "sampled";
  std::string correction;
  std::pair<long long, long long> truncation{0, 0};
  std::string sign = "poisson";
  bool shift = false;
  std::string qft = "circuit";
  bool dominant = false;
  std::string quad_rule = "simpson";
  std::vector<int> quad_subdiv;
  std::pair<long long, long long> modes{0, 0};
  std::string output_dir = ".";
  int repeat = 1;
  bool parallel = false;
  std::pair<int, int> sweep{3, 8};
  bool plot = false;
  bool write_counts = false;
  bool write_state = false;
  bool write_source = false;
};

void add_options(CLI::App& app, RawArgs& raw) {
  std::string commands;
  for (const char* name : kCommandNames) commands += std::string(commands.empty() ? "" : ", ") + name;
  app.add_option("command", raw.command, "One of: " + commands)->required();

  app.add_option("--source", raw.source,
                 "sinusoid, polynomial-bump, anisotropic-sinusoid, gaussian, "
                 "gaussian-plus-sinusoid");
  app.add_option("--k1", raw.k1, "x harmonic of sinusoidal sources");
  app.add_option("--k2", raw.k2, "y harmonic of sinusoidal sources");
  app.add_option("--x0", raw.x0, "Gaussian center x");
  app.add_option("--y0", raw.y0, "Gaussian center y");
  app.add_option("--qubits", raw.qubits, "Qubits per axis: n m (each 1..12)");
  app.add_option("--lx", raw.lx, "Domain length in x");
  app.add_option("--ly", raw.ly, "Domain length in y");
  app.add_option("--shots", raw.shots, "Measurement shots (sampled mode)");
  app.add_option("--seed", raw.seed, "Sampling seed (sampled mode)");
  app.add_option("--mode", raw.mode, "sampled or exact");
  app.add_option("--correction", raw.correction,
                 "identity, sinusoid, anisotropic, gaussian, mixed (default follows --source)");
  app.add_option("--truncation", raw.truncation, "Retained modes tx ty");
  app.add_option("--sign", raw.sign, "poisson or literal");
  app.add_flag("--shift", raw.shift, "Apply the harmonic shift to the source");
  app.add_option("--qft", raw.qft, "circuit or dense");
  app.add_flag("--dominant-mode", raw.dominant, "Keep only the largest coefficient");
  app.add_option("--quad-rule", raw.quad_rule, "simpson or trapezoid");
  app.add_option("--quad-subdiv", raw.quad_subdiv, "Quadrature subdivisions: s or sx sy")
      ->expected(1, 2);
  app.add_option("--modes", raw.modes, "Classical mode counts kx ky");
  app.add_option("--output-dir", raw.output_dir, "Directory for output files")
      ->envname("QPOISSON_OUTPUT_DIR");
  app.add_option("--repeat", raw.repeat, "Benchmark repetitions (medians reported)");
  app.add_flag("--parallel", raw.parallel, "Use the OpenMP code paths");
  app.add_option("--sweep-range", raw.sweep, "First and last n = m for sweep");
  app.add_flag("--plot", raw.plot, "Also write gnuplot matrix files");
  app.add_flag("--write-counts", raw.write_counts, "Also write counts.csv (sampled mode)");
  app.add_flag("--write-state", raw.write_state, "Also write the post-QFT state.csv");
  app.add_flag("--write-source", raw.write_source, "Also write the sampled source.csv");
  app.set_config("--config", "", "TOML or INI file with option defaults");
}

SourceSpec build_source(const CLI::App& app, const RawArgs& raw) {
  const SourceKind kind = parse_name<SourceKind>("--source", raw.source, parse_source_kind);
  const bool has_k = app.count("--k1") > 0 || app.count("--k2") > 0;
  const bool has_c = app.count("--x0") > 0 || app.count("--y0") > 0;
  if (has_k && !uses_harmonics(kind)) {
    usage(app.count("--k1") ? "--k1" : "--k2",
          "source '" + raw.source + "' takes no harmonics");
  }
  if (has_c && !uses_center(kind)) {
    usage(app.count("--x0") ? "--x0" : "--y0", "source '" + raw.source + "' takes no center");
  }
  if (raw.k1 < 1) usage("--k1", "must be >= 1");
  if (raw.k2 < 1) usage("--k2", "must be >= 1");
  if (!std::isfinite(raw.x0)) usage("--x0", "must be finite");
  if (!std::isfinite(raw.y0)) usage("--y0", "must be finite");
  std::optional<Harmonics> harmonics;
  std::optional<Center> center;
  if (uses_harmonics(kind)) harmonics = Harmonics{raw.k1, raw.k2};
  if (uses_center(kind)) center = Center{raw.x0, raw.y0};
  return SourceSpec::make(kind, harmonics, center);
}

RunConfig validate(const CLI::App& app, const RawArgs& raw) {
  RunConfig config;
  const auto command = parse_command(raw.command);
  if (!command) usage("command", "unknown command '" + raw.command + "'");
  config.command = *command;

  config.source = build_source(app, raw);

  const auto [n, m] = raw.qubits;
  if (n < 1 || n > kDefaultMaxQubitsPerAxis || m < 1 || m > kDefaultMaxQubitsPerAxis) {
    usage("--qubits", "each axis needs 1..12 qubits, got " + std::to_string(n) + " " +
                          std::to_string(m));
  }
  config.n = n;
  config.m = m;
  if (!(raw.lx > 0.0) || !std::isfinite(raw.lx)) usage("--lx", "must be positive");
  if (!(raw.ly > 0.0) || !std::isfinite(raw.ly)) usage("--ly", "must be positive");
  config.lx = raw.lx;
  config.ly = raw.ly;
  const auto nx = static_cast<long long>(1) << n;
  const auto ny = static_cast<long long>(1) << m;

  if (raw.shots < 1) usage("--shots", "must be >= 1");
  config.shots = raw.shots;
  config.seed = raw.seed;
  config.mode = parse_name<EstimateMode>("--mode", raw.mode, parse_estimate_mode);
  config.correction = raw.correction.empty()
                          ? default_correction_for(config.source.kind())
                          : parse_name<CorrectionKind>("--correction", raw.correction,
                                                       parse_correction_kind);
  if (app.count("--truncation") > 0) {
    const auto [tx, ty] = raw.truncation;
    if (tx < 1 || tx > nx || ty < 1 || ty > ny) {
      usage("--truncation", "needs 1 <= tx <= " + std::to_string(nx) + " and 1 <= ty <= " +
                                std::to_string(ny));
    }
    config.truncation = Truncation{static_cast<std::size_t>(tx), static_cast<std::size_t>(ty)};
  }
  config.sign = parse_name<SignConvention>("--sign", raw.sign, parse_sign_convention);
  config.shift_enabled = raw.shift;
  config.qft = parse_name<QftImpl>("--qft", raw.qft, parse_qft_impl);
  config.dominant_mode_only = raw.dominant;

  if (app.count("--quad-rule") > 0 || app.count("--quad-subdiv") > 0) {
    QuadratureSpec quad = default_quadrature(build_grid(raw.lx, raw.ly, n, m));
    quad.rule = parse_name<QuadratureRule>("--quad-rule", raw.quad_rule, parse_quadrature_rule);
    if (!raw.quad_subdiv.empty()) {
      quad.subdivisions_x = raw.quad_subdiv.front();
      quad.subdivisions_y = raw.quad_subdiv.back();
    }
    try {
      quad.validate();
    } catch (const QuadratureError& e) {
      usage("--quad-subdiv", e.what());
    }
    config.quadrature = quad;
  }
  if (app.count("--modes") > 0) {
    const auto [kx, ky] = raw.modes;
    if (kx < 1 || kx > nx || ky < 1 || ky > ny) {
      usage("--modes", "needs 1 <= kx <= " + std::to_string(nx) + " and 1 <= ky <= " +
                           std::to_string(ny));
    }
    config.modes = ModeCount{static_cast<std::size_t>(kx), static_cast<std::size_t>(ky)};
  }

  if (raw.output_dir.empty()) usage("--output-dir", "must not be empty");
  config.output_dir = raw.output_dir;
  if (raw.repeat < 1) usage("--repeat", "must be >= 1");
  config.repeat = raw.repeat;
  config.parallel = raw.parallel;
  const auto [first, last] = raw.sweep;
  if (first < 1 || last > kDefaultMaxQubitsPerAxis) {
    usage("--sweep-range", "qubit counts must lie in 1..12");
  }
  config.sweep_first = first;
  config.sweep_last = last;
  config.plot = raw.plot;
  config.write_counts = raw.write_counts;
  config.write_state = raw.write_state;
  config.write_source = raw.write_source;

  if (config.shift_enabled) {
    const SourceSpec shifted = config.effective_source();
    try {
      sample_source(shifted, config.grid());
    } catch (const ZeroSourceError&) {
      usage("--shift", "shifted source '" + shifted.describe() + "' vanishes on the grid");
    }
  }
  return config;
}

std::string single_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

// Output files are rendered in memory first and then committed together.
class OutputSet {
 public:
  void add(std::string name, std::string contents) {
    files_.emplace_back(std::move(name), std::move(contents));
  }

  template <typename Writer>
  void add_with(std::string name, Writer&& writer) {
    std::ostringstream out;
    writer(out);
    add(std::move(name), out.str());
  }

  /// Writes every file to a temporary name, then renames them into place.
  /// On failure all temporaries are removed and nothing is renamed.
  void commit(const std::filesystem::path& dir) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw Error("cannot create output directory '" + dir.string() + "'");
    }
    std::vector<fs::path> temporaries;
    const auto discard = [&temporaries] {
      std::error_code ignored;
      for (const fs::path& p : temporaries) fs::remove(p, ignored);
    };
    for (const auto& [name, contents] : files_) {
      const fs::path tmp = dir / ("." + name + ".tmp");
      temporaries.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << contents;
      out.close();
      if (!out) {
        discard();
        throw Error("cannot write '" + (dir / name).string() + "'");
      }
    }
    for (std::size_t i = 0; i < files_.size(); ++i) {
      fs::rename(temporaries[i], dir / files_[i].first, ec);
      if (ec) {
        discard();
        throw Error("cannot write '" + (dir / files_[i].first).string() + "': " + ec.message());
      }
    }
  }

  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

void add_quantum_files(OutputSet& files, const RunConfig& config, const QuantumRun& run) {
  files.add_with("solution.csv", [&](std::ostream& o) { write_solution_csv(o, run.solution); });
  files.add_with("coefficients.csv",
                 [&](std::ostream& o) { write_spectrum_csv(o, run.estimate); });
  if (config.plot) {
    files.add_with("solution.dat",
                   [&](std::ostream& o) { write_solution_gnuplot(o, run.solution); });
  }
  if (config.write_counts && run.counts) {
    files.add_with("counts.csv", [&](std::ostream& o) { write_counts_csv(o, *run.counts); });
  }
  if (config.write_state) {
    files.add_with("state.csv", [&](std::ostream& o) { write_state_csv(o, run.transformed); });
  }
  if (config.write_source) {
    files.add_with("source.csv", [&](std::ostream& o) { write_source_csv(o, run.field); });
  }
}

ClassicalRun classical_run(const RunConfig& config) {
  const Grid2D grid = config.grid();
  ClassicalOptions options;
  options.quadrature = config.quadrature.value_or(default_quadrature(grid));
  options.modes = config.modes;
  options.parallel = config.parallel;
  return run_classical_pipeline(config.effective_source(), grid, options);
}

bench::BenchConfig bench_config(const RunConfig& config) {
  bench::BenchConfig bc;
  bc.lx = config.lx;
  bc.ly = config.ly;
  bc.n = config.n;
  bc.m = config.m;
  bc.source = config.effective_source();
  bc.quantum = config.quantum_options();
  bc.quadrature = config.quadrature;
  bc.classical_modes = config.modes;
  bc.repeat = config.repeat;
  return bc;
}

void list_sources(std::ostream& out) {
  const SourceKind kinds[] = {SourceKind::Sinusoid, SourceKind::PolynomialBump,
                              SourceKind::AnisotropicSinusoid, SourceKind::Gaussian,
                              SourceKind::GaussianPlusSinusoid};
  for (SourceKind kind : kinds) {
    std::string params;
    if (uses_harmonics(kind)) params += " --k1 --k2";
    if (uses_center(kind)) params += " --x0 --y0";
    out << to_string(kind) << "  correction=" << to_string(default_correction_for(kind));
    if (!params.empty()) out << "  params:" << params;
    out << '\n';
  }
}

void report_written(std::ostream& out, const RunConfig& config, const OutputSet& files) {
  for (const auto& [name, contents] : files.files()) {
    out << "wrote " << (config.output_dir / name).string() << '\n';
  }
}

}  // namespace

SourceSpec RunConfig::effective_source() const {
  return shift_enabled ? with_harmonic_shift(source) : source;
}

QuantumOptions RunConfig::quantum_options() const {
  QuantumOptions options;
  options.mode = mode;
  options.shots = shots;
  options.seed = seed;
  options.qft = qft;
  options.correction = correction;
  options.dominant_mode_only = dominant_mode_only;
  options.truncation = truncation;
  options.sign = sign;
  options.parallel = parallel;
  return options;
}

RunConfig parse_args(std::span<const std::string> args) {
  CLI::App app{"Quantum-spectral Poisson solver", "qpoisson"};
  RawArgs raw;
  add_options(app, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(single_line(e.what()));
  }
  try {
    return validate(app, raw);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--source: ") + e.what());
  }
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    OutputSet files;
    switch (config.command) {
      case Command::ListSources:
        list_sources(out);
        return 0;
      case Command::Solve: {
        const QuantumRun run =
            run_quantum_pipeline(config.effective_source(), config.grid(), config.quantum_options());
        add_quantum_files(files, config, run);
        break;
      }
      case Command::Classical: {
        const ClassicalRun run = classical_run(config);
        files.add_with("solution.csv",
                       [&](std::ostream& o) { write_solution_csv(o, run.solution); });
        files.add_with("coefficients.csv",
                       [&](std::ostream& o) { write_classical_spectrum_csv(o, run.spectrum); });
        if (config.plot) {
          files.add_with("solution.dat",
                         [&](std::ostream& o) { write_solution_gnuplot(o, run.solution); });
        }
        break;
      }
      case Command::Compare: {
        const QuantumRun q =
            run_quantum_pipeline(config.effective_source(), config.grid(), config.quantum_options());
        const ClassicalRun c = classical_run(config);
        files.add_with("solution.csv", [&](std::ostream& o) { write_solution_csv(o, q.solution); });
        files.add_with("classical_solution.csv",
                       [&](std::ostream& o) { write_solution_csv(o, c.solution); });
        files.add_with("coefficients.csv", [&](std::ostream& o) { write_spectrum_csv(o, q.estimate); });
        if (config.plot) {
          files.add_with("solution.dat",
                         [&](std::ostream& o) { write_solution_gnuplot(o, q.solution); });
          files.add_with("classical_solution.dat",
                         [&](std::ostream& o) { write_solution_gnuplot(o, c.solution); });
        }
        files.commit(config.output_dir);
        out << "mse " << mse(q.solution, c.solution) << '\n';
        report_written(out, config, files);
        return 0;
      }
      case Command::Bench: {
        const bench::BenchReport report = bench::run_benchmark(bench_config(config));
        files.add("report.json", bench::to_json(report));
        files.commit(config.output_dir);
        out << bench::to_text(report);
        report_written(out, config, files);
        return 0;
      }
      case Command::Sweep: {
        const auto reports =
            bench::run_scaling_sweep(bench_config(config), config.sweep_first, config.sweep_last);
        files.add("sweep.csv", bench::sweep_csv(reports));
        files.add("report.json", bench::to_json(reports));
        break;
      }
    }
    files.commit(config.output_dir);
    report_written(out, config, files);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << single_line(e.what()) << '\n';
    return 1;
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  return execute(config, out, err);
}

}  // namespace qpoisson::cli
