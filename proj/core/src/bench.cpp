#include "qpoisson/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>
#include <omp.h>

#include "memory_probe.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson::bench {

namespace {

using Clock = std::chrono::steady_clock;

struct Sample {
  double seconds = 0.0;
  std::uint64_t bytes = 0;
};

// Collects one sample per (pipeline, phase) per repetition.
class PhaseLog {
 public:
  explicit PhaseLog(detail::MemoryProbe& probe) : probe_(probe) {}

  template <typename Fn>
  auto measure(Pipeline pipeline, Phase phase, Fn&& fn) {
    probe_.begin();
    const auto start = Clock::now();
    auto result = fn();
    const auto stop = Clock::now();
    const std::uint64_t bytes = probe_.end();
    samples_[{pipeline, phase}].push_back(
        {std::chrono::duration<double>(stop - start).count(), bytes});
    return result;
  }

  std::vector<PhaseRecord> medians() const {
    std::vector<PhaseRecord> records;
    for (Pipeline pipeline : {Pipeline::Classical, Pipeline::Quantum}) {
      for (Phase phase : phases_of(pipeline)) {
        auto it = samples_.find({pipeline, phase});
        if (it == samples_.end()) continue;
        std::vector<double> times;
        std::vector<std::uint64_t> bytes;
        for (const Sample& s : it->second) {
          times.push_back(s.seconds);
          bytes.push_back(s.bytes);
        }
        records.push_back({pipeline, phase, median(times), median(bytes)});
      }
    }
    return records;
  }

 private:
  template <typename T>
  static T median(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
  }

  detail::MemoryProbe& probe_;
  std::map<std::pair<Pipeline, Phase>, std::vector<Sample>> samples_;
};

PipelineTotals totals_of(const std::vector<PhaseRecord>& records, Pipeline pipeline) {
  PipelineTotals totals;
  for (const PhaseRecord& r : records) {
    if (r.pipeline != pipeline) continue;
    totals.wall_time += r.wall_time;
    totals.peak_memory_delta += r.peak_memory_delta;
  }
  return totals;
}

double percent_change(double classical, double quantum) {
  return classical > 0.0 ? 100.0 * (quantum - classical) / classical : 0.0;
}

// Coarse memory phases and the fine phases folded into each.
struct CoarseGroup {
  const char* name;
  std::vector<Phase> classical;
  std::vector<Phase> quantum;
};

const std::vector<CoarseGroup>& coarse_groups() {
  static const std::vector<CoarseGroup> groups = {
      {"Initialization", {Phase::Initialization}, {Phase::StatePreparation}},
      {"CoefficientProcessing",
       {Phase::CoefficientCalculation},
       {Phase::CoefficientCalculation, Phase::CorrectionAndEigenvalueDivision}},
      {"FinalPhase", {Phase::SolutionReconstruction}, {Phase::SolutionReconstruction}},
  };
  return groups;
}

}  // namespace

std::string_view to_string(Pipeline pipeline) noexcept {
  return pipeline == Pipeline::Classical ? "classical" : "quantum";
}

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::StatePreparation:
      return "StatePreparation";
    case Phase::CoefficientCalculation:
      return "CoefficientCalculation";
    case Phase::CorrectionAndEigenvalueDivision:
      return "CorrectionAndEigenvalueDivision";
    case Phase::SolutionReconstruction:
      return "SolutionReconstruction";
    case Phase::Initialization:
      return "Initialization";
    case Phase::FinalPhase:
      return "FinalPhase";
  }
  return "unknown";
}

std::vector<Phase> phases_of(Pipeline pipeline) {
  if (pipeline == Pipeline::Quantum) {
    return {Phase::StatePreparation, Phase::CoefficientCalculation,
            Phase::CorrectionAndEigenvalueDivision, Phase::SolutionReconstruction};
  }
  return {Phase::Initialization, Phase::CoefficientCalculation, Phase::SolutionReconstruction};
}

double BenchReport::phase_time(Pipeline pipeline, Phase phase) const {
  for (const PhaseRecord& r : records) {
    if (r.pipeline == pipeline && r.phase == phase) return r.wall_time;
  }
  return 0.0;
}

std::vector<CoarseMemoryRow> BenchReport::coarse_memory() const {
  std::vector<CoarseMemoryRow> rows;
  for (const CoarseGroup& group : coarse_groups()) {
    CoarseMemoryRow row{group.name, 0, 0};
    for (const PhaseRecord& r : records) {
      const auto& members = r.pipeline == Pipeline::Classical ? group.classical : group.quantum;
      if (std::find(members.begin(), members.end(), r.phase) == members.end()) continue;
      (r.pipeline == Pipeline::Classical ? row.classical : row.quantum) += r.peak_memory_delta;
    }
    rows.push_back(row);
  }
  return rows;
}

BenchReport run_benchmark(const BenchConfig& config) {
  if (config.repeat < 1) throw DomainError("repeat count must be >= 1");
  const Grid2D grid = build_grid(config.lx, config.ly, config.n, config.m);
  const QuadratureSpec quad = config.quadrature.value_or(default_quadrature(grid));
  quad.validate();
  const ModeCount modes = config.classical_modes.value_or(ModeCount{grid.nx(), grid.ny()});
  const QuantumOptions& options = config.quantum;
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();

  detail::MemoryProbe probe;
  PhaseLog log(probe);
  std::optional<SolutionField> quantum_solution;
  std::optional<SolutionField> classical_solution;

  for (int rep = 0; rep < config.repeat; ++rep) {
    // Quantum pipeline.
    auto prepared = log.measure(Pipeline::Quantum, Phase::StatePreparation, [&] {
      SourceField field = sample_source(config.source, grid);
      QuantumState state = prepare_state(field);
      return std::make_pair(field.norm2, std::move(state));
    });
    auto stage = log.measure(Pipeline::Quantum, Phase::CoefficientCalculation, [&] {
      return estimate_coefficients(std::move(prepared.second), grid, options);
    });
    auto estimate = log.measure(Pipeline::Quantum, Phase::CorrectionAndEigenvalueDivision, [&] {
      Provenance provenance = ExactProvenance{};
      if (options.mode == EstimateMode::Sampled) {
        provenance = SampledProvenance{options.shots, options.seed};
      }
      return estimate_spectrum(grid, std::move(stage.a), options.correction, prepared.first,
                               provenance);
    });
    quantum_solution = log.measure(Pipeline::Quantum, Phase::SolutionReconstruction, [&] {
      return reconstruct_on_grid(estimate, options.truncation, options.sign, options.parallel);
    });

    // Classical pipeline.
    auto table = log.measure(Pipeline::Classical, Phase::Initialization,
                             [&] { return tabulate_source(config.source, grid, quad); });
    auto spectrum = log.measure(Pipeline::Classical, Phase::CoefficientCalculation, [&] {
      return quadrature_spectrum(table, grid, modes, options.parallel);
    });
    classical_solution = log.measure(Pipeline::Classical, Phase::SolutionReconstruction, [&] {
      return reconstruct_classical(spectrum, xs, ys, options.parallel);
    });
  }

  BenchReport report;
  report.config = config;
  report.quadrature = quad;
  report.classical_modes = modes;
  report.records = log.medians();
  report.classical_totals = totals_of(report.records, Pipeline::Classical);
  report.quantum_totals = totals_of(report.records, Pipeline::Quantum);
  report.mse = mse(*quantum_solution, *classical_solution);
  report.memory_method = std::string(probe.method());
  report.threads = options.parallel ? omp_get_max_threads() : 1;
  return report;
}

std::vector<BenchReport> run_scaling_sweep(const BenchConfig& base, int first, int last) {
  std::vector<BenchReport> reports;
  for (int q = first; q <= last; ++q) {
    BenchConfig config = base;
    config.n = q;
    config.m = q;
    const std::size_t points = std::size_t{1} << q;
    if (config.classical_modes) {
      config.classical_modes->kx = std::min(config.classical_modes->kx, points);
      config.classical_modes->ky = std::min(config.classical_modes->ky, points);
    }
    if (config.quantum.truncation) {
      config.quantum.truncation->tx = std::min(config.quantum.truncation->tx, points);
      config.quantum.truncation->ty = std::min(config.quantum.truncation->ty, points);
    }
    reports.push_back(run_benchmark(config));
  }
  return reports;
}

namespace {

nlohmann::ordered_json report_json(const BenchReport& report) {
  using nlohmann::ordered_json;
  const BenchConfig& c = report.config;
  const QuantumOptions& q = c.quantum;

  ordered_json source = {{"kind", to_string(c.source.kind())}};
  if (c.source.harmonics()) {
    source["k1"] = c.source.harmonics()->k1;
    source["k2"] = c.source.harmonics()->k2;
  }
  if (c.source.center()) {
    source["x0"] = c.source.center()->x0;
    source["y0"] = c.source.center()->y0;
  }

  ordered_json config = {
      {"grid", {{"lx", c.lx}, {"ly", c.ly}, {"n", c.n}, {"m", c.m}}},
      {"source", source},
      {"mode", to_string(q.mode)},
      {"shots", q.shots},
      {"seed", q.seed},
      {"qft", to_string(q.qft)},
      {"correction", to_string(q.correction)},
      {"dominant_mode_only", q.dominant_mode_only},
      {"truncation", q.truncation ? ordered_json{q.truncation->tx, q.truncation->ty}
                                  : ordered_json(nullptr)},
      {"sign", to_string(q.sign)},
      {"quadrature",
       {{"rule", to_string(report.quadrature.rule)},
        {"subdivisions_x", report.quadrature.subdivisions_x},
        {"subdivisions_y", report.quadrature.subdivisions_y}}},
      {"classical_modes", {report.classical_modes.kx, report.classical_modes.ky}},
      {"repeat", c.repeat},
      {"parallel", q.parallel},
  };

  ordered_json records = ordered_json::array();
  for (const PhaseRecord& r : report.records) {
    records.push_back({{"pipeline", to_string(r.pipeline)},
                       {"phase", to_string(r.phase)},
                       {"seconds", r.wall_time},
                       {"bytes", r.peak_memory_delta}});
  }

  ordered_json coarse = ordered_json::array();
  for (const CoarseMemoryRow& row : report.coarse_memory()) {
    coarse.push_back({{"phase", row.phase}, {"classical_bytes", row.classical},
                      {"quantum_bytes", row.quantum}});
  }
  ordered_json mapping = ordered_json::object();
  for (const CoarseGroup& group : coarse_groups()) {
    ordered_json entry = {{"classical", ordered_json::array()}, {"quantum", ordered_json::array()}};
    for (Phase p : group.classical) entry["classical"].push_back(to_string(p));
    for (Phase p : group.quantum) entry["quantum"].push_back(to_string(p));
    mapping[group.name] = entry;
  }

  const double coef_change =
      percent_change(report.phase_time(Pipeline::Classical, Phase::CoefficientCalculation),
                     report.phase_time(Pipeline::Quantum, Phase::CoefficientCalculation));
  const double recon_change =
      percent_change(report.phase_time(Pipeline::Classical, Phase::SolutionReconstruction),
                     report.phase_time(Pipeline::Quantum, Phase::SolutionReconstruction));

  return {
      {"config", config},
      {"points", (std::uint64_t{1} << c.n) * (std::uint64_t{1} << c.m)},
      {"records", records},
      {"totals",
       {{"classical",
         {{"seconds", report.classical_totals.wall_time},
          {"bytes", report.classical_totals.peak_memory_delta}}},
        {"quantum",
         {{"seconds", report.quantum_totals.wall_time},
          {"bytes", report.quantum_totals.peak_memory_delta}}}}},
      {"change_percent",
       {{"coefficient_calculation", coef_change},
        {"solution_reconstruction", recon_change},
        {"total_time", percent_change(report.classical_totals.wall_time,
                                      report.quantum_totals.wall_time)},
        {"total_memory",
         percent_change(static_cast<double>(report.classical_totals.peak_memory_delta),
                        static_cast<double>(report.quantum_totals.peak_memory_delta))}}},
      {"coarse_memory", coarse},
      {"coarse_phase_mapping", mapping},
      {"mse", report.mse},
      {"memory_method", report.memory_method},
      {"threads", report.threads},
  };
}

}  // namespace

std::string to_json(const BenchReport& report) { return report_json(report).dump(2) + "\n"; }

std::string to_json(const std::vector<BenchReport>& reports) {
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const BenchReport& r : reports) all.push_back(report_json(r));
  return all.dump(2) + "\n";
}

std::string to_text(const BenchReport& report) {
  std::ostringstream out;
  const auto cell = [&out](const std::string& text, int width) {
    out << std::left << std::setw(width) << text;
  };
  const auto seconds = [](double s) {
    std::ostringstream v;
    v << std::fixed << std::setprecision(6) << s;
    return v.str();
  };
  const auto megabytes = [](std::uint64_t b) {
    std::ostringstream v;
    v << std::fixed << std::setprecision(2) << static_cast<double>(b) / (1024.0 * 1024.0);
    return v.str();
  };
  const auto change = [](double classical, double quantum) {
    if (classical <= 0.0) return std::string("--");
    std::ostringstream v;
    v << std::showpos << std::fixed << std::setprecision(1) << percent_change(classical, quantum)
      << "%";
    return v.str();
  };

  const BenchConfig& c = report.config;
  out << "grid " << (1u << c.n) << "x" << (1u << c.m) << " (" << c.n + c.m << " qubits), source "
      << c.source.describe() << ", " << to_string(c.quantum.mode) << " mode";
  if (c.quantum.mode == EstimateMode::Sampled) out << ", " << c.quantum.shots << " shots";
  out << "\n\n";

  cell("Phase", 34);
  cell("Classical (s)", 16);
  cell("Quantum (s)", 16);
  out << "Change\n";
  const Phase time_rows[] = {Phase::Initialization, Phase::StatePreparation,
                             Phase::CoefficientCalculation, Phase::CorrectionAndEigenvalueDivision,
                             Phase::SolutionReconstruction};
  for (Phase phase : time_rows) {
    const auto has = [&](Pipeline p) {
      const auto phases = phases_of(p);
      return std::find(phases.begin(), phases.end(), phase) != phases.end();
    };
    const bool in_classical = has(Pipeline::Classical);
    const bool in_quantum = has(Pipeline::Quantum);
    const double tc = report.phase_time(Pipeline::Classical, phase);
    const double tq = report.phase_time(Pipeline::Quantum, phase);
    cell(std::string(to_string(phase)), 34);
    cell(in_classical ? seconds(tc) : "N/A", 16);
    cell(in_quantum ? seconds(tq) : "N/A", 16);
    out << (in_classical && in_quantum ? change(tc, tq) : "--") << '\n';
  }
  cell("Total", 34);
  cell(seconds(report.classical_totals.wall_time), 16);
  cell(seconds(report.quantum_totals.wall_time), 16);
  out << change(report.classical_totals.wall_time, report.quantum_totals.wall_time) << "\n\n";

  cell("Memory phase", 34);
  cell("Classical (MB)", 16);
  cell("Quantum (MB)", 16);
  out << "Change\n";
  for (const CoarseMemoryRow& row : report.coarse_memory()) {
    cell(row.phase, 34);
    cell(megabytes(row.classical), 16);
    cell(megabytes(row.quantum), 16);
    out << change(static_cast<double>(row.classical), static_cast<double>(row.quantum)) << '\n';
  }
  cell("Total", 34);
  cell(megabytes(report.classical_totals.peak_memory_delta), 16);
  cell(megabytes(report.quantum_totals.peak_memory_delta), 16);
  out << change(static_cast<double>(report.classical_totals.peak_memory_delta),
                static_cast<double>(report.quantum_totals.peak_memory_delta))
      << "\n\n";

  out << "memory method: " << report.memory_method << ", threads: " << report.threads << '\n';
  out << "mse (quantum vs classical): " << std::scientific << std::setprecision(3) << report.mse
      << '\n';
  return out.str();
}

std::string sweep_csv(const std::vector<BenchReport>& reports) {
  std::ostringstream out;
  out << "points,phase,pipeline,seconds,bytes\n";
  for (const BenchReport& report : reports) {
    const std::uint64_t points = (std::uint64_t{1} << report.config.n)
                                 * (std::uint64_t{1} << report.config.m);
    for (const PhaseRecord& r : report.records) {
      out << points << ',' << to_string(r.phase) << ',' << to_string(r.pipeline) << ','
          << std::scientific << std::setprecision(9) << r.wall_time << ','
          << r.peak_memory_delta << '\n';
    }
  }
  return out.str();
}

}  // namespace qpoisson::bench
