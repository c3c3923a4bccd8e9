#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpoisson/pipeline.hpp"

namespace qpoisson::bench {

enum class Pipeline { Classical, Quantum };

enum class Phase {
  StatePreparation,
  CoefficientCalculation,
  CorrectionAndEigenvalueDivision,
  SolutionReconstruction,
  Initialization,
  FinalPhase,
};

std::string_view to_string(Pipeline pipeline) noexcept;
std::string_view to_string(Phase phase) noexcept;

/// Phases recorded for each pipeline, in execution order. StatePreparation
/// exists only on the quantum side.
std::vector<Phase> phases_of(Pipeline pipeline);

struct PhaseRecord {
  Pipeline pipeline = Pipeline::Quantum;
  Phase phase = Phase::StatePreparation;
  double wall_time = 0.0;                // seconds
  std::uint64_t peak_memory_delta = 0;  // bytes
};

struct BenchConfig {
  double lx = 1.0;
  double ly = 1.0;
  int n = 8;
  int m = 8;
  SourceSpec source = SourceSpec::sinusoid(1, 1);
  QuantumOptions quantum;
  // Quadrature defaults to default_quadrature(grid) when absent.
  std::optional<QuadratureSpec> quadrature;
  std::optional<ModeCount> classical_modes;
  int repeat = 1;  // > 1 reports per-phase medians
};

struct PipelineTotals {
  double wall_time = 0.0;
  std::uint64_t peak_memory_delta = 0;
};

/// Memory view with the coarser three-phase split: Initialization,
/// CoefficientProcessing and FinalPhase.
struct CoarseMemoryRow {
  std::string phase;
  std::uint64_t classical = 0;
  std::uint64_t quantum = 0;
};

struct BenchReport {
  BenchConfig config;
  QuadratureSpec quadrature;
  ModeCount classical_modes;
  std::vector<PhaseRecord> records;
  PipelineTotals classical_totals;
  PipelineTotals quantum_totals;
  double mse = 0.0;  // quantum vs classical on the grid nodes
  std::string memory_method;
  int threads = 1;

  double phase_time(Pipeline pipeline, Phase phase) const;
  std::vector<CoarseMemoryRow> coarse_memory() const;
};

/// Runs both pipelines on the same source and grid and times every phase.
/// Throws whatever the pipelines throw.
BenchReport run_benchmark(const BenchConfig& config);

/// One report per n = m in [first, last]; an empty range gives no reports.
/// Quadrature subdivisions follow the grid size unless the base config pins
/// them.
std::vector<BenchReport> run_scaling_sweep(const BenchConfig& base, int first, int last);

std::string to_json(const BenchReport& report);
std::string to_json(const std::vector<BenchReport>& reports);

/// Aligned columns for terminals.
std::string to_text(const BenchReport& report);

/// CSV `points,phase,pipeline,seconds,bytes`, one row per record.
std::string sweep_csv(const std::vector<BenchReport>& reports);

}  // namespace qpoisson::bench
