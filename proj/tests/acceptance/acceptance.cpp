// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qpoisson/bench.hpp"
#include "qpoisson/classical.hpp"
#include "qpoisson/pipeline.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qpoisson;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <typename F>
double min_seconds(int trials, F&& f) {
  double best = INFINITY;
  for (int t = 0; t < trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

std::vector<Complex> to_vector(const QuantumState& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

Verdict qft_correctness() {
  std::mt19937_64 rng(20240501);
  double worst_match = 0.0;
  double worst_norm = 0.0;
  double worst_inverse = 0.0;
  int pairs = 0;
  for (int n = 1; n <= 9; ++n) {
    for (int m = 1; n + m <= 10; ++m) {
      ++pairs;
      for (int trial = 0; trial < 100; ++trial) {
        const auto psi = oracle::random_unit_vector(std::size_t{1} << (n + m), rng);
        const QuantumState circuit = apply_qft_2d(QuantumState(n, m, psi), QftImpl::Circuit);
        const QuantumState dense = apply_qft_2d(QuantumState(n, m, psi), QftImpl::Dense);
        worst_match = std::max(worst_match, oracle::max_abs_diff(to_vector(dense), circuit.amplitudes()));
        worst_norm = std::max(worst_norm, std::abs(circuit.norm() - 1.0));
        const QuantumState back = inverse_qft_register_dense(
            inverse_qft_register_dense(circuit, Register::Y), Register::X);
        worst_inverse = std::max(worst_inverse, oracle::max_abs_diff(psi, back.amplitudes()));
      }
    }
  }
  return {worst_match <= 1e-10 && worst_norm <= 1e-10 && worst_inverse <= 1e-10,
          std::to_string(pairs) + " register shapes x 100 states; max |circuit-dense| " +
              sci(worst_match) + ", norm drift " + sci(worst_norm) + ", inverse error " +
              sci(worst_inverse)};
}

Verdict eigenmode_exactness() {
  const Grid2D grid = build_grid(1, 1, 5, 5);
  QuantumOptions options;
  options.mode = EstimateMode::Exact;
  options.correction = CorrectionKind::Identity;
  options.dominant_mode_only = true;
  const QuantumRun run = run_quantum_pipeline(SourceSpec::sinusoid(1, 1), grid, options);
  const SolutionField exact =
      analytic_eigenmode_solution(1, 1, 1, 1, run.solution.xs, run.solution.ys);
  const double err = mse(run.solution, exact);
  return {err <= 1e-8, "MSE vs analytic on 32x32 nodes " + sci(err)};
}

Verdict sinusoid_mse() {
  const Grid2D grid = build_grid(1, 1, 5, 5);
  QuantumOptions options;
  options.correction = CorrectionKind::SinusoidProfile;
  options.shots = 100000;
  bool pass = true;
  std::string detail;
  for (int k : {2, 3}) {
    const SourceSpec source = SourceSpec::sinusoid(k, k);
    const QuantumRun q = run_quantum_pipeline(source, grid, options);
    const ClassicalRun c = run_classical_pipeline(source, grid, {default_quadrature(grid)});
    const double err = mse(q.solution, c.solution);
    pass = pass && err <= 1e-4;
    detail += (detail.empty() ? "" : ", ") + std::string("(") + std::to_string(k) + "," +
              std::to_string(k) + ") MSE " + sci(err);
  }
  return {pass, detail + " at 1e5 shots"};
}

Verdict shot_noise() {
  const Grid2D grid = build_grid(1, 1, 5, 5);
  const QuantumState transformed = apply_qft_2d(
      prepare_state(sample_source(SourceSpec::sinusoid(1, 1), grid)), QftImpl::Circuit);
  const RealMatrix probabilities = exact_probabilities(transformed);
  std::vector<double> medians;
  for (std::uint64_t shots : {1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
    std::vector<double> tv;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      tv.push_back(oracle::total_variation(measure_counts(transformed, shots, seed), probabilities));
    }
    medians.push_back(median(tv));
  }
  bool pass = true;
  std::string detail = "median TV";
  for (std::size_t i = 0; i < medians.size(); ++i) {
    detail += " " + sci(medians[i]);
    if (i > 0) pass = pass && medians[i] < medians[i - 1];
  }
  return {pass, detail + " for S = 1e3..1e6"};
}

Verdict normalization() {
  const std::vector<SourceSpec> sources = {
      SourceSpec::sinusoid(1, 2), SourceSpec::polynomial_bump(),
      SourceSpec::anisotropic_sinusoid(2, 1), SourceSpec::gaussian(0.3, 0.7),
      SourceSpec::gaussian_plus_sinusoid(1, 1, 0.5, 0.5)};
  const CorrectionKind corrections[] = {CorrectionKind::Identity, CorrectionKind::SinusoidProfile,
                                        CorrectionKind::AnisotropicProfile,
                                        CorrectionKind::GaussianProfile,
                                        CorrectionKind::MixedProfile};
  double worst_norm = 0.0;
  double worst_boundary = 0.0;
  int spectra = 0;
  for (const auto& [lx, ly] : {std::pair{1.0, 1.0}, {2.0, 0.5}}) {
    const Grid2D grid = build_grid(lx, ly, 4, 3);
    const std::vector<double> edge_x = {0.0, lx};
    const std::vector<double> edge_y = {0.0, ly};
    std::vector<double> all_x(33), all_y(33);
    for (std::size_t i = 0; i < 33; ++i) {
      all_x[i] = lx * static_cast<double>(i) / 32.0;
      all_y[i] = ly * static_cast<double>(i) / 32.0;
    }
    for (const SourceSpec& source : sources) {
      for (std::uint64_t shots : {1ull, 37ull, 5000ull}) {
        for (std::uint64_t seed : {1ull, 2ull}) {
          QuantumOptions options;
          options.shots = shots;
          options.seed = seed;
          const CoefficientStage stage = estimate_coefficients(
              prepare_state(sample_source(source, grid)), grid, options);
          worst_norm = std::max(worst_norm, std::abs(stage.a.squaredNorm() - 1.0));
          ++spectra;
          for (CorrectionKind kind : corrections) {
            const SpectrumEstimate est = estimate_spectrum(grid, stage.a, kind, 1.0, ExactProvenance{});
            for (auto sign : {SignConvention::Poisson, SignConvention::Literal}) {
              const Truncation full{grid.nx(), grid.ny()};
              worst_boundary = std::max(
                  worst_boundary,
                  reconstruct(est, edge_x, all_y, full, sign).values.cwiseAbs().maxCoeff());
              worst_boundary = std::max(
                  worst_boundary,
                  reconstruct(est, all_x, edge_y, full, sign).values.cwiseAbs().maxCoeff());
            }
          }
        }
      }
    }
  }
  return {worst_norm <= 1e-12 && worst_boundary <= 1e-10,
          std::to_string(spectra) + " counts spectra; max |sum|a|^2 - 1| " + sci(worst_norm) +
              ", max |u| on boundary " + sci(worst_boundary)};
}

Verdict cross_oracle() {
  const Grid2D grid = build_grid(1, 1, 7, 7);
  const QuadratureSpec quad{QuadratureRule::Simpson, 128, 128};
  const ModeCount modes{16, 16};
  const std::vector<SourceSpec> sources = {
      SourceSpec::sinusoid(1, 1), SourceSpec::polynomial_bump(),
      SourceSpec::anisotropic_sinusoid(1, 1), SourceSpec::gaussian(0.5, 0.5),
      SourceSpec::gaussian_plus_sinusoid(1, 1, 0.5, 0.5)};
  double worst = 0.0;
  for (const SourceSpec& source : sources) {
    const SolutionField quadrature = classical_solve(source, grid, quad, modes);
    const SolutionField dst = dst_solve(sample_source(source, grid), modes);
    const SolutionField fd = crop(fd_poisson_solve(source, 128), grid.nx(), grid.ny());
    worst = std::max({worst, mse(quadrature, dst), mse(quadrature, fd), mse(dst, fd)});
  }
  return {worst <= 1e-5, "5 sources at 128^2, 16x16 modes; worst pairwise MSE " + sci(worst)};
}

Verdict quadrature_values() {
  const Grid2D grid = build_grid(1, 1, 8, 8);
  const QuadratureSpec quad{QuadratureRule::Simpson, 256, 256};
  const double eigen = quadrature_coefficient(SourceSpec::sinusoid(1, 1), 1, 1, grid, quad);
  const double bump = quadrature_coefficient(SourceSpec::polynomial_bump(), 1, 1, grid, quad);
  const double bump_exact = std::pow(8.0 / (oracle::pi * oracle::pi * oracle::pi), 2);
  const double e1 = std::abs(eigen - 1.0);
  const double e2 = std::abs(bump - bump_exact);
  return {e1 <= 1e-6 && e2 <= 1e-6,
          "eigenmode a11 error " + sci(e1) + ", bump a11 error " + sci(e2)};
}

Verdict benchmark_structure() {
  bench::BenchConfig config;  // (8, 8), sinusoid (1, 1)
  config.quadrature = QuadratureSpec{QuadratureRule::Simpson, 256, 256};
  const bench::BenchReport report = bench::run_benchmark(config);
  const double q = report.phase_time(bench::Pipeline::Quantum, bench::Phase::CoefficientCalculation);
  const double c =
      report.phase_time(bench::Pipeline::Classical, bench::Phase::CoefficientCalculation);

  // The classical side does not affect state preparation; a small mode count
  // keeps the sweep short so every size can be repeated.
  bench::BenchConfig sweep_base;
  sweep_base.classical_modes = ModeCount{4, 4};
  sweep_base.repeat = 7;
  const auto reports = bench::run_scaling_sweep(sweep_base, 3, 8);
  std::vector<double> prep;
  for (const auto& r : reports) {
    prep.push_back(r.phase_time(bench::Pipeline::Quantum, bench::Phase::StatePreparation));
  }
  bool monotone = prep.size() == 6;
  for (std::size_t i = 1; i < prep.size(); ++i) monotone = monotone && prep[i] >= prep[i - 1];
  std::string detail = "coefficient phase quantum " + sci(q) + " s vs classical " + sci(c) +
                       " s; state prep n=m=3..8:";
  for (double t : prep) detail += " " + sci(t);
  return {q < c && monotone, detail};
}

Verdict truncation() {
  const Grid2D grid = build_grid(1, 1, 8, 8);
  QuantumOptions options;
  options.correction = default_correction_for(SourceKind::Sinusoid);
  const QuantumRun run = run_quantum_pipeline(SourceSpec::sinusoid(1, 1), grid, options);
  const SolutionField exact = analytic_eigenmode_solution(1, 1, 1, 1, grid.xs(), grid.ys());

  SolutionField full, truncated;
  const double t_full = min_seconds(5, [&] { full = reconstruct_on_grid(run.estimate); });
  const double t_trunc =
      min_seconds(5, [&] { truncated = reconstruct_on_grid(run.estimate, Truncation{8, 8}); });
  const double delta = std::abs(mse(full, exact) - mse(truncated, exact));
  return {t_trunc < t_full && delta < 1e-8,
          "reconstruction " + sci(t_trunc) + " s at tau=(8,8) vs " + sci(t_full) +
              " s full; |delta MSE| " + sci(delta)};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "qpoisson-acceptance-determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> configs = {
      {"compare", "--source", "gaussian-plus-sinusoid", "--seed", "7", "--shots", "50000"},
      {"solve", "--source", "anisotropic-sinusoid", "--qubits", "6", "4", "--parallel", "--qft",
       "dense", "--truncation", "20", "9"},
  };
  bool pass = true;
  int compared = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (const char* run : {"a", "b"}) {
      auto args = configs[c];
      args.insert(args.end(), {"--output-dir", (root / std::to_string(c) / run).string()});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) return {false, "cli run failed: " + err.str()};
    }
    for (const char* name : {"coefficients.csv", "solution.csv"}) {
      const std::string a = slurp(root / std::to_string(c) / "a" / name);
      const std::string b = slurp(root / std::to_string(c) / "b" / name);
      pass = pass && !a.empty() && a == b;
      ++compared;
    }
  }
  fs::remove_all(root);
  return {pass, std::to_string(compared) + " CSV pairs from repeated CLI runs compared byte-wise"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"AC1", "QFT correctness", qft_correctness},
      {"AC2", "eigenmode exactness", eigenmode_exactness},
      {"AC3", "sinusoid MSE at desk scale", sinusoid_mse},
      {"AC4", "shot-noise convergence", shot_noise},
      {"AC5", "normalization invariants", normalization},
      {"AC6", "cross-oracle agreement", cross_oracle},
      {"AC7", "quadrature values", quadrature_values},
      {"AC8", "benchmark structure", benchmark_structure},
      {"AC9", "truncation behavior", truncation},
      {"AC10", "determinism", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name << ": "
              << outcome.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
