#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qpoisson/errors.hpp"
#include "qpoisson/qsim.hpp"
#include "support/oracles.hpp"

namespace qpoisson {
namespace {

std::vector<Complex> copy_of(const QuantumState& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

QuantumState random_state(int n, int m, std::mt19937_64& rng) {
  return QuantumState(n, m, oracle::random_unit_vector(std::size_t{1} << (n + m), rng));
}

TEST(PrepareState, BasisAmplitudes) {
  SourceField field{build_grid(1, 1, 1, 1), RealMatrix::Zero(2, 2), 1.0, {1.0, 0.0, 0.0, 0.0}};
  const QuantumState state = prepare_state(field);
  EXPECT_EQ(state.n(), 1);
  EXPECT_EQ(state.m(), 1);
  EXPECT_EQ(state.amplitudes()[0], Complex(1.0));
}

TEST(PrepareState, KeepsUnitNorm) {
  const QuantumState state =
      prepare_state(sample_source(SourceSpec::sinusoid(1, 1), build_grid(1, 1, 2, 2)));
  EXPECT_NEAR(state.norm(), 1.0, 1e-12);
}

TEST(PrepareState, RejectsUnnormalizedField) {
  SourceField field = sample_source(SourceSpec::sinusoid(1, 1), build_grid(1, 1, 2, 2));
  for (Complex& a : field.amplitudes) a *= 1.1;
  EXPECT_THROW(prepare_state(field), NormalizationError);
}

TEST(QuantumStateType, RejectsWrongLength) {
  EXPECT_THROW(QuantumState(2, 2, std::vector<Complex>(8, 0.25)), DomainError);
}

TEST(DenseQft, SingleQubitZeroGivesUniform) {
  const QuantumState out = qft_register_dense(QuantumState::basis(1, 1, 0), Register::X);
  // |0>_x |0>_y  ->  (|0> + |1>)/sqrt2 on x.
  EXPECT_NEAR(std::abs(out.amplitude(0, 0) - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(1, 0) - 1.0 / std::numbers::sqrt2), 0.0, 1e-15);
  EXPECT_EQ(out.amplitude(0, 1), Complex(0.0));
}

TEST(DenseQft, FourPointRowOfBasisOne) {
  // |1> on a 2-qubit y register: (1/2)(1, i, -1, -i) for kernel exp(+2 pi i k j / 4).
  const QuantumState out = qft_register_dense(QuantumState::basis(1, 2, 1), Register::Y);
  const Complex expected[] = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}};
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_NEAR(std::abs(out.amplitude(0, l) - expected[l]), 0.0, 1e-15) << l;
  }
}

TEST(DenseQft, MatchesDirectAxisSums) {
  std::mt19937_64 rng(11);
  const QuantumState in = random_state(3, 2, rng);
  const auto psi = copy_of(in);
  const QuantumState x = qft_register_dense(in, Register::X);
  EXPECT_LT(oracle::max_abs_diff(oracle::dft_axis(psi, 8, 4, true), x.amplitudes()), 1e-13);
  const QuantumState y = qft_register_dense(in, Register::Y);
  EXPECT_LT(oracle::max_abs_diff(oracle::dft_axis(psi, 8, 4, false), y.amplitudes()), 1e-13);
}

TEST(DenseQft, TwoDimensionalMatchesDoubleSum) {
  std::mt19937_64 rng(5);
  const QuantumState in = random_state(3, 3, rng);
  const auto expected = oracle::dft_2d(copy_of(in), 8, 8);
  const QuantumState out = apply_qft_2d(in, QftImpl::Dense);
  EXPECT_LT(oracle::max_abs_diff(expected, out.amplitudes()), 1e-13);
}

TEST(DenseQft, InverseRecoversInput) {
  std::mt19937_64 rng(3);
  const QuantumState in = random_state(4, 3, rng);
  for (Register reg : {Register::X, Register::Y}) {
    const QuantumState back = inverse_qft_register_dense(qft_register_dense(in, reg), reg);
    EXPECT_LT(oracle::max_abs_diff(copy_of(in), back.amplitudes()), 1e-12);
  }
}

TEST(DenseQft, ParallelPathIsBitwiseIdentical) {
  std::mt19937_64 rng(9);
  const QuantumState in = random_state(5, 4, rng);
  const QuantumState serial = apply_qft_2d(in, QftImpl::Dense, false);
  const QuantumState parallel = apply_qft_2d(in, QftImpl::Dense, true);
  EXPECT_EQ(copy_of(serial), copy_of(parallel));
}

TEST(CircuitQft, AgreesWithDenseOnEveryBasisState) {
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const QuantumState basis = QuantumState::basis(2, 2, idx);
    for (Register reg : {Register::X, Register::Y}) {
      const QuantumState dense = qft_register_dense(basis, reg);
      const QuantumState circuit = qft_register_circuit(basis, reg);
      EXPECT_LT(oracle::max_abs_diff(copy_of(dense), circuit.amplitudes()), 1e-10) << idx;
    }
  }
}

TEST(CircuitQft, AllZeroGivesUniformAmplitudes) {
  const QuantumState out = apply_qft_2d(QuantumState::basis(3, 2, 0), QftImpl::Circuit);
  for (const Complex& a : out.amplitudes()) EXPECT_NEAR(std::abs(a - 1.0 / std::sqrt(32.0)), 0.0, 1e-14);
}

TEST(CircuitQft, PreservesNorm) {
  std::mt19937_64 rng(21);
  const QuantumState out = qft_register_circuit(random_state(3, 3, rng), Register::X);
  EXPECT_NEAR(out.norm(), 1.0, 1e-10);
}

TEST(Qft2d, DenseAndCircuitAgreeOnRandomEightQubits) {
  std::mt19937_64 rng(8);
  const QuantumState in = random_state(4, 4, rng);
  const QuantumState dense = apply_qft_2d(in, QftImpl::Dense);
  const QuantumState circuit = apply_qft_2d(in, QftImpl::Circuit);
  EXPECT_LT(oracle::max_abs_diff(copy_of(dense), circuit.amplitudes()), 1e-10);
  EXPECT_NEAR(circuit.norm(), 1.0, 1e-10);
}

TEST(Qft2d, ProductBasisStaysSeparable) {
  // |k>|l> = |5>|2> on (3, 3) qubits.
  const QuantumState out = apply_qft_2d(QuantumState::basis(3, 3, 5 * 8 + 2), QftImpl::Circuit);
  ComplexMatrix mat(8, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    for (std::size_t l = 0; l < 8; ++l) mat(k, l) = out.amplitude(k, l);
  }
  EXPECT_LT(oracle::rank1_residual(mat), 1e-10);
}

TEST(Gates, SwapExchangesQubits) {
  std::vector<Complex> amps(8, 0.0);
  amps[0b001] = 1.0;
  gates::swap(amps, 0, 2);
  EXPECT_EQ(amps[0b100], Complex(1.0));
  EXPECT_EQ(amps[0b001], Complex(0.0));
}

TEST(Gates, ControlledPhaseOnlyTouchesBothSet) {
  std::vector<Complex> amps(4, 0.5);
  gates::controlled_phase(amps, 0, 1, std::numbers::pi);
  EXPECT_EQ(amps[0], Complex(0.5));
  EXPECT_EQ(amps[1], Complex(0.5));
  EXPECT_EQ(amps[2], Complex(0.5));
  EXPECT_NEAR(std::abs(amps[3] + 0.5), 0.0, 1e-15);
}

TEST(Probabilities, BasisAndUniform) {
  const RealMatrix p = exact_probabilities(QuantumState::basis(2, 2, 1 * 4 + 3));
  EXPECT_EQ(p(1, 3), 1.0);
  EXPECT_EQ(p.sum(), 1.0);

  const RealMatrix u = exact_probabilities(apply_qft_2d(QuantumState::basis(2, 2, 0), QftImpl::Dense));
  for (Eigen::Index idx = 0; idx < u.size(); ++idx) EXPECT_NEAR(u.data()[idx], 1.0 / 16.0, 1e-15);
}

TEST(Probabilities, SumToOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix p = exact_probabilities(apply_qft_2d(random_state(3, 4, rng), QftImpl::Circuit));
    EXPECT_NEAR(p.sum(), 1.0, 1e-10);
  }
}

TEST(Measure, DegenerateDistribution) {
  const CountsMap counts = measure_counts(QuantumState::basis(2, 2, 5), 1000, 99);
  ASSERT_EQ(counts.counts.size(), 1u);
  EXPECT_EQ(counts.counts.begin()->first, (Outcome{1, 1}));
  EXPECT_EQ(counts.counts.begin()->second, 1000u);
  EXPECT_EQ(counts.shots, 1000u);
}

TEST(Measure, CountsSumToShotsAndOmitZeros) {
  std::mt19937_64 rng(17);
  const QuantumState state = random_state(2, 3, rng);
  for (std::uint64_t shots : {1u, 7u, 1000u}) {
    const CountsMap counts = measure_counts(state, shots, shots * 13);
    std::uint64_t total = 0;
    for (const auto& [outcome, c] : counts.counts) {
      EXPECT_GE(c, 1u);
      total += c;
    }
    EXPECT_EQ(total, shots);
  }
}

TEST(Measure, UniformTwoQubitsConcentrates) {
  // Binomial sd at p = 1/4, S = 1e6 is 4.3e-4; 0.005 is over 10 sd.
  const QuantumState uniform = apply_qft_2d(QuantumState::basis(1, 1, 0), QftImpl::Dense);
  const CountsMap counts = measure_counts(uniform, 1'000'000, 2024);
  ASSERT_EQ(counts.counts.size(), 4u);
  for (const auto& [outcome, c] : counts.counts) {
    EXPECT_NEAR(static_cast<double>(c) / 1e6, 0.25, 0.005);
  }
}

TEST(Measure, FixedSeedIsDeterministic) {
  std::mt19937_64 rng(1);
  const QuantumState state = random_state(3, 3, rng);
  const CountsMap a = measure_counts(state, 5000, 42);
  const CountsMap b = measure_counts(state, 5000, 42);
  const CountsMap c = measure_counts(state, 5000, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
}

TEST(Measure, CounterUniformIsPinned) {
  // Frozen so any change to the generator shows up as a test failure.
  EXPECT_EQ(counter_uniform(42, 0), counter_uniform(42, 0));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(7, i);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_NE(counter_uniform(1, 0), counter_uniform(2, 0));
}

TEST(Serialization, CountsCsvSortedByOutcome) {
  CountsMap counts;
  counts.counts[{1, 0}] = 3;
  counts.counts[{0, 2}] = 5;
  counts.shots = 8;
  std::ostringstream out;
  write_counts_csv(out, counts);
  EXPECT_EQ(out.str(), "k,l,count\n0,2,5\n1,0,3\n");
}

TEST(Serialization, StateCsv) {
  std::ostringstream out;
  write_state_csv(out, QuantumState::basis(1, 1, 2));
  EXPECT_EQ(out.str(), "index,re,im\n0,0,0\n1,0,0\n2,1,0\n3,0,0\n");
}

}  // namespace
}  // namespace qpoisson
