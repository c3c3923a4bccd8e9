#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "qpoisson/domain.hpp"
#include "qpoisson/types.hpp"

namespace qpoisson {

/// Dense statevector over an (n + m)-qubit register.
///
/// Basis index i * 2^m + j stores the amplitude of |i>_x |j>_y: the x
/// register occupies the high-order qubits. Global qubit q addresses bit q
/// of the index, so the y register is qubits [0, m) and the x register is
/// qubits [m, m + n).
class QuantumState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws DomainError on a length mismatch and NormalizationError when the
  /// 2-norm deviates from 1 by more than kNormTolerance.
  QuantumState(int n, int m, std::vector<Complex> amplitudes);

  static QuantumState basis(int n, int m, std::size_t index);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int qubits() const noexcept { return n_ + m_; }
  std::size_t dim_x() const noexcept { return std::size_t{1} << n_; }
  std::size_t dim_y() const noexcept { return std::size_t{1} << m_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t k, std::size_t l) const { return amplitudes_[k * dim_y() + l]; }
  double norm() const noexcept;

  /// Moves the amplitude buffer out; used by transforms that build the next
  /// state in place.
  std::vector<Complex> release() && noexcept { return std::move(amplitudes_); }

 private:
  int n_;
  int m_;
  std::vector<Complex> amplitudes_;
};

enum class Register { X, Y };
enum class QftImpl { Dense, Circuit };

/// Throws NormalizationError when the field's amplitudes are not unit norm.
QuantumState prepare_state(const SourceField& field);

/// Unitary DFT along one register, kernel 2^{-r/2} exp(+2 pi i k j / 2^r).
QuantumState qft_register_dense(QuantumState state, Register reg, bool parallel = false);

/// Conjugate transpose of qft_register_dense.
QuantumState inverse_qft_register_dense(QuantumState state, Register reg, bool parallel = false);

/// Same transform as qft_register_dense built from Hadamard, controlled-phase
/// and swap gates confined to the register.
QuantumState qft_register_circuit(QuantumState state, Register reg);

/// X-register QFT followed by Y-register QFT.
QuantumState apply_qft_2d(QuantumState state, QftImpl impl, bool parallel = false);

/// |amplitude(k, l)|^2 as an N x M matrix.
RealMatrix exact_probabilities(const QuantumState& state);

namespace gates {
// Single gates on a raw amplitude buffer, addressed by global qubit index.
void hadamard(std::span<Complex> amplitudes, int qubit);
void controlled_phase(std::span<Complex> amplitudes, int control, int target, double angle);
void swap(std::span<Complex> amplitudes, int a, int b);
}  // namespace gates

struct Outcome {
  std::uint32_t k = 0;  // x-register value
  std::uint32_t l = 0;  // y-register value
  auto operator<=>(const Outcome&) const = default;
};

/// Histogram of measured outcomes. Only observed outcomes are stored.
struct CountsMap {
  std::map<Outcome, std::uint64_t> counts;
  std::uint64_t shots = 0;
};

/// Draws `shots` samples of the full register. The generator is a
/// counter-based hash of (seed, shot index), so results are identical on
/// every platform.
CountsMap measure_counts(const QuantumState& state, std::uint64_t shots, std::uint64_t seed);

/// Uniform double in [0, 1) for the given seed and counter.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

/// CSV `k,l,count` sorted by (k, l).
void write_counts_csv(std::ostream& out, const CountsMap& counts);

/// CSV `index,re,im`.
void write_state_csv(std::ostream& out, const QuantumState& state);

}  // namespace qpoisson
