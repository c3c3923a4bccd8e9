#include "qpoisson/qsim.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "format.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson {

QuantumState::QuantumState(int n, int m, std::vector<Complex> amplitudes)
    : n_(n), m_(m), amplitudes_(std::move(amplitudes)) {
  if (n < 1 || m < 1 || n + m > 30) {
    throw DomainError("register split (" + std::to_string(n) + ", " + std::to_string(m) +
                      ") out of range");
  }
  if (amplitudes_.size() != (std::size_t{1} << (n + m))) {
    throw DomainError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                      " does not match 2^" + std::to_string(n + m));
  }
  const double deviation = std::abs(norm() - 1.0);
  if (!(deviation <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "state norm deviates from 1 by " << deviation;
    throw NormalizationError(msg.str());
  }
}

QuantumState QuantumState::basis(int n, int m, std::size_t index) {
  const std::size_t size = std::size_t{1} << (n + m);
  if (index >= size) throw DomainError("basis index out of range");
  std::vector<Complex> amplitudes(size);
  amplitudes[index] = 1.0;
  return QuantumState(n, m, std::move(amplitudes));
}

double QuantumState::norm() const noexcept {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

QuantumState prepare_state(const SourceField& field) {
  return QuantumState(field.grid.n(), field.grid.m(), field.amplitudes);
}

namespace {

struct AxisLayout {
  std::size_t length;       // points along the transformed axis
  std::size_t lines;        // independent 1D transforms
  std::size_t line_stride;  // offset between consecutive lines
  std::size_t elem_stride;  // offset between consecutive points on a line
};

AxisLayout layout_of(int n, int m, Register reg) {
  const std::size_t nx = std::size_t{1} << n;
  const std::size_t ny = std::size_t{1} << m;
  if (reg == Register::X) return {nx, ny, 1, ny};
  return {ny, nx, ny, 1};
}

QuantumState dense_transform(QuantumState state, Register reg, double sign, bool parallel) {
  const int n = state.n();
  const int m = state.m();
  const AxisLayout axis = layout_of(n, m, reg);
  std::vector<Complex> in = std::move(state).release();
  std::vector<Complex> out(in.size());

  const double two_pi = 2.0 * std::numbers::pi;
  const double scale = 1.0 / std::sqrt(static_cast<double>(axis.length));
  std::vector<Complex> twiddle(axis.length);
  for (std::size_t t = 0; t < axis.length; ++t) {
    twiddle[t] = std::polar(1.0, sign * two_pi * static_cast<double>(t) /
                                     static_cast<double>(axis.length));
  }

  const auto lines = static_cast<std::ptrdiff_t>(axis.lines);
  const std::size_t mask = axis.length - 1;
#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t line = 0; line < lines; ++line) {
    const std::size_t base = static_cast<std::size_t>(line) * axis.line_stride;
    for (std::size_t k = 0; k < axis.length; ++k) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < axis.length; ++i) {
        acc += in[base + i * axis.elem_stride] * twiddle[(i * k) & mask];
      }
      out[base + k * axis.elem_stride] = acc * scale;
    }
  }
  return QuantumState(n, m, std::move(out));
}

}  // namespace

QuantumState qft_register_dense(QuantumState state, Register reg, bool parallel) {
  return dense_transform(std::move(state), reg, +1.0, parallel);
}

QuantumState inverse_qft_register_dense(QuantumState state, Register reg, bool parallel) {
  return dense_transform(std::move(state), reg, -1.0, parallel);
}

QuantumState qft_register_circuit(QuantumState state, Register reg) {
  const int n = state.n();
  const int m = state.m();
  const int offset = reg == Register::X ? m : 0;
  const int width = reg == Register::X ? n : m;
  std::vector<Complex> amps = std::move(state).release();
  const std::span<Complex> view(amps);

  const double two_pi = 2.0 * std::numbers::pi;
  for (int target = width - 1; target >= 0; --target) {
    gates::hadamard(view, offset + target);
    for (int control = target - 1; control >= 0; --control) {
      const int k = target - control + 1;
      gates::controlled_phase(view, offset + control, offset + target,
                              two_pi / static_cast<double>(std::uint64_t{1} << k));
    }
  }
  for (int b = 0; b < width / 2; ++b) gates::swap(view, offset + b, offset + width - 1 - b);

  return QuantumState(n, m, std::move(amps));
}

QuantumState apply_qft_2d(QuantumState state, QftImpl impl, bool parallel) {
  if (impl == QftImpl::Dense) {
    state = qft_register_dense(std::move(state), Register::X, parallel);
    return qft_register_dense(std::move(state), Register::Y, parallel);
  }
  state = qft_register_circuit(std::move(state), Register::X);
  return qft_register_circuit(std::move(state), Register::Y);
}

RealMatrix exact_probabilities(const QuantumState& state) {
  RealMatrix p(state.dim_x(), state.dim_y());
  const auto amps = state.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) p.data()[idx] = std::norm(amps[idx]);
  return p;
}

namespace gates {

void hadamard(std::span<Complex> amplitudes, int qubit) {
  const std::size_t stride = std::size_t{1} << qubit;
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::size_t block = 0; block < amplitudes.size(); block += 2 * stride) {
    for (std::size_t idx = block; idx < block + stride; ++idx) {
      const Complex a = amplitudes[idx];
      const Complex b = amplitudes[idx + stride];
      amplitudes[idx] = (a + b) * r;
      amplitudes[idx + stride] = (a - b) * r;
    }
  }
}

void controlled_phase(std::span<Complex> amplitudes, int control, int target, double angle) {
  const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
  const Complex phase = std::polar(1.0, angle);
  for (std::size_t idx = 0; idx < amplitudes.size(); ++idx) {
    if ((idx & mask) == mask) amplitudes[idx] *= phase;
  }
}

void swap(std::span<Complex> amplitudes, int a, int b) {
  if (a == b) return;
  const std::size_t bit_a = std::size_t{1} << a;
  const std::size_t bit_b = std::size_t{1} << b;
  for (std::size_t idx = 0; idx < amplitudes.size(); ++idx) {
    if ((idx & bit_a) && !(idx & bit_b)) std::swap(amplitudes[idx], amplitudes[idx ^ bit_a ^ bit_b]);
  }
}

}  // namespace gates

void write_state_csv(std::ostream& out, const QuantumState& state) {
  out << "index,re,im\n";
  const auto amps = state.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    out << idx << ',' << detail::format_double(amps[idx].real()) << ','
        << detail::format_double(amps[idx].imag()) << '\n';
  }
}

}  // namespace qpoisson
