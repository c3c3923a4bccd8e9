#include <algorithm>
#include <ostream>

#include "qpoisson/qsim.hpp"

namespace qpoisson {

double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
  // splitmix64 finalizer over seed + golden-ratio-spaced counter.
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

CountsMap measure_counts(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double running = 0.0;
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    running += std::norm(amps[idx]);
    cdf[idx] = running;
  }

  // Index of the last outcome with nonzero probability; guards the top end
  // of the CDF against rounding.
  std::size_t last = cdf.size() - 1;
  while (last > 0 && cdf[last] == cdf[last - 1]) --last;

  std::vector<std::uint64_t> hits(amps.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double target = counter_uniform(seed, shot) * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    const auto idx = std::min(static_cast<std::size_t>(it - cdf.begin()), last);
    ++hits[idx];
  }

  CountsMap result;
  result.shots = shots;
  const std::size_t ny = state.dim_y();
  for (std::size_t idx = 0; idx < hits.size(); ++idx) {
    if (hits[idx] == 0) continue;
    result.counts.emplace(Outcome{static_cast<std::uint32_t>(idx / ny),
                                  static_cast<std::uint32_t>(idx % ny)},
                          hits[idx]);
  }
  return result;
}

void write_counts_csv(std::ostream& out, const CountsMap& counts) {
  out << "k,l,count\n";
  for (const auto& [outcome, count] : counts.counts) {
    out << outcome.k << ',' << outcome.l << ',' << count << '\n';
  }
}

}  // namespace qpoisson
