#pragma once

#include <cstdint>
#include <string_view>

namespace qpoisson::bench::detail {

// Per-phase memory growth. On Linux the kernel's resident high-water mark is
// reset at begin() and read back at end(), giving the peak RSS reached during
// the phase minus the RSS at its start. Elsewhere it falls back to the
// in-use heap delta reported by the allocator.
class MemoryProbe {
 public:
  MemoryProbe();

  void begin();
  std::uint64_t end() const;

  std::string_view method() const noexcept;

 private:
  bool rss_supported_ = false;
  std::uint64_t baseline_ = 0;
};

}  // namespace qpoisson::bench::detail
