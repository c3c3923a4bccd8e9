#include "memory_probe.hpp"

#include <fstream>
#include <string>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace qpoisson::bench::detail {

namespace {

// Reads a "<key>: <value> kB" line from /proc/self/status.
std::uint64_t status_kib(const std::string& key) {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind(key, 0) == 0) return std::stoull(line.substr(key.size() + 1));
  }
  return 0;
}

bool reset_high_water_mark() {
  std::ofstream clear("/proc/self/clear_refs");
  if (!clear) return false;
  clear << "5";
  clear.flush();
  return static_cast<bool>(clear);
}

std::uint64_t heap_in_use() {
#if defined(__GLIBC__) && (__GLIBC__ > 2 || (__GLIBC__ == 2 && __GLIBC_MINOR__ >= 33))
  return static_cast<std::uint64_t>(mallinfo2().uordblks);
#else
  return 0;
#endif
}

}  // namespace

MemoryProbe::MemoryProbe() {
  rss_supported_ = reset_high_water_mark() && status_kib("VmHWM") > 0;
}

void MemoryProbe::begin() {
  if (rss_supported_) {
    reset_high_water_mark();
    baseline_ = status_kib("VmRSS") * 1024;
  } else {
    baseline_ = heap_in_use();
  }
}

std::uint64_t MemoryProbe::end() const {
  const std::uint64_t now = rss_supported_ ? status_kib("VmHWM") * 1024 : heap_in_use();
  return now > baseline_ ? now - baseline_ : 0;
}

std::string_view MemoryProbe::method() const noexcept {
  return rss_supported_ ? "peak-rss-delta" : "heap-in-use-delta";
}

}  // namespace qpoisson::bench::detail
