#ifndef JCHNET_UTIL_HPP
#define JCHNET_UTIL_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace jchnet {

/// Shortest decimal form that round-trips a double (17 significant digits
/// trimmed); keeps serialized files byte-stable across identical runs.
std::string format_double(double x);

/// Static block partition of [0, count) over `threads` workers; results are
/// schedule-independent because every index owns its slot. threads == 0
/// means hardware concurrency.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

inline unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace jchnet

#endif
