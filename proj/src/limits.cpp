#include "excoll/limits.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace excoll::limits {
namespace {

long from_env(const char* name, long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr) return fallback;
  try {
    long v = std::stol(raw);
    return v > 0 ? v : fallback;
  } catch (...) {
    return fallback;
  }
}

std::atomic<long>& conductor_slot() {
  static std::atomic<long> slot{from_env("EXCOLL_CONDUCTOR_CAP", 10000)};
  return slot;
}

std::atomic<long>& order_slot() {
  static std::atomic<long> slot{from_env("EXCOLL_ORDER_CAP", 512)};
  return slot;
}

}  // namespace

long conductor_cap() { return conductor_slot().load(); }
void set_conductor_cap(long cap) { conductor_slot().store(cap); }

long order_cap() { return order_slot().load(); }
void set_order_cap(long cap) { order_slot().store(cap); }

}  // namespace excoll::limits
