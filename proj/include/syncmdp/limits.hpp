#ifndef SYNCMDP_LIMITS_HPP
#define SYNCMDP_LIMITS_HPP

#include <cstddef>
#include <cstdlib>
#include <string>

namespace syncmdp {

struct Limits {
  std::size_t sequence_cap = std::size_t{1} << 20;
  std::size_t state_cap = 1'000'000;
  std::size_t support_graph_cap = std::size_t{1} << 16;
  std::size_t horizon_cap = 100'000;
  std::size_t period_search_cap = 4096;
  int subset_enumeration_max = 20;
};

namespace detail {
inline Limits initial_limits() {
  Limits l;
  if (const char *env = std::getenv("SYNC_MDP_STATE_CAP")) {
    try {
      l.state_cap = static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
    }
  }
  return l;
}
} // namespace detail

inline Limits &mutable_limits() {
  static Limits l = detail::initial_limits();
  return l;
}

inline const Limits &limits() { return mutable_limits(); }

// restores the previous caps on scope exit
class ScopedLimits {
public:
  explicit ScopedLimits(const Limits &l) : saved_(limits()) { mutable_limits() = l; }
  ~ScopedLimits() { mutable_limits() = saved_; }
  ScopedLimits(const ScopedLimits &) = delete;
  ScopedLimits &operator=(const ScopedLimits &) = delete;

private:
  Limits saved_;
};

} // namespace syncmdp

#endif
