#ifndef SYNCMDP_STATE_SET_HPP
#define SYNCMDP_STATE_SET_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace syncmdp {

using StateId = int;

// Fixed-universe bit set over dense state indices.
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  StateSet(std::size_t n, std::initializer_list<StateId> members) : StateSet(n) {
    for (StateId q : members) insert(q);
  }

  static StateSet full(std::size_t n) {
    StateSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.insert(static_cast<StateId>(i));
    return s;
  }
  static StateSet single(std::size_t n, StateId q) {
    StateSet s(n);
    s.insert(q);
    return s;
  }
  static StateSet from_mask(std::size_t n, std::uint64_t mask) {
    StateSet s(n);
    if (!s.w_.empty()) s.w_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const { return n_; }

  bool contains(StateId q) const {
    return q >= 0 && static_cast<std::size_t>(q) < n_ && ((w_[q >> 6] >> (q & 63)) & 1u);
  }
  void insert(StateId q) {
    assert(q >= 0 && static_cast<std::size_t>(q) < n_);
    w_[q >> 6] |= std::uint64_t{1} << (q & 63);
  }
  void erase(StateId q) { w_[q >> 6] &= ~(std::uint64_t{1} << (q & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool subset_of(const StateSet &o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const StateSet &o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  StateSet &operator|=(const StateSet &o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  StateSet &operator&=(const StateSet &o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  StateSet &operator-=(const StateSet &o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend StateSet operator|(StateSet a, const StateSet &b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet &b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet &b) { return a -= b; }
  StateSet complement() const { return full(n_) - *this; }

  friend bool operator==(const StateSet &a, const StateSet &b) = default;

  // orders by the lowest differing index, the set holding it first
  friend bool operator<(const StateSet &a, const StateSet &b) {
    for (std::size_t i = 0; i < a.w_.size() && i < b.w_.size(); ++i) {
      if (a.w_[i] == b.w_[i]) continue;
      std::uint64_t diff = a.w_[i] ^ b.w_[i];
      std::uint64_t low = diff & (~diff + 1);
      return (a.w_[i] & low) != 0;
    }
    return a.n_ < b.n_;
  }

  StateId first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<StateId>(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  template <class F> void for_each(F &&f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<StateId>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<StateId> members() const {
    std::vector<StateId> out;
    out.reserve(count());
    for_each([&](StateId q) { out.push_back(q); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull ^ n_;
    for (auto w : w_) {
      h ^= static_cast<std::size_t>(w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
      h *= 1099511628211ull;
    }
    return h;
  }

  const std::vector<std::uint64_t> &words() const { return w_; }

private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet &s) const { return s.hash(); }
};

} // namespace syncmdp

template <> struct std::hash<syncmdp::StateSet> {
  std::size_t operator()(const syncmdp::StateSet &s) const { return s.hash(); }
};

#endif
