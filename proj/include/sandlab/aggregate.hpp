#pragma once

// Sandpile aggregation on Z^2: every site starts with h = -H chips (a hole
// of depth H when H > 0), n chips are added at the origin, and the lattice is
// stabilized with threshold 4. The set of sites that fired is recorded.

#include <cstdint>
#include <algorithm>
#include <string>
#include <vector>

#include "sandlab/errors.hpp"
#include "sandlab/types.hpp"

namespace sandlab {

struct AggregateOptions {
  std::int64_t initial_half_width = 16;
  std::int64_t max_half_width = 1 << 13;
};

class Aggregate {
 public:
  /// Sites (x, y) with |x|, |y| <= half_width() are stored.
  std::int64_t half_width() const noexcept { return w_; }
  std::int64_t side() const noexcept { return 2 * w_ + 1; }

  bool inside(std::int64_t x, std::int64_t y) const {
    return x >= -w_ && x <= w_ && y >= -w_ && y <= w_;
  }
  bool fired(std::int64_t x, std::int64_t y) const { return inside(x, y) && odometer_[index(x, y)] > 0; }
  Count height(std::int64_t x, std::int64_t y) const {
    return inside(x, y) ? height_[index(x, y)] : background_;
  }
  Count odometer(std::int64_t x, std::int64_t y) const {
    return inside(x, y) ? odometer_[index(x, y)] : 0;
  }
  Count background() const noexcept { return background_; }
  std::uint64_t fired_count() const noexcept { return fired_count_; }
  std::uint64_t total_firings() const noexcept { return total_firings_; }

  /// Smallest r with every fired site inside the cube C(r); -1 if none fired.
  std::int64_t fired_radius() const {
    std::int64_t r = -1;
    for (std::int64_t y = -w_; y <= w_; ++y)
      for (std::int64_t x = -w_; x <= w_; ++x)
        if (fired(x, y)) r = std::max({r, x < 0 ? -x : x, y < 0 ? -y : y});
    return r;
  }

  /// The fired set is exactly C(r) = [-r, r]^2 for some r (empty counts).
  bool fired_set_is_square() const {
    std::int64_t r = fired_radius();
    if (r < 0) return true;
    return fired_count_ == static_cast<std::uint64_t>((2 * r + 1) * (2 * r + 1));
  }

  /// Every site of the discrete ball B_rho = {x^2 + y^2 < rho^2} fired.
  bool contains_ball(double rho) const {
    if (rho <= 0) return true;
    auto lim = static_cast<std::int64_t>(rho) + 1;
    for (std::int64_t y = -lim; y <= lim; ++y)
      for (std::int64_t x = -lim; x <= lim; ++x)
        if (static_cast<double>(x * x + y * y) < rho * rho && !fired(x, y)) return false;
    return true;
  }

  friend Aggregate aggregate(Count chips, Count hole_depth, const AggregateOptions& opt);

 private:
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>((y + w_) * side() + (x + w_));
  }

  void resize(std::int64_t new_w) {
    std::vector<Count> h(static_cast<std::size_t>((2 * new_w + 1) * (2 * new_w + 1)), background_);
    std::vector<Count> o(h.size(), 0);
    const std::int64_t s = 2 * new_w + 1;
    for (std::int64_t y = -w_; y <= w_; ++y)
      for (std::int64_t x = -w_; x <= w_; ++x) {
        auto j = static_cast<std::size_t>((y + new_w) * s + (x + new_w));
        h[j] = height_[index(x, y)];
        o[j] = odometer_[index(x, y)];
      }
    w_ = new_w;
    height_ = std::move(h);
    odometer_ = std::move(o);
  }

  bool on_border(std::size_t i) const {
    auto s = static_cast<std::size_t>(side());
    std::size_t r = i / s, c = i % s;
    return r == 0 || c == 0 || r + 1 == s || c + 1 == s;
  }

  // Stabilizes interior sites; border sites are frozen. Returns true when a
  // border site became active, i.e. the window must grow.
  bool relax() {
    const auto s = static_cast<std::size_t>(side());
    std::vector<char> queued(height_.size(), 0);
    std::vector<std::size_t> queue;
    bool overflow = false;
    for (std::size_t i = 0; i < height_.size(); ++i)
      if (height_[i] >= 4) {
        if (on_border(i)) overflow = true;
        else queue.push_back(i), queued[i] = 1;
      }
    const std::size_t step[4] = {1, s, static_cast<std::size_t>(-1), static_cast<std::size_t>(-static_cast<std::ptrdiff_t>(s))};
    while (!queue.empty()) {
      std::size_t i = queue.back();
      queue.pop_back();
      queued[i] = 0;
      Count q = height_[i] / 4;
      if (q == 0) continue;
      if (odometer_[i] == 0) ++fired_count_;
      odometer_[i] = detail::checked_add(odometer_[i], q);
      total_firings_ += static_cast<std::uint64_t>(q);
      height_[i] -= 4 * q;
      for (std::size_t d : step) {
        std::size_t j = i + d;
        height_[j] = detail::checked_add(height_[j], q);
        if (height_[j] >= 4 && !queued[j]) {
          if (on_border(j)) overflow = true;
          else queue.push_back(j), queued[j] = 1;
        }
      }
    }
    return overflow;
  }

  std::int64_t w_ = 0;
  Count background_ = 0;
  std::vector<Count> height_;
  std::vector<Count> odometer_;
  std::uint64_t fired_count_ = 0;
  std::uint64_t total_firings_ = 0;
};

/// Adds `chips` at the origin of Z^2 over a background of -hole_depth chips
/// per site (hole_depth >= -2) and stabilizes. The window doubles whenever
/// the activity reaches its border.
inline Aggregate aggregate(Count chips, Count hole_depth, const AggregateOptions& opt = {}) {
  detail::require(chips >= 0, "chip count must be nonnegative");
  detail::require(hole_depth >= -2, "background height -H must be at most 2d - 2 = 2");
  detail::require(opt.initial_half_width >= 1, "window half-width must be positive");
  Aggregate a;
  a.background_ = -hole_depth;
  a.w_ = opt.initial_half_width;
  a.height_.assign(static_cast<std::size_t>(a.side() * a.side()), a.background_);
  a.odometer_.assign(a.height_.size(), 0);
  a.height_[a.index(0, 0)] += chips;
  while (a.relax()) {
    if (2 * a.w_ > opt.max_half_width)
      throw InvalidInput("aggregate window overflow: raise the maximum window half-width above " +
                         std::to_string(opt.max_half_width));
    a.resize(2 * a.w_);
  }
  return a;
}

}  // namespace sandlab
