// Copyright 2026 The arsrou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARSROU_TYPES_HPP
#define ARSROU_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace arsrou {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo;
  double hi;

  Interval(double lo, double hi);

  static Interval real_line() { return {-kInf, kInf}; }

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const;
  bool nonnegative() const { return lo >= 0.0; }
  bool nonpositive() const { return hi <= 0.0; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Affine function slope * x + intercept.
struct LinearFn {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double x) const { return slope * x + intercept; }

  static LinearFn constant(double c) { return {0.0, c}; }
  /// Line through (x0, y0) with the given slope.
  static LinearFn through(double x0, double y0, double slope) {
    return {slope, y0 - slope * x0};
  }
};

/// True when a and b are far enough apart to be distinct support points.
bool well_separated(double a, double b);

/// Sorted, strictly increasing set of adaptive support points.
class SupportSet {
 public:
  SupportSet() = default;
  /// Sorts the points; throws on non-finite or too-close points.
  explicit SupportSet(std::vector<double> points);

  /// Inserts x unless it duplicates an existing point; returns true on insert.
  bool insert(double x);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(double x) const;

 private:
  std::vector<double> points_;
};

/// Splits `domain` at the support points lying strictly inside it.
/// Points on the domain boundary are allowed and create no interval; points
/// outside the domain are a precondition error.
std::vector<Interval> partition(const Interval& domain, const SupportSet& supports);

/// Number of candidates needed for every accepted sample.
struct AcceptanceStats {
  std::vector<std::uint64_t> trials_per_accept;

  std::uint64_t total_trials() const;
  /// accepted / trials, 1 when nothing was drawn yet.
  double acceptance_rate() const;
};

}  // namespace arsrou

#endif  // ARSROU_TYPES_HPP
