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

#include "arsrou/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "arsrou/types.hpp"

namespace arsrou {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::index: return "index";
    case ErrorCode::sign: return "sign";
    case ErrorCode::unbounded_region: return "unbounded_region";
    case ErrorCode::infinite_envelope: return "infinite_envelope";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg << "invalid interval [" << lo << ", " << hi << "]: need lo < hi";
    throw Error(ErrorCode::precondition, msg.str());
  }
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool well_separated(double a, double b) {
  return std::abs(a - b) > 1e-12 * (1.0 + std::min(std::abs(a), std::abs(b)));
}

SupportSet::SupportSet(std::vector<double> points) : points_(std::move(points)) {
  for (double p : points_) {
    if (!std::isfinite(p)) throw Error(ErrorCode::precondition, "support points must be finite");
  }
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!well_separated(points_[i - 1], points_[i])) {
      std::ostringstream msg;
      msg << "support points " << points_[i - 1] << " and " << points_[i] << " are not distinct";
      throw Error(ErrorCode::precondition, msg.str());
    }
  }
}

bool SupportSet::insert(double x) {
  if (!std::isfinite(x)) return false;
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && !well_separated(*it, x)) return false;
  if (it != points_.begin() && !well_separated(*std::prev(it), x)) return false;
  points_.insert(it, x);
  return true;
}

bool SupportSet::contains(double x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

std::vector<Interval> partition(const Interval& domain, const SupportSet& supports) {
  std::vector<double> breaks{domain.lo};
  for (double s : supports.points()) {
    if (!domain.contains(s)) {
      std::ostringstream msg;
      msg << "support point " << s << " lies outside the domain [" << domain.lo << ", "
          << domain.hi << "]";
      throw Error(ErrorCode::precondition, msg.str());
    }
    if (s > domain.lo && s < domain.hi) breaks.push_back(s);
  }
  breaks.push_back(domain.hi);

  std::vector<Interval> out;
  out.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) out.emplace_back(breaks[i], breaks[i + 1]);
  return out;
}

std::uint64_t AcceptanceStats::total_trials() const {
  return std::accumulate(trials_per_accept.begin(), trials_per_accept.end(), std::uint64_t{0});
}

double AcceptanceStats::acceptance_rate() const {
  const auto trials = total_trials();
  if (trials == 0) return 1.0;
  return static_cast<double>(trials_per_accept.size()) / static_cast<double>(trials);
}

}  // namespace arsrou
