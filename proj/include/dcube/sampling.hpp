// Copyright 2026 The dcube Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dcube {

/// SplitMix64 stream. Outputs are fully specified here so that sample
/// sequences are identical on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// +1 or -1 with equal probability.
  int sign();
  /// Index i with probability weights[i] / sum(weights).
  std::size_t categorical(const std::vector<double>& weights);

 private:
  std::uint64_t state_;
};

/// Independent stream for sample `index` of task `task` under `seed`.
Rng stream(std::uint64_t seed, std::uint64_t task, std::uint64_t index);

/// Calls fn(i) for i in [0, n) using up to `threads` worker threads. Each
/// index is handled exactly once; callers write results into slot i so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct ChannelEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::vector<double> samples;  // kept only on request
};

/// Mean and sample standard deviation over sqrt(M), summed in index order.
ChannelEstimate make_estimate(const std::vector<double>& values, bool keep_samples = false);

}  // namespace dcube
