// Copyright 2026 The fockpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fockpoint/representations.hpp"

namespace fockpoint {

/// Counter-based 64-bit generator. Stream (seed, replica) is fixed, and the
/// k-th draw depends only on (seed, replica, k).
class CounterEngine {
  public:
    using result_type = std::uint64_t;

    CounterEngine(std::uint64_t seed, std::uint64_t replica);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct SampleBatch {
    GroundSet ground;
    std::vector<Configuration> configs;
    std::uint64_t seed = 0;
    std::size_t replica_count = 0;
};

struct GaussianFieldBatch {
    std::vector<Eigen::VectorXcd> fields;
};

/// Draws `count` replicas. Supports car_hermitian (spectral DPP sampler),
/// ccr_poisson, ccr_permanental and ccr_hafnian (Cox). Output does not depend
/// on `threads`.
SampleBatch sample_point_process(const RepresentationSpec& spec, std::uint64_t seed,
                                 std::size_t count, int threads = 1);

/// Complex Gaussian vectors with E[G conj(G)^T] = k1 and E[G G^T] = k2.
/// Throws ValidationError if the pair is not a valid covariance structure.
GaussianFieldBatch sample_complex_gaussian(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                           std::uint64_t seed, std::size_t count,
                                           int threads = 1);

struct Estimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

inline constexpr int kBatchMeans = 32;

/// theta^(n) estimate: mean over replicas of the factorial measure of the boxes,
/// divided by n!, with a 32-batch-means standard error.
Estimate estimate_correlations(const SampleBatch& batch, std::span<const Box> boxes, int n);

/// Batch-means standard error of the mean of `values`.
double batch_means_stderr(std::span<const double> values, int batches = kBatchMeans);

}  // namespace fockpoint
