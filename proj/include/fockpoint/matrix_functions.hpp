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

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fockpoint {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// A perfect matching of {1, ..., 2n}; each pair stored as (smaller, larger).
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;
    int crossings = 0;
};

/// Number of pairs {i,j},{k,l} with i < k < j < l.
int crossing_count(const std::vector<std::pair<int, int>>& pairs);

/// All (2n-1)!! pair partitions of {1, ..., two_n} with their crossing counts.
std::vector<PairPartition> pair_partitions(int two_n);

inline constexpr int kMaxPermanentDim = 20;
inline constexpr int kMaxHafnianDim = 20;
inline constexpr int kMaxDet2Dim = 10;

/// Ryser's formula iterated in Gray-code order, O(2^n n).
std::complex<double> permanent(const ComplexMatrix& m);

/// Sum over perfect matchings of the product of matched entries. The diagonal
/// is never read. Requires even dimension and symmetry to 1e-10 (relative to
/// the largest entry).
std::complex<double> hafnian(const ComplexMatrix& m);

/// 2-determinant: sum over permutations of 2^(n - cycles) prod m[i][pi(i)].
std::complex<double> det2(const ComplexMatrix& m);

/// Build the 2n x 2n block matrix [[K2(x_a,x_b), K1(x_a,x_b)],
/// [conj K1(x_a,x_b), conj K2(x_a,x_b)]] for the points a,b = 0..n-1 given as
/// indices into k1/k2.
ComplexMatrix hafnian_block_matrix(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                   const std::vector<std::size_t>& points);

}  // namespace fockpoint
