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

#include "fockpoint/matrix_functions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fockpoint/errors.hpp"

namespace fockpoint {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DomainError(std::string(what) + ": matrix must be square with n >= 1");
    }
}

void enumerate_pairings(std::vector<int>& remaining, std::vector<std::pair<int, int>>& current,
                        std::vector<PairPartition>& out) {
    if (remaining.empty()) {
        out.push_back({current, crossing_count(current)});
        return;
    }
    const int first = remaining.front();
    for (std::size_t k = 1; k < remaining.size(); ++k) {
        const int partner = remaining[k];
        std::vector<int> rest;
        rest.reserve(remaining.size() - 2);
        for (std::size_t t = 1; t < remaining.size(); ++t) {
            if (t != k) {
                rest.push_back(remaining[t]);
            }
        }
        current.emplace_back(first, partner);
        enumerate_pairings(rest, current, out);
        current.pop_back();
    }
}

}  // namespace

int crossing_count(const std::vector<std::pair<int, int>>& pairs) {
    int crossings = 0;
    for (const auto& [i, j] : pairs) {
        for (const auto& [k, l] : pairs) {
            if (i < k && k < j && j < l) {
                ++crossings;
            }
        }
    }
    return crossings;
}

std::vector<PairPartition> pair_partitions(int two_n) {
    if (two_n < 2 || two_n % 2 != 0) {
        throw DomainError("pair_partitions needs an even size >= 2, got " + std::to_string(two_n));
    }
    std::vector<int> items(two_n);
    std::iota(items.begin(), items.end(), 1);
    std::vector<std::pair<int, int>> current;
    std::vector<PairPartition> out;
    enumerate_pairings(items, current, out);
    return out;
}

std::complex<double> permanent(const ComplexMatrix& m) {
    require_square(m, "permanent");
    const int n = static_cast<int>(m.rows());
    if (n > kMaxPermanentDim) {
        throw CapacityError("permanent: dimension " + std::to_string(n) + " exceeds guard " +
                            std::to_string(kMaxPermanentDim));
    }
    // Ryser: per(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij, with S
    // visited in Gray-code order so each step adds or removes one column.
    Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
    std::complex<double> total{};
    std::uint64_t gray = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            row_sums += m.col(col);
        } else {
            row_sums -= m.col(col);
        }
        std::complex<double> prod = row_sums.prod();
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return n % 2 == 0 ? total : -total;
}

std::complex<double> hafnian(const ComplexMatrix& m) {
    require_square(m, "hafnian");
    const int n = static_cast<int>(m.rows());
    if (n % 2 != 0) {
        throw DomainError("hafnian: dimension must be even, got " + std::to_string(n));
    }
    if (n > kMaxHafnianDim) {
        throw CapacityError("hafnian: dimension " + std::to_string(n) + " exceeds guard " +
                            std::to_string(kMaxHafnianDim));
    }
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                scale = std::max(scale, std::abs(m(i, j)));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-10 * scale) {
                throw ValidationError("hafnian: matrix is not symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
            }
        }
    }

    // Memoized edge contraction: haf(S) = sum_j m[min S][j] haf(S - {min S, j}).
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    std::vector<std::complex<double>> memo(std::size_t{1} << n);
    std::vector<bool> known(std::size_t{1} << n, false);
    memo[0] = 1.0;
    known[0] = true;
    auto solve = [&](auto&& self, std::uint32_t mask) -> std::complex<double> {
        if (known[mask]) {
            return memo[mask];
        }
        const int first = std::countr_zero(mask);
        std::uint32_t rest = mask & ~(1u << first);
        std::complex<double> sum{};
        for (std::uint32_t r = rest; r != 0; r &= r - 1) {
            const int j = std::countr_zero(r);
            sum += m(first, j) * self(self, rest & ~(1u << j));
        }
        memo[mask] = sum;
        known[mask] = true;
        return sum;
    };
    return solve(solve, full);
}

std::complex<double> det2(const ComplexMatrix& m) {
    require_square(m, "det2");
    const int n = static_cast<int>(m.rows());
    if (n > kMaxDet2Dim) {
        throw CapacityError("det2: dimension " + std::to_string(n) + " exceeds guard " +
                            std::to_string(kMaxDet2Dim));
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<bool> seen(n);
    std::complex<double> total{};
    do {
        std::fill(seen.begin(), seen.end(), false);
        int cycles = 0;
        for (int i = 0; i < n; ++i) {
            if (!seen[i]) {
                ++cycles;
                for (int j = i; !seen[j]; j = perm[j]) {
                    seen[j] = true;
                }
            }
        }
        std::complex<double> prod = std::ldexp(1.0, n - cycles);
        for (int i = 0; i < n; ++i) {
            prod *= m(i, perm[i]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

ComplexMatrix hafnian_block_matrix(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                   const std::vector<std::size_t>& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    ComplexMatrix c(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto x = static_cast<Eigen::Index>(points[a]);
            const auto y = static_cast<Eigen::Index>(points[b]);
            c(2 * a, 2 * b) = k2(x, y);
            c(2 * a, 2 * b + 1) = k1(x, y);
            c(2 * a + 1, 2 * b) = std::conj(k1(x, y));
            c(2 * a + 1, 2 * b + 1) = std::conj(k2(x, y));
        }
    }
    return c;
}

}  // namespace fockpoint
