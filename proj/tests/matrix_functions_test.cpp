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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fockpoint/errors.hpp"
#include "test_util.hpp"

namespace fockpoint {
namespace {

using testing::random_matrix;
using testing::random_symmetric;

Complex permanent_oracle(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex total{};
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= a(i, p[i]);
        }
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// (1 / (n! 2^n)) sum over all permutations of prod a[p(2i)][p(2i+1)].
Complex hafnian_oracle(const ComplexMatrix& a) {
    const int two_n = static_cast<int>(a.rows());
    std::vector<int> p(two_n);
    std::iota(p.begin(), p.end(), 0);
    Complex total{};
    do {
        Complex prod = 1.0;
        for (int i = 0; i < two_n; i += 2) {
            prod *= a(p[i], p[i + 1]);
        }
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    double norm = 1.0;
    for (int k = 1; k <= two_n / 2; ++k) {
        norm *= 2.0 * k;
    }
    return total / norm;
}

// Cycle count by repeated removal of the cycle through the smallest remaining index.
int cycles_of(std::vector<int> p) {
    int cycles = 0;
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (p[start] < 0) {
            continue;
        }
        ++cycles;
        std::size_t j = start;
        while (p[j] >= 0) {
            const int next = p[j];
            p[j] = -1;
            j = static_cast<std::size_t>(next);
        }
    }
    return cycles;
}

Complex det2_oracle(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex total{};
    do {
        Complex prod = std::pow(2.0, n - cycles_of(p));
        for (int i = 0; i < n; ++i) {
            prod *= a(i, p[i]);
        }
        total += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(PairPartitions, CountsAndCrossings) {
    const auto two = pair_partitions(2);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].pairs, (std::vector<std::pair<int, int>>{{1, 2}}));
    EXPECT_EQ(two[0].crossings, 0);
    EXPECT_EQ(crossing_count({{1, 3}, {2, 4}}), 1);
    EXPECT_EQ(crossing_count({{1, 4}, {2, 5}, {3, 6}}), 3);
    int double_factorial = 1;
    for (int n = 1; n <= 5; ++n) {
        double_factorial *= 2 * n - 1;
        EXPECT_EQ(static_cast<int>(pair_partitions(2 * n).size()), double_factorial);
    }
    EXPECT_THROW(pair_partitions(3), DomainError);
    EXPECT_THROW(pair_partitions(0), DomainError);
}

TEST(PairPartitions, FourPointSigns) {
    int sign_sum = 0;
    for (const auto& nu : pair_partitions(4)) {
        EXPECT_EQ(nu.crossings, crossing_count(nu.pairs));
        sign_sum += nu.crossings % 2 == 0 ? 1 : -1;
    }
    EXPECT_EQ(sign_sum, 1);
}

TEST(Permanent, SmallValues) {
    EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Identity(5, 5)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Ones(3, 3)) - 6.0), 0.0, 1e-14);
}

TEST(Permanent, MatchesPermutationSum) {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 8; ++n) {
        const ComplexMatrix a = random_matrix(n, n, rng);
        EXPECT_LE(rel(permanent(a), permanent_oracle(a)), 1e-10) << "n=" << n;
    }
}

TEST(Permanent, GuardRaisesCapacityError) {
    EXPECT_THROW(permanent(ComplexMatrix::Zero(kMaxPermanentDim + 1, kMaxPermanentDim + 1)),
                 CapacityError);
}

TEST(Hafnian, SmallValues) {
    ComplexMatrix a(2, 2);
    a << 7.0, 0.25, 0.25, -3.0;
    EXPECT_EQ(hafnian(a), Complex(0.25));
    EXPECT_NEAR(std::abs(hafnian(ComplexMatrix::Ones(4, 4)) - 3.0), 0.0, 1e-14);
}

TEST(Hafnian, MatchesMatchingEnumeration) {
    std::mt19937_64 rng(22);
    for (int two_n = 2; two_n <= 10; two_n += 2) {
        const ComplexMatrix a = random_symmetric(two_n, rng);
        EXPECT_LE(rel(hafnian(a), hafnian_oracle(a)), 1e-10) << "2n=" << two_n;
    }
}

TEST(Hafnian, DiagonalIsIgnoredExactly) {
    std::mt19937_64 rng(23);
    ComplexMatrix a = random_symmetric(8, rng);
    const Complex before = hafnian(a);
    a.diagonal() = random_matrix(8, 1, rng);
    EXPECT_EQ(hafnian(a), before);
}

TEST(Hafnian, ErrorsAndGuards) {
    EXPECT_THROW(hafnian(ComplexMatrix::Ones(3, 3)), DomainError);
    ComplexMatrix a = ComplexMatrix::Ones(4, 4);
    a(0, 1) = 2.0;
    EXPECT_THROW(hafnian(a), ValidationError);
    EXPECT_THROW(hafnian(ComplexMatrix::Zero(kMaxHafnianDim + 2, kMaxHafnianDim + 2)), CapacityError);
}

TEST(PermanentHafnian, InvariantUnderSimultaneousPermutation) {
    std::mt19937_64 rng(24);
    const ComplexMatrix a = random_matrix(6, 6, rng);
    const ComplexMatrix s = random_symmetric(6, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> p(6);
    p.indices() << 3, 0, 5, 1, 4, 2;
    EXPECT_LE(rel(permanent(p * a * p.transpose()), permanent(a)), 1e-12);
    EXPECT_LE(rel(hafnian(p * s * p.transpose()), hafnian(s)), 1e-12);
}

TEST(Det2, SmallValues) {
    ComplexMatrix one(1, 1);
    one << Complex(0.5, -2.0);
    EXPECT_EQ(det2(one), Complex(0.5, -2.0));
    ComplexMatrix two(2, 2);
    two << 1.5, 2.0, -0.5, 3.0;
    EXPECT_NEAR(std::abs(det2(two) - (1.5 * 3.0 + 2.0 * 2.0 * -0.5)), 0.0, 1e-14);
    ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
    diag.diagonal() << 2.0, -1.0, 0.5, 3.0;
    EXPECT_NEAR(std::abs(det2(diag) - (-3.0)), 0.0, 1e-14);
}

TEST(Det2, MatchesCycleWeightedSum) {
    std::mt19937_64 rng(25);
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix a = random_matrix(n, n, rng);
        EXPECT_LE(rel(det2(a), det2_oracle(a)), 1e-10) << "n=" << n;
    }
    EXPECT_THROW(det2(ComplexMatrix::Zero(kMaxDet2Dim + 1, kMaxDet2Dim + 1)), CapacityError);
}

TEST(Det2, EqualsHafnianOfDoubledBlocks) {
    std::mt19937_64 rng(26);
    for (int n = 1; n <= 5; ++n) {
        const ComplexMatrix k = random_symmetric(n, rng, false);
        std::vector<std::size_t> points(n);
        std::iota(points.begin(), points.end(), 0);
        const ComplexMatrix doubled = hafnian_block_matrix(k, k, points);
        EXPECT_LE(rel(det2(k), hafnian_oracle(doubled)), 1e-10) << "n=" << n;
        EXPECT_LE(rel(det2(k), hafnian(doubled)), 1e-10) << "n=" << n;
    }
}

TEST(HafnianBlockMatrix, TwoPointValue) {
    std::mt19937_64 rng(27);
    const ComplexMatrix l1 = random_matrix(3, 2, rng);
    const ComplexMatrix l2 = l1;
    const ComplexMatrix k1 = l1 * l1.adjoint();
    const ComplexMatrix k2 = l1 * l2.transpose();
    const Complex value = hafnian(hafnian_block_matrix(k1, k2, {0, 2}));
    const Complex expected =
        k1(0, 0) * k1(2, 2) + std::norm(k1(0, 2)) + std::norm(k2(0, 2));
    EXPECT_LE(rel(value, expected), 1e-12);
}

}  // namespace
}  // namespace fockpoint
