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
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "fockpoint/matrix_functions.hpp"

namespace fockpoint {

enum class Statistics { kAntisymmetric, kSymmetric };
enum class Ladder { kCreate, kAnnihilate };

using FockVector = Eigen::VectorXcd;
using OneParticleVector = Eigen::VectorXcd;

/// Coefficients c with g = sum_ij c[i][j] e_i (x) e_j. Creation inserts
/// sum_ij c[i][j] a+(e_i) a+(e_j).
using TwoParticleKernel = Eigen::MatrixXcd;

/// Orthonormal occupation basis of a Fock space over `modes` modes.
///
/// Antisymmetric: all 2^modes occupation bit patterns, basis index equal to
/// the bit pattern. Symmetric: occupation vectors with total <= cap, ordered
/// by total degree and then lexicographically. The vacuum is index 0 in both.
class FockSpace {
  public:
    static FockSpace antisymmetric(int modes);
    static FockSpace symmetric(int modes, int cap);

    Statistics statistics() const { return stats_; }
    int modes() const { return modes_; }
    /// Maximum total occupation (equals modes for antisymmetric spaces).
    int cap() const { return cap_; }
    std::size_t dimension() const { return keys_.size(); }

    int occupation(std::size_t index, int mode) const;
    int degree(std::size_t index) const { return degree_[index]; }

    FockVector vacuum() const;

    /// Single-mode ladder acting on a basis state: resulting basis index and
    /// amplitude factor, or nullopt if the result vanishes (Pauli exclusion,
    /// empty mode, or symmetric truncation above the cap).
    struct Step {
        std::size_t index;
        double factor;
    };
    std::optional<Step> create(std::size_t index, int mode) const;
    std::optional<Step> annihilate(std::size_t index, int mode) const;

  private:
    FockSpace(Statistics stats, int modes, int cap);
    std::optional<std::size_t> lookup(std::uint64_t key) const;

    Statistics stats_;
    int modes_;
    int cap_;
    std::vector<std::uint64_t> keys_;
    std::vector<int> degree_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// a+(phi) = sum phi_i a+(e_i); a-(phi) = sum conj(phi_i) a-(e_i).
FockVector apply_ladder(const FockSpace& space, const OneParticleVector& phi, Ladder direction,
                        const FockVector& v);

/// a+(c) = sum c_ij a+(e_i) a+(e_j); a-(c) is its adjoint
/// sum conj(c_ij) a-(e_j) a-(e_i).
FockVector apply_ladder(const FockSpace& space, const TwoParticleKernel& c, Ladder direction,
                        const FockVector& v);

/// dGamma(A) = sum_ij A_ij a+(e_i) a-(e_j).
FockVector apply_dgamma(const FockSpace& space, const ComplexMatrix& a, const FockVector& v);

/// Single-mode helpers used by the composite operators above.
FockVector apply_mode(const FockSpace& space, int mode, Ladder direction, const FockVector& v);

}  // namespace fockpoint
