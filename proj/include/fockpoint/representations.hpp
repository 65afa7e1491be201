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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockpoint/fock.hpp"
#include "fockpoint/ground_config.hpp"
#include "fockpoint/operator_expr.hpp"

namespace fockpoint {

enum class Kind { kCarHermitian, kCarJHermitian, kCcrPoisson, kCcrPermanental, kCcrHafnian };

std::string_view to_string(Kind kind);
/// Accepts "car_hermitian", "car_jhermitian", "ccr_poisson", "ccr_permanental",
/// "ccr_hafnian".
Kind kind_from_string(std::string_view name);

inline bool is_car(Kind kind) { return kind == Kind::kCarHermitian || kind == Kind::kCarJHermitian; }

inline constexpr double kSpectralTolerance = 1e-10;
inline constexpr int kDefaultCap = 6;

/// Input description of a representation.
///
/// `kernel` is the operator on the m-mode one-particle space in the
/// orthonormal site basis e_i = chi_i / sqrt(sigma_i), i.e. its entries are
/// K(x_i, x_j) sqrt(sigma_i sigma_j). `l1` and `l2` hold the unscaled vectors
/// L1(x_i), L2(x_i) as rows (m x g) for the hafnian kind.
struct RepresentationSpec {
    Kind kind = Kind::kCarHermitian;
    GroundSet ground{std::vector<double>{1.0}};
    std::optional<ComplexMatrix> kernel;
    std::optional<ComplexMatrix> l1;
    std::optional<ComplexMatrix> l2;
    int cap = kDefaultCap;
};

/// Checks kernel or L1/L2 constraints for the kind; throws ValidationError.
void validate_spec(const RepresentationSpec& spec);

/// Hermitian square root by eigendecomposition, eigenvalues clipped at zero.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& a);

/// A validated representation with its Fock space allocated.
///
/// Mode layout: CAR kinds use 2m antisymmetric modes (first copy of the
/// one-particle space in modes [0, m), second in [m, 2m)); ccr_poisson uses m
/// symmetric modes; ccr_permanental 2m symmetric modes laid out like CAR;
/// ccr_hafnian m + g symmetric modes (sites first, auxiliary space after).
class Representation {
  public:
    static Representation build(RepresentationSpec spec);

    const RepresentationSpec& spec() const { return spec_; }
    Kind kind() const { return spec_.kind; }
    const GroundSet& ground() const { return spec_.ground; }
    std::size_t sites() const { return spec_.ground.size(); }
    const FockSpace& fock() const { return fock_; }

    /// Same representation on a symmetric space with a different cap.
    Representation with_cap(int cap) const;

    /// Operator matrix K (zero for kinds without one).
    const ComplexMatrix& kernel() const { return kernel_; }
    const ComplexMatrix& k1() const { return k1_; }
    const ComplexMatrix& k2() const { return k2_; }

    /// Hafnian kind: sqrt(sigma_i) L_a(x_i) as rows.
    const ComplexMatrix& l1_scaled() const { return l1_scaled_; }
    const ComplexMatrix& l2_scaled() const { return l2_scaled_; }
    /// Hafnian kind: [(L1(x_i), L1(x_j))] and [(L1(x_i), conj L2(x_j))], both
    /// scaled by sqrt(sigma_i sigma_j).
    ComplexMatrix covariance() const;
    ComplexMatrix pseudo_covariance() const;

  private:
    Representation(RepresentationSpec spec, FockSpace fock)
        : spec_(std::move(spec)), fock_(std::move(fock)) {}

    RepresentationSpec spec_;
    FockSpace fock_;
    ComplexMatrix kernel_;
    ComplexMatrix k1_;
    ComplexMatrix k2_;
    ComplexMatrix l1_scaled_;
    ComplexMatrix l2_scaled_;
};

inline Representation build_representation(RepresentationSpec spec) {
    return Representation::build(std::move(spec));
}

/// Normal-ordered particle density rho(box).
OperatorExpr particle_density(const Representation& rep, const Box& box);

enum class FieldFlavor { kPlus, kMinus, kB };

/// A+(phi), A-(phi) or b(phi) = A+(phi) + A-(phi); phi in the orthonormal site
/// basis.
OperatorExpr field_operator(const Representation& rep, const OneParticleVector& phi,
                            FieldFlavor flavor);

/// sum_{i in box} sqrt(sigma_i) e_i, the indicator of the box.
OneParticleVector indicator_vector(const GroundSet& ground, const Box& box);

}  // namespace fockpoint
