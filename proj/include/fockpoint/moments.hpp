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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fockpoint/representations.hpp"

namespace fockpoint {

/// Tolerance pair: a check passes when abs_err <= atol or rel_err <= rtol.
struct Tolerance {
    double rtol = 0.0;
    double atol = 0.0;
};

/// One comparison of a computed value against its reference.
struct Check {
    std::string name;
    Complex lhs;
    Complex rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

Check make_check(std::string name, Complex lhs, Complex rhs, Tolerance tol);

/// An ordered list of checks.
struct Report {
    std::vector<Check> checks;

    bool all_pass() const;
    void add(Check check) { checks.push_back(std::move(check)); }
    void append(const Report& other);
};

/// :rho(boxes[0]) ... rho(boxes[n-1]): built by the recursive Wick rule.
OperatorExpr wick_polynomial(const Representation& rep, std::span<const Box> boxes);

/// Smallest symmetric-space cap at which vacuum moments of expressions with the
/// given particle raise are computed without truncation.
int required_cap(const OperatorExpr& expr);

/// Cap used for order-n moment checks: 2n, or n for ccr_poisson, and at least 1.
int moment_cap(Kind kind, int order);

/// tau(expr) = <expr Omega, Omega>. Throws CapacityError on symmetric spaces whose
/// cap is below required_cap(expr).
Complex vacuum_moment(const Representation& rep, const OperatorExpr& expr);

/// theta^(n)(boxes[0] x ... x boxes[n-1]) = tau(:rho ... rho:) / n!.
/// Throws NumericalError if the imaginary part exceeds 1e-10 (relative to max(1, |re|)).
double correlation_measure(const Representation& rep, std::span<const Box> boxes);

/// Matrix whose principal minors give the correlation functions of the
/// determinantal and permanental kinds: M for car_hermitian and
/// ccr_permanental, M P1 + (1 - M) P2 for car_jhermitian.
ComplexMatrix correlation_kernel(const Representation& rep);

/// Sum over site tuples in boxes[0] x ... x boxes[n-1] of the correlation
/// function times the weights, i.e. the value n! theta^(n) must take.
double kernel_prediction(const Representation& rep, std::span<const Box> boxes);
/// Same, from a validated spec without allocating a Fock space.
double kernel_prediction(const RepresentationSpec& spec, std::span<const Box> boxes);

/// Field-moment structure checks up to `order` (at most 6) on the trial vectors:
/// vanishing odd moments, pair-partition expansion of even moments, and gauge
/// invariance (or its failure for car_jhermitian and ccr_hafnian). For
/// car_jhermitian with a real kernel, also the closed form of T2. Needs at
/// least `order` trial vectors.
Report gauge_quasifree_checks(const Representation& rep, int order,
                              std::span<const OneParticleVector> trials);

/// Joint distribution of the commuting family rho({x_i}) in the vacuum.
struct SpectralLaw {
    /// P(gamma = S), keyed by the sorted site list S.
    std::map<std::vector<std::size_t>, double> probabilities;
    double max_commutator = 0.0;
    /// Largest distance of a <v, rho_i v> from {0, 1}.
    double max_pattern_deviation = 0.0;
    bool structural_ok = true;
    std::string failure;
};

inline constexpr double kSpectralClusterTol = 1e-8;
inline constexpr double kSpectralPatternTol = 1e-7;
inline constexpr int kMaxSpectralSites = 4;

/// car_hermitian and car_jhermitian only, at most 4 sites.
SpectralLaw joint_spectral_law(const Representation& rep);

/// P(gamma = S) = sum_{T >= S} (-1)^{|T \ S|} det kernel_T over all subsets S.
std::map<std::vector<std::size_t>, double> inclusion_exclusion_law(const ComplexMatrix& kernel);

/// sum_S P(S) times the number of ordered tuples of distinct sites of S in
/// boxes[0] x ... x boxes[n-1]; equals n! theta^(n).
double spectral_marginal(const SpectralLaw& law, std::span<const Box> boxes);

}  // namespace fockpoint
