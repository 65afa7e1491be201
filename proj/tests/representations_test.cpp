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

#include "fockpoint/representations.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fockpoint/errors.hpp"
#include "fockpoint/moments.hpp"
#include "test_util.hpp"

namespace fockpoint {
namespace {

using testing::random_hermitian;
using testing::random_matrix;
using testing::random_weights;

ComplexMatrix scalar_matrix(double c) {
    ComplexMatrix k(1, 1);
    k << c;
    return k;
}

RepresentationSpec make_spec(Kind kind, GroundSet ground, std::optional<ComplexMatrix> k, int cap = kDefaultCap) {
    RepresentationSpec s;
    s.kind = kind;
    s.ground = std::move(ground);
    s.kernel = std::move(k);
    s.cap = cap;
    return s;
}

// A valid hafnian spec: L2 = L1 real, which satisfies both constraints.
RepresentationSpec hafnian_spec(int m, int g, std::mt19937_64& rng, int cap) {
    RepresentationSpec s;
    s.kind = Kind::kCcrHafnian;
    s.ground = GroundSet(random_weights(m, rng));
    s.l1 = random_matrix(m, g, rng, false);
    s.l2 = s.l1;
    s.cap = cap;
    return s;
}

ComplexMatrix degree_projector(const FockSpace& space, int max_degree) {
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (space.degree(static_cast<std::size_t>(k)) <= max_degree) {
            p(k, k) = 1.0;
        }
    }
    return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Complex tau(const Representation& rep, const OperatorExpr& e) { return vacuum_moment(rep, e); }

TEST(Kind, NamesRoundTrip) {
    for (Kind k : {Kind::kCarHermitian, Kind::kCarJHermitian, Kind::kCcrPoisson,
                   Kind::kCcrPermanental, Kind::kCcrHafnian}) {
        EXPECT_EQ(kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(kind_from_string("car"), ValidationError);
}

TEST(HermitianSqrt, SquaresBack) {
    std::mt19937_64 rng(41);
    const ComplexMatrix a = random_hermitian(4, rng, 0.0, 3.0);
    const ComplexMatrix r = hermitian_sqrt(a);
    EXPECT_LE(max_abs(r * r - a), 1e-12);
    EXPECT_LE(max_abs(r - r.adjoint()), 1e-12);
}

TEST(Build, RejectsSpectrumOutsideRangeAndNamesEigenvalue) {
    ComplexMatrix k = ComplexMatrix::Zero(2, 2);
    k(0, 0) = 1.5;
    k(1, 1) = 0.2;
    try {
        build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0, 1.0}), k));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos) << e.what();
    }
    k(0, 0) = -0.3;
    EXPECT_THROW(build_representation(make_spec(Kind::kCcrPermanental, GroundSet({1.0, 1.0}), k)),
                 ValidationError);
    // Within the 1e-10 tolerance the kernel is accepted.
    k(0, 0) = 1.0 + 1e-12;
    EXPECT_NO_THROW(build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0, 1.0}), k)));
}

TEST(Build, RejectsMalformedKernels) {
    ComplexMatrix k = ComplexMatrix::Zero(2, 2);
    k(0, 1) = 0.3;
    EXPECT_THROW(build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0, 1.0}), k)),
                 ValidationError);
    EXPECT_THROW(build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0, 1.0}),
                                                ComplexMatrix::Zero(3, 3))),
                 ValidationError);
    EXPECT_THROW(build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0}), std::nullopt)),
                 ValidationError);
    EXPECT_THROW(build_representation(make_spec(Kind::kCarJHermitian, GroundSet({1.0, 1.0}),
                                                ComplexMatrix::Zero(2, 2))),
                 ValidationError);
}

TEST(Build, HafnianConstraintsNameTheSitePair) {
    std::mt19937_64 rng(42);
    RepresentationSpec s = hafnian_spec(3, 2, rng, 2);
    EXPECT_NO_THROW(build_representation(s));
    s.l2 = random_matrix(3, 2, rng);
    try {
        build_representation(s);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("site pair"), std::string::npos) << e.what();
    }
    s.l2.reset();
    EXPECT_THROW(build_representation(s), ValidationError);
}

TEST(Build, HafnianAcceptsPhaseRotatedPair) {
    // L1 = e^{it} R with R real, L2 = conj(L1).
    std::mt19937_64 rng(43);
    RepresentationSpec s;
    s.kind = Kind::kCcrHafnian;
    s.ground = GroundSet({1.0, 2.0});
    ComplexMatrix l1 = random_matrix(2, 3, rng, false);
    l1 *= Complex(0.6, 0.8);
    s.l1 = l1;
    s.l2 = l1.conjugate();
    s.cap = 2;
    EXPECT_NO_THROW(build_representation(s));
}

TEST(Build, ZeroKernelGivesEmptyProcess) {
    const GroundSet g({1.0, 0.5, 2.0});
    const Representation rep =
        build_representation(make_spec(Kind::kCarHermitian, g, ComplexMatrix::Zero(3, 3)));
    EXPECT_LE(max_abs(rep.k1()), 1e-15);
    EXPECT_LE(max_abs(rep.k2() - ComplexMatrix::Identity(3, 3)), 1e-12);
    const Box box({0, 2});
    const OperatorExpr rho = particle_density(rep, box);
    ComplexMatrix expected_block = ComplexMatrix::Zero(6, 6);
    expected_block(3, 3) = 1.0;
    expected_block(5, 5) = 1.0;
    EXPECT_LE(max_abs(to_matrix(rep.fock(), rho) -
                      to_matrix(rep.fock(), OperatorExpr(DGamma{expected_block}))),
              1e-12);
    EXPECT_NEAR(std::abs(tau(rep, rho)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(tau(rep, rho * rho)), 0.0, 1e-15);
}

TEST(Build, IdentityKernelFillsEverySite) {
    const GroundSet g({1.0, 1.0, 1.0});
    const Representation rep =
        build_representation(make_spec(Kind::kCarHermitian, g, ComplexMatrix::Identity(3, 3)));
    const Box box({0, 1});
    EXPECT_NEAR(tau(rep, particle_density(rep, box)).real(), g.measure(box), 1e-12);
}

TEST(Density, OneSiteClosedForms) {
    const double c = 0.37;
    const double s = 1.7;
    const Box x({0});
    const Representation car =
        build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0}), scalar_matrix(c)));
    const OperatorExpr rc = particle_density(car, x);
    EXPECT_NEAR(std::abs(tau(car, rc) - c), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(tau(car, rc * rc) - c), 0.0, 1e-12);

    const Representation pois =
        build_representation(make_spec(Kind::kCcrPoisson, GroundSet({s}), std::nullopt, 2));
    const OperatorExpr rp = particle_density(pois, x);
    EXPECT_NEAR(std::abs(tau(pois, rp) - s), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(tau(pois, rp * rp) - (s + s * s)), 0.0, 1e-12);

    const Representation perm =
        build_representation(make_spec(Kind::kCcrPermanental, GroundSet({1.0}), scalar_matrix(c), 4));
    const OperatorExpr rq = particle_density(perm, x);
    EXPECT_NEAR(std::abs(tau(perm, rq * rq) - (c + 2 * c * c)), 0.0, 1e-12);
}

TEST(Density, CarOneSiteRestrictionHasZeroOneSpectrum) {
    const double c = 0.37;
    const Representation car =
        build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0}), scalar_matrix(c)));
    const ComplexMatrix r = to_matrix(car.fock(), particle_density(car, Box({0})));
    // Basis index = occupation bits: vacuum 0, a+_2 a+_1 Omega is 3.
    EXPECT_NEAR(std::abs(r(0, 0) - c), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(std::abs(r(3, 0)) - std::sqrt(c * (1 - c))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r(3, 3) - (1 - c)), 0.0, 1e-12);
    EXPECT_LE(max_abs(r * r - r), 1e-12);
}

// rho(box) = sum_{k in box} A+(e_k) A-(e_k), compared on states of degree <= max_degree.
void expect_density_from_fields(const Representation& rep, const Box& box, int max_degree) {
    const auto m = static_cast<Eigen::Index>(rep.sites());
    OperatorExpr from_fields;
    for (std::size_t k : box.members()) {
        OneParticleVector e = OneParticleVector::Zero(m);
        e(static_cast<Eigen::Index>(k)) = 1.0;
        from_fields = from_fields + field_operator(rep, e, FieldFlavor::kPlus) *
                                        field_operator(rep, e, FieldFlavor::kMinus);
    }
    const ComplexMatrix p = degree_projector(rep.fock(), max_degree);
    const ComplexMatrix lhs = to_matrix(rep.fock(), particle_density(rep, box)) * p;
    const ComplexMatrix rhs = to_matrix(rep.fock(), from_fields) * p;
    EXPECT_LE(max_abs(lhs - rhs), 1e-12) << to_string(rep.kind());
}

TEST(Density, EqualsNormalOrderedFieldProduct) {
    std::mt19937_64 rng(44);
    const GroundSet g(random_weights(3, rng));
    const Box box({0, 2});
    expect_density_from_fields(
        build_representation(make_spec(Kind::kCarHermitian, g, random_hermitian(3, rng, 0, 1))),
        box, 6);
    expect_density_from_fields(
        build_representation(make_spec(Kind::kCcrPermanental, g, random_hermitian(3, rng, 0, 2), 4)),
        box, 2);
    expect_density_from_fields(build_representation(make_spec(Kind::kCcrPoisson, g, std::nullopt, 3)),
                               box, 2);
    expect_density_from_fields(build_representation(hafnian_spec(3, 2, rng, 4)), box, 2);
    // The J-Hermitian fields reproduce the explicit density for real kernels.
    const GroundSet split(g.weights(), {1, 2, 2});
    expect_density_from_fields(
        build_representation(make_spec(Kind::kCarJHermitian, split, random_hermitian(3, rng, 0, 1, false))),
        Box({0, 1, 2}), 6);
}

TEST(Density, JHermitianFirstPartMatchesHermitianCase) {
    std::mt19937_64 rng(45);
    const ComplexMatrix k = random_hermitian(3, rng, 0, 1);
    const std::vector<double> w = random_weights(3, rng);
    const Representation j =
        build_representation(make_spec(Kind::kCarJHermitian, GroundSet(w, {1, 1, 2}), k));
    const Representation h = build_representation(make_spec(Kind::kCarHermitian, GroundSet(w), k));
    const Box box({0, 1});
    EXPECT_LE(max_abs(to_matrix(j.fock(), particle_density(j, box)) -
                      to_matrix(h.fock(), particle_density(h, box))),
              1e-12);
}

class DensityProperties : public ::testing::TestWithParam<Kind> {
  protected:
    Representation make(std::mt19937_64& rng) const {
        const GroundSet g(random_weights(3, rng), GetParam() == Kind::kCarJHermitian
                                                      ? std::vector<int>{1, 2, 1}
                                                      : std::vector<int>{});
        switch (GetParam()) {
            case Kind::kCcrHafnian:
                return build_representation(hafnian_spec(3, 1, rng, 5));
            case Kind::kCcrPoisson:
                return build_representation(make_spec(GetParam(), g, std::nullopt, 5));
            case Kind::kCcrPermanental:
                return build_representation(make_spec(GetParam(), g, random_hermitian(3, rng, 0, 2), 5));
            default:
                return build_representation(make_spec(GetParam(), g, random_hermitian(3, rng, 0, 1)));
        }
    }
};

TEST_P(DensityProperties, HermitianAdditiveCommuting) {
    std::mt19937_64 rng(46);
    const Representation rep = make(rng);
    const FockSpace& f = rep.fock();
    const bool sym = f.statistics() == Statistics::kSymmetric;
    const ComplexMatrix a = to_matrix(f, particle_density(rep, Box({0})));
    const ComplexMatrix b = to_matrix(f, particle_density(rep, Box({1, 2})));
    const ComplexMatrix ab = to_matrix(f, particle_density(rep, Box({0, 1, 2})));
    const ComplexMatrix c = to_matrix(f, particle_density(rep, Box({0, 1})));
    // Densities raise the degree by at most 2, so truncation only affects the top rows.
    const ComplexMatrix low = sym ? degree_projector(f, f.cap() - 2) : degree_projector(f, f.cap());
    const ComplexMatrix lower = sym ? degree_projector(f, f.cap() - 4) : low;
    EXPECT_LE(max_abs(low * (a - a.adjoint()) * low), 1e-10);
    EXPECT_LE(max_abs(ab - a - b), 1e-12);
    EXPECT_LE(max_abs((a * b - b * a) * lower), 1e-10);
    EXPECT_LE(max_abs((b * c - c * b) * lower), 1e-10);
}

TEST_P(DensityProperties, FieldAdjointness) {
    std::mt19937_64 rng(47);
    const Representation rep = make(rng);
    const OneParticleVector phi = random_matrix(3, 1, rng);
    const ComplexMatrix plus = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kPlus));
    const ComplexMatrix minus = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kMinus));
    const ComplexMatrix b = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kB));
    EXPECT_LE(max_abs(plus.adjoint() - minus), 1e-12);
    EXPECT_LE(max_abs(b - plus - minus), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(AllKinds, DensityProperties,
                         ::testing::Values(Kind::kCarHermitian, Kind::kCarJHermitian,
                                           Kind::kCcrPoisson, Kind::kCcrPermanental,
                                           Kind::kCcrHafnian),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Fields, CarRelations) {
    std::mt19937_64 rng(48);
    const std::vector<double> w = random_weights(3, rng);
    for (const Representation& rep :
         {build_representation(make_spec(Kind::kCarHermitian, GroundSet(w), random_hermitian(3, rng, 0, 1))),
          build_representation(make_spec(Kind::kCarJHermitian, GroundSet(w, {2, 1, 2}),
                                         random_hermitian(3, rng, 0, 1, false)))}) {
        const OneParticleVector phi = random_matrix(3, 1, rng);
        const OneParticleVector psi = random_matrix(3, 1, rng);
        const ComplexMatrix am = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kMinus));
        const ComplexMatrix ap = to_matrix(rep.fock(), field_operator(rep, psi, FieldFlavor::kPlus));
        const ComplexMatrix aq = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kPlus));
        const Complex overlap = phi.dot(psi);  // (psi, phi) = sum psi_i conj(phi_i)
        const auto dim = am.rows();
        EXPECT_LE(max_abs(am * ap + ap * am - overlap * ComplexMatrix::Identity(dim, dim)), 1e-12);
        EXPECT_LE(max_abs(aq * ap + ap * aq), 1e-12);
    }
}

TEST(Fields, CcrRelationsBelowCap) {
    std::mt19937_64 rng(49);
    const Representation rep = build_representation(
        make_spec(Kind::kCcrPermanental, GroundSet(random_weights(2, rng)), random_hermitian(2, rng, 0, 2), 4));
    const OneParticleVector phi = random_matrix(2, 1, rng);
    const OneParticleVector psi = random_matrix(2, 1, rng);
    const ComplexMatrix am = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kMinus));
    const ComplexMatrix ap = to_matrix(rep.fock(), field_operator(rep, psi, FieldFlavor::kPlus));
    const ComplexMatrix low = degree_projector(rep.fock(), rep.fock().cap() - 1);
    const Complex overlap = phi.dot(psi);
    EXPECT_LE(max_abs((am * ap - ap * am) * low - overlap * low), 1e-12);
}

TEST(Fields, PoissonShiftIsConstant) {
    const GroundSet g({0.5, 2.0});
    const Representation rep = build_representation(make_spec(Kind::kCcrPoisson, g, std::nullopt, 3));
    OneParticleVector phi(2);
    phi << Complex(1.0, 0.5), Complex(-2.0, 0.0);
    const Complex shift = phi(0) * std::sqrt(0.5) + phi(1) * std::sqrt(2.0);
    const ComplexMatrix diff = to_matrix(rep.fock(), field_operator(rep, phi, FieldFlavor::kPlus)) -
                               to_matrix(rep.fock(), OperatorExpr(Create1{phi}));
    const auto dim = diff.rows();
    EXPECT_LE(max_abs(diff - shift * ComplexMatrix::Identity(dim, dim)), 1e-12);
}

TEST(Fields, HafnianWithVanishingVectorsIsPlainLadder) {
    RepresentationSpec s;
    s.kind = Kind::kCcrHafnian;
    s.ground = GroundSet({1.3});
    s.l1 = ComplexMatrix::Zero(1, 1);
    s.l2 = ComplexMatrix::Zero(1, 1);
    s.cap = 3;
    const Representation rep = build_representation(s);
    OneParticleVector h(1);
    h << Complex(0.7, -0.2);
    OneParticleVector padded(2);
    padded << h(0), 0.0;
    EXPECT_LE(max_abs(to_matrix(rep.fock(), field_operator(rep, h, FieldFlavor::kPlus)) -
                      to_matrix(rep.fock(), OperatorExpr(Create1{padded}))),
              1e-15);
    EXPECT_LE(max_abs(to_matrix(rep.fock(), field_operator(rep, h, FieldFlavor::kMinus)) -
                      to_matrix(rep.fock(), OperatorExpr(Annihilate1{padded}))),
              1e-15);
}

TEST(Fields, DimensionMismatch) {
    const Representation rep =
        build_representation(make_spec(Kind::kCarHermitian, GroundSet({1.0, 1.0}), ComplexMatrix::Zero(2, 2)));
    EXPECT_THROW(field_operator(rep, OneParticleVector::Zero(3), FieldFlavor::kPlus), DomainError);
    EXPECT_THROW(particle_density(rep, Box({4})), DomainError);
}

TEST(Representation, WithCapRebuildsSpace) {
    const Representation rep =
        build_representation(make_spec(Kind::kCcrPoisson, GroundSet({1.0, 1.0}), std::nullopt, 2));
    const Representation wider = rep.with_cap(5);
    EXPECT_EQ(wider.fock().cap(), 5);
    EXPECT_EQ(wider.spec().cap, 5);
    EXPECT_EQ(rep.fock().cap(), 2);
}

TEST(Representation, HafnianCovariances) {
    std::mt19937_64 rng(50);
    const RepresentationSpec s = hafnian_spec(3, 2, rng, 2);
    const Representation rep = build_representation(s);
    const auto& w = s.ground.weights();
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
            const double scale = std::sqrt(w[x] * w[y]);
            const Complex k1 = s.l1->row(x).dot(s.l1->row(y));  // conj-linear in the first slot
            EXPECT_LE(std::abs(rep.covariance()(x, y) - std::conj(k1) * scale), 1e-12);
            const Complex k2 = (s.l1->row(x).array() * s.l2->row(y).array()).sum();
            EXPECT_LE(std::abs(rep.pseudo_covariance()(x, y) - k2 * scale), 1e-12);
        }
    }
}

}  // namespace
}  // namespace fockpoint
