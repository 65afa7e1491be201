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

#include <cmath>
#include <limits>
#include <sstream>

#include "fockpoint/errors.hpp"

namespace fockpoint {

namespace {

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_kernel(const RepresentationSpec& spec) {
    if (!spec.kernel) {
        throw ValidationError(std::string(to_string(spec.kind)) + " needs a kernel matrix K");
    }
    const auto m = static_cast<Eigen::Index>(spec.ground.size());
    if (spec.kernel->rows() != m || spec.kernel->cols() != m) {
        throw ValidationError("kernel must be " + std::to_string(m) + " x " + std::to_string(m));
    }
    const ComplexMatrix& k = *spec.kernel;
    const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    if ((k - k.adjoint()).cwiseAbs().maxCoeff() > kSpectralTolerance * scale) {
        throw ValidationError("kernel must be Hermitian");
    }
}

// Eigenvalues must lie in [lo - tol, hi + tol].
void require_spectrum(const ComplexMatrix& k, double lo, double hi) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(k, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double ev = solver.eigenvalues()(i);
        if (ev < lo - kSpectralTolerance || ev > hi + kSpectralTolerance) {
            std::string range = std::isinf(hi) ? "[" + format_value(lo) + ", inf)"
                                               : "[" + format_value(lo) + ", " + format_value(hi) + "]";
            throw ValidationError("kernel eigenvalue " + format_value(ev) + " lies outside " +
                                  range);
        }
    }
}

ComplexMatrix hermitian_function(const ComplexMatrix& a, double (*f)(double)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (a + a.adjoint()));
    Eigen::VectorXd values = solver.eigenvalues().unaryExpr(f);
    return solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
}

void validate_hafnian(const RepresentationSpec& spec) {
    if (!spec.l1 || !spec.l2) {
        throw ValidationError("ccr_hafnian needs L1 and L2");
    }
    const ComplexMatrix& l1 = *spec.l1;
    const ComplexMatrix& l2 = *spec.l2;
    const auto m = static_cast<Eigen::Index>(spec.ground.size());
    if (l1.rows() != m || l2.rows() != m || l1.cols() != l2.cols() || l1.cols() < 1) {
        throw ValidationError("L1 and L2 need one vector per site, of equal length g >= 1");
    }
    const double scale =
        std::max(1.0, std::max(l1.cwiseAbs2().rowwise().sum().maxCoeff(),
                               l2.cwiseAbs2().rowwise().sum().maxCoeff()));
    // (L1(x), I L2(y)) = sum_g L1(x)_g L2(y)_g; (L1(x), L1(y)) = sum_g L1(x)_g conj L1(y)_g.
    const ComplexMatrix pseudo = l1 * l2.transpose();
    const ComplexMatrix gram1 = l1 * l1.adjoint();
    const ComplexMatrix gram2 = l2 * l2.adjoint();
    for (Eigen::Index x = 0; x < m; ++x) {
        for (Eigen::Index y = 0; y < m; ++y) {
            const std::string pair = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
            if (std::abs(pseudo(x, y) - pseudo(y, x)) > kSpectralTolerance * scale) {
                throw ValidationError("hafnian constraint (L1(x), conj L2(y)) symmetric fails at site pair " + pair);
            }
            if (std::abs(gram1(x, y) - gram2(x, y)) > kSpectralTolerance * scale) {
                throw ValidationError("hafnian constraint (L1(x), L1(y)) = (L2(x), L2(y)) fails at site pair " + pair);
            }
        }
    }
}

int fock_modes(const RepresentationSpec& spec) {
    const int m = static_cast<int>(spec.ground.size());
    switch (spec.kind) {
        case Kind::kCarHermitian:
        case Kind::kCarJHermitian:
        case Kind::kCcrPermanental:
            return 2 * m;
        case Kind::kCcrPoisson:
            return m;
        case Kind::kCcrHafnian:
            return m + static_cast<int>(spec.l1->cols());
    }
    return m;
}

// (u, 0) and (0, u) on a doubled space.
OneParticleVector embed(const OneParticleVector& u, Eigen::Index offset, Eigen::Index modes) {
    OneParticleVector out = OneParticleVector::Zero(modes);
    out.segment(offset, u.size()) = u;
    return out;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

// sum T[i][j] (0, e_i) (x) (e_j, 0) on the doubled space.
TwoParticleKernel embed_21(const ComplexMatrix& t) {
    const Eigen::Index m = t.rows();
    TwoParticleKernel c = TwoParticleKernel::Zero(2 * m, 2 * m);
    c.bottomLeftCorner(m, m) = t;
    return c;
}

// Quasi-free density on the doubled space: two-particle part built from
// K2 S K1, one-body part sign * conj(K1 S K1) (+) K2 S K2, plus a constant.
// sign is -1 for CAR and +1 for CCR (reordering a1- a1+).
OperatorExpr doubled_density(const Representation& rep, const ComplexMatrix& s, double sign,
                             double constant) {
    const ComplexMatrix& k1 = rep.k1();
    const ComplexMatrix& k2 = rep.k2();
    const TwoParticleKernel pair = embed_21(k2 * s * k1);
    const ComplexMatrix one_body = block_diag(sign * (k1 * s * k1).conjugate(), k2 * s * k2);
    return OperatorExpr::sum({{1.0, Create2{pair}},
                              {1.0, Annihilate2{pair}},
                              {1.0, DGamma{one_body}},
                              {1.0, Const{constant}}});
}

}  // namespace

std::string_view to_string(Kind kind) {
    switch (kind) {
        case Kind::kCarHermitian:
            return "car_hermitian";
        case Kind::kCarJHermitian:
            return "car_jhermitian";
        case Kind::kCcrPoisson:
            return "ccr_poisson";
        case Kind::kCcrPermanental:
            return "ccr_permanental";
        case Kind::kCcrHafnian:
            return "ccr_hafnian";
    }
    return "unknown";
}

Kind kind_from_string(std::string_view name) {
    for (Kind k : {Kind::kCarHermitian, Kind::kCarJHermitian, Kind::kCcrPoisson,
                   Kind::kCcrPermanental, Kind::kCcrHafnian}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ValidationError("unknown representation kind '" + std::string(name) + "'");
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a) {
    return hermitian_function(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

void validate_spec(const RepresentationSpec& spec) {
    switch (spec.kind) {
        case Kind::kCarHermitian:
        case Kind::kCarJHermitian:
            require_kernel(spec);
            require_spectrum(*spec.kernel, 0.0, 1.0);
            if (spec.kind == Kind::kCarJHermitian && !spec.ground.has_parts()) {
                throw ValidationError("car_jhermitian needs part labels on the ground set");
            }
            break;
        case Kind::kCcrPermanental:
            require_kernel(spec);
            require_spectrum(*spec.kernel, 0.0, std::numeric_limits<double>::infinity());
            break;
        case Kind::kCcrPoisson:
            break;
        case Kind::kCcrHafnian:
            validate_hafnian(spec);
            break;
    }
}

Representation Representation::build(RepresentationSpec spec) {
    const auto m = static_cast<Eigen::Index>(spec.ground.size());
    validate_spec(spec);
    const int modes = fock_modes(spec);
    FockSpace fock = is_car(spec.kind) ? FockSpace::antisymmetric(modes)
                                       : FockSpace::symmetric(modes, spec.cap);
    Representation rep(std::move(spec), std::move(fock));
    const RepresentationSpec& s = rep.spec_;
    const ComplexMatrix id = ComplexMatrix::Identity(m, m);
    rep.kernel_ = s.kernel ? *s.kernel : ComplexMatrix::Zero(m, m);
    const ComplexMatrix herm = 0.5 * (rep.kernel_ + rep.kernel_.adjoint());
    if (is_car(s.kind)) {
        rep.k1_ = hermitian_sqrt(herm);
        rep.k2_ = hermitian_sqrt(id - herm);
    } else if (s.kind == Kind::kCcrPermanental) {
        rep.k1_ = hermitian_sqrt(herm);
        rep.k2_ = hermitian_sqrt(id + herm);
    } else {
        rep.k1_ = ComplexMatrix::Zero(m, m);
        rep.k2_ = ComplexMatrix::Zero(m, m);
    }
    if (s.kind == Kind::kCcrHafnian) {
        Eigen::VectorXd root(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            root(i) = std::sqrt(s.ground.weight(i));
        }
        rep.l1_scaled_ = root.asDiagonal() * *s.l1;
        rep.l2_scaled_ = root.asDiagonal() * *s.l2;
    }
    return rep;
}

Representation Representation::with_cap(int cap) const {
    RepresentationSpec s = spec_;
    s.cap = cap;
    return build(std::move(s));
}

ComplexMatrix Representation::covariance() const {
    if (kind() == Kind::kCcrHafnian) {
        return l1_scaled_ * l1_scaled_.adjoint();
    }
    return kernel_;
}

ComplexMatrix Representation::pseudo_covariance() const {
    if (kind() == Kind::kCcrHafnian) {
        return l1_scaled_ * l2_scaled_.transpose();
    }
    return ComplexMatrix::Zero(kernel_.rows(), kernel_.cols());
}

OneParticleVector indicator_vector(const GroundSet& ground, const Box& box) {
    box.validate(ground);
    OneParticleVector chi = OneParticleVector::Zero(static_cast<Eigen::Index>(ground.size()));
    for (std::size_t i : box.members()) {
        chi(static_cast<Eigen::Index>(i)) = std::sqrt(ground.weight(i));
    }
    return chi;
}

OperatorExpr particle_density(const Representation& rep, const Box& box) {
    const GroundSet& ground = rep.ground();
    box.validate(ground);
    const auto m = static_cast<Eigen::Index>(ground.size());
    const ComplexMatrix& k = rep.kernel();

    switch (rep.kind()) {
        case Kind::kCarHermitian:
        case Kind::kCcrPermanental: {
            ComplexMatrix p = ComplexMatrix::Zero(m, m);
            double trace = 0.0;
            for (std::size_t i : box.members()) {
                p(i, i) = 1.0;
                trace += k(i, i).real();
            }
            const double sign = rep.kind() == Kind::kCarHermitian ? -1.0 : 1.0;
            return doubled_density(rep, p, sign, trace);
        }
        case Kind::kCarJHermitian: {
            ComplexMatrix j = ComplexMatrix::Zero(m, m);
            double trace = 0.0;
            for (std::size_t i : box.members()) {
                if (ground.part(i) == 1) {
                    j(i, i) = 1.0;
                    trace += k(i, i).real();
                } else {
                    j(i, i) = -1.0;
                    trace += 1.0 - k(i, i).real();
                }
            }
            return doubled_density(rep, j, -1.0, trace);
        }
        case Kind::kCcrPoisson: {
            const OneParticleVector chi = indicator_vector(ground, box);
            ComplexMatrix p = ComplexMatrix::Zero(m, m);
            for (std::size_t i : box.members()) {
                p(i, i) = 1.0;
            }
            return OperatorExpr::sum({{1.0, Create1{chi}},
                                      {1.0, Annihilate1{chi}},
                                      {1.0, DGamma{p}},
                                      {1.0, Const{ground.measure(box)}}});
        }
        case Kind::kCcrHafnian: {
            // rho = sum_k A+(e_k) A-(e_k) with A+(e_k) = a+(u_k) + a-(v_k),
            // u_k = (e_k, conj l2_k), v_k = (0, l1_k); normal ordering leaves
            // the constant ||v_k||^2.
            const Eigen::Index modes = rep.fock().modes();
            const Eigen::Index g = modes - m;
            TwoParticleKernel pair = TwoParticleKernel::Zero(modes, modes);
            ComplexMatrix one_body = ComplexMatrix::Zero(modes, modes);
            double constant = 0.0;
            for (std::size_t site : box.members()) {
                const auto kk = static_cast<Eigen::Index>(site);
                OneParticleVector u = OneParticleVector::Zero(modes);
                u(kk) = 1.0;
                u.tail(g) = rep.l2_scaled().row(kk).conjugate().transpose();
                OneParticleVector v = OneParticleVector::Zero(modes);
                v.tail(g) = rep.l1_scaled().row(kk).transpose();
                pair += u * v.transpose();
                one_body += u * u.adjoint() + v * v.adjoint();
                constant += v.squaredNorm();
            }
            return OperatorExpr::sum({{1.0, Create2{pair}},
                                      {1.0, Annihilate2{pair}},
                                      {1.0, DGamma{one_body}},
                                      {1.0, Const{constant}}});
        }
    }
    throw DomainError("unknown representation kind");
}

OperatorExpr field_operator(const Representation& rep, const OneParticleVector& phi,
                            FieldFlavor flavor) {
    const GroundSet& ground = rep.ground();
    const auto m = static_cast<Eigen::Index>(ground.size());
    if (phi.size() != m) {
        throw DomainError("field operator argument must have one entry per site");
    }
    const Eigen::Index modes = rep.fock().modes();
    OperatorExpr plus;
    switch (rep.kind()) {
        case Kind::kCarHermitian:
        case Kind::kCcrPermanental: {
            // A+(phi) = a2+(K2 phi) + a1-(I K1 phi)
            const OneParticleVector created = embed(rep.k2() * phi, m, modes);
            const OneParticleVector annihilated = embed((rep.k1() * phi).conjugate(), 0, modes);
            plus = OperatorExpr(Create1{created}) + OperatorExpr(Annihilate1{annihilated});
            break;
        }
        case Kind::kCarJHermitian: {
            OneParticleVector p1 = OneParticleVector::Zero(m);
            OneParticleVector p2 = OneParticleVector::Zero(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                (ground.part(i) == 1 ? p1 : p2)(i) = phi(i);
            }
            // A+(phi) = a+(I K1 I P2 phi, K2 P1 phi) + a-(I K1 P1 phi, I K2 P2 phi)
            OneParticleVector created(modes);
            created << rep.k1().conjugate() * p2, rep.k2() * p1;
            OneParticleVector annihilated(modes);
            annihilated << (rep.k1() * p1).conjugate(), (rep.k2() * p2).conjugate();
            plus = OperatorExpr(Create1{created}) + OperatorExpr(Annihilate1{annihilated});
            break;
        }
        case Kind::kCcrPoisson: {
            Complex shift{};
            for (Eigen::Index i = 0; i < m; ++i) {
                shift += phi(i) * std::sqrt(ground.weight(i));
            }
            plus = OperatorExpr(Create1{phi}) + OperatorExpr::constant(shift);
            break;
        }
        case Kind::kCcrHafnian: {
            // A+(h) = a+(h, sum_k h_k conj l2_k) + a-(0, sum_k conj(h_k) l1_k)
            const Eigen::Index g = modes - m;
            OneParticleVector created(modes);
            created << phi, rep.l2_scaled().conjugate().transpose() * phi;
            OneParticleVector annihilated = OneParticleVector::Zero(modes);
            annihilated.tail(g) = rep.l1_scaled().transpose() * phi.conjugate();
            plus = OperatorExpr(Create1{created}) + OperatorExpr(Annihilate1{annihilated});
            break;
        }
    }
    switch (flavor) {
        case FieldFlavor::kPlus:
            return plus;
        case FieldFlavor::kMinus:
            return plus.adjoint();
        case FieldFlavor::kB:
            return plus + plus.adjoint();
    }
    return plus;
}

}  // namespace fockpoint
