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

#include "fockpoint/moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include "fockpoint/errors.hpp"
#include "fockpoint/matrix_functions.hpp"

namespace fockpoint {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

void for_each_tuple(std::span<const Box> boxes,
                    const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> tuple(boxes.size());
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == boxes.size()) {
            visit(tuple);
            return;
        }
        for (std::size_t site : boxes[depth].members()) {
            tuple[depth] = site;
            rec(depth + 1);
        }
    };
    rec(0);
}

ComplexMatrix submatrix(const ComplexMatrix& k, const std::vector<std::size_t>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix out(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            out(a, b) = k(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
        }
    }
    return out;
}

// tau(A+(phi_p) ... A+(phi_1) A-(psi_1) ... A-(psi_q)).
Complex ordered_moment(const Representation& rep, std::span<const OneParticleVector> phis,
                       std::span<const OneParticleVector> psis) {
    std::vector<OperatorExpr> factors;
    for (auto it = phis.rbegin(); it != phis.rend(); ++it) {
        factors.push_back(field_operator(rep, *it, FieldFlavor::kPlus));
    }
    for (const auto& psi : psis) {
        factors.push_back(field_operator(rep, psi, FieldFlavor::kMinus));
    }
    return vacuum_moment(rep, OperatorExpr::product(std::move(factors)));
}

Complex inner(const OneParticleVector& a, const OneParticleVector& b) {
    return (a.array() * b.array().conjugate()).sum();
}

}  // namespace

Check make_check(std::string name, Complex lhs, Complex rhs, Tolerance tol) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_err = std::abs(lhs - rhs);
    c.rel_err = std::abs(rhs) > 0.0 ? c.abs_err / std::abs(rhs) : (c.abs_err == 0.0 ? 0.0 : INFINITY);
    c.pass = c.abs_err <= tol.atol || c.rel_err <= tol.rtol;
    return c;
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

OperatorExpr wick_polynomial(const Representation& rep, std::span<const Box> boxes) {
    if (boxes.empty()) {
        throw DomainError("wick_polynomial needs at least one box");
    }
    if (boxes.size() == 1) {
        return particle_density(rep, boxes[0]);
    }
    const Box& last = boxes.back();
    const std::span<const Box> head = boxes.first(boxes.size() - 1);
    OperatorExpr result = particle_density(rep, last) * wick_polynomial(rep, head);
    for (std::size_t i = 0; i < head.size(); ++i) {
        std::vector<Box> merged(head.begin(), head.end());
        merged[i] = merged[i].intersect(last);
        if (merged[i].empty()) {
            continue;
        }
        result = result - wick_polynomial(rep, merged);
    }
    return result;
}

int required_cap(const OperatorExpr& expr) { return std::max(expr.raise(), 0); }

int moment_cap(Kind kind, int order) {
    return std::max(1, kind == Kind::kCcrPoisson ? order : 2 * order);
}

Complex vacuum_moment(const Representation& rep, const OperatorExpr& expr) {
    const FockSpace& fock = rep.fock();
    if (fock.statistics() == Statistics::kSymmetric) {
        const int need = required_cap(expr);
        if (fock.cap() < need) {
            throw CapacityError("symmetric Fock cap " + std::to_string(fock.cap()) +
                                " is too small; required cap is " + std::to_string(need));
        }
    }
    return expr.apply(fock, fock.vacuum())(0);
}

double correlation_measure(const Representation& rep, std::span<const Box> boxes) {
    const Complex tau = vacuum_moment(rep, wick_polynomial(rep, boxes));
    if (std::abs(tau.imag()) > 1e-10 * std::max(1.0, std::abs(tau.real()))) {
        throw NumericalError("correlation measure has imaginary part " +
                             std::to_string(tau.imag()));
    }
    return tau.real() / factorial(static_cast<int>(boxes.size()));
}

namespace {

ComplexMatrix jhermitian_kernel(const GroundSet& ground, const ComplexMatrix& m) {
    ComplexMatrix out = m;
    const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (ground.part(static_cast<std::size_t>(j)) == 2) {
            out.col(j) = id.col(j) - m.col(j);
        }
    }
    return out;
}

// k1, k2 are the hafnian covariance and pseudo-covariance; m the operator matrix.
double prediction(Kind kind, const GroundSet& ground, const ComplexMatrix& m, const ComplexMatrix& k1,
                  const ComplexMatrix& k2, std::span<const Box> boxes) {
    for (const Box& b : boxes) {
        b.validate(ground);
    }
    Complex total{};
    switch (kind) {
        case Kind::kCcrPoisson: {
            double prod = 1.0;
            for (const Box& b : boxes) {
                prod *= ground.measure(b);
            }
            return prod;
        }
        case Kind::kCarHermitian:
        case Kind::kCarJHermitian: {
            const ComplexMatrix k = kind == Kind::kCarJHermitian ? jhermitian_kernel(ground, m) : m;
            for_each_tuple(boxes, [&](const std::vector<std::size_t>& t) {
                total += submatrix(k, t).determinant();
            });
            break;
        }
        case Kind::kCcrPermanental:
            for_each_tuple(boxes, [&](const std::vector<std::size_t>& t) {
                total += permanent(submatrix(m, t));
            });
            break;
        case Kind::kCcrHafnian:
            for_each_tuple(boxes, [&](const std::vector<std::size_t>& t) {
                total += hafnian(hafnian_block_matrix(k1, k2, t));
            });
            break;
    }
    return total.real();
}

}  // namespace

ComplexMatrix correlation_kernel(const Representation& rep) {
    if (rep.kind() != Kind::kCarJHermitian) {
        return rep.kernel();
    }
    return jhermitian_kernel(rep.ground(), rep.kernel());
}

double kernel_prediction(const Representation& rep, std::span<const Box> boxes) {
    if (rep.kind() == Kind::kCcrHafnian) {
        return prediction(rep.kind(), rep.ground(), rep.kernel(), rep.covariance(), rep.pseudo_covariance(),
                          boxes);
    }
    return prediction(rep.kind(), rep.ground(), rep.kernel(), rep.kernel(), rep.kernel(), boxes);
}

double kernel_prediction(const RepresentationSpec& spec, std::span<const Box> boxes) {
    validate_spec(spec);
    const auto m = static_cast<Eigen::Index>(spec.ground.size());
    if (spec.kind == Kind::kCcrPoisson) {
        const ComplexMatrix zero = ComplexMatrix::Zero(m, m);
        return prediction(spec.kind, spec.ground, zero, zero, zero, boxes);
    }
    if (spec.kind == Kind::kCcrHafnian) {
        Eigen::VectorXd root(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            root(i) = std::sqrt(spec.ground.weight(static_cast<std::size_t>(i)));
        }
        const ComplexMatrix l1 = root.asDiagonal() * *spec.l1;
        const ComplexMatrix l2 = root.asDiagonal() * *spec.l2;
        return prediction(spec.kind, spec.ground, ComplexMatrix::Zero(m, m), l1 * l1.adjoint(),
                          l1 * l2.transpose(), boxes);
    }
    return prediction(spec.kind, spec.ground, *spec.kernel, *spec.kernel, *spec.kernel, boxes);
}

Report gauge_quasifree_checks(const Representation& rep_in, int order,
                              std::span<const OneParticleVector> trials) {
    if (order < 1 || order > 6) {
        throw DomainError("gauge_quasifree_checks supports orders 1..6");
    }
    if (trials.size() < static_cast<std::size_t>(order)) {
        throw DomainError("need at least " + std::to_string(order) + " trial vectors");
    }
    const Representation rep = rep_in.fock().statistics() == Statistics::kSymmetric &&
                                       rep_in.fock().cap() < order
                                   ? rep_in.with_cap(order)
                                   : rep_in;
    const bool car = is_car(rep.kind());
    const Tolerance odd_tol{0.0, 1e-10};
    const Tolerance even_tol{0.0, 1e-9};
    Report report;

    std::vector<OperatorExpr> fields;
    for (int i = 0; i < order; ++i) {
        OperatorExpr b = field_operator(rep, trials[i], FieldFlavor::kB);
        if (rep.kind() == Kind::kCcrPoisson) {
            b = b - OperatorExpr::constant(vacuum_moment(rep, b));
        }
        fields.push_back(b);
    }
    auto moment_of = [&](const std::vector<int>& idx) {
        std::vector<OperatorExpr> factors;
        for (int i : idx) {
            factors.push_back(fields[i]);
        }
        return vacuum_moment(rep, OperatorExpr::product(std::move(factors)));
    };

    ComplexMatrix t2 = ComplexMatrix::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        for (int j = i + 1; j < order; ++j) {
            t2(i, j) = moment_of({i, j});
        }
    }

    for (int n = 1; n <= order; ++n) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        const Complex t = moment_of(idx);
        const std::string name = "T" + std::to_string(n);
        if (n % 2 == 1) {
            report.add(make_check(name + "_vanishes", t, 0.0, odd_tol));
        } else if (n >= 4) {
            Complex sum{};
            for (const PairPartition& nu : pair_partitions(n)) {
                Complex term = (car && nu.crossings % 2 == 1) ? -1.0 : 1.0;
                for (const auto& [a, b] : nu.pairs) {
                    term *= t2(a - 1, b - 1);
                }
                sum += term;
            }
            report.add(make_check(name + "_pair_partitions", t, sum, even_tol));
        }
    }

    const bool real_kernel = rep.kernel().imag().cwiseAbs().maxCoeff() == 0.0;
    if (rep.kind() == Kind::kCarJHermitian && order >= 2 && real_kernel) {
        // Real K only: T2(phi, psi) = 2i Im(K Jphi, Jpsi) + (Jpsi, Jphi), Jphi = P1 phi + P2 conj phi.
        const auto jmap = [&](const OneParticleVector& v) {
            OneParticleVector out = v;
            for (Eigen::Index s = 0; s < v.size(); ++s) {
                if (rep.ground().part(static_cast<std::size_t>(s)) == 2) {
                    out(s) = std::conj(v(s));
                }
            }
            return out;
        };
        for (int i = 0; i < order; ++i) {
            for (int j = i + 1; j < order; ++j) {
                const OneParticleVector a = jmap(trials[i]);
                const OneParticleVector b = jmap(trials[j]);
                const Complex formula =
                    Complex(0.0, 2.0 * inner(rep.kernel() * a, b).imag()) + inner(b, a);
                report.add(make_check("T2_jformula_" + std::to_string(i) + std::to_string(j),
                                      t2(i, j), formula, even_tol));
            }
        }
    }

    const bool gauge_invariant =
        rep.kind() == Kind::kCarHermitian || rep.kind() == Kind::kCcrPermanental;
    const bool gauge_broken =
        rep.kind() == Kind::kCarJHermitian || rep.kind() == Kind::kCcrHafnian;
    double max_violation = 0.0;
    for (int p = 0; p <= order; ++p) {
        for (int q = 0; p + q <= order; ++q) {
            if (p + q == 0) {
                continue;
            }
            const auto phis = trials.first(static_cast<std::size_t>(p));
            const auto psis = trials.subspan(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
            if (gauge_invariant) {
                const Complex s = ordered_moment(rep, phis, psis);
                Complex expected{};
                if (p == q) {
                    ComplexMatrix g(p, p);
                    for (int i = 0; i < p; ++i) {
                        for (int j = 0; j < p; ++j) {
                            g(i, j) = inner(rep.kernel() * phis[i], psis[j]);
                        }
                    }
                    expected = car ? g.determinant() : permanent(g);
                }
                report.add(make_check("S" + std::to_string(p) + std::to_string(q) + "_gauge", s,
                                      expected, even_tol));
            } else if (gauge_broken && p != q && (p + q) % 2 == 0) {
                max_violation = std::max(max_violation, std::abs(ordered_moment(rep, phis, psis)));
            }
        }
    }
    if (gauge_broken && order >= 2) {
        Check c;
        c.name = "gauge_violation_detected";
        c.lhs = max_violation;
        c.rhs = 1e-6;
        c.abs_err = max_violation;
        c.rel_err = max_violation / 1e-6;
        c.pass = max_violation > 1e-6;
        report.add(c);
    }
    return report;
}

SpectralLaw joint_spectral_law(const Representation& rep) {
    if (!is_car(rep.kind())) {
        throw DomainError("joint_spectral_law needs a CAR representation");
    }
    const std::size_t m = rep.sites();
    if (m > static_cast<std::size_t>(kMaxSpectralSites)) {
        throw CapacityError("joint_spectral_law supports at most 4 sites");
    }
    std::vector<ComplexMatrix> rho;
    for (std::size_t i = 0; i < m; ++i) {
        rho.push_back(to_matrix(rep.fock(), particle_density(rep, Box::single(i))));
    }
    SpectralLaw law;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            law.max_commutator =
                std::max(law.max_commutator, (rho[i] * rho[j] - rho[j] * rho[i]).norm());
        }
    }
    ComplexMatrix r = ComplexMatrix::Zero(rho[0].rows(), rho[0].cols());
    for (std::size_t i = 0; i < m; ++i) {
        const double frac = std::fmod(static_cast<double>(i) * std::sqrt(2.0), 1.0);
        r += (1.0 + frac) * rho[i];
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (r + r.adjoint()));
    const ComplexMatrix& vecs = solver.eigenvectors();
    for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        const auto v = vecs.col(k);
        std::vector<std::size_t> pattern;
        for (std::size_t i = 0; i < m; ++i) {
            const double value = v.dot(rho[i] * v).real();
            const double bit = std::round(value);
            const double dev = std::abs(value - bit);
            law.max_pattern_deviation = std::max(law.max_pattern_deviation, dev);
            if (dev > kSpectralPatternTol || (bit != 0.0 && bit != 1.0)) {
                law.structural_ok = false;
                law.failure = "site " + std::to_string(i) + " takes value " +
                              std::to_string(value) + " on an eigenvector";
            }
            if (bit == 1.0) {
                pattern.push_back(i);
            }
        }
        law.probabilities[pattern] += std::norm(v(0));
    }
    // Eigenvalue clusters of R must carry a single pattern each.
    const Eigen::VectorXd& evals = solver.eigenvalues();
    for (Eigen::Index k = 1; k < evals.size(); ++k) {
        if (evals(k) - evals(k - 1) > kSpectralClusterTol) {
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double a = vecs.col(k).dot(rho[i] * vecs.col(k)).real();
            const double b = vecs.col(k - 1).dot(rho[i] * vecs.col(k - 1)).real();
            if (std::abs(a - b) > kSpectralPatternTol) {
                law.structural_ok = false;
                law.failure = "eigenvalue cluster mixes occupation patterns";
            }
        }
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1U) {
                s.push_back(i);
            }
        }
        law.probabilities.try_emplace(s, 0.0);
    }
    return law;
}

std::map<std::vector<std::size_t>, double> inclusion_exclusion_law(const ComplexMatrix& kernel) {
    const auto m = static_cast<std::size_t>(kernel.rows());
    if (m > 16) {
        throw CapacityError("inclusion_exclusion_law supports at most 16 sites");
    }
    const std::size_t full = std::size_t{1} << m;
    std::vector<double> minors(full);
    for (std::size_t mask = 0; mask < full; ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1U) {
                idx.push_back(i);
            }
        }
        minors[mask] = idx.empty() ? 1.0 : submatrix(kernel, idx).determinant().real();
    }
    std::map<std::vector<std::size_t>, double> law;
    for (std::size_t s = 0; s < full; ++s) {
        double p = 0.0;
        for (std::size_t t = s;; t = (t + 1) | s) {
            const int extra = std::popcount(t & ~s);
            p += (extra % 2 == 0 ? 1.0 : -1.0) * minors[t];
            if (t == full - 1) {
                break;
            }
        }
        std::vector<std::size_t> key;
        for (std::size_t i = 0; i < m; ++i) {
            if (s >> i & 1U) {
                key.push_back(i);
            }
        }
        law[key] = p;
    }
    return law;
}

double spectral_marginal(const SpectralLaw& law, std::span<const Box> boxes) {
    double total = 0.0;
    for (const auto& [sites, p] : law.probabilities) {
        if (p == 0.0) {
            continue;
        }
        std::size_t count = 0;
        std::vector<std::size_t> chosen;
        std::function<void(std::size_t)> rec = [&](std::size_t depth) {
            if (depth == boxes.size()) {
                ++count;
                return;
            }
            for (std::size_t s : sites) {
                if (boxes[depth].contains(s) &&
                    std::find(chosen.begin(), chosen.end(), s) == chosen.end()) {
                    chosen.push_back(s);
                    rec(depth + 1);
                    chosen.pop_back();
                }
            }
        };
        rec(0);
        total += p * static_cast<double>(count);
    }
    return total;
}

}  // namespace fockpoint
