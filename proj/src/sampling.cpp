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

#include "fockpoint/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

#include "fockpoint/errors.hpp"

namespace fockpoint {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w * count / workers; i < (w + 1) * count / workers; ++i) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

double uniform01(CounterEngine& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int poisson_draw(CounterEngine& rng, double mean) {
    if (mean <= 0.0) {
        return 0;
    }
    return std::poisson_distribution<int>(mean)(rng);
}

// Real factor F with F F^T equal to the covariance of (Re G, Im G).
Eigen::MatrixXd gaussian_factor(const ComplexMatrix& k1, const ComplexMatrix& k2) {
    const Eigen::Index m = k1.rows();
    if (k1.cols() != m || k2.rows() != m || k2.cols() != m) {
        throw ValidationError("covariance and pseudo-covariance must be square of equal size");
    }
    const double scale = std::max(1.0, std::max(k1.cwiseAbs().maxCoeff(), k2.cwiseAbs().maxCoeff()));
    const double tol = 1e-10 * scale;
    if ((k1 - k1.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("covariance must be Hermitian");
    }
    if ((k2 - k2.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError("pseudo-covariance must be symmetric");
    }
    Eigen::MatrixXd c(2 * m, 2 * m);
    c.topLeftCorner(m, m) = 0.5 * (k1 + k2).real();
    c.bottomRightCorner(m, m) = 0.5 * (k1 - k2).real();
    c.topRightCorner(m, m) = 0.5 * (k2.imag() - k1.imag());
    c.bottomLeftCorner(m, m) = 0.5 * (k2.imag() + k1.imag());
    c = 0.5 * (c + c.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol) {
        throw ValidationError("real embedding of (covariance, pseudo-covariance) is not positive "
                              "semidefinite; smallest eigenvalue " +
                              std::to_string(eig.eigenvalues().minCoeff()));
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(c);
    Eigen::VectorXd d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd l = ldlt.matrixL();
    Eigen::MatrixXd f = l * d.asDiagonal();
    return ldlt.transpositionsP().transpose() * f;
}

Eigen::VectorXcd gaussian_draw(const Eigen::MatrixXd& factor, CounterEngine& rng) {
    const Eigen::Index m = factor.rows() / 2;
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(factor.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z(i) = normal(rng);
    }
    const Eigen::VectorXd x = factor * z;
    Eigen::VectorXcd g(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        g(i) = Complex(x(i), x(m + i));
    }
    return g;
}

std::size_t pick(const Eigen::VectorXd& weights, CounterEngine& rng) {
    const double u = uniform01(rng) * weights.sum();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        acc += weights(i);
        if (u < acc) {
            return static_cast<std::size_t>(i);
        }
    }
    Eigen::Index last = weights.size() - 1;
    while (last > 0 && weights(last) <= 0.0) {
        --last;
    }
    return static_cast<std::size_t>(last);
}

// Spectral sampler for a Hermitian kernel with spectrum in [0, 1].
class DppSampler {
  public:
    explicit DppSampler(const ComplexMatrix& m) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
        values_ = solver.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
        vectors_ = solver.eigenvectors();
    }

    Configuration draw(CounterEngine& rng) const {
        const Eigen::Index m = vectors_.rows();
        std::vector<Eigen::Index> chosen;
        for (Eigen::Index k = 0; k < values_.size(); ++k) {
            if (uniform01(rng) < values_(k)) {
                chosen.push_back(k);
            }
        }
        ComplexMatrix v(m, static_cast<Eigen::Index>(chosen.size()));
        for (std::size_t c = 0; c < chosen.size(); ++c) {
            v.col(static_cast<Eigen::Index>(c)) = vectors_.col(chosen[c]);
        }
        std::vector<int> counts(static_cast<std::size_t>(m), 0);
        while (v.cols() > 0) {
            const Eigen::VectorXd weights = v.rowwise().squaredNorm();
            const auto site = static_cast<Eigen::Index>(pick(weights, rng));
            counts[static_cast<std::size_t>(site)] = 1;
            if (v.cols() == 1) {
                break;
            }
            Eigen::Index pivot = 0;
            v.row(site).cwiseAbs().maxCoeff(&pivot);
            const Eigen::VectorXcd pivot_col = v.col(pivot);
            const Eigen::RowVectorXcd coeffs = v.row(site) / v(site, pivot);
            v -= pivot_col * coeffs;
            ComplexMatrix reduced(m, v.cols() - 1);
            for (Eigen::Index c = 0, out = 0; c < v.cols(); ++c) {
                if (c != pivot) {
                    reduced.col(out++) = v.col(c);
                }
            }
            Eigen::HouseholderQR<ComplexMatrix> qr(reduced);
            v = qr.householderQ() * ComplexMatrix::Identity(m, reduced.cols());
        }
        return Configuration(std::move(counts));
    }

  private:
    Eigen::VectorXd values_;
    ComplexMatrix vectors_;
};

ComplexMatrix scaled_rows(const GroundSet& ground, const ComplexMatrix& l) {
    ComplexMatrix out = l;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        out.row(i) *= std::sqrt(ground.weight(static_cast<std::size_t>(i)));
    }
    return out;
}

}  // namespace

CounterEngine::CounterEngine(std::uint64_t seed, std::uint64_t replica)
    : key_(splitmix64(splitmix64(seed) ^ (replica * 0xd1b54a32d192ed03ULL))) {}

CounterEngine::result_type CounterEngine::operator()() {
    return splitmix64(key_ ^ splitmix64(counter_++));
}

SampleBatch sample_point_process(const RepresentationSpec& spec, std::uint64_t seed,
                                 std::size_t count, int threads) {
    validate_spec(spec);
    const GroundSet& ground = spec.ground;
    const std::size_t m = ground.size();
    SampleBatch batch{ground, std::vector<Configuration>(count), seed, count};

    std::function<Configuration(CounterEngine&)> draw;
    switch (spec.kind) {
        case Kind::kCarHermitian: {
            auto sampler = std::make_shared<DppSampler>(*spec.kernel);
            draw = [sampler](CounterEngine& rng) { return sampler->draw(rng); };
            break;
        }
        case Kind::kCarJHermitian:
            throw DomainError("no sampler is available for car_jhermitian");
        case Kind::kCcrPoisson:
            draw = [&ground, m](CounterEngine& rng) {
                std::vector<int> counts(m);
                for (std::size_t i = 0; i < m; ++i) {
                    counts[i] = poisson_draw(rng, ground.weight(i));
                }
                return Configuration(std::move(counts));
            };
            break;
        case Kind::kCcrPermanental:
        case Kind::kCcrHafnian: {
            ComplexMatrix k1;
            ComplexMatrix k2;
            if (spec.kind == Kind::kCcrPermanental) {
                k1 = *spec.kernel;
                k2 = ComplexMatrix::Zero(k1.rows(), k1.cols());
            } else {
                const ComplexMatrix l1 = scaled_rows(ground, *spec.l1);
                const ComplexMatrix l2 = scaled_rows(ground, *spec.l2);
                k1 = l1 * l1.adjoint();
                k2 = l1 * l2.transpose();
            }
            auto factor = std::make_shared<Eigen::MatrixXd>(gaussian_factor(k1, k2));
            draw = [factor, m](CounterEngine& rng) {
                const Eigen::VectorXcd g = gaussian_draw(*factor, rng);
                std::vector<int> counts(m);
                for (std::size_t i = 0; i < m; ++i) {
                    counts[i] = poisson_draw(rng, std::norm(g(static_cast<Eigen::Index>(i))));
                }
                return Configuration(std::move(counts));
            };
            break;
        }
    }
    parallel_for(count, threads, [&](std::size_t r) {
        CounterEngine rng(seed, r);
        batch.configs[r] = draw(rng);
    });
    return batch;
}

GaussianFieldBatch sample_complex_gaussian(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                           std::uint64_t seed, std::size_t count, int threads) {
    const Eigen::MatrixXd factor = gaussian_factor(k1, k2);
    GaussianFieldBatch batch{std::vector<Eigen::VectorXcd>(count)};
    parallel_for(count, threads, [&](std::size_t r) {
        CounterEngine rng(seed, r);
        batch.fields[r] = gaussian_draw(factor, rng);
    });
    return batch;
}

double batch_means_stderr(std::span<const double> values, int batches) {
    const std::size_t n = values.size();
    const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(std::max(batches, 1)), n);
    if (b < 2) {
        return 0.0;
    }
    std::vector<double> means(b);
    for (std::size_t k = 0; k < b; ++k) {
        const std::size_t lo = k * n / b;
        const std::size_t hi = (k + 1) * n / b;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            s += values[i];
        }
        means[k] = s / static_cast<double>(hi - lo);
    }
    double mean = 0.0;
    for (double x : means) {
        mean += x;
    }
    mean /= static_cast<double>(b);
    double var = 0.0;
    for (double x : means) {
        var += (x - mean) * (x - mean);
    }
    var /= static_cast<double>(b - 1);
    return std::sqrt(var / static_cast<double>(b));
}

Estimate estimate_correlations(const SampleBatch& batch, std::span<const Box> boxes, int n) {
    if (n < 1) {
        throw DomainError("estimate_correlations needs n >= 1");
    }
    if (boxes.size() != static_cast<std::size_t>(n)) {
        throw DomainError("estimate_correlations needs exactly n boxes");
    }
    if (batch.configs.empty()) {
        throw DomainError("sample batch is empty");
    }
    for (const Box& b : boxes) {
        b.validate(batch.ground);
    }
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) {
        nfact *= k;
    }
    std::vector<double> values(batch.configs.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        values[r] = static_cast<double>(falling_factorial_measure(batch.configs[r], boxes)) / nfact;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    return {mean, batch_means_stderr(values)};
}

}  // namespace fockpoint
