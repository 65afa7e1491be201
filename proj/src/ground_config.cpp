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

#include "fockpoint/ground_config.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fockpoint/errors.hpp"

namespace fockpoint {

GroundSet::GroundSet(std::vector<double> weights, std::vector<int> part_labels)
    : weights_(std::move(weights)), parts_(std::move(part_labels)) {
    if (weights_.empty()) {
        throw DomainError("ground set needs at least one site");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0)) {
            throw DomainError("site weight must be positive (site " + std::to_string(i) + ")");
        }
    }
    if (!parts_.empty()) {
        if (parts_.size() != weights_.size()) {
            throw DomainError("part labels must cover every site");
        }
        for (int p : parts_) {
            if (p != 1 && p != 2) {
                throw DomainError("part labels must be 1 or 2");
            }
        }
    }
}

double GroundSet::measure(const Box& box) const {
    double total = 0.0;
    for (std::size_t s : box.members()) {
        total += weight(s);
    }
    return total;
}

Box::Box(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Box Box::all(std::size_t site_count) {
    std::vector<std::size_t> m(site_count);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Box(std::move(m));
}

bool Box::contains(std::size_t site) const {
    return std::binary_search(members_.begin(), members_.end(), site);
}

Box Box::intersect(const Box& other) const {
    std::vector<std::size_t> out;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::back_inserter(out));
    return Box(std::move(out));
}

Box Box::restrict_to_part(const GroundSet& ground, int label) const {
    std::vector<std::size_t> out;
    for (std::size_t s : members_) {
        if (ground.part(s) == label) {
            out.push_back(s);
        }
    }
    return Box(std::move(out));
}

void Box::validate(const GroundSet& ground) const {
    if (!members_.empty() && members_.back() >= ground.size()) {
        throw DomainError("box member " + std::to_string(members_.back()) +
                          " is not a site of a ground set of size " +
                          std::to_string(ground.size()));
    }
}

Configuration::Configuration(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) {
            throw DomainError("occupation counts must be non-negative");
        }
    }
}

Configuration Configuration::empty(std::size_t site_count) {
    return Configuration(std::vector<int>(site_count, 0));
}

Configuration Configuration::from_sites(std::size_t site_count,
                                        std::span<const std::size_t> sites) {
    std::vector<int> counts(site_count, 0);
    for (std::size_t s : sites) {
        if (s >= site_count) {
            throw DomainError("site index out of range");
        }
        ++counts[s];
    }
    return Configuration(std::move(counts));
}

int Configuration::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

bool Configuration::simple() const {
    return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c <= 1; });
}

int Configuration::in_box(const Box& box) const {
    int n = 0;
    for (std::size_t s : box.members()) {
        n += count(s);
    }
    return n;
}

bool Configuration::is_sub_of(const Configuration& other) const {
    if (other.size() != size()) {
        throw DomainError("configurations live on different ground sets");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > other.counts_[i]) {
            return false;
        }
    }
    return true;
}

Configuration Configuration::join(const Configuration& other) const {
    if (other.size() != size()) {
        throw DomainError("configurations live on different ground sets");
    }
    std::vector<int> out(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        out[i] = std::max(counts_[i], other.counts_[i]);
    }
    return Configuration(std::move(out));
}

void ConfigFunction::check(const Configuration& eta) const {
    if (eta.size() != ground_.size()) {
        throw DomainError("configuration has " + std::to_string(eta.size()) +
                          " sites, ground set has " + std::to_string(ground_.size()));
    }
}

void ConfigFunction::set(const Configuration& eta, Complex value) {
    check(eta);
    values_[eta] = value;
}

void ConfigFunction::add(const Configuration& eta, Complex value) {
    check(eta);
    values_[eta] += value;
}

Complex ConfigFunction::operator()(const Configuration& eta) const {
    check(eta);
    auto it = values_.find(eta);
    return it == values_.end() ? Complex{} : it->second;
}

int ConfigFunction::max_total() const {
    int n = 0;
    for (const auto& [eta, value] : values_) {
        n = std::max(n, eta.total());
    }
    return n;
}

ConfigFunction ConfigFunction::conj() const {
    ConfigFunction out(ground_);
    for (const auto& [eta, value] : values_) {
        out.values_.emplace(eta, std::conj(value));
    }
    return out;
}

Complex k_transform(const ConfigFunction& g, const Configuration& gamma) {
    if (gamma.size() != g.ground().size()) {
        throw DomainError("K-transform: configuration and function use different ground sets");
    }
    Complex sum{};
    for (const auto& [eta, value] : g.entries()) {
        if (eta.is_sub_of(gamma)) {
            sum += value;
        }
    }
    return sum;
}

ConfigFunction star_convolve(const ConfigFunction& g1, const ConfigFunction& g2, int max_total) {
    if (!(g1.ground() == g2.ground())) {
        throw DomainError("star convolution of functions on different ground sets");
    }
    if (max_total < 0) {
        throw DomainError("max_total must be non-negative");
    }
    ConfigFunction out(g1.ground());
    for (const auto& [eta1, v1] : g1.entries()) {
        for (const auto& [eta2, v2] : g2.entries()) {
            Configuration eta = eta1.join(eta2);
            if (eta.total() <= max_total) {
                out.add(eta, v1 * v2);
            }
        }
    }
    return out;
}

namespace {

std::int64_t falling_factorial_rec(const Configuration& gamma, std::vector<Box>& boxes,
                                   std::size_t n) {
    if (n == 1) {
        return gamma.in_box(boxes[0]);
    }
    const Box last = boxes[n - 1];
    std::int64_t value = gamma.in_box(last) * falling_factorial_rec(gamma, boxes, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Box saved = boxes[i];
        boxes[i] = saved.intersect(last);
        value -= falling_factorial_rec(gamma, boxes, n - 1);
        boxes[i] = std::move(saved);
    }
    return value;
}

}  // namespace

std::int64_t falling_factorial_measure(const Configuration& gamma, std::span<const Box> boxes) {
    if (boxes.empty()) {
        throw DomainError("falling factorial needs n >= 1 boxes");
    }
    if (static_cast<int>(boxes.size()) > gamma.total()) {
        return 0;
    }
    std::vector<Box> work(boxes.begin(), boxes.end());
    return falling_factorial_rec(gamma, work, work.size());
}

StarGram star_pd_gram(const ConfigFunction& theta, std::span<const ConfigFunction> basis) {
    if (basis.empty()) {
        throw DomainError("star_pd_gram needs a non-empty basis");
    }
    for (const auto& [eta, value] : theta.entries()) {
        if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
            throw DomainError("theta must be real valued");
        }
    }
    const int max_total = theta.max_total();
    const auto n = static_cast<Eigen::Index>(basis.size());
    StarGram result;
    result.gram = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            ConfigFunction h = star_convolve(basis[a], basis[b].conj(), max_total);
            Complex sum{};
            for (const auto& [eta, value] : h.entries()) {
                sum += value * theta(eta);
            }
            result.gram(a, b) = sum;
        }
    }
    Eigen::MatrixXcd herm = 0.5 * (result.gram + result.gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    result.min_eigenvalue = solver.eigenvalues().minCoeff();
    return result;
}

}  // namespace fockpoint
