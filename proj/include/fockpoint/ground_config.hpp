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
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fockpoint {

using Complex = std::complex<double>;

class Box;

/// Finite weighted ground space: sites 0..m-1 with positive weights, and an
/// optional two-part split (labels 1 and 2).
class GroundSet {
  public:
    explicit GroundSet(std::vector<double> weights, std::vector<int> part_labels = {});

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t site) const { return weights_.at(site); }
    const std::vector<double>& weights() const { return weights_; }

    bool has_parts() const { return !parts_.empty(); }
    int part(std::size_t site) const { return parts_.at(site); }
    const std::vector<int>& part_labels() const { return parts_; }

    /// sigma(box)
    double measure(const Box& box) const;

    bool operator==(const GroundSet&) const = default;

  private:
    std::vector<double> weights_;
    std::vector<int> parts_;
};

/// A subset of sites. Members are kept sorted and unique.
class Box {
  public:
    Box() = default;
    explicit Box(std::vector<std::size_t> members);

    static Box all(std::size_t site_count);
    static Box single(std::size_t site) { return Box({site}); }

    const std::vector<std::size_t>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    bool contains(std::size_t site) const;
    Box intersect(const Box& other) const;
    /// Members restricted to sites carrying the given part label.
    Box restrict_to_part(const GroundSet& ground, int label) const;

    /// Throws DomainError if a member is not a site of `ground`.
    void validate(const GroundSet& ground) const;

    bool operator==(const Box&) const = default;

  private:
    std::vector<std::size_t> members_;
};

/// Occupation counts per site. Multiplicities are allowed.
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(std::vector<int> counts);

    static Configuration empty(std::size_t site_count);
    static Configuration from_sites(std::size_t site_count, std::span<const std::size_t> sites);

    std::size_t size() const { return counts_.size(); }
    int count(std::size_t site) const { return counts_.at(site); }
    const std::vector<int>& counts() const { return counts_; }
    int total() const;
    bool simple() const;
    /// gamma(box)
    int in_box(const Box& box) const;

    /// Sitewise counts(this) <= counts(other).
    bool is_sub_of(const Configuration& other) const;
    /// Sitewise maximum of counts.
    Configuration join(const Configuration& other) const;

    auto operator<=>(const Configuration&) const = default;

  private:
    std::vector<int> counts_;
};

/// Finitely supported complex function on finite configurations.
class ConfigFunction {
  public:
    explicit ConfigFunction(GroundSet ground) : ground_(std::move(ground)) {}

    const GroundSet& ground() const { return ground_; }

    void set(const Configuration& eta, Complex value);
    void add(const Configuration& eta, Complex value);
    /// Unlisted configurations evaluate to 0.
    Complex operator()(const Configuration& eta) const;

    const std::map<Configuration, Complex>& entries() const { return values_; }
    int max_total() const;
    ConfigFunction conj() const;

  private:
    void check(const Configuration& eta) const;

    GroundSet ground_;
    std::map<Configuration, Complex> values_;
};

/// (KG)(gamma) = sum of G(eta) over eta with counts(eta) <= counts(gamma).
Complex k_transform(const ConfigFunction& g, const Configuration& gamma);

/// Convolution intertwined with pointwise products by the K-transform:
/// H(eta) = sum of G1(eta1) G2(eta2) over pairs whose sitewise maximum is eta,
/// kept for total(eta) <= max_total.
ConfigFunction star_convolve(const ConfigFunction& g1, const ConfigFunction& g2, int max_total);

/// (gamma)_n(box_1 x ... x box_n), n = boxes.size(), by the falling-factorial
/// recurrence. Multiplicities count as distinct point instances.
std::int64_t falling_factorial_measure(const Configuration& gamma, std::span<const Box> boxes);

struct StarGram {
    Eigen::MatrixXcd gram;
    double min_eigenvalue = 0.0;
};

/// Gram matrix [sum_eta (G_a * conj G_b)(eta) theta(eta)]_{a,b} and its
/// smallest eigenvalue. theta must be real valued.
StarGram star_pd_gram(const ConfigFunction& theta, std::span<const ConfigFunction> basis);

}  // namespace fockpoint
