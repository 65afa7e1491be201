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

#include "fockpoint/fock.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "fockpoint/errors.hpp"

namespace fockpoint {

namespace {

constexpr int kBitsPerMode = 4;
constexpr std::uint64_t kModeMask = (1u << kBitsPerMode) - 1;

void require_dimension(const FockSpace& space, const FockVector& v) {
    if (static_cast<std::size_t>(v.size()) != space.dimension()) {
        throw DomainError("Fock vector length " + std::to_string(v.size()) +
                          " does not match space dimension " + std::to_string(space.dimension()));
    }
}

void require_modes(const FockSpace& space, Eigen::Index n, const char* what) {
    if (n != space.modes()) {
        throw DomainError(std::string(what) + ": expected " + std::to_string(space.modes()) +
                          " modes, got " + std::to_string(n));
    }
}

void enumerate_symmetric(int modes, int mode, int remaining, std::uint64_t key,
                         std::vector<std::uint64_t>& out) {
    if (mode == modes - 1) {
        out.push_back(key | (static_cast<std::uint64_t>(remaining) << (kBitsPerMode * mode)));
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        enumerate_symmetric(modes, mode + 1, remaining - k,
                            key | (static_cast<std::uint64_t>(k) << (kBitsPerMode * mode)), out);
    }
}

}  // namespace

FockSpace::FockSpace(Statistics stats, int modes, int cap) : stats_(stats), modes_(modes), cap_(cap) {}

FockSpace FockSpace::antisymmetric(int modes) {
    if (modes < 1 || modes > 20) {
        throw CapacityError("antisymmetric Fock space supports 1..20 modes, got " +
                            std::to_string(modes));
    }
    FockSpace space(Statistics::kAntisymmetric, modes, modes);
    const std::size_t dim = std::size_t{1} << modes;
    space.keys_.resize(dim);
    space.degree_.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        space.keys_[k] = k;
        space.degree_[k] = std::popcount(k);
    }
    return space;
}

FockSpace FockSpace::symmetric(int modes, int cap) {
    if (modes < 1 || modes > 64 / kBitsPerMode) {
        throw CapacityError("symmetric Fock space supports 1..16 modes, got " +
                            std::to_string(modes));
    }
    if (cap < 0 || cap > static_cast<int>(kModeMask)) {
        throw CapacityError("symmetric Fock space cap must lie in 0..15, got " +
                            std::to_string(cap));
    }
    FockSpace space(Statistics::kSymmetric, modes, cap);
    for (int deg = 0; deg <= cap; ++deg) {
        enumerate_symmetric(modes, 0, deg, 0, space.keys_);
        space.degree_.resize(space.keys_.size(), deg);
    }
    space.index_.reserve(space.keys_.size());
    for (std::size_t i = 0; i < space.keys_.size(); ++i) {
        space.index_.emplace(space.keys_[i], i);
    }
    return space;
}

int FockSpace::occupation(std::size_t index, int mode) const {
    const std::uint64_t key = keys_[index];
    if (stats_ == Statistics::kAntisymmetric) {
        return static_cast<int>((key >> mode) & 1u);
    }
    return static_cast<int>((key >> (kBitsPerMode * mode)) & kModeMask);
}

FockVector FockSpace::vacuum() const {
    FockVector v = FockVector::Zero(static_cast<Eigen::Index>(dimension()));
    v(0) = 1.0;
    return v;
}

std::optional<std::size_t> FockSpace::lookup(std::uint64_t key) const {
    auto it = index_.find(key);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<FockSpace::Step> FockSpace::create(std::size_t index, int mode) const {
    const std::uint64_t key = keys_[index];
    if (stats_ == Statistics::kAntisymmetric) {
        const std::uint64_t bit = std::uint64_t{1} << mode;
        if (key & bit) {
            return std::nullopt;
        }
        const int below = std::popcount(key & (bit - 1));
        return Step{static_cast<std::size_t>(key | bit), (below % 2) ? -1.0 : 1.0};
    }
    if (degree_[index] + 1 > cap_) {
        return std::nullopt;
    }
    const int n = occupation(index, mode);
    const std::uint64_t next = key + (std::uint64_t{1} << (kBitsPerMode * mode));
    auto target = lookup(next);
    if (!target) {
        return std::nullopt;
    }
    return Step{*target, std::sqrt(static_cast<double>(n + 1))};
}

std::optional<FockSpace::Step> FockSpace::annihilate(std::size_t index, int mode) const {
    const std::uint64_t key = keys_[index];
    if (stats_ == Statistics::kAntisymmetric) {
        const std::uint64_t bit = std::uint64_t{1} << mode;
        if (!(key & bit)) {
            return std::nullopt;
        }
        const int below = std::popcount(key & (bit - 1));
        return Step{static_cast<std::size_t>(key & ~bit), (below % 2) ? -1.0 : 1.0};
    }
    const int n = occupation(index, mode);
    if (n == 0) {
        return std::nullopt;
    }
    const std::uint64_t next = key - (std::uint64_t{1} << (kBitsPerMode * mode));
    return Step{*lookup(next), std::sqrt(static_cast<double>(n))};
}

FockVector apply_mode(const FockSpace& space, int mode, Ladder direction, const FockVector& v) {
    require_dimension(space, v);
    if (mode < 0 || mode >= space.modes()) {
        throw DomainError("mode index out of range");
    }
    FockVector out = FockVector::Zero(v.size());
    for (std::size_t s = 0; s < space.dimension(); ++s) {
        if (v(s) == 0.0) {
            continue;
        }
        auto step = direction == Ladder::kCreate ? space.create(s, mode) : space.annihilate(s, mode);
        if (step) {
            out(step->index) += step->factor * v(s);
        }
    }
    return out;
}

FockVector apply_ladder(const FockSpace& space, const OneParticleVector& phi, Ladder direction,
                        const FockVector& v) {
    require_dimension(space, v);
    require_modes(space, phi.size(), "one-particle vector");
    FockVector out = FockVector::Zero(v.size());
    for (std::size_t s = 0; s < space.dimension(); ++s) {
        const Complex amp = v(s);
        if (amp == 0.0) {
            continue;
        }
        for (int i = 0; i < space.modes(); ++i) {
            if (phi(i) == 0.0) {
                continue;
            }
            if (direction == Ladder::kCreate) {
                if (auto step = space.create(s, i)) {
                    out(step->index) += phi(i) * step->factor * amp;
                }
            } else if (auto step = space.annihilate(s, i)) {
                out(step->index) += std::conj(phi(i)) * step->factor * amp;
            }
        }
    }
    return out;
}

FockVector apply_ladder(const FockSpace& space, const TwoParticleKernel& c, Ladder direction,
                        const FockVector& v) {
    require_dimension(space, v);
    if (c.rows() != space.modes() || c.cols() != space.modes()) {
        throw DomainError("two-particle kernel must be modes x modes");
    }
    const int d = space.modes();
    FockVector out = FockVector::Zero(v.size());
    for (std::size_t s = 0; s < space.dimension(); ++s) {
        const Complex amp = v(s);
        if (amp == 0.0) {
            continue;
        }
        if (direction == Ladder::kCreate) {
            // a+(e_i) a+(e_j): a+(e_j) acts first.
            for (int j = 0; j < d; ++j) {
                auto first = space.create(s, j);
                if (!first) {
                    continue;
                }
                for (int i = 0; i < d; ++i) {
                    if (c(i, j) == 0.0) {
                        continue;
                    }
                    if (auto second = space.create(first->index, i)) {
                        out(second->index) += c(i, j) * first->factor * second->factor * amp;
                    }
                }
            }
        } else {
            // a-(e_j) a-(e_i): a-(e_i) acts first.
            for (int i = 0; i < d; ++i) {
                auto first = space.annihilate(s, i);
                if (!first) {
                    continue;
                }
                for (int j = 0; j < d; ++j) {
                    if (c(i, j) == 0.0) {
                        continue;
                    }
                    if (auto second = space.annihilate(first->index, j)) {
                        out(second->index) +=
                            std::conj(c(i, j)) * first->factor * second->factor * amp;
                    }
                }
            }
        }
    }
    return out;
}

FockVector apply_dgamma(const FockSpace& space, const ComplexMatrix& a, const FockVector& v) {
    require_dimension(space, v);
    if (a.rows() != space.modes() || a.cols() != space.modes()) {
        throw DomainError("dGamma argument must be modes x modes");
    }
    const int d = space.modes();
    FockVector out = FockVector::Zero(v.size());
    for (std::size_t s = 0; s < space.dimension(); ++s) {
        const Complex amp = v(s);
        if (amp == 0.0) {
            continue;
        }
        for (int j = 0; j < d; ++j) {
            auto first = space.annihilate(s, j);
            if (!first) {
                continue;
            }
            for (int i = 0; i < d; ++i) {
                if (a(i, j) == 0.0) {
                    continue;
                }
                if (auto second = space.create(first->index, i)) {
                    out(second->index) += a(i, j) * first->factor * second->factor * amp;
                }
            }
        }
    }
    return out;
}

}  // namespace fockpoint
