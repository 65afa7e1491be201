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

#include "fockpoint/operator_expr.hpp"

#include <algorithm>

namespace fockpoint {

struct SumNode {
    std::vector<std::pair<Complex, OperatorExpr>> terms;
};
struct ProductNode {
    std::vector<OperatorExpr> factors;
};

struct OperatorExpr::Node {
    std::variant<Term, SumNode, ProductNode> value;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

OperatorExpr::OperatorExpr() : node_(std::make_shared<const Node>(Node{SumNode{}})) {}

OperatorExpr::OperatorExpr(Term term)
    : node_(std::make_shared<const Node>(Node{std::move(term)})) {}

OperatorExpr OperatorExpr::sum(std::vector<std::pair<Complex, OperatorExpr>> terms) {
    return OperatorExpr(std::make_shared<const Node>(Node{SumNode{std::move(terms)}}));
}

OperatorExpr OperatorExpr::product(std::vector<OperatorExpr> factors) {
    return OperatorExpr(std::make_shared<const Node>(Node{ProductNode{std::move(factors)}}));
}

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    return OperatorExpr::sum({{1.0, a}, {1.0, b}});
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
    return OperatorExpr::sum({{1.0, a}, {-1.0, b}});
}

OperatorExpr operator*(Complex s, const OperatorExpr& a) { return OperatorExpr::sum({{s, a}}); }

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    return OperatorExpr::product({a, b});
}

OperatorExpr OperatorExpr::adjoint() const {
    return std::visit(
        overloaded{
            [](const Term& t) -> OperatorExpr {
                return std::visit(
                    overloaded{
                        [](const Create1& c) -> OperatorExpr { return Annihilate1{c.phi}; },
                        [](const Annihilate1& c) -> OperatorExpr { return Create1{c.phi}; },
                        [](const Create2& c) -> OperatorExpr { return Annihilate2{c.kernel}; },
                        [](const Annihilate2& c) -> OperatorExpr { return Create2{c.kernel}; },
                        [](const DGamma& c) -> OperatorExpr {
                            return DGamma{c.matrix.adjoint()};
                        },
                        [](const Const& c) -> OperatorExpr { return Const{std::conj(c.value)}; },
                    },
                    t);
            },
            [](const SumNode& s) -> OperatorExpr {
                std::vector<std::pair<Complex, OperatorExpr>> terms;
                terms.reserve(s.terms.size());
                for (const auto& [coef, e] : s.terms) {
                    terms.emplace_back(std::conj(coef), e.adjoint());
                }
                return OperatorExpr::sum(std::move(terms));
            },
            [](const ProductNode& p) -> OperatorExpr {
                std::vector<OperatorExpr> factors;
                factors.reserve(p.factors.size());
                for (auto it = p.factors.rbegin(); it != p.factors.rend(); ++it) {
                    factors.push_back(it->adjoint());
                }
                return OperatorExpr::product(std::move(factors));
            },
        },
        node_->value);
}

FockVector OperatorExpr::apply(const FockSpace& space, const FockVector& v) const {
    return std::visit(
        overloaded{
            [&](const Term& t) -> FockVector {
                return std::visit(
                    overloaded{
                        [&](const Create1& c) {
                            return apply_ladder(space, c.phi, Ladder::kCreate, v);
                        },
                        [&](const Annihilate1& c) {
                            return apply_ladder(space, c.phi, Ladder::kAnnihilate, v);
                        },
                        [&](const Create2& c) {
                            return apply_ladder(space, c.kernel, Ladder::kCreate, v);
                        },
                        [&](const Annihilate2& c) {
                            return apply_ladder(space, c.kernel, Ladder::kAnnihilate, v);
                        },
                        [&](const DGamma& c) { return apply_dgamma(space, c.matrix, v); },
                        [&](const Const& c) -> FockVector { return c.value * v; },
                    },
                    t);
            },
            [&](const SumNode& s) -> FockVector {
                FockVector out = FockVector::Zero(v.size());
                for (const auto& [coef, e] : s.terms) {
                    out += coef * e.apply(space, v);
                }
                return out;
            },
            [&](const ProductNode& p) -> FockVector {
                FockVector out = v;
                for (auto it = p.factors.rbegin(); it != p.factors.rend(); ++it) {
                    out = it->apply(space, out);
                }
                return out;
            },
        },
        node_->value);
}

int OperatorExpr::raise() const {
    return std::visit(
        overloaded{
            [](const Term& t) -> int {
                return std::visit(overloaded{
                                      [](const Create1&) { return 1; },
                                      [](const Create2&) { return 2; },
                                      [](const auto&) { return 0; },
                                  },
                                  t);
            },
            [](const SumNode& s) -> int {
                int r = 0;
                for (const auto& [coef, e] : s.terms) {
                    r = std::max(r, e.raise());
                }
                return r;
            },
            [](const ProductNode& p) -> int {
                int r = 0;
                for (const auto& f : p.factors) {
                    r += f.raise();
                }
                return r;
            },
        },
        node_->value);
}

ComplexMatrix to_matrix(const FockSpace& space, const OperatorExpr& expr) {
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    ComplexMatrix m(dim, dim);
    FockVector e = FockVector::Zero(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        e(k) = 1.0;
        m.col(k) = expr.apply(space, e);
        e(k) = 0.0;
    }
    return m;
}

}  // namespace fockpoint
