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

#include <memory>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "fockpoint/fock.hpp"

namespace fockpoint {

struct Create1 {
    OneParticleVector phi;
};
struct Annihilate1 {
    OneParticleVector phi;
};
struct Create2 {
    TwoParticleKernel kernel;
};
struct Annihilate2 {
    TwoParticleKernel kernel;
};
struct DGamma {
    ComplexMatrix matrix;
};
struct Const {
    Complex value;
};

using Term = std::variant<Create1, Annihilate1, Create2, Annihilate2, DGamma, Const>;

/// Immutable expression tree over Fock-space operators: primitive terms,
/// weighted sums, and ordered products. Subtrees are shared, so copies are
/// cheap and safe to use from several threads.
class OperatorExpr {
  public:
    /// The zero operator.
    OperatorExpr();
    OperatorExpr(Term term);  // NOLINT(google-explicit-constructor)
    template <class T>
        requires std::is_constructible_v<Term, T> && (!std::is_same_v<std::decay_t<T>, Term>)
    OperatorExpr(T term) : OperatorExpr(Term(std::move(term))) {}  // NOLINT

    static OperatorExpr constant(Complex value) { return OperatorExpr(Const{value}); }
    static OperatorExpr identity() { return constant(1.0); }
    static OperatorExpr sum(std::vector<std::pair<Complex, OperatorExpr>> terms);
    /// factors[0] * factors[1] * ...; the last factor acts first.
    static OperatorExpr product(std::vector<OperatorExpr> factors);

    friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
    friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
    friend OperatorExpr operator*(Complex s, const OperatorExpr& a);
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);

    OperatorExpr adjoint() const;

    FockVector apply(const FockSpace& space, const FockVector& v) const;

    /// Upper bound on how far the expression can raise the particle number.
    int raise() const;

  private:
    struct Node;
    explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// [a, b] and {a, b}.
inline OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
    return a * b - b * a;
}
inline OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) {
    return a * b + b * a;
}

/// Dense matrix of the expression on the space's basis (column k = E e_k).
ComplexMatrix to_matrix(const FockSpace& space, const OperatorExpr& expr);

}  // namespace fockpoint
