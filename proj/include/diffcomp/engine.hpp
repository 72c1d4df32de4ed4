#pragma once

// The differential computer: a listing is the program, the input selects which
// partial derivatives to apply, and the result is evaluated at zero and raised
// to the m-th power.

#include <cstdint>
#include <span>

#include "diffcomp/graphs.hpp"
#include "diffcomp/listings.hpp"
#include "diffcomp/matrix.hpp"
#include "diffcomp/multipoly.hpp"

namespace diffcomp {

enum class InputKind { Vector, Matrix, Functional };

class DifferentialComputer {
public:
    /// `arity` is n: the program lives in n variables for vector input and
    /// in n^2 matrix variables otherwise. Coefficient orders must divide `order`.
    DifferentialComputer(MultiPoly program, std::size_t arity, std::uint64_t order, InputKind kind);

    static DifferentialComputer from_truth_table(const TruthTable& table);

    const MultiPoly& program() const noexcept { return program_; }
    std::size_t arity() const noexcept { return arity_; }
    std::uint64_t order() const noexcept { return order_; }
    InputKind input_kind() const noexcept { return kind_; }

private:
    MultiPoly program_;
    std::size_t arity_;
    std::uint64_t order_;
    InputKind kind_;
};

struct RunResult {
    bool bit = false;
    /// Value after differentiation and evaluation, before the m-th power.
    CycloRational scalar;
    CycloRational powered;
};

/// Applies d/dv for each listed variable in sequence; terms lacking the
/// variable drop out at each step.
MultiPoly apply_derivatives(const MultiPoly& p, std::span<const Var> vars);

RunResult run_vector(const DifferentialComputer& dc, const BitVector& input);
RunResult run_matrix(const DifferentialComputer& dc, const Graph& input);
RunResult run_functional(const DifferentialComputer& dc, const FunctionTable& g);

/// Plain evaluation of a matrix-variable listing at the 0/1 point `input`.
CycloRational count_eval(const MultiPoly& p, const Graph& input);

/// Inverse as the gradient of ln det: entry (i, j) is (d Det / d a_{j,i})(M) / Det(M).
RationalMatrix inverse_via_gradient(const RationalMatrix& m);

}  // namespace diffcomp
