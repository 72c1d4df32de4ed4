#include "diffcomp/engine.hpp"

#include <vector>

#include "diffcomp/error.hpp"

namespace diffcomp {

namespace {

std::size_t expected_vars(std::size_t arity, InputKind kind) {
    return kind == InputKind::Vector ? arity : arity * arity;
}

const char* kind_name(InputKind kind) {
    switch (kind) {
        case InputKind::Vector: return "vector";
        case InputKind::Matrix: return "matrix";
        case InputKind::Functional: return "functional";
    }
    return "?";
}

void require_kind(const DifferentialComputer& dc, InputKind kind) {
    if (dc.input_kind() != kind) {
        fail(ErrorKind::Domain, std::string("computer takes ") + kind_name(dc.input_kind()) + " input, not " +
                                    kind_name(kind));
    }
}

// Evaluation at zero, the m-th power, and the map to {0, 1}.
RunResult finish(const MultiPoly& differentiated, std::uint64_t order) {
    RunResult out;
    out.scalar = differentiated.constant_term();
    out.powered = out.scalar.pow(static_cast<long long>(order));
    if (out.powered.is_zero()) {
        out.bit = false;
    } else if (out.powered.is_one()) {
        out.bit = true;
    } else {
        fail(ErrorKind::ModelViolation,
             "m-th power of the computed scalar is " + out.powered.to_string() + ", neither 0 nor 1");
    }
    return out;
}

}  // namespace

DifferentialComputer::DifferentialComputer(MultiPoly program, std::size_t arity, std::uint64_t order,
                                           InputKind kind)
    : program_(std::move(program)), arity_(arity), order_(order), kind_(kind) {
    if (order_ == 0) fail(ErrorKind::Domain, "exponent parameter must be positive");
    if (program_.nvars() != expected_vars(arity_, kind_)) {
        fail(ErrorKind::DimensionMismatch, std::string(kind_name(kind_)) + " computer of arity " +
                                               std::to_string(arity_) + " needs " +
                                               std::to_string(expected_vars(arity_, kind_)) + " variables, program has " +
                                               std::to_string(program_.nvars()));
    }
    if (order_ % program_.order() != 0) {
        fail(ErrorKind::Domain, "coefficient order " + std::to_string(program_.order()) +
                                    " does not divide the exponent parameter " + std::to_string(order_));
    }
}

DifferentialComputer DifferentialComputer::from_truth_table(const TruthTable& table) {
    return DifferentialComputer(listing_from_truth_table(table), table.arity(), table.order(), InputKind::Vector);
}

MultiPoly apply_derivatives(const MultiPoly& p, std::span<const Var> vars) {
    MultiPoly current = p;
    for (Var v : vars) {
        if (current.is_zero()) break;
        current = partial_derivative(current, v);
    }
    return current;
}

RunResult run_vector(const DifferentialComputer& dc, const BitVector& input) {
    require_kind(dc, InputKind::Vector);
    if (input.size() != dc.arity()) fail(ErrorKind::DimensionMismatch, "input length does not match arity");
    std::vector<Var> vars;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (input[i] > 1) fail(ErrorKind::Domain, "input bits must be 0 or 1");
        if (input[i]) vars.push_back(static_cast<Var>(i));
    }
    return finish(apply_derivatives(dc.program(), vars), dc.order());
}

RunResult run_matrix(const DifferentialComputer& dc, const Graph& input) {
    require_kind(dc, InputKind::Matrix);
    if (input.order() != dc.arity()) fail(ErrorKind::DimensionMismatch, "input matrix size does not match arity");
    const auto table = VarTable::matrix(dc.arity());
    std::vector<Var> vars;
    for (const auto& [i, j] : input.edges()) vars.push_back(table.index(i, j));
    return finish(apply_derivatives(dc.program(), vars), dc.order());
}

RunResult run_functional(const DifferentialComputer& dc, const FunctionTable& g) {
    require_kind(dc, InputKind::Functional);
    if (g.size() != dc.arity()) fail(ErrorKind::DimensionMismatch, "function domain does not match arity");
    const auto table = VarTable::matrix(dc.arity());
    std::vector<Var> vars;
    for (std::size_t i = 0; i < g.size(); ++i) vars.push_back(table.index(i, g(i)));
    const auto differentiated = apply_derivatives(dc.program(), vars);
    // No evaluation at zero here: full differentiation of a degree-n
    // homogeneous listing must already be constant.
    if (differentiated.degree() > 0) {
        fail(ErrorKind::ModelViolation, "functional listing did not differentiate to a constant");
    }
    return finish(differentiated, dc.order());
}

CycloRational count_eval(const MultiPoly& p, const Graph& input) {
    const auto table = VarTable::matrix(input.order());
    if (p.nvars() != table.size()) fail(ErrorKind::DimensionMismatch, "input matrix size does not match listing");
    std::vector<CycloRational> point(table.size(), CycloRational(0));
    for (const auto& [i, j] : input.edges()) point[table.index(i, j)] = CycloRational(1);
    return evaluate(p, point);
}

RationalMatrix inverse_via_gradient(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::DimensionMismatch, "inverse needs a square matrix");
    if (n == 0 || n > 5) fail(ErrorKind::SizeCap, "inverse via gradient supports 1 <= n <= 5");

    const auto det = listing_determinant(n);
    const auto table = VarTable::matrix(n);
    std::vector<CycloRational> point(table.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) point[table.index(i, j)] = CycloRational(m(i, j));
    }
    const auto det_value = evaluate(det, point);
    if (det_value.is_zero()) fail(ErrorKind::Singular, "matrix is singular");

    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto entry = evaluate(partial_derivative(det, table.index(j, i)), point) / det_value;
            if (!entry.is_rational()) fail(ErrorKind::InternalInconsistency, "inverse entry left the rationals");
            out(i, j) = entry.rational_part();
        }
    }
    return out;
}

}  // namespace diffcomp
