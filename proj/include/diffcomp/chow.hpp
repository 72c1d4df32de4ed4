#pragma once

// Chow decompositions  P = sum_u prod_v (H[u,v,n] + sum_w H[u,v,w] x_w)
// stored as a rho x d x (n+1) hypermatrix, with verification, homogenisation,
// rank certificates, and compilation of functional computers to the depth-two
// formula sum_u prod_v x_{u,v}.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diffcomp/graphs.hpp"
#include "diffcomp/matrix.hpp"
#include "diffcomp/multipoly.hpp"

namespace diffcomp {

class ChowDecomposition {
public:
    ChowDecomposition() = default;
    /// All-zero hypermatrix of shape rho x d x (nvars + 1).
    ChowDecomposition(std::size_t rho, std::size_t degree, std::size_t nvars);

    std::size_t rho() const noexcept { return rho_; }
    std::size_t degree() const noexcept { return degree_; }
    std::size_t nvars() const noexcept { return nvars_; }

    /// Coefficient of x_w in form (u, v); w == nvars() addresses the constant slot.
    CycloRational& at(std::size_t u, std::size_t v, std::size_t w);
    const CycloRational& at(std::size_t u, std::size_t v, std::size_t w) const;
    CycloRational& constant(std::size_t u, std::size_t v) { return at(u, v, nvars_); }
    const CycloRational& constant(std::size_t u, std::size_t v) const { return at(u, v, nvars_); }

    /// Every constant slot is zero.
    bool is_homogeneous() const;
    /// lcm of entry orders.
    std::uint64_t order() const;

    /// Form (u, v) as a degree <= 1 polynomial.
    MultiPoly linear_form(std::size_t u, std::size_t v) const;

    /// Stacks the summands of `other` under this one; shapes must agree.
    void append(const ChowDecomposition& other);

    friend bool operator==(const ChowDecomposition&, const ChowDecomposition&) = default;

private:
    std::size_t index(std::size_t u, std::size_t v, std::size_t w) const;

    std::size_t rho_ = 0;
    std::size_t degree_ = 0;
    std::size_t nvars_ = 0;
    std::vector<CycloRational> entries_;
};

MultiPoly expand(const ChowDecomposition& c);
/// expand(c) == target exactly; rho(c) then bounds the Chow rank of target from above.
bool verify(const ChowDecomposition& c, const MultiPoly& target);

/// Zeroes every constant slot. Requires a homogeneous target of degree
/// c.degree() that c verifies against; the result verifies as well.
ChowDecomposition homogenize(const ChowDecomposition& c, const MultiPoly& target);

/// The unique symmetric A with p = x^T A x, for p homogeneous of degree two.
CycloMatrix symmetric_matrix_of(const MultiPoly& p);

/// ceil(rank(A) / 2) for the symmetric matrix A of p. Any decomposition
/// x^T B x of p has A = (B + B^T) / 2, so rank(B) >= rank(A) / 2.
std::size_t degree2_chow_lower_bound(const MultiPoly& p);

struct NonOverlapResult {
    bool non_overlapping = false;
    /// For homogeneous input of degree m >= 2: relabelling onto the standard
    /// form sum_i alpha_i prod_j x_{m i + j}, terms taken in graded-lex order.
    std::optional<std::map<Var, Var>> witness;
    std::size_t term_degree = 0;
};

/// Multilinear and no variable occurs in more than one term.
NonOverlapResult is_totally_non_overlapping(const MultiPoly& p);

/// sum_i alpha_i prod_{j < m} x_{m i + j} in m * n variables.
MultiPoly standard_non_overlapping(std::size_t m, const std::vector<CycloRational>& alphas);

/// Restriction of the m-linear standard form to the bilinear one: fixes
/// x_{m i + j} = 1 for j >= 2 and relabels x_{m i + j} -> x_{2 i + j} for j < 2.
MultiPoly restrict_to_bilinear(const MultiPoly& standard_form, std::size_t m, std::size_t terms);

struct NonOverlapRank {
    std::size_t rank = 0;
    /// The n-summand decomposition with one single-variable form per factor.
    ChowDecomposition decomposition;
    /// Degree-two certificate computed on the bilinear restriction.
    std::size_t lower_bound = 0;
};

/// Exact Chow rank (= term count) of a totally non-overlapping homogeneous
/// multilinear polynomial of degree >= 2, with matching upper and lower certificates.
NonOverlapRank chow_rank_non_overlapping(const MultiPoly& p);

/// Single-summand decomposition prod_i (sum_j a_{i,j}) of the functional-graph listing.
ChowDecomposition functional_product_decomposition(std::size_t n);

struct CompiledFormula {
    /// rho x n matrix with X[u][v] = H[u, v, (v, g(v))].
    CycloMatrix inputs;
    /// sum_u prod_v X[u][v]
    CycloRational value;
};

/// Evaluates sum_u prod_v x[u][v].
CycloRational evaluate_depth2(const CycloMatrix& x);

/// Compiles a functional computer given by a homogeneous decomposition whose
/// v-th form only uses row v of the matrix variables.
CompiledFormula compile_functional(const ChowDecomposition& c, const FunctionTable& g);

// File format -----------------------------------------------------------------

inline constexpr std::string_view kChowFormatHeader = "# diffcomp chow v1";

/// Version line, `rho d n m`, then rho*d lines of n+1 entries (constant slot last).
std::string chow_to_text(const ChowDecomposition& c);
ChowDecomposition parse_chow(std::string_view text);

}  // namespace diffcomp
