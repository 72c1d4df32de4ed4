#pragma once

// Additive listings: polynomials whose monomial support is the YES set of a
// Boolean function, with m-th root of unity coefficients.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diffcomp/graphs.hpp"
#include "diffcomp/multipoly.hpp"

namespace diffcomp {

/// A point of {0,1}^n. Lexicographic comparison of equal-length vectors
/// matches the big-endian binary value, bit 0 most significant.
using BitVector = std::vector<std::uint8_t>;

BitVector bits_from_string(std::string_view text);
std::string bits_to_string(const BitVector& bits);
/// The point whose big-endian binary value is `value`.
BitVector bits_from_index(std::uint64_t value, std::size_t n);

/// Boolean function given by its YES instances, each carrying a phase k for
/// the coefficient w_m^k of its listing term.
class TruthTable {
public:
    TruthTable(std::size_t arity, std::uint64_t order);

    static TruthTable from_predicate(std::size_t arity, const std::function<bool(const BitVector&)>& predicate,
                                     std::uint64_t order = 1);

    /// Marks `point` as a YES instance; the phase is reduced mod order().
    void add_yes(const BitVector& point, long long phase = 0);
    void set_phase(const BitVector& point, long long phase);

    std::size_t arity() const noexcept { return arity_; }
    std::uint64_t order() const noexcept { return order_; }
    /// YES instances in lex order with their phases in [0, order).
    const std::map<BitVector, std::uint64_t>& yes_instances() const noexcept { return yes_; }

    bool value(const BitVector& point) const;
    std::uint64_t phase(const BitVector& point) const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    void check_point(const BitVector& point) const;

    std::size_t arity_;
    std::uint64_t order_;
    std::map<BitVector, std::uint64_t> yes_;
};

/// Sum over YES instances b of w^phase(b) * prod_{b_i = 1} a_i, in n vector variables.
MultiPoly listing_from_truth_table(const TruthTable& table);
/// Inverse of listing_from_truth_table: reads support and phases back off a
/// multilinear listing whose coefficients are m-th roots of unity.
TruthTable truth_table_from_listing(const MultiPoly& listing, std::uint64_t order);

/// Sum over all n^n functions f of prod_i a_{i,f(i)}.
MultiPoly listing_functional_graphs(std::size_t n);
/// Per(A): binary listing of permutation matrices.
MultiPoly listing_permanent(std::size_t n);
/// Det(A): listing of permutation matrices with exponent parameter 2.
MultiPoly listing_determinant(std::size_t n);
/// Sum of M_H over the distinct conjugates H = s G s^-1, s in S_n.
MultiPoly listing_graph_isomorphism(const Graph& g);
/// Sum over j of prod_i a_{i,j}: the constant functions.
MultiPoly listing_constant_functions(std::size_t n);
/// Sum over j of prod_i a_{i,i+j mod n}: the cyclic group generated by x -> x+1.
MultiPoly listing_cyclic_group(std::size_t n);

/// One factor (y_i - (1 - b_i)) / (2 b_i - 1): y_i when b_i = 1, 1 - y_i when b_i = 0.
struct LagrangeFactor {
    Var var;
    bool bit;
};
/// Unexpanded interpolant: one product of factors per YES instance.
std::vector<std::vector<LagrangeFactor>> lagrange_terms(const TruthTable& table);
/// Expanded interpolant in variables y_0..y_{n-1}; table must be binary (order 1).
MultiPoly lagrange_interpolant(const TruthTable& table);
/// Applies the binomial substitutions y_i <- a_i (b_i = 1) and 1 - y_i <- 1
/// (b_i = 0) factor by factor, giving the binary listing P_F.
MultiPoly lagrange_binomial_reduction(const TruthTable& table);

/// True iff p's monomial supports are exactly the YES instances of table.
bool monomial_support_equals(const MultiPoly& p, const TruthTable& table);

// Size caps -----------------------------------------------------------------

/// Term-count budget: DIFFCOMP_MAX_TERMS when set, otherwise 100000.
std::uint64_t max_terms();
/// True when DIFFCOMP_MAX_TERMS is set, in which case only the term budget
/// applies and the per-builder vertex caps are lifted.
bool max_terms_overridden();

// File format ---------------------------------------------------------------

/// Header `n m`, then one `<bitstring> <phase>` line per YES instance.
std::string truth_table_to_text(const TruthTable& table);
TruthTable parse_truth_table(std::string_view text);

}  // namespace diffcomp
