#pragma once

// Sparse multivariate polynomials over CycloRational.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffcomp/cyclotomic.hpp"

namespace diffcomp {

using Var = std::uint32_t;

class Monomial {
public:
    using Factor = std::pair<Var, std::uint32_t>;

    Monomial() = default;

    /// Merges repeated variables and drops zero exponents.
    static Monomial from_factors(std::vector<Factor> factors);
    /// Product of the listed variables, each to the first power (repeats multiply).
    static Monomial product_of(std::span<const Var> vars);
    static Monomial variable(Var v, std::uint32_t exponent = 1);

    /// Sorted by variable index, exponents all positive.
    const std::vector<Factor>& factors() const noexcept { return factors_; }

    std::uint32_t degree() const noexcept;
    std::uint32_t exponent(Var v) const noexcept;
    bool contains(Var v) const noexcept { return exponent(v) > 0; }
    bool is_constant() const noexcept { return factors_.empty(); }
    bool is_multilinear() const noexcept;
    /// One past the largest variable index, 0 for the constant monomial.
    Var var_bound() const noexcept;

    /// Copy of this monomial with the exponent of v lowered by one (v must be present).
    Monomial lowered(Var v) const;

    friend Monomial operator*(const Monomial& lhs, const Monomial& rhs);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Graded lexicographic order, highest monomial first (variable 0 most significant).
struct GrlexDescending {
    bool operator()(const Monomial& lhs, const Monomial& rhs) const noexcept;
};

class MultiPoly {
public:
    using TermMap = std::map<Monomial, CycloRational, GrlexDescending>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(const CycloRational& value, std::size_t nvars);
    static MultiPoly variable(Var v, std::size_t nvars);
    static MultiPoly term(const Monomial& monomial, const CycloRational& coeff, std::size_t nvars);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Accumulates coeff into the term for `monomial`; zero results are erased.
    void add_term(const Monomial& monomial, const CycloRational& coeff);
    CycloRational coefficient(const Monomial& monomial) const;
    CycloRational constant_term() const { return coefficient(Monomial{}); }

    /// Total degree, or -1 for the zero polynomial.
    int degree() const noexcept;
    /// Every term has the same total degree (vacuously true for zero).
    bool is_homogeneous() const noexcept;
    bool is_multilinear() const noexcept;
    /// lcm of coefficient orders; 1 for the zero polynomial.
    std::uint64_t order() const noexcept;

    /// Same terms in a different declared universe; every variable must stay in range.
    MultiPoly with_nvars(std::size_t nvars) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    MultiPoly& operator*=(const MultiPoly& rhs);
    MultiPoly& operator*=(const CycloRational& scalar);

    friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
    friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
    friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
    friend MultiPoly operator*(MultiPoly lhs, const CycloRational& rhs) { return lhs *= rhs; }

    /// Same declared universe and identical canonical terms.
    friend bool operator==(const MultiPoly& lhs, const MultiPoly& rhs);
    friend bool operator!=(const MultiPoly& lhs, const MultiPoly& rhs) { return !(lhs == rhs); }

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

MultiPoly partial_derivative(const MultiPoly& p, Var v);

/// Exact value at `point`; variables beyond point.size() evaluate to 0.
CycloRational evaluate(const MultiPoly& p, std::span<const CycloRational> point);
/// Sparse point; unassigned variables evaluate to 0.
CycloRational evaluate(const MultiPoly& p, const std::map<Var, CycloRational>& point);

/// Substitutes constants for `fixings` and renames variables through `relabel`;
/// all other variables keep their index. The result lives in `nvars` variables
/// (default: the input's universe).
MultiPoly restrict_and_relabel(const MultiPoly& p, const std::map<Var, CycloRational>& fixings,
                               const std::map<Var, Var>& relabel, std::optional<std::size_t> nvars = std::nullopt);

// Variable naming ----------------------------------------------------------

/// Bijection between names such as `a_{3}` or `a_{1,2}` and flat indices.
/// Matrix tables are row-major: index(i, j) = width * i + j.
class VarTable {
public:
    enum class Layout { Vector, Matrix };

    static VarTable vector(std::size_t n, char symbol = 'a');
    static VarTable matrix(std::size_t n, char symbol = 'a');

    Layout layout() const noexcept { return layout_; }
    char symbol() const noexcept { return symbol_; }
    /// Vector length, or row width for matrices.
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return layout_ == Layout::Vector ? width_ : width_ * width_; }

    Var index(std::size_t i, std::size_t j) const;
    std::pair<std::size_t, std::size_t> coordinates(Var v) const;
    std::string name(Var v) const;
    Var lookup(std::string_view name) const;

    friend bool operator==(const VarTable&, const VarTable&) = default;

private:
    VarTable(Layout layout, std::size_t width, char symbol) : layout_(layout), width_(width), symbol_(symbol) {}

    Layout layout_;
    std::size_t width_;
    char symbol_;
};

struct NamedPoly {
    MultiPoly poly;
    VarTable vars;
    /// Exponent parameter from the header; a multiple of poly.order().
    std::uint64_t order = 1;
};

inline constexpr std::string_view kPolyFormatHeader = "# diffcomp poly v1";

/// Canonical text: version line, `nvars m`, then one `coeff * name^e * ...`
/// line per term in graded-lex order.
std::string to_text(const MultiPoly& p, const VarTable& vars);
NamedPoly parse_poly(std::string_view text);

/// Human-oriented rendering such as `a_{0,0}*a_{1,1} - a_{0,1}*a_{1,0}`.
std::string to_display(const MultiPoly& p, const VarTable& vars);

}  // namespace diffcomp
