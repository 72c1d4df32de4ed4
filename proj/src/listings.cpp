#include "diffcomp/listings.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "diffcomp/error.hpp"
#include "text_util.hpp"

namespace diffcomp {

BitVector bits_from_string(std::string_view text) {
    BitVector out;
    if (text == "-") return out;
    for (char ch : text) {
        if (ch != '0' && ch != '1') fail(ErrorKind::Parse, "bit strings may only contain 0 and 1");
        out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

std::string bits_to_string(const BitVector& bits) {
    if (bits.empty()) return "-";
    std::string out;
    for (auto b : bits) out += b ? '1' : '0';
    return out;
}

BitVector bits_from_index(std::uint64_t value, std::size_t n) {
    BitVector out(n, 0);
    for (std::size_t i = 0; i < n; ++i) out[n - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
    return out;
}

// TruthTable ------------------------------------------------------------------

TruthTable::TruthTable(std::size_t arity, std::uint64_t order) : arity_(arity), order_(order) {
    if (order == 0) fail(ErrorKind::Domain, "exponent parameter must be positive");
    if (arity > 62) fail(ErrorKind::SizeCap, "truth tables are limited to 62 inputs");
}

TruthTable TruthTable::from_predicate(std::size_t arity, const std::function<bool(const BitVector&)>& predicate,
                                      std::uint64_t order) {
    if (arity > 24) fail(ErrorKind::SizeCap, "predicate enumeration is limited to 24 inputs");
    TruthTable table(arity, order);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << arity); ++v) {
        auto point = bits_from_index(v, arity);
        if (predicate(point)) table.add_yes(point);
    }
    return table;
}

void TruthTable::check_point(const BitVector& point) const {
    if (point.size() != arity_) fail(ErrorKind::DimensionMismatch, "input has the wrong number of bits");
    for (auto b : point) {
        if (b > 1) fail(ErrorKind::Domain, "bit vector entries must be 0 or 1");
    }
}

void TruthTable::add_yes(const BitVector& point, long long phase) {
    check_point(point);
    const auto m = static_cast<long long>(order_);
    yes_[point] = static_cast<std::uint64_t>(((phase % m) + m) % m);
}

void TruthTable::set_phase(const BitVector& point, long long phase) {
    if (!value(point)) fail(ErrorKind::Domain, "phases may only be attached to YES instances");
    add_yes(point, phase);
}

bool TruthTable::value(const BitVector& point) const {
    check_point(point);
    return yes_.count(point) > 0;
}

std::uint64_t TruthTable::phase(const BitVector& point) const {
    auto it = yes_.find(point);
    if (it == yes_.end()) fail(ErrorKind::Domain, "NO instances carry no phase");
    return it->second;
}

// Size caps -------------------------------------------------------------------

namespace {

constexpr std::uint64_t kDefaultMaxTerms = 100000;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
    return out;
}

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 2; i <= n; ++i) out = saturating_mul(out, i);
    return out;
}

void check_size(const char* what, std::size_t n, std::size_t vertex_cap, std::uint64_t terms) {
    if (!max_terms_overridden() && n > vertex_cap) {
        fail(ErrorKind::SizeCap, std::string(what) + " listing is capped at n = " + std::to_string(vertex_cap) +
                                     " (requested n = " + std::to_string(n) + ")");
    }
    if (terms > max_terms()) {
        fail(ErrorKind::SizeCap, std::string(what) + " listing would need more than " + std::to_string(max_terms()) +
                                     " terms");
    }
}

template <typename Visit>
void for_each_permutation(std::size_t n, Visit&& visit) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        visit(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::size_t inversions(const std::vector<std::size_t>& perm) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) count += perm[i] > perm[j] ? 1 : 0;
    }
    return count;
}

MultiPoly permutation_listing(std::size_t n, bool signed_terms) {
    check_size(signed_terms ? "determinant" : "permanent", n, 7, factorial(n));
    const auto vars = VarTable::matrix(n);
    MultiPoly out(vars.size());
    std::vector<Var> support(n);
    for_each_permutation(n, [&](const std::vector<std::size_t>& perm) {
        for (std::size_t i = 0; i < n; ++i) support[i] = vars.index(i, perm[i]);
        const auto coeff = signed_terms ? root_of_unity(2, static_cast<long long>(inversions(perm) % 2))
                                        : CycloRational(1);
        out.add_term(Monomial::product_of(support), coeff);
    });
    return out;
}

}  // namespace

std::uint64_t max_terms() {
    if (const char* env = std::getenv("DIFFCOMP_MAX_TERMS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && value > 0) return value;
    }
    return kDefaultMaxTerms;
}

bool max_terms_overridden() {
    const char* env = std::getenv("DIFFCOMP_MAX_TERMS");
    return env != nullptr && *env != '\0';
}

// Builders --------------------------------------------------------------------

MultiPoly listing_from_truth_table(const TruthTable& table) {
    check_size("truth-table", 0, 0, table.yes_instances().size());
    MultiPoly out(table.arity());
    std::vector<Var> support;
    for (const auto& [point, phase] : table.yes_instances()) {
        support.clear();
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (point[i]) support.push_back(static_cast<Var>(i));
        }
        out.add_term(Monomial::product_of(support), root_of_unity(table.order(), static_cast<long long>(phase)));
    }
    return out;
}

TruthTable truth_table_from_listing(const MultiPoly& listing, std::uint64_t order) {
    TruthTable table(listing.nvars(), order);
    for (const auto& [mono, coeff] : listing.terms()) {
        if (!mono.is_multilinear()) fail(ErrorKind::Domain, "listings are multilinear");
        BitVector point(listing.nvars(), 0);
        for (const auto& [v, e] : mono.factors()) point[v] = 1;
        std::optional<std::uint64_t> phase;
        for (std::uint64_t k = 0; k < order && !phase; ++k) {
            if (coeff == root_of_unity(order, static_cast<long long>(k))) phase = k;
        }
        if (!phase) fail(ErrorKind::Domain, "coefficient " + coeff.to_string() + " is not an m-th root of unity");
        table.add_yes(point, static_cast<long long>(*phase));
    }
    return table;
}

MultiPoly listing_functional_graphs(std::size_t n) {
    if (n == 0) fail(ErrorKind::Domain, "functional-graph listing needs n >= 1");
    check_size("functional-graph", n, 6, power(n, n));
    MultiPoly out(n * n);
    for_each_function(n, [&](const FunctionTable& f) { out += monomial_edge_listing(f); });
    return out;
}

MultiPoly listing_permanent(std::size_t n) { return permutation_listing(n, false); }

MultiPoly listing_determinant(std::size_t n) { return permutation_listing(n, true); }

MultiPoly listing_graph_isomorphism(const Graph& g) {
    const std::size_t n = g.order();
    check_size("isomorphism", n, 6, factorial(n));
    const auto edges = g.edges();
    std::set<Graph> conjugates;
    for_each_permutation(n, [&](const std::vector<std::size_t>& sigma) {
        Graph h(n);
        for (const auto& [i, j] : edges) h.set_edge(sigma[i], sigma[j]);
        conjugates.insert(std::move(h));
    });
    MultiPoly out(n * n);
    for (const auto& h : conjugates) out += monomial_edge_listing(h);
    return out;
}

MultiPoly listing_constant_functions(std::size_t n) {
    if (n == 0) fail(ErrorKind::Domain, "constant-function listing needs n >= 1");
    MultiPoly out(n * n);
    for (std::size_t j = 0; j < n; ++j) out += monomial_edge_listing(FunctionTable::constant(n, j));
    return out;
}

MultiPoly listing_cyclic_group(std::size_t n) {
    if (n == 0) fail(ErrorKind::Domain, "cyclic-group listing needs n >= 1");
    MultiPoly out(n * n);
    for (std::size_t j = 0; j < n; ++j) out += monomial_edge_listing(FunctionTable::rotation(n, j));
    return out;
}

// Lagrange interpolant ----------------------------------------------------------

std::vector<std::vector<LagrangeFactor>> lagrange_terms(const TruthTable& table) {
    if (table.order() != 1) fail(ErrorKind::Domain, "the Lagrange interpolant is defined for binary listings only");
    std::vector<std::vector<LagrangeFactor>> out;
    for (const auto& [point, phase] : table.yes_instances()) {
        std::vector<LagrangeFactor> factors;
        for (std::size_t i = 0; i < point.size(); ++i) factors.push_back({static_cast<Var>(i), point[i] != 0});
        out.push_back(std::move(factors));
    }
    return out;
}

MultiPoly lagrange_interpolant(const TruthTable& table) {
    const std::size_t n = table.arity();
    check_size("Lagrange", 0, 0, saturating_mul(table.yes_instances().size(), power(2, n)));
    const auto one = MultiPoly::constant(CycloRational(1), n);
    MultiPoly out(n);
    for (const auto& factors : lagrange_terms(table)) {
        MultiPoly product = one;
        for (const auto& f : factors) {
            const auto y = MultiPoly::variable(f.var, n);
            product *= f.bit ? y : one - y;
        }
        out += product;
    }
    return out;
}

MultiPoly lagrange_binomial_reduction(const TruthTable& table) {
    MultiPoly out(table.arity());
    std::vector<Var> support;
    for (const auto& factors : lagrange_terms(table)) {
        support.clear();
        for (const auto& f : factors) {
            if (f.bit) support.push_back(f.var);
        }
        out.add_term(Monomial::product_of(support), CycloRational(1));
    }
    return out;
}

bool monomial_support_equals(const MultiPoly& p, const TruthTable& table) {
    if (p.nvars() != table.arity() || !p.is_multilinear()) return false;
    std::set<BitVector> support;
    for (const auto& [mono, coeff] : p.terms()) {
        BitVector point(p.nvars(), 0);
        for (const auto& [v, e] : mono.factors()) point[v] = 1;
        support.insert(std::move(point));
    }
    if (support.size() != table.yes_instances().size()) return false;
    return std::all_of(table.yes_instances().begin(), table.yes_instances().end(),
                       [&](const auto& entry) { return support.count(entry.first) > 0; });
}

// File format -------------------------------------------------------------------

std::string truth_table_to_text(const TruthTable& table) {
    std::string out = std::to_string(table.arity()) + " " + std::to_string(table.order()) + "\n";
    for (const auto& [point, phase] : table.yes_instances()) {
        out += bits_to_string(point) + " " + std::to_string(phase) + "\n";
    }
    return out;
}

TruthTable parse_truth_table(std::string_view body) {
    std::vector<std::string_view> lines;
    for (auto line : text::lines(body)) {
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) fail(ErrorKind::Parse, "truth-table file is empty");
    const auto header = text::tokens(lines[0]);
    if (header.size() != 2) fail(ErrorKind::Parse, "truth-table header must be 'n m'");
    const std::size_t n = text::to_size(header[0]);
    const std::size_t m = text::to_size(header[1]);
    if (m == 0) fail(ErrorKind::Parse, "exponent parameter must be positive");
    TruthTable table(n, m);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto toks = text::tokens(lines[k]);
        if (toks.size() != 2) fail(ErrorKind::Parse, "truth-table lines must be '<bits> <phase>'");
        const auto point = bits_from_string(toks[0]);
        if (point.size() != n) fail(ErrorKind::Parse, "bit string '" + std::string(toks[0]) + "' has wrong length");
        if (table.yes_instances().count(point)) fail(ErrorKind::Parse, "repeated YES instance " + std::string(toks[0]));
        table.add_yes(point, text::to_ll(toks[1]));
    }
    return table;
}

}  // namespace diffcomp
