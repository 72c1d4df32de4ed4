#pragma once

// Directed graphs with loops, functional graphs, and the two embeddings of
// arbitrary graph sets into functional-graph sets (T on n^2 vertices and T_f
// on n^2 + 2 vertices).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffcomp/multipoly.hpp"

namespace diffcomp {

/// g : Z_n -> Z_n stored as its image vector.
class FunctionTable {
public:
    FunctionTable() = default;
    explicit FunctionTable(std::vector<std::size_t> images);

    static FunctionTable identity(std::size_t n);
    static FunctionTable constant(std::size_t n, std::size_t value);
    /// x -> x + shift mod n
    static FunctionTable rotation(std::size_t n, std::size_t shift);

    std::size_t size() const noexcept { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_.at(i); }
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    friend auto operator<=>(const FunctionTable&, const FunctionTable&) = default;

private:
    std::vector<std::size_t> images_;
};

/// Calls `visit` with every function Z_n -> Z_n in lexicographic order of image vectors.
template <typename Visit>
void for_each_function(std::size_t n, Visit&& visit) {
    std::vector<std::size_t> images(n, 0);
    while (true) {
        visit(FunctionTable(images));
        std::size_t i = n;
        while (i > 0 && ++images[i - 1] == n) images[--i] = 0;
        if (i == 0) return;
    }
}

/// Binary adjacency matrix; row i column j is the edge i -> j, the diagonal holds loops.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
    static Graph from_function(const FunctionTable& g);
    static Graph complete(std::size_t n);

    std::size_t order() const noexcept { return n_; }
    bool has_edge(std::size_t i, std::size_t j) const;
    void set_edge(std::size_t i, std::size_t j, bool present = true);
    std::size_t out_degree(std::size_t i) const;
    /// Edges in row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    /// The function a functional graph represents.
    FunctionTable as_function() const;

    friend auto operator<=>(const Graph&, const Graph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<unsigned char> adj_;
};

/// M_G: product of a_{i,j} over the edges of g, in n^2 matrix variables.
MultiPoly monomial_edge_listing(const Graph& g);
/// M_g for a function g, in n^2 matrix variables.
MultiPoly monomial_edge_listing(const FunctionTable& g);

bool is_functional(const Graph& g);

/// Sum of M_G over the distinct graphs of `graphs` (all must share a vertex count).
MultiPoly listing_graph_set(std::span<const Graph> graphs);
/// Sum of M_g over the distinct functions of `functions` (all on Z_n).
MultiPoly listing_function_set(std::span<const FunctionTable> functions);

/// Vertex n*i + j maps to 1 when (i, j) is an edge and to 0 otherwise. Needs n >= 2.
FunctionTable transform_T(const Graph& g);
/// Vertices 0 and 1 follow f; vertex 2 + n*i + j maps to 1 or 0 by edge membership.
FunctionTable transform_Tf(const Graph& g, const FunctionTable& f);

enum class TransformMode { T, Tf };

struct TransformSpec {
    TransformMode mode = TransformMode::T;
    /// Required for Tf: a function on Z_2.
    std::optional<FunctionTable> f;
};

struct TransformResult {
    std::size_t n = 0;
    std::vector<FunctionTable> images;
    MultiPoly before;
    MultiPoly after;
};

TransformResult transform_set(std::span<const Graph> graphs, const TransformSpec& spec);

struct Restriction {
    std::map<Var, CycloRational> fixings;
    std::map<Var, Var> relabel;
    std::size_t nvars = 0;
};

/// Fixings and relabelling that carry P_{in T(S)} (or P_{in T_f(S)}) back to P_{in S}.
Restriction recovery_restriction(std::size_t n, const TransformSpec& spec);
MultiPoly recover_original(const TransformResult& result, const TransformSpec& spec);
bool restriction_recovers(const TransformResult& result, const TransformSpec& spec);

// File formats --------------------------------------------------------------

/// Header `n`, then n rows of n space-separated 0/1 entries.
std::string graph_to_text(const Graph& g);
Graph parse_graph(std::string_view text);
/// Graph blocks separated by blank lines.
std::string graph_set_to_text(std::span<const Graph> graphs);
std::vector<Graph> parse_graph_set(std::string_view text);

/// Header `n`, then one line with the n images.
std::string function_to_text(const FunctionTable& g);
FunctionTable parse_function(std::string_view text);

inline constexpr std::string_view kFunctionSetHeader = "# diffcomp fset v1";
/// Version line, `n count`, then one line of images per function.
std::string function_set_to_text(std::span<const FunctionTable> functions);
std::vector<FunctionTable> parse_function_set(std::string_view text);

}  // namespace diffcomp
