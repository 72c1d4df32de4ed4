#include "diffcomp/graphs.hpp"

#include <set>

#include "diffcomp/error.hpp"
#include "text_util.hpp"

namespace diffcomp {

FunctionTable::FunctionTable(std::vector<std::size_t> images) : images_(std::move(images)) {
    for (auto image : images_) {
        if (image >= images_.size()) {
            fail(ErrorKind::Domain, "function image " + std::to_string(image) + " outside Z_" +
                                        std::to_string(images_.size()));
        }
    }
}

FunctionTable FunctionTable::identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = i;
    return FunctionTable(std::move(images));
}

FunctionTable FunctionTable::constant(std::size_t n, std::size_t value) {
    return FunctionTable(std::vector<std::size_t>(n, value));
}

FunctionTable FunctionTable::rotation(std::size_t n, std::size_t shift) {
    std::vector<std::size_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = (i + shift) % n;
    return FunctionTable(std::move(images));
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    Graph g(n);
    for (const auto& [i, j] : edges) g.set_edge(i, j);
    return g;
}

Graph Graph::from_function(const FunctionTable& f) {
    Graph g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g.set_edge(i, f(i));
    return g;
}

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    std::fill(g.adj_.begin(), g.adj_.end(), 1);
    return g;
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) fail(ErrorKind::Domain, "vertex out of range");
    return adj_[n_ * i + j] != 0;
}

void Graph::set_edge(std::size_t i, std::size_t j, bool present) {
    if (i >= n_ || j >= n_) fail(ErrorKind::Domain, "vertex out of range");
    adj_[n_ * i + j] = present ? 1 : 0;
}

std::size_t Graph::out_degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_; ++j) d += has_edge(i, j) ? 1 : 0;
    return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (adj_[n_ * i + j]) out.emplace_back(i, j);
        }
    }
    return out;
}

FunctionTable Graph::as_function() const {
    if (!is_functional(*this)) fail(ErrorKind::Domain, "graph is not functional");
    std::vector<std::size_t> images(n_);
    for (const auto& [i, j] : edges()) images[i] = j;
    return FunctionTable(std::move(images));
}

MultiPoly monomial_edge_listing(const Graph& g) {
    const auto vars = VarTable::matrix(g.order());
    std::vector<Var> support;
    for (const auto& [i, j] : g.edges()) support.push_back(vars.index(i, j));
    return MultiPoly::term(Monomial::product_of(support), CycloRational(1), vars.size());
}

MultiPoly monomial_edge_listing(const FunctionTable& g) {
    const auto vars = VarTable::matrix(g.size());
    std::vector<Var> support;
    for (std::size_t i = 0; i < g.size(); ++i) support.push_back(vars.index(i, g(i)));
    return MultiPoly::term(Monomial::product_of(support), CycloRational(1), vars.size());
}

bool is_functional(const Graph& g) {
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (g.out_degree(i) != 1) return false;
    }
    return true;
}

MultiPoly listing_graph_set(std::span<const Graph> graphs) {
    if (graphs.empty()) fail(ErrorKind::Domain, "graph set is empty; vertex count is undetermined");
    const std::set<Graph> distinct(graphs.begin(), graphs.end());
    const std::size_t n = graphs.front().order();
    MultiPoly out(n * n);
    for (const auto& g : distinct) {
        if (g.order() != n) fail(ErrorKind::Domain, "graph set mixes vertex counts");
        out += monomial_edge_listing(g);
    }
    return out;
}

MultiPoly listing_function_set(std::span<const FunctionTable> functions) {
    if (functions.empty()) fail(ErrorKind::Domain, "function set is empty; domain size is undetermined");
    const std::set<FunctionTable> distinct(functions.begin(), functions.end());
    const std::size_t n = functions.front().size();
    MultiPoly out(n * n);
    for (const auto& f : distinct) {
        if (f.size() != n) fail(ErrorKind::Domain, "function set mixes domain sizes");
        out += monomial_edge_listing(f);
    }
    return out;
}

FunctionTable transform_T(const Graph& g) {
    const std::size_t n = g.order();
    // Images 0 and 1 must exist in Z_{n^2}.
    if (n < 2) fail(ErrorKind::Domain, "transform T needs at least two vertices");
    std::vector<std::size_t> images(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) images[n * i + j] = g.has_edge(i, j) ? 1 : 0;
    }
    return FunctionTable(std::move(images));
}

FunctionTable transform_Tf(const Graph& g, const FunctionTable& f) {
    if (f.size() != 2) fail(ErrorKind::Domain, "transform T_f needs f : Z_2 -> Z_2");
    const std::size_t n = g.order();
    std::vector<std::size_t> images(n * n + 2);
    images[0] = f(0);
    images[1] = f(1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) images[2 + n * i + j] = g.has_edge(i, j) ? 1 : 0;
    }
    return FunctionTable(std::move(images));
}

namespace {

void check_spec(const TransformSpec& spec) {
    if (spec.mode == TransformMode::Tf && (!spec.f || spec.f->size() != 2)) {
        fail(ErrorKind::Domain, "transform T_f needs f : Z_2 -> Z_2");
    }
}

}  // namespace

TransformResult transform_set(std::span<const Graph> graphs, const TransformSpec& spec) {
    check_spec(spec);
    if (graphs.empty()) fail(ErrorKind::Domain, "graph set is empty");
    const std::set<Graph> distinct(graphs.begin(), graphs.end());
    TransformResult result;
    result.n = graphs.front().order();
    for (const auto& g : distinct) {
        if (g.order() != result.n) fail(ErrorKind::Domain, "graph set mixes vertex counts");
        result.images.push_back(spec.mode == TransformMode::T ? transform_T(g) : transform_Tf(g, *spec.f));
    }
    result.before = listing_graph_set(graphs);
    result.after = listing_function_set(result.images);
    return result;
}

Restriction recovery_restriction(std::size_t n, const TransformSpec& spec) {
    check_spec(spec);
    const std::size_t offset = spec.mode == TransformMode::T ? 0 : 2;
    const std::size_t big = n * n + offset;
    const auto big_vars = VarTable::matrix(big);

    Restriction r;
    r.nvars = n * n;
    if (spec.mode == TransformMode::Tf) {
        r.fixings.emplace(big_vars.index(0, (*spec.f)(0)), CycloRational(1));
        r.fixings.emplace(big_vars.index(1, (*spec.f)(1)), CycloRational(1));
    }
    for (std::size_t k = 0; k < n * n; ++k) {
        r.fixings.emplace(big_vars.index(offset + k, 0), CycloRational(1));
        r.relabel.emplace(big_vars.index(offset + k, 1), static_cast<Var>(k));
    }
    return r;
}

MultiPoly recover_original(const TransformResult& result, const TransformSpec& spec) {
    const auto r = recovery_restriction(result.n, spec);
    return restrict_and_relabel(result.after, r.fixings, r.relabel, r.nvars);
}

bool restriction_recovers(const TransformResult& result, const TransformSpec& spec) {
    return recover_original(result, spec) == result.before;
}

// File formats --------------------------------------------------------------

std::string graph_to_text(const Graph& g) {
    std::string out = std::to_string(g.order()) + "\n";
    for (std::size_t i = 0; i < g.order(); ++i) {
        for (std::size_t j = 0; j < g.order(); ++j) {
            if (j > 0) out += ' ';
            out += g.has_edge(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

namespace {

Graph parse_graph_lines(const std::vector<std::string_view>& lines) {
    if (lines.empty()) fail(ErrorKind::Parse, "graph block is empty");
    const auto header = text::tokens(lines[0]);
    if (header.size() != 1) fail(ErrorKind::Parse, "graph header must be a single vertex count");
    const std::size_t n = text::to_size(header[0]);
    if (lines.size() != n + 1) {
        fail(ErrorKind::Parse, "graph on " + std::to_string(n) + " vertices needs " + std::to_string(n) + " rows");
    }
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = text::tokens(lines[i + 1]);
        if (row.size() != n) fail(ErrorKind::Parse, "graph row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == "1") {
                g.set_edge(i, j);
            } else if (row[j] != "0") {
                fail(ErrorKind::Parse, "adjacency entries must be 0 or 1");
            }
        }
    }
    return g;
}

}  // namespace

Graph parse_graph(std::string_view body) {
    const auto blocks = text::blocks(body);
    if (blocks.size() != 1) fail(ErrorKind::Parse, "expected exactly one graph block");
    return parse_graph_lines(blocks[0]);
}

std::string graph_set_to_text(std::span<const Graph> graphs) {
    std::string out;
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        if (k > 0) out += '\n';
        out += graph_to_text(graphs[k]);
    }
    return out;
}

std::vector<Graph> parse_graph_set(std::string_view body) {
    std::vector<Graph> out;
    for (const auto& block : text::blocks(body)) out.push_back(parse_graph_lines(block));
    return out;
}

namespace {

std::string images_line(const FunctionTable& g) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(g(i));
    }
    return out;
}

FunctionTable parse_images(std::string_view line, std::size_t n) {
    const auto toks = text::tokens(line);
    if (toks.size() != n) fail(ErrorKind::Parse, "function needs " + std::to_string(n) + " images");
    std::vector<std::size_t> images;
    for (auto t : toks) {
        images.push_back(text::to_size(t));
        if (images.back() >= n) fail(ErrorKind::Parse, "function image out of range");
    }
    return FunctionTable(std::move(images));
}

std::vector<std::string_view> nonblank(std::string_view body) {
    std::vector<std::string_view> out;
    for (auto line : text::lines(body)) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

std::string function_to_text(const FunctionTable& g) {
    return std::to_string(g.size()) + "\n" + images_line(g) + "\n";
}

FunctionTable parse_function(std::string_view body) {
    const auto lines = nonblank(body);
    if (lines.empty()) fail(ErrorKind::Parse, "function file is empty");
    const std::size_t n = text::to_size(text::trim(lines[0]));
    if (n == 0) {
        if (lines.size() != 1) fail(ErrorKind::Parse, "trailing lines in function file");
        return FunctionTable{};
    }
    if (lines.size() != 2) fail(ErrorKind::Parse, "function file needs a header and one line of images");
    return parse_images(lines[1], n);
}

std::string function_set_to_text(std::span<const FunctionTable> functions) {
    const std::size_t n = functions.empty() ? 0 : functions.front().size();
    std::string out(kFunctionSetHeader);
    out += "\n" + std::to_string(n) + " " + std::to_string(functions.size()) + "\n";
    for (const auto& f : functions) {
        if (f.size() != n) fail(ErrorKind::Domain, "function set mixes domain sizes");
        out += images_line(f) + "\n";
    }
    return out;
}

std::vector<FunctionTable> parse_function_set(std::string_view body) {
    const auto lines = nonblank(body);
    if (lines.empty()) fail(ErrorKind::Parse, "function-set file is empty");
    const auto header = text::tokens(lines[0]);
    if (header.size() != 2) fail(ErrorKind::Parse, "function-set header must be 'n count'");
    const std::size_t n = text::to_size(header[0]);
    const std::size_t count = text::to_size(header[1]);
    if (lines.size() != count + 1) fail(ErrorKind::Parse, "function-set line count does not match header");
    std::vector<FunctionTable> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(parse_images(lines[k + 1], n));
    return out;
}

}  // namespace diffcomp
