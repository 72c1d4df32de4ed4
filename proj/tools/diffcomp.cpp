// diffcomp: command-line front end for building listings, running
// differential computers, and checking Chow certificates.
//
// Exit status: 0 success, 1 negative verdict, 2 usage/parse/dimension/size
// errors, 3 model violation or failed internal check.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "diffcomp/chow.hpp"
#include "diffcomp/engine.hpp"
#include "diffcomp/error.hpp"
#include "diffcomp/graphs.hpp"
#include "diffcomp/listings.hpp"
#include "selftest.hpp"

namespace fs = std::filesystem;
using namespace diffcomp;

namespace {

constexpr int kExitReject = 1;
constexpr int kExitInput = 2;
constexpr int kExitModel = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    out << body;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ModelViolation:
        case ErrorKind::InternalInconsistency: return kExitModel;
        default: return kExitInput;
    }
}

// build -----------------------------------------------------------------------

struct BuildOptions {
    std::string kind;
    std::size_t n = 0;
    std::size_t m = 2;
    std::string table;
    std::string graph;
    std::string out;
};

int cmd_build(const BuildOptions& opt) {
    auto need = [&](bool ok, const char* what) {
        if (!ok) fail(ErrorKind::Parse, "build " + opt.kind + " needs " + what);
    };
    if (opt.kind == "functional-product") {
        need(opt.n > 0, "--n");
        write_output(opt.out, chow_to_text(functional_product_decomposition(opt.n)));
        return 0;
    }

    MultiPoly p;
    VarTable vars = VarTable::vector(0);
    if (opt.kind == "truth-table" || opt.kind == "lagrange") {
        need(!opt.table.empty(), "--table");
        const auto table = parse_truth_table(read_file(opt.table));
        if (opt.kind == "truth-table") {
            p = listing_from_truth_table(table);
            vars = VarTable::vector(table.arity());
        } else {
            p = lagrange_interpolant(table);
            vars = VarTable::vector(table.arity(), 'y');
        }
    } else if (opt.kind == "iso") {
        need(!opt.graph.empty(), "--graph");
        const auto g = parse_graph(read_file(opt.graph));
        p = listing_graph_isomorphism(g);
        vars = VarTable::matrix(g.order());
    } else if (opt.kind == "standard") {
        need(opt.n > 0, "--n");
        p = standard_non_overlapping(opt.m, std::vector<CycloRational>(opt.n, CycloRational(1)));
        vars = VarTable::vector(p.nvars(), 'x');
    } else {
        need(opt.n > 0, "--n");
        if (opt.kind == "functional") {
            p = listing_functional_graphs(opt.n);
        } else if (opt.kind == "permanent") {
            p = listing_permanent(opt.n);
        } else if (opt.kind == "determinant") {
            p = listing_determinant(opt.n);
        } else if (opt.kind == "constants") {
            p = listing_constant_functions(opt.n);
        } else if (opt.kind == "cyclic") {
            p = listing_cyclic_group(opt.n);
        } else {
            fail(ErrorKind::Parse, "unknown listing kind '" + opt.kind + "'");
        }
        vars = VarTable::matrix(opt.n);
    }
    write_output(opt.out, to_text(p, vars));
    return 0;
}

// run -------------------------------------------------------------------------

struct RunOptions {
    std::string listing;
    std::string input;
    std::string kind = "vector";
    std::size_t m = 0;
};

BitVector parse_bit_input(std::string_view body) {
    std::optional<BitVector> bits;
    std::istringstream in{std::string(body)};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (bits) fail(ErrorKind::Parse, "vector input must be a single bit string");
        const auto last = line.find_last_not_of(" \t\r");
        bits = bits_from_string(line.substr(first, last - first + 1));
    }
    if (!bits) fail(ErrorKind::Parse, "vector input is empty");
    return *bits;
}

int cmd_run(const RunOptions& opt) {
    const auto listing = parse_poly(read_file(opt.listing));
    const std::uint64_t m = opt.m > 0 ? opt.m : listing.order;
    const auto body = read_file(opt.input);

    RunResult result;
    if (opt.kind == "vector") {
        if (listing.vars.layout() != VarTable::Layout::Vector) {
            fail(ErrorKind::DimensionMismatch, "vector computer needs a vector-variable listing");
        }
        DifferentialComputer dc(listing.poly, listing.vars.width(), m, InputKind::Vector);
        result = run_vector(dc, parse_bit_input(body));
    } else if (opt.kind == "matrix" || opt.kind == "functional") {
        const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(listing.poly.nvars()))));
        if (n * n != listing.poly.nvars()) {
            fail(ErrorKind::DimensionMismatch, "matrix computer needs n^2 variables");
        }
        if (opt.kind == "matrix") {
            DifferentialComputer dc(listing.poly, n, m, InputKind::Matrix);
            result = run_matrix(dc, parse_graph(body));
        } else {
            DifferentialComputer dc(listing.poly, n, m, InputKind::Functional);
            result = run_functional(dc, parse_function(body));
        }
    } else {
        fail(ErrorKind::Parse, "unknown input kind '" + opt.kind + "'");
    }
    std::cout << (result.bit ? 1 : 0) << " " << result.scalar << "\n";
    return 0;
}

// verify / bound ----------------------------------------------------------------

int cmd_verify(const std::string& decomposition_path, const std::string& listing_path) {
    const auto c = parse_chow(read_file(decomposition_path));
    const auto listing = parse_poly(read_file(listing_path));
    if (c.nvars() != listing.poly.nvars()) {
        fail(ErrorKind::DimensionMismatch, "decomposition has " + std::to_string(c.nvars()) +
                                               " variables, listing has " + std::to_string(listing.poly.nvars()));
    }
    std::cout << "rho " << c.rho() << " d " << c.degree() << " n " << c.nvars() << "\n";
    if (!verify(c, listing.poly)) {
        std::cout << "reject\n";
        return kExitReject;
    }
    std::cout << "accept\n";
    const auto overlap = is_totally_non_overlapping(listing.poly);
    if (overlap.witness) {
        const auto exact = chow_rank_non_overlapping(listing.poly);
        if (exact.rank == c.rho()) std::cout << "matches non-overlapping lower bound " << exact.rank << "\n";
    }
    return 0;
}

int cmd_bound(const std::string& listing_path, const std::string& certificate_path, const std::string& emit_path) {
    const auto listing = parse_poly(read_file(listing_path));
    const auto& p = listing.poly;

    std::ostringstream line;
    if (p.is_homogeneous() && p.degree() == 2) line << "lower " << degree2_chow_lower_bound(p) << " ";
    line << "upper " << p.size();

    std::optional<NonOverlapRank> exact;
    if (is_totally_non_overlapping(p).witness) {
        exact = chow_rank_non_overlapping(p);
        line << " exact " << exact->rank;
    }

    int status = 0;
    if (!certificate_path.empty()) {
        const auto c = parse_chow(read_file(certificate_path));
        if (c.nvars() != p.nvars()) fail(ErrorKind::DimensionMismatch, "certificate variable count differs");
        if (verify(c, p)) {
            line << (c.rho() == 1 ? " product-certificate " : " certificate ") << c.rho();
        } else {
            line << " certificate rejected";
            status = kExitReject;
        }
    }
    std::cout << line.str() << "\n";

    if (!emit_path.empty()) {
        if (!exact) fail(ErrorKind::NotApplicable, "no exact decomposition to emit for this listing");
        write_output(emit_path, chow_to_text(exact->decomposition));
    }
    return status;
}

// transform ---------------------------------------------------------------------

int cmd_transform(const std::string& graphset_path, const std::string& mode, const std::string& f_spec,
                  const std::string& out_dir) {
    const auto graphs = parse_graph_set(read_file(graphset_path));
    TransformSpec spec;
    if (mode == "T") {
        spec.mode = TransformMode::T;
    } else if (mode == "Tf") {
        spec.mode = TransformMode::Tf;
        std::istringstream in(f_spec);
        std::size_t f0 = 0, f1 = 0;
        std::string rest;
        if (!(in >> f0 >> f1) || (in >> rest) || f0 > 1 || f1 > 1) {
            fail(ErrorKind::Parse, "--f must be two images in {0,1}, e.g. \"0 0\"");
        }
        spec.f = FunctionTable({f0, f1});
    } else {
        fail(ErrorKind::Parse, "--mode must be T or Tf");
    }

    const auto result = transform_set(graphs, spec);
    const std::size_t big = spec.mode == TransformMode::T ? result.n * result.n : result.n * result.n + 2;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        write_output((dir / "transformed.fset").string(), function_set_to_text(result.images));
        write_output((dir / "before.poly").string(), to_text(result.before, VarTable::matrix(result.n)));
        write_output((dir / "after.poly").string(), to_text(result.after, VarTable::matrix(big)));
    }
    std::cout << "graphs " << result.images.size() << " n " << result.n << " mode " << mode << " vertices " << big
              << "\n";
    if (!restriction_recovers(result, spec)) {
        std::cout << "recovery FAILED\n";
        return kExitModel;
    }
    std::cout << "recovery ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differential computers over additive listings"};
    app.require_subcommand(1);

    BuildOptions build;
    auto* build_cmd = app.add_subcommand("build", "Write a listing in the canonical polynomial format");
    build_cmd->add_option("kind", build.kind,
                          "truth-table | functional | permanent | determinant | iso | constants | cyclic | "
                          "lagrange | standard | functional-product")
        ->required();
    build_cmd->add_option("--n", build.n, "Size parameter");
    build_cmd->add_option("--m", build.m, "Term degree for the standard non-overlapping form");
    build_cmd->add_option("--table", build.table, "Truth-table file");
    build_cmd->add_option("--graph", build.graph, "Graph file");
    build_cmd->add_option("--out,-o", build.out, "Output path (default stdout)");

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Execute a listing on one input");
    run_cmd->add_option("listing", run.listing)->required();
    run_cmd->add_option("input", run.input)->required();
    run_cmd->add_option("--kind", run.kind, "vector | matrix | functional")
        ->check(CLI::IsMember({"vector", "matrix", "functional"}));
    run_cmd->add_option("--m", run.m, "Exponent parameter (default: listing header)");

    std::string decomposition, listing_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check that a Chow decomposition expands to a listing");
    verify_cmd->add_option("decomposition", decomposition)->required();
    verify_cmd->add_option("listing", listing_path)->required();

    std::string bound_listing, certificate, emit;
    auto* bound_cmd = app.add_subcommand("bound", "Print Chow rank bounds for a listing");
    bound_cmd->add_option("listing", bound_listing)->required();
    bound_cmd->add_option("--certificate", certificate, "Decomposition to verify as an upper bound");
    bound_cmd->add_option("--emit-certificate", emit, "Write the exact decomposition when one is known");

    std::string graphset, mode = "T", f_spec, out_dir;
    auto* transform_cmd = app.add_subcommand("transform", "Map a graph set to functional graphs");
    transform_cmd->add_option("graphset", graphset)->required();
    transform_cmd->add_option("--mode", mode, "T | Tf")->check(CLI::IsMember({"T", "Tf"}));
    transform_cmd->add_option("--f", f_spec, "f : Z_2 -> Z_2 for Tf, as two images, e.g. \"0 0\"");
    transform_cmd->add_option("--out-dir", out_dir, "Directory for transformed.fset, before.poly, after.poly");

    std::uint64_t seed = 0;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in consistency checks");
    selftest_cmd->add_option("--seed", seed, "Seed for randomised checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*build_cmd) return cmd_build(build);
        if (*run_cmd) return cmd_run(run);
        if (*verify_cmd) return cmd_verify(decomposition, listing_path);
        if (*bound_cmd) return cmd_bound(bound_listing, certificate, emit);
        if (*transform_cmd) return cmd_transform(graphset, mode, f_spec, out_dir);
        if (*selftest_cmd) return run_selftest(seed, std::cout) ? 0 : kExitReject;
    } catch (const Error& e) {
        std::cerr << "diffcomp: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "diffcomp: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
