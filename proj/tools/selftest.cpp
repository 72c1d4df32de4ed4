#include "selftest.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "diffcomp/chow.hpp"
#include "diffcomp/engine.hpp"
#include "diffcomp/error.hpp"
#include "diffcomp/graphs.hpp"
#include "diffcomp/listings.hpp"

using namespace diffcomp;

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool is_permutation_matrix(const Graph& g) {
    std::vector<int> column_hits(g.order(), 0);
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (g.out_degree(i) != 1) return false;
        for (std::size_t j = 0; j < g.order(); ++j) column_hits[j] += g.has_edge(i, j);
    }
    for (int hits : column_hits) {
        if (hits != 1) return false;
    }
    return true;
}

std::string check_example() {
    const auto p = listing_functional_graphs(2);
    if (p.size() != 4) return "functional listing has " + std::to_string(p.size()) + " terms";
    const auto t = VarTable::matrix(2);
    const Var path[] = {t.index(0, 1), t.index(0, 0)};
    if (!evaluate(apply_derivatives(p, path), std::vector<CycloRational>(4)).is_zero()) {
        return "d/da01 d/da00 did not vanish";
    }
    return {};
}

std::string check_truth_tables(Rng& rng) {
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::size_t points = std::size_t{1} << n;
        const std::size_t samples = n <= 2 ? std::size_t{1} << points : 40;
        for (std::size_t s = 0; s < samples; ++s) {
            const std::uint64_t masks = n <= 2 ? s : rng();
            const std::uint64_t m = std::vector<std::uint64_t>{1, 2, 4}[uniform(rng, 0, 2)];
            TruthTable table(n, m);
            for (std::size_t x = 0; x < points; ++x) {
                if ((masks >> x) & 1) table.add_yes(bits_from_index(x, n), static_cast<long long>(uniform(rng, 0, m)));
            }
            const auto dc = DifferentialComputer::from_truth_table(table);
            for (std::size_t x = 0; x < points; ++x) {
                const auto b = bits_from_index(x, n);
                if (run_vector(dc, b).bit != table.value(b)) return "mismatch at " + bits_to_string(b);
            }
        }
    }
    return {};
}

std::string check_permutations() {
    const DifferentialComputer det(listing_determinant(3), 3, 2, InputKind::Matrix);
    const DifferentialComputer per(listing_permanent(3), 3, 1, InputKind::Matrix);
    for (std::uint32_t mask = 0; mask < 512; ++mask) {
        Graph g(3);
        for (std::size_t k = 0; k < 9; ++k) g.set_edge(k / 3, k % 3, (mask >> k) & 1);
        const bool want = is_permutation_matrix(g);
        if (run_matrix(det, g).bit != want || run_matrix(per, g).bit != want) {
            return "disagreement on mask " + std::to_string(mask);
        }
    }
    return {};
}

std::string check_certificates() {
    for (std::size_t n = 2; n <= 3; ++n) {
        if (!verify(functional_product_decomposition(n), listing_functional_graphs(n))) {
            return "product form fails for n=" + std::to_string(n);
        }
    }
    for (std::size_t n = 2; n <= 4; ++n) {
        if (chow_rank_non_overlapping(listing_cyclic_group(n)).rank != n) return "cyclic rank differs from n";
        if (chow_rank_non_overlapping(listing_constant_functions(n)).rank != n) return "constants rank differs from n";
    }
    return {};
}

ChowDecomposition per_term(const MultiPoly& p, std::size_t d) {
    ChowDecomposition c(p.size(), d, p.nvars());
    std::size_t u = 0;
    for (const auto& [mono, coeff] : p.terms()) {
        std::size_t v = 0;
        for (const auto& [var, e] : mono.factors()) {
            for (std::uint32_t k = 0; k < e; ++k, ++v) c.at(u, v, var) = v == 0 ? coeff : CycloRational(1);
        }
        ++u;
    }
    return c;
}

std::string check_homogenize(Rng& rng) {
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t nvars = uniform(rng, 2, 4);
        const std::size_t d = uniform(rng, 2, 3);
        MultiPoly target(nvars);
        for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) {
            std::vector<Monomial::Factor> f;
            for (std::size_t j = 0; j < d; ++j) f.emplace_back(static_cast<Var>(uniform(rng, 0, nvars - 1)), 1);
            target.add_term(Monomial::from_factors(f), CycloRational(static_cast<long>(uniform(rng, 1, 5))));
        }
        auto c = per_term(target, d);
        // (k + l0) l1..l_{d-1} + (-k) l1..l_{d-1} + (-l0) l1..l_{d-1} = 0
        ChowDecomposition pad(3, d, nvars);
        const CycloRational k(static_cast<long>(uniform(rng, 1, 9)));
        pad.constant(0, 0) = k;
        pad.constant(1, 0) = -k;
        for (std::size_t w = 0; w < nvars; ++w) {
            const CycloRational l0(static_cast<long>(uniform(rng, 0, 6)) - 3);
            pad.at(0, 0, w) = l0;
            pad.at(2, 0, w) = -l0;
            for (std::size_t v = 1; v < d; ++v) {
                const CycloRational lv(static_cast<long>(uniform(rng, 0, 6)) - 3);
                for (std::size_t u = 0; u < 3; ++u) pad.at(u, v, w) = lv;
            }
        }
        c.append(pad);
        if (!verify(c, target)) return "padded decomposition does not verify";
        if (!verify(homogenize(c, target), target)) return "homogenised decomposition does not verify";
    }
    return {};
}

std::string check_transforms(Rng& rng) {
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = uniform(rng, 2, 3);
        std::vector<Graph> graphs;
        for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) {
            Graph g(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) g.set_edge(i, j, uniform(rng, 0, 1) == 1);
            }
            graphs.push_back(g);
        }
        TransformSpec spec;
        if (trial % 2 == 1) {
            spec.mode = TransformMode::Tf;
            spec.f = FunctionTable({uniform(rng, 0, 1), uniform(rng, 0, 1)});
        }
        if (!restriction_recovers(transform_set(graphs, spec), spec)) return "recovery failed";
    }
    return {};
}

std::string check_inverse(Rng& rng) {
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = uniform(rng, 1, 3);
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = Rational(static_cast<long>(uniform(rng, 0, 10)) - 5, static_cast<long>(uniform(rng, 1, 4)));
                m(i, j).canonicalize();
            }
        }
        try {
            if (!(m * inverse_via_gradient(m) == RationalMatrix::identity(n))) return "M * inverse is not identity";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Singular) throw;
        }
    }
    return {};
}

}  // namespace

bool run_selftest(std::uint64_t seed, std::ostream& out) {
    Rng rng(seed);
    const std::vector<std::pair<std::string, std::function<std::string()>>> checks = {
        {"functional-example", check_example},
        {"truth-table-soundness", [&] { return check_truth_tables(rng); }},
        {"permutation-predicate", check_permutations},
        {"chow-certificates", check_certificates},
        {"homogenize", [&] { return check_homogenize(rng); }},
        {"transform-recovery", [&] { return check_transforms(rng); }},
        {"inverse-gradient", [&] { return check_inverse(rng); }},
    };
    std::size_t passed = 0;
    for (const auto& [name, run] : checks) {
        std::string problem;
        try {
            problem = run();
        } catch (const std::exception& e) {
            problem = std::string("exception: ") + e.what();
        }
        if (problem.empty()) {
            out << "ok   " << name << "\n";
            ++passed;
        } else {
            out << "FAIL " << name << ": " << problem << "\n";
        }
    }
    out << "selftest seed " << seed << ": " << passed << "/" << checks.size() << " passed\n";
    return passed == checks.size();
}
