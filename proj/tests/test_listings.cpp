#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "diffcomp/error.hpp"
#include "diffcomp/graphs.hpp"
#include "diffcomp/listings.hpp"
#include "support.hpp"

using namespace diffcomp;

namespace {

Monomial mono(std::initializer_list<Var> vars) { return Monomial::product_of(std::vector<Var>(vars)); }

MultiPoly sum_of(std::size_t nvars, std::initializer_list<std::pair<Monomial, long>> terms) {
    MultiPoly p(nvars);
    for (const auto& [m, c] : terms) p.add_term(m, CycloRational(c));
    return p;
}

Var a(std::size_t n, std::size_t i, std::size_t j) { return static_cast<Var>(n * i + j); }

ErrorKind kind_of(const std::function<void()>& call) {
    try {
        call();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalInconsistency;
}

TruthTable table_from_mask(std::size_t n, std::uint64_t mask) {
    TruthTable t(n, 1);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        if ((mask >> x) & 1) t.add_yes(bits_from_index(x, n));
    }
    return t;
}

// Sign of a permutation by counting inversions.
int sign_of(const std::vector<std::size_t>& sigma) {
    int s = 1;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (std::size_t j = i + 1; j < sigma.size(); ++j) s = sigma[i] > sigma[j] ? -s : s;
    }
    return s;
}

}  // namespace

TEST_CASE("bit vectors use big-endian lex order") {
    CHECK(bits_from_index(1, 3) == BitVector{0, 0, 1});
    CHECK(bits_from_index(6, 3) == BitVector{1, 1, 0});
    CHECK(bits_to_string(bits_from_string("101")) == "101");
    CHECK(bits_to_string(BitVector{}) == "-");
    CHECK(bits_from_string("-").empty());
    CHECK_THROWS_AS(bits_from_string("12"), Error);
}

TEST_CASE("listings from truth tables") {
    TruthTable and2(2, 1);
    and2.add_yes({1, 1});
    CHECK(listing_from_truth_table(and2) == sum_of(2, {{mono({0, 1}), 1}}));

    TruthTable eq(3, 1);
    eq.add_yes({1, 0, 1});
    CHECK(listing_from_truth_table(eq) == sum_of(3, {{mono({0, 2}), 1}}));

    // F_{subset of {0,1}} on Z_2: every subset is a YES instance.
    const auto subset = TruthTable::from_predicate(2, [](const BitVector&) { return true; });
    const auto p = listing_from_truth_table(subset);
    auto product = MultiPoly::constant(CycloRational(1), 2);
    for (Var v : {0, 1}) product *= MultiPoly::constant(CycloRational(1), 2) + MultiPoly::variable(v, 2);
    CHECK(p == product);
    CHECK(p.size() == 4);

    TruthTable phased(1, 4);
    phased.add_yes({1}, 3);
    phased.add_yes({0}, 6);
    CHECK(phased.phase({0}) == 2);
    const auto q = listing_from_truth_table(phased);
    CHECK(q.coefficient(mono({0})) == root_of_unity(4, 3));
    CHECK(q.constant_term() == CycloRational(-1));
}

TEST_CASE("truth table invariants") {
    CHECK(kind_of([] { TruthTable(2, 0); }) == ErrorKind::Domain);
    TruthTable t(2, 1);
    CHECK_THROWS_AS(t.add_yes({1}), Error);
    CHECK(kind_of([&] { t.set_phase({1, 1}, 0); }) != ErrorKind::InternalInconsistency);
    t.add_yes({1, 1}, 5);
    CHECK(t.phase({1, 1}) == 0);
}

TEST_CASE("round trip: truth table to listing and back") {
    auto rng = testing::make_rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(testing::uniform(rng, 0, 4));
        const std::uint64_t orders[] = {1, 2, 3, 4, 6};
        const auto m = orders[testing::uniform(rng, 0, 4)];
        TruthTable t(n, m);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            if (testing::uniform(rng, 0, 1)) t.add_yes(bits_from_index(x, n), testing::uniform(rng, 0, 20));
        }
        CHECK(truth_table_from_listing(listing_from_truth_table(t), m) == t);
        CHECK(parse_truth_table(truth_table_to_text(t)) == t);
    }
}

TEST_CASE("functional-graph listings") {
    CHECK(listing_functional_graphs(1) == sum_of(1, {{mono({0}), 1}}));
    CHECK(listing_functional_graphs(2) ==
          sum_of(4, {{mono({0, 2}), 1}, {mono({0, 3}), 1}, {mono({1, 2}), 1}, {mono({1, 3}), 1}}));

    // Oracle: enumerate image vectors with nested loops.
    MultiPoly expected(9);
    for (std::size_t f0 = 0; f0 < 3; ++f0) {
        for (std::size_t f1 = 0; f1 < 3; ++f1) {
            for (std::size_t f2 = 0; f2 < 3; ++f2) {
                expected.add_term(mono({a(3, 0, f0), a(3, 1, f1), a(3, 2, f2)}), CycloRational(1));
            }
        }
    }
    const auto p3 = listing_functional_graphs(3);
    CHECK(p3 == expected);
    CHECK(p3.size() == 27);
    CHECK(p3.is_homogeneous());
    CHECK(p3.degree() == 3);
    CHECK(p3.is_multilinear());

    for (std::size_t n = 1; n <= 4; ++n) {
        auto product = MultiPoly::constant(CycloRational(1), n * n);
        for (std::size_t i = 0; i < n; ++i) {
            MultiPoly row(n * n);
            for (std::size_t j = 0; j < n; ++j) row.add_term(mono({a(n, i, j)}), CycloRational(1));
            product *= row;
        }
        CHECK(listing_functional_graphs(n) == product);
    }
    CHECK(kind_of([] { listing_functional_graphs(7); }) == ErrorKind::SizeCap);
}

TEST_CASE("permanent and determinant") {
    CHECK(listing_determinant(2) == sum_of(4, {{mono({0, 3}), 1}, {mono({1, 2}), -1}}));
    CHECK(listing_permanent(2) == sum_of(4, {{mono({0, 3}), 1}, {mono({1, 2}), 1}}));

    const auto det3 = listing_determinant(3);
    CHECK(det3.size() == 6);
    std::vector<std::size_t> sigma{0, 1, 2};
    int negatives = 0;
    do {
        const int s = sign_of(sigma);
        negatives += s < 0;
        CHECK(det3.coefficient(mono({a(3, 0, sigma[0]), a(3, 1, sigma[1]), a(3, 2, sigma[2])})) == CycloRational(s));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    CHECK(negatives == 3);
    CHECK(det3.order() == 2);

    CHECK(kind_of([] { listing_permanent(8); }) == ErrorKind::SizeCap);
    CHECK(kind_of([] { listing_determinant(8); }) == ErrorKind::SizeCap);
}

TEST_CASE("permanent equals the listing of the permutation-matrix predicate") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto is_perm = [n](const BitVector& b) {
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t row = 0, col = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    row += b[n * i + j];
                    col += b[n * j + i];
                }
                if (row != 1 || col != 1) return false;
            }
            return true;
        };
        CHECK(listing_permanent(n) == listing_from_truth_table(TruthTable::from_predicate(n * n, is_perm)));
    }
}

TEST_CASE("determinant at permutation matrices is a square root of one") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto det = listing_determinant(n);
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            std::vector<CycloRational> point(n * n);
            for (std::size_t i = 0; i < n; ++i) point[a(n, i, sigma[i])] = CycloRational(1);
            const auto v = evaluate(det, point);
            CHECK(v == CycloRational(sign_of(sigma)));
            CHECK(v.pow(2).is_one());
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
}

TEST_CASE("graph isomorphism listings") {
    const std::pair<std::size_t, std::size_t> edge[] = {{0, 1}};
    CHECK(listing_graph_isomorphism(Graph::from_edges(2, edge)) == sum_of(4, {{mono({1}), 1}, {mono({2}), 1}}));

    const std::pair<std::size_t, std::size_t> cycle[] = {{0, 1}, {1, 2}, {2, 0}};
    const auto c3 = listing_graph_isomorphism(Graph::from_edges(3, cycle));
    CHECK(c3 == sum_of(9, {{mono({a(3, 0, 1), a(3, 1, 2), a(3, 2, 0)}), 1},
                           {mono({a(3, 0, 2), a(3, 2, 1), a(3, 1, 0)}), 1}}));

    CHECK(listing_graph_isomorphism(Graph(2)) == MultiPoly::constant(CycloRational(1), 4));
    CHECK(kind_of([] { listing_graph_isomorphism(Graph(7)); }) == ErrorKind::SizeCap);
}

TEST_CASE("constant-function and cyclic-group listings") {
    CHECK(listing_constant_functions(2) == sum_of(4, {{mono({0, 2}), 1}, {mono({1, 3}), 1}}));
    CHECK(listing_cyclic_group(2) == sum_of(4, {{mono({0, 3}), 1}, {mono({1, 2}), 1}}));
    CHECK(listing_cyclic_group(1) == sum_of(1, {{mono({0}), 1}}));
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(listing_constant_functions(n).size() == n);
        CHECK(listing_cyclic_group(n).size() == n);
    }
}

TEST_CASE("Lagrange interpolants") {
    TruthTable and2(2, 1);
    and2.add_yes({1, 1});
    CHECK(lagrange_interpolant(and2) == sum_of(2, {{mono({0, 1}), 1}}));

    const auto or2 = table_from_mask(2, 0b1110);
    CHECK(lagrange_interpolant(or2) == sum_of(2, {{mono({0}), 1}, {mono({1}), 1}, {mono({0, 1}), -1}}));
    CHECK(lagrange_interpolant(TruthTable(2, 1)).is_zero());

    CHECK(kind_of([] { lagrange_interpolant(TruthTable(1, 2)); }) == ErrorKind::Domain);
}

TEST_CASE("Lagrange interpolants agree with F on the hypercube and reduce to P_F") {
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::uint64_t points = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
            const auto t = table_from_mask(n, mask);
            const auto l = lagrange_interpolant(t);
            for (std::uint64_t x = 0; x < points; ++x) {
                const auto b = bits_from_index(x, n);
                std::vector<CycloRational> point(b.begin(), b.end());
                CHECK(evaluate(l, point) == CycloRational(t.value(b) ? 1 : 0));
            }
            const auto reduced = lagrange_binomial_reduction(t);
            CHECK(monomial_support_equals(reduced, t));
            CHECK(reduced == listing_from_truth_table(t));
        }
    }
}

TEST_CASE("monomial support comparison") {
    TruthTable and2(2, 1);
    and2.add_yes({1, 1});
    CHECK(monomial_support_equals(listing_from_truth_table(and2), and2));
    CHECK_FALSE(monomial_support_equals(sum_of(2, {{mono({0}), 1}}), and2));
    const auto or2 = table_from_mask(2, 0b1110);
    CHECK(monomial_support_equals(lagrange_binomial_reduction(or2), or2));
    const auto subset = table_from_mask(2, 0b1111);
    CHECK(monomial_support_equals(listing_from_truth_table(subset), subset));
}

TEST_CASE("DIFFCOMP_MAX_TERMS replaces the default caps") {
    CHECK(max_terms() == 100000);
    CHECK_FALSE(max_terms_overridden());
    setenv("DIFFCOMP_MAX_TERMS", "10", 1);
    CHECK(max_terms() == 10);
    CHECK(kind_of([] { listing_functional_graphs(3); }) == ErrorKind::SizeCap);
    CHECK(listing_functional_graphs(2).size() == 4);
    setenv("DIFFCOMP_MAX_TERMS", "1000000", 1);
    CHECK(listing_constant_functions(9).size() == 9);
    unsetenv("DIFFCOMP_MAX_TERMS");
    CHECK(kind_of([] { listing_functional_graphs(7); }) == ErrorKind::SizeCap);
}

TEST_CASE("truth-table text format") {
    TruthTable t(2, 3);
    t.add_yes({0, 1}, 2);
    t.add_yes({1, 1});
    CHECK(truth_table_to_text(t) == "2 3\n01 2\n11 0\n");
    TruthTable empty_point(0, 1);
    empty_point.add_yes({});
    CHECK(truth_table_to_text(empty_point) == "0 1\n- 0\n");
    CHECK(parse_truth_table("0 1\n- 0\n") == empty_point);
    CHECK_THROWS_AS(parse_truth_table("2 1\n011 0\n"), Error);
    CHECK_THROWS_AS(parse_truth_table("2 1\n01 0\n01 0\n"), Error);
    CHECK_THROWS_AS(parse_truth_table("2\n"), Error);
}
