#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diffcomp/error.hpp"
#include "diffcomp/listings.hpp"
#include "diffcomp/multipoly.hpp"
#include "support.hpp"

using namespace diffcomp;

namespace {

MultiPoly var(Var v, std::size_t n) { return MultiPoly::variable(v, n); }
MultiPoly one(std::size_t n) { return MultiPoly::constant(CycloRational(1), n); }

Monomial mono(std::initializer_list<Var> vars) { return Monomial::product_of(std::vector<Var>(vars)); }

// Floating-point oracle for polynomials with rational coefficients.
double eval_double(const MultiPoly& p, const std::vector<double>& point) {
    double total = 0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.rational_part().get_d();
        for (const auto& [v, e] : m.factors()) t *= std::pow(point[v], static_cast<double>(e));
        total += t;
    }
    return total;
}

int permutation_sign(const std::vector<std::size_t>& sigma) {
    int sign = 1;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (std::size_t j = i + 1; j < sigma.size(); ++j) {
            if (sigma[i] > sigma[j]) sign = -sign;
        }
    }
    return sign;
}

}  // namespace

TEST_CASE("ring operations keep canonical sparse form") {
    const std::size_t n = 2;
    const auto p = (var(0, n) + var(1, n)) * (var(0, n) - var(1, n));
    MultiPoly expected(n);
    expected.add_term(Monomial::variable(0, 2), CycloRational(1));
    expected.add_term(Monomial::variable(1, 2), CycloRational(-1));
    CHECK(p == expected);
    CHECK(p.size() == 2);

    const auto zero = p + (-p);
    CHECK(zero.is_zero());
    CHECK(zero.terms().empty());

    MultiPoly q(3);
    q.add_term(mono({0}), CycloRational(2));
    q.add_term(mono({0}), CycloRational(-2));
    CHECK(q.is_zero());
    CHECK_THROWS_AS(q.add_term(mono({3}), CycloRational(1)), Error);
}

TEST_CASE("product of row sums expands to the functional listing for n = 2") {
    const auto t = VarTable::matrix(2);
    MultiPoly product = one(4);
    for (std::size_t i = 0; i < 2; ++i) product *= var(t.index(i, 0), 4) + var(t.index(i, 1), 4);

    MultiPoly expected(4);
    for (auto [j0, j1] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
        expected.add_term(mono({t.index(0, j0), t.index(1, j1)}), CycloRational(1));
    }
    CHECK(product == expected);
    CHECK(product == listing_functional_graphs(2));
}

TEST_CASE("graded-lex order lists a00a10, a00a11, a01a10, a01a11") {
    const auto p = listing_functional_graphs(2);
    const auto t = VarTable::matrix(2);
    std::vector<std::string> names;
    for (const auto& [m, c] : p.terms()) {
        std::string s;
        for (const auto& [v, e] : m.factors()) s += t.name(v);
        names.push_back(s);
    }
    CHECK(names == std::vector<std::string>{"a_{0,0}a_{1,0}", "a_{0,0}a_{1,1}", "a_{0,1}a_{1,0}", "a_{0,1}a_{1,1}"});

    MultiPoly mixed(3);
    mixed.add_term(Monomial{}, CycloRational(1));
    mixed.add_term(mono({2}), CycloRational(1));
    mixed.add_term(mono({0, 1}), CycloRational(1));
    CHECK(mixed.terms().begin()->first == mono({0, 1}));
    CHECK(std::prev(mixed.terms().end())->first.is_constant());
}

TEST_CASE("partial derivatives") {
    const auto t = VarTable::matrix(2);
    const auto d = partial_derivative(listing_functional_graphs(2), t.index(0, 1));
    CHECK(d == var(t.index(1, 0), 4) + var(t.index(1, 1), 4));

    CHECK(partial_derivative(MultiPoly::constant(CycloRational(7), 1), 0).is_zero());

    const auto cube = MultiPoly::term(Monomial::variable(0, 3), CycloRational(1), 1);
    CHECK(partial_derivative(cube, 0) == MultiPoly::term(Monomial::variable(0, 2), CycloRational(3), 1));
}

TEST_CASE("evaluation") {
    const auto t = VarTable::matrix(2);
    const auto p = var(t.index(1, 0), 4) + var(t.index(1, 1), 4);
    CHECK(evaluate(p, std::vector<CycloRational>(4)).is_zero());
    CHECK(evaluate(MultiPoly(5), std::vector<CycloRational>{1, 2, 3, 4, 5}).is_zero());
    CHECK(evaluate(p, std::map<Var, CycloRational>{{t.index(1, 1), CycloRational(5)}}) == CycloRational(5));

    // Det at the permutation matrix of sigma = (0 1 2): sign from the inversion count.
    const std::vector<std::size_t> sigma{1, 2, 0};
    const auto t3 = VarTable::matrix(3);
    std::vector<CycloRational> point(9);
    for (std::size_t i = 0; i < 3; ++i) point[t3.index(i, sigma[i])] = CycloRational(1);
    CHECK(permutation_sign(sigma) == 1);
    CHECK(evaluate(listing_determinant(3), point) == CycloRational(permutation_sign(sigma)));
}

TEST_CASE("restriction and relabelling") {
    const auto p3 = MultiPoly::term(mono({0, 1, 2}), CycloRational(1), 3);
    const auto r = restrict_and_relabel(p3, {{1, CycloRational(1)}, {2, CycloRational(1)}}, {}, 1);
    CHECK(r == var(0, 1));

    // Two-term cubic standard form: keep the first variable of each term.
    MultiPoly two(6);
    two.add_term(mono({0, 1, 2}), CycloRational(2));
    two.add_term(mono({3, 4, 5}), CycloRational(3));
    std::map<Var, CycloRational> fix;
    for (Var v : {1, 2, 4, 5}) fix.emplace(v, CycloRational(1));
    const auto linear = restrict_and_relabel(two, fix, {{0, 0}, {3, 1}}, 2);
    CHECK(linear == var(0, 2) * CycloRational(2) + var(1, 2) * CycloRational(3));

    const auto xy = MultiPoly::term(mono({0, 1}), CycloRational(1), 3);
    auto kind_of = [](auto&& call) {
        try {
            call();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InternalInconsistency;
    };
    CHECK(kind_of([&] { restrict_and_relabel(xy, {{0, CycloRational(1)}}, {{0, 2}}); }) ==
          ErrorKind::InvalidRelabelling);
    CHECK(kind_of([&] { restrict_and_relabel(xy, {}, {{0, 2}, {1, 2}}); }) == ErrorKind::InvalidRelabelling);
    CHECK(kind_of([&] { restrict_and_relabel(xy, {}, {{0, 1}}); }) == ErrorKind::InvalidRelabelling);
    CHECK(restrict_and_relabel(xy, {}, {{0, 1}, {1, 0}}) == xy);
}

TEST_CASE("mixed partials commute and the Leibniz rule holds") {
    auto rng = testing::make_rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
        const auto p = testing::random_poly(rng, n, 5, 3);
        const auto q = testing::random_poly(rng, n, 4, 2);
        for (Var u = 0; u < n; ++u) {
            const auto pu = partial_derivative(p, u);
            CHECK(partial_derivative(p * q, u) == pu * q + p * partial_derivative(q, u));
            for (Var v = 0; v < n; ++v) CHECK(partial_derivative(pu, v) == partial_derivative(partial_derivative(p, v), u));
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto rng = testing::make_rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
        const auto p = testing::random_poly(rng, n, 4, 2);
        const auto q = testing::random_poly(rng, n, 4, 2);
        std::vector<CycloRational> point;
        const std::uint64_t m = static_cast<std::uint64_t>(testing::uniform(rng, 1, 6));
        for (std::size_t i = 0; i < n; ++i) point.push_back(testing::random_cyclo(rng, m));
        CHECK(evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point));
        CHECK(evaluate(p + q, point) == evaluate(p, point) + evaluate(q, point));
    }
}

TEST_CASE("symbolic derivatives match central finite differences") {
    auto rng = testing::make_rng(23);
    const double h = 1e-4;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
        const auto p = testing::random_poly(rng, n, 5, 3);
        std::vector<CycloRational> point;
        std::vector<double> x;
        for (std::size_t i = 0; i < n; ++i) {
            point.emplace_back(testing::small_rational(rng));
            x.push_back(point.back().rational_part().get_d());
        }
        const auto v = static_cast<Var>(testing::uniform(rng, 0, static_cast<long>(n) - 1));
        const double exact = evaluate(partial_derivative(p, v), point).rational_part().get_d();
        auto plus = x, minus = x;
        plus[v] += h;
        minus[v] -= h;
        const double fd = (eval_double(p, plus) - eval_double(p, minus)) / (2 * h);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("text format round trips and rejects malformed input") {
    const auto t = VarTable::matrix(2);
    const auto text = to_text(listing_determinant(2), t);
    CHECK(text ==
          "# diffcomp poly v1\n"
          "4 2\n"
          "2:[1/1] * a_{0,0} * a_{1,1}\n"
          "2:[-1/1] * a_{0,1} * a_{1,0}\n");
    const auto back = parse_poly(text);
    CHECK(back.poly == listing_determinant(2));
    CHECK(back.vars == t);
    CHECK(back.order == 2);
    CHECK(to_text(back.poly, back.vars) == text);

    auto rng = testing::make_rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
        auto p = testing::random_poly(rng, n, 6, 3);
        p *= testing::random_cyclo(rng, 3);
        const auto vars = VarTable::vector(n, 'x');
        const auto s = to_text(p, vars);
        const auto q = parse_poly(s);
        CHECK(q.poly == p);
        CHECK(to_text(q.poly, q.vars) == s);
    }

    CHECK_THROWS_AS(parse_poly("3 1\n1:[1/1] * a_{5}\n"), Error);
    CHECK_THROWS_AS(parse_poly("3 1\n1:[1/1] * a_{0}\n1:[2/1] * a_{0}\n"), Error);
    CHECK_THROWS_AS(parse_poly("3 1\n1:[0/1] * a_{0}\n"), Error);
    CHECK_THROWS_AS(parse_poly("3 1\n2:[-1/1] * a_{0}\n"), Error);
    CHECK_THROWS_AS(parse_poly("3 1\n1:[1/1] a_{0}\n"), Error);
    CHECK_THROWS_AS(parse_poly(""), Error);
}
