#include "diffcomp/chow.hpp"

#include <set>

#include "diffcomp/error.hpp"
#include "text_util.hpp"

namespace diffcomp {

ChowDecomposition::ChowDecomposition(std::size_t rho, std::size_t degree, std::size_t nvars)
    : rho_(rho), degree_(degree), nvars_(nvars), entries_(rho * degree * (nvars + 1), CycloRational(0)) {}

std::size_t ChowDecomposition::index(std::size_t u, std::size_t v, std::size_t w) const {
    if (u >= rho_ || v >= degree_ || w > nvars_) fail(ErrorKind::Domain, "hypermatrix index out of range");
    return (u * degree_ + v) * (nvars_ + 1) + w;
}

CycloRational& ChowDecomposition::at(std::size_t u, std::size_t v, std::size_t w) { return entries_[index(u, v, w)]; }

const CycloRational& ChowDecomposition::at(std::size_t u, std::size_t v, std::size_t w) const {
    return entries_[index(u, v, w)];
}

bool ChowDecomposition::is_homogeneous() const {
    for (std::size_t u = 0; u < rho_; ++u) {
        for (std::size_t v = 0; v < degree_; ++v) {
            if (!constant(u, v).is_zero()) return false;
        }
    }
    return true;
}

std::uint64_t ChowDecomposition::order() const {
    std::uint64_t m = 1;
    for (const auto& e : entries_) {
        if (!e.is_zero()) m = lcm_order(m, e.order());
    }
    return m;
}

MultiPoly ChowDecomposition::linear_form(std::size_t u, std::size_t v) const {
    MultiPoly form = MultiPoly::constant(constant(u, v), nvars_);
    for (std::size_t w = 0; w < nvars_; ++w) form.add_term(Monomial::variable(static_cast<Var>(w)), at(u, v, w));
    return form;
}

void ChowDecomposition::append(const ChowDecomposition& other) {
    if (other.degree_ != degree_ || other.nvars_ != nvars_) {
        fail(ErrorKind::DimensionMismatch, "appended decomposition has a different shape");
    }
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    rho_ += other.rho_;
}

MultiPoly expand(const ChowDecomposition& c) {
    MultiPoly out(c.nvars());
    const auto one = MultiPoly::constant(CycloRational(1), c.nvars());
    for (std::size_t u = 0; u < c.rho(); ++u) {
        MultiPoly summand = one;
        for (std::size_t v = 0; v < c.degree() && !summand.is_zero(); ++v) summand *= c.linear_form(u, v);
        out += summand;
    }
    return out;
}

bool verify(const ChowDecomposition& c, const MultiPoly& target) {
    return c.nvars() == target.nvars() && expand(c) == target;
}

ChowDecomposition homogenize(const ChowDecomposition& c, const MultiPoly& target) {
    if (!target.is_homogeneous() || (!target.is_zero() && static_cast<std::size_t>(target.degree()) != c.degree())) {
        fail(ErrorKind::NotHomogeneous, "target is not homogeneous of degree " + std::to_string(c.degree()));
    }
    if (!verify(c, target)) fail(ErrorKind::Domain, "decomposition does not expand to the target");
    ChowDecomposition out = c;
    for (std::size_t u = 0; u < out.rho(); ++u) {
        for (std::size_t v = 0; v < out.degree(); ++v) out.constant(u, v) = CycloRational(0);
    }
    // Every term carrying a constant slot has degree < d and must have cancelled.
    if (!verify(out, target)) {
        fail(ErrorKind::InternalInconsistency, "zeroing constant slots changed the expansion");
    }
    return out;
}

CycloMatrix symmetric_matrix_of(const MultiPoly& p) {
    if (!p.is_homogeneous() || (!p.is_zero() && p.degree() != 2)) {
        fail(ErrorKind::Domain, "symmetric matrix needs a homogeneous degree-two polynomial");
    }
    const std::size_t n = p.nvars();
    CycloMatrix a(n, n);
    const CycloRational half(Rational(1, 2));
    for (const auto& [mono, c] : p.terms()) {
        const auto& f = mono.factors();
        if (f.size() == 1) {
            a(f[0].first, f[0].first) = c;
        } else {
            a(f[0].first, f[1].first) = c * half;
            a(f[1].first, f[0].first) = c * half;
        }
    }
    return a;
}

std::size_t degree2_chow_lower_bound(const MultiPoly& p) {
    const auto r = rank(symmetric_matrix_of(p));
    return (r + 1) / 2;
}

NonOverlapResult is_totally_non_overlapping(const MultiPoly& p) {
    NonOverlapResult out;
    if (!p.is_multilinear()) return out;
    std::set<Var> seen;
    for (const auto& [mono, c] : p.terms()) {
        for (const auto& [v, e] : mono.factors()) {
            if (!seen.insert(v).second) return out;
        }
    }
    out.non_overlapping = true;
    if (p.is_zero() || !p.is_homogeneous() || p.degree() < 2) return out;

    out.term_degree = static_cast<std::size_t>(p.degree());
    std::map<Var, Var> witness;
    std::size_t i = 0;
    for (const auto& [mono, c] : p.terms()) {
        std::size_t j = 0;
        for (const auto& [v, e] : mono.factors()) witness.emplace(v, static_cast<Var>(out.term_degree * i + j++));
        ++i;
    }
    out.witness = std::move(witness);
    return out;
}

MultiPoly standard_non_overlapping(std::size_t m, const std::vector<CycloRational>& alphas) {
    MultiPoly out(m * alphas.size());
    std::vector<Var> support(m);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i].is_zero()) fail(ErrorKind::Domain, "standard form needs nonzero coefficients");
        for (std::size_t j = 0; j < m; ++j) support[j] = static_cast<Var>(m * i + j);
        out.add_term(Monomial::product_of(support), alphas[i]);
    }
    return out;
}

MultiPoly restrict_to_bilinear(const MultiPoly& standard_form, std::size_t m, std::size_t terms) {
    if (m < 2) fail(ErrorKind::Domain, "bilinear restriction needs degree at least two");
    if (standard_form.nvars() != m * terms) fail(ErrorKind::DimensionMismatch, "standard form has the wrong size");
    std::map<Var, CycloRational> fixings;
    std::map<Var, Var> relabel;
    for (std::size_t i = 0; i < terms; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto v = static_cast<Var>(m * i + j);
            if (j < 2) {
                relabel.emplace(v, static_cast<Var>(2 * i + j));
            } else {
                fixings.emplace(v, CycloRational(1));
            }
        }
    }
    return restrict_and_relabel(standard_form, fixings, relabel, 2 * terms);
}

NonOverlapRank chow_rank_non_overlapping(const MultiPoly& p) {
    const auto check = is_totally_non_overlapping(p);
    if (!check.non_overlapping || !check.witness) {
        fail(ErrorKind::NotApplicable,
             "exact rank needs a totally non-overlapping homogeneous multilinear polynomial of degree >= 2");
    }
    const std::size_t m = check.term_degree;
    const std::size_t n = p.size();

    NonOverlapRank out;
    out.rank = n;
    out.decomposition = ChowDecomposition(n, m, p.nvars());
    std::size_t u = 0;
    for (const auto& [mono, coeff] : p.terms()) {
        std::size_t v = 0;
        for (const auto& [var, e] : mono.factors()) {
            out.decomposition.at(u, v, var) = v == 0 ? coeff : CycloRational(1);
            ++v;
        }
        ++u;
    }
    if (!verify(out.decomposition, p)) fail(ErrorKind::InternalInconsistency, "trivial decomposition does not verify");

    const auto standard = restrict_and_relabel(p, {}, *check.witness, m * n);
    out.lower_bound = degree2_chow_lower_bound(restrict_to_bilinear(standard, m, n));
    if (out.lower_bound != n) {
        fail(ErrorKind::InternalInconsistency, "degree-two certificate " + std::to_string(out.lower_bound) +
                                                   " does not match term count " + std::to_string(n));
    }
    return out;
}

ChowDecomposition functional_product_decomposition(std::size_t n) {
    ChowDecomposition c(1, n, n * n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t j = 0; j < n; ++j) c.at(0, v, n * v + j) = CycloRational(1);
    }
    return c;
}

CycloRational evaluate_depth2(const CycloMatrix& x) {
    CycloRational total;
    for (std::size_t u = 0; u < x.rows(); ++u) {
        CycloRational product(1);
        for (std::size_t v = 0; v < x.cols() && !product.is_zero(); ++v) product *= x(u, v);
        total += product;
    }
    return total;
}

CompiledFormula compile_functional(const ChowDecomposition& c, const FunctionTable& g) {
    const std::size_t n = g.size();
    if (c.nvars() != n * n || c.degree() != n) {
        fail(ErrorKind::DimensionMismatch, "decomposition does not match a degree-n listing in n^2 variables");
    }
    if (!c.is_homogeneous()) fail(ErrorKind::Domain, "functional compilation needs a homogeneous decomposition");
    for (std::size_t u = 0; u < c.rho(); ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t w = 0; w < n * n; ++w) {
                if (!c.at(u, v, w).is_zero() && w / n != v) {
                    fail(ErrorKind::Domain, "form (" + std::to_string(u) + ", " + std::to_string(v) +
                                                ") uses variables outside row " + std::to_string(v));
                }
            }
        }
    }
    CompiledFormula out;
    out.inputs = CycloMatrix(c.rho(), n);
    for (std::size_t u = 0; u < c.rho(); ++u) {
        for (std::size_t v = 0; v < n; ++v) out.inputs(u, v) = c.at(u, v, n * v + g(v));
    }
    out.value = evaluate_depth2(out.inputs);
    return out;
}

// File format -------------------------------------------------------------------

std::string chow_to_text(const ChowDecomposition& c) {
    std::string out(kChowFormatHeader);
    out += "\n" + std::to_string(c.rho()) + " " + std::to_string(c.degree()) + " " + std::to_string(c.nvars()) + " " +
           std::to_string(c.order()) + "\n";
    for (std::size_t u = 0; u < c.rho(); ++u) {
        for (std::size_t v = 0; v < c.degree(); ++v) {
            for (std::size_t w = 0; w <= c.nvars(); ++w) {
                if (w > 0) out += ' ';
                out += c.at(u, v, w).to_string();
            }
            out += '\n';
        }
    }
    return out;
}

ChowDecomposition parse_chow(std::string_view body) {
    std::vector<std::string_view> lines;
    for (auto line : text::lines(body)) {
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) fail(ErrorKind::Parse, "decomposition file is empty");
    const auto header = text::tokens(lines[0]);
    if (header.size() != 4) fail(ErrorKind::Parse, "decomposition header must be 'rho d n m'");
    const std::size_t rho = text::to_size(header[0]);
    const std::size_t d = text::to_size(header[1]);
    const std::size_t n = text::to_size(header[2]);
    const std::size_t m = text::to_size(header[3]);
    if (m == 0) fail(ErrorKind::Parse, "order must be positive");
    if (lines.size() != rho * d + 1) {
        fail(ErrorKind::Parse, "expected " + std::to_string(rho * d) + " form lines, found " +
                                   std::to_string(lines.size() - 1));
    }
    ChowDecomposition c(rho, d, n);
    for (std::size_t u = 0; u < rho; ++u) {
        for (std::size_t v = 0; v < d; ++v) {
            const auto entries = text::tokens(lines[1 + u * d + v]);
            if (entries.size() != n + 1) {
                fail(ErrorKind::Parse, "form line needs " + std::to_string(n + 1) + " entries");
            }
            for (std::size_t w = 0; w <= n; ++w) c.at(u, v, w) = CycloRational::parse(entries[w]);
        }
    }
    if (m % c.order() != 0) fail(ErrorKind::Parse, "header order is not a multiple of the entry orders");
    return c;
}

}  // namespace diffcomp
