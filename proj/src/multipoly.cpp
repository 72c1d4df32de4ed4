#include "diffcomp/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "diffcomp/error.hpp"

namespace diffcomp {

// Monomial ------------------------------------------------------------------

Monomial Monomial::from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    Monomial out;
    for (const auto& [v, e] : factors) {
        if (e == 0) continue;
        if (!out.factors_.empty() && out.factors_.back().first == v) {
            out.factors_.back().second += e;
        } else {
            out.factors_.emplace_back(v, e);
        }
    }
    return out;
}

Monomial Monomial::product_of(std::span<const Var> vars) {
    std::vector<Factor> factors;
    factors.reserve(vars.size());
    for (Var v : vars) factors.emplace_back(v, 1);
    return from_factors(std::move(factors));
}

Monomial Monomial::variable(Var v, std::uint32_t exponent) { return from_factors({{v, exponent}}); }

std::uint32_t Monomial::degree() const noexcept {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

std::uint32_t Monomial::exponent(Var v) const noexcept {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, Var key) { return f.first < key; });
    return it != factors_.end() && it->first == v ? it->second : 0;
}

bool Monomial::is_multilinear() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second == 1; });
}

Var Monomial::var_bound() const noexcept { return factors_.empty() ? 0 : factors_.back().first + 1; }

Monomial Monomial::lowered(Var v) const {
    Monomial out = *this;
    auto it = std::find_if(out.factors_.begin(), out.factors_.end(), [v](const Factor& f) { return f.first == v; });
    if (it == out.factors_.end()) fail(ErrorKind::Domain, "variable not present in monomial");
    if (--it->second == 0) out.factors_.erase(it);
    return out;
}

Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    out.factors_.reserve(lhs.factors_.size() + rhs.factors_.size());
    auto a = lhs.factors_.begin();
    auto b = rhs.factors_.begin();
    while (a != lhs.factors_.end() || b != rhs.factors_.end()) {
        if (b == rhs.factors_.end() || (a != lhs.factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == lhs.factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

bool GrlexDescending::operator()(const Monomial& lhs, const Monomial& rhs) const noexcept {
    const auto dl = lhs.degree();
    const auto dr = rhs.degree();
    if (dl != dr) return dl > dr;
    const auto& a = lhs.factors();
    const auto& b = rhs.factors();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() > b.size();
}

// MultiPoly -----------------------------------------------------------------

MultiPoly MultiPoly::constant(const CycloRational& value, std::size_t nvars) {
    MultiPoly p(nvars);
    p.add_term(Monomial{}, value);
    return p;
}

MultiPoly MultiPoly::variable(Var v, std::size_t nvars) {
    MultiPoly p(nvars);
    p.add_term(Monomial::variable(v), CycloRational(1));
    return p;
}

MultiPoly MultiPoly::term(const Monomial& monomial, const CycloRational& coeff, std::size_t nvars) {
    MultiPoly p(nvars);
    p.add_term(monomial, coeff);
    return p;
}

void MultiPoly::add_term(const Monomial& monomial, const CycloRational& coeff) {
    if (monomial.var_bound() > nvars_) {
        fail(ErrorKind::Domain, "variable index " + std::to_string(monomial.var_bound() - 1) +
                                    " outside universe of " + std::to_string(nvars_));
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CycloRational MultiPoly::coefficient(const Monomial& monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? CycloRational(0) : it->second;
}

int MultiPoly::degree() const noexcept {
    // Graded order puts the highest degree first.
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

bool MultiPoly::is_homogeneous() const noexcept {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

bool MultiPoly::is_multilinear() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_multilinear(); });
}

std::uint64_t MultiPoly::order() const noexcept {
    std::uint64_t m = 1;
    for (const auto& [mono, c] : terms_) m = lcm_order(m, c.order());
    return m;
}

MultiPoly MultiPoly::with_nvars(std::size_t nvars) const {
    MultiPoly out(nvars);
    for (const auto& [mono, c] : terms_) out.add_term(mono, c);
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [mono, c] : out.terms_) c = -c;
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    nvars_ = std::max(nvars_, rhs.nvars_);
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    nvars_ = std::max(nvars_, rhs.nvars_);
    for (const auto& [mono, c] : rhs.terms_) add_term(mono, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
    MultiPoly out(std::max(lhs.nvars_, rhs.nvars_));
    for (const auto& [ma, ca] : lhs.terms_) {
        for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const CycloRational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, c] : terms_) c *= scalar;
    return *this;
}

bool operator==(const MultiPoly& lhs, const MultiPoly& rhs) {
    return lhs.nvars_ == rhs.nvars_ && lhs.terms_ == rhs.terms_;
}

MultiPoly partial_derivative(const MultiPoly& p, Var v) {
    if (v >= p.nvars()) fail(ErrorKind::Domain, "derivative variable outside universe");
    MultiPoly out(p.nvars());
    for (const auto& [mono, c] : p.terms()) {
        const auto e = mono.exponent(v);
        if (e == 0) continue;
        out.add_term(mono.lowered(v), c * CycloRational(static_cast<long>(e)));
    }
    return out;
}

CycloRational evaluate(const MultiPoly& p, std::span<const CycloRational> point) {
    CycloRational acc;
    for (const auto& [mono, c] : p.terms()) {
        CycloRational term = c;
        for (const auto& [v, e] : mono.factors()) {
            if (v >= point.size() || point[v].is_zero()) {
                term = CycloRational(0);
                break;
            }
            term *= point[v].pow(e);
        }
        if (!term.is_zero()) acc += term;
    }
    return acc;
}

CycloRational evaluate(const MultiPoly& p, const std::map<Var, CycloRational>& point) {
    CycloRational acc;
    for (const auto& [mono, c] : p.terms()) {
        CycloRational term = c;
        for (const auto& [v, e] : mono.factors()) {
            auto it = point.find(v);
            if (it == point.end() || it->second.is_zero()) {
                term = CycloRational(0);
                break;
            }
            term *= it->second.pow(e);
        }
        if (!term.is_zero()) acc += term;
    }
    return acc;
}

MultiPoly restrict_and_relabel(const MultiPoly& p, const std::map<Var, CycloRational>& fixings,
                               const std::map<Var, Var>& relabel, std::optional<std::size_t> nvars) {
    const std::size_t out_vars = nvars.value_or(p.nvars());

    std::set<Var> images;
    for (const auto& [from, to] : relabel) {
        if (fixings.count(from)) {
            fail(ErrorKind::InvalidRelabelling, "variable " + std::to_string(from) + " is both fixed and relabelled");
        }
        if (!images.insert(to).second) {
            fail(ErrorKind::InvalidRelabelling, "two variables relabelled onto " + std::to_string(to));
        }
    }
    // Survivors that keep their index must not collide with a relabel target.
    for (const auto& [mono, c] : p.terms()) {
        for (const auto& [v, e] : mono.factors()) {
            if (!fixings.count(v) && !relabel.count(v) && images.count(v)) {
                fail(ErrorKind::InvalidRelabelling,
                     "relabel target " + std::to_string(v) + " collides with a surviving variable");
            }
        }
    }

    MultiPoly out(out_vars);
    std::vector<Monomial::Factor> factors;
    for (const auto& [mono, c] : p.terms()) {
        CycloRational coeff = c;
        factors.clear();
        for (const auto& [v, e] : mono.factors()) {
            if (auto fx = fixings.find(v); fx != fixings.end()) {
                coeff *= fx->second.pow(e);
            } else if (auto rl = relabel.find(v); rl != relabel.end()) {
                factors.emplace_back(rl->second, e);
            } else {
                factors.emplace_back(v, e);
            }
        }
        if (coeff.is_zero()) continue;
        out.add_term(Monomial::from_factors(factors), coeff);
    }
    return out;
}

// VarTable ------------------------------------------------------------------

VarTable VarTable::vector(std::size_t n, char symbol) { return VarTable(Layout::Vector, n, symbol); }

VarTable VarTable::matrix(std::size_t n, char symbol) { return VarTable(Layout::Matrix, n, symbol); }

Var VarTable::index(std::size_t i, std::size_t j) const {
    if (layout_ == Layout::Vector) {
        if (j != 0 || i >= width_) fail(ErrorKind::Domain, "vector index out of range");
        return static_cast<Var>(i);
    }
    if (i >= width_ || j >= width_) fail(ErrorKind::Domain, "matrix index out of range");
    return static_cast<Var>(width_ * i + j);
}

std::pair<std::size_t, std::size_t> VarTable::coordinates(Var v) const {
    if (v >= size()) fail(ErrorKind::Domain, "variable index out of range");
    if (layout_ == Layout::Vector) return {v, 0};
    return {v / width_, v % width_};
}

std::string VarTable::name(Var v) const {
    const auto [i, j] = coordinates(v);
    std::string out(1, symbol_);
    out += "_{" + std::to_string(i);
    if (layout_ == Layout::Matrix) out += "," + std::to_string(j);
    return out + "}";
}

namespace {

struct ParsedName {
    char symbol;
    std::vector<std::size_t> indices;
};

ParsedName parse_name(std::string_view name) {
    if (name.size() < 5 || name[1] != '_' || name[2] != '{' || name.back() != '}') {
        fail(ErrorKind::Parse, "malformed variable name '" + std::string(name) + "'");
    }
    ParsedName out{name[0], {}};
    std::size_t value = 0;
    std::size_t digits = 0;
    for (std::size_t i = 3; i < name.size(); ++i) {
        const char ch = name[i];
        if (ch >= '0' && ch <= '9') {
            value = value * 10 + static_cast<std::size_t>(ch - '0');
            ++digits;
        } else if ((ch == ',' || ch == '}') && digits > 0) {
            out.indices.push_back(value);
            value = 0;
            digits = 0;
            if (ch == '}' && i + 1 != name.size()) fail(ErrorKind::Parse, "trailing text in '" + std::string(name) + "'");
        } else {
            fail(ErrorKind::Parse, "malformed variable name '" + std::string(name) + "'");
        }
    }
    if (out.indices.empty() || out.indices.size() > 2) {
        fail(ErrorKind::Parse, "variable name needs one or two indices: '" + std::string(name) + "'");
    }
    return out;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Var VarTable::lookup(std::string_view name) const {
    const auto parsed = parse_name(name);
    if (parsed.symbol != symbol_) fail(ErrorKind::Parse, "unexpected variable symbol in '" + std::string(name) + "'");
    const bool matrix = layout_ == Layout::Matrix;
    if (parsed.indices.size() != (matrix ? 2u : 1u)) {
        fail(ErrorKind::Parse, "variable '" + std::string(name) + "' does not match the table layout");
    }
    if (!matrix) {
        if (parsed.indices[0] >= width_) fail(ErrorKind::Parse, "variable '" + std::string(name) + "' out of range");
        return static_cast<Var>(parsed.indices[0]);
    }
    if (parsed.indices[0] >= width_ || parsed.indices[1] >= width_) {
        fail(ErrorKind::Parse, "variable '" + std::string(name) + "' out of range");
    }
    return static_cast<Var>(width_ * parsed.indices[0] + parsed.indices[1]);
}

// Text formats --------------------------------------------------------------

std::string to_text(const MultiPoly& p, const VarTable& vars) {
    if (vars.size() != p.nvars()) fail(ErrorKind::DimensionMismatch, "variable table does not match polynomial");
    std::string out(kPolyFormatHeader);
    out += '\n';
    out += std::to_string(p.nvars()) + " " + std::to_string(p.order()) + "\n";
    for (const auto& [mono, c] : p.terms()) {
        out += c.to_string();
        for (const auto& [v, e] : mono.factors()) {
            out += " * " + vars.name(v);
            if (e > 1) out += "^" + std::to_string(e);
        }
        out += '\n';
    }
    return out;
}

NamedPoly parse_poly(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim_view(text.substr(start, end - start));
        if (!line.empty() && line.front() != '#') lines.push_back(line);
        start = end + 1;
    }
    if (lines.empty()) fail(ErrorKind::Parse, "polynomial file has no header");

    std::size_t nvars = 0;
    std::uint64_t order = 0;
    {
        std::istringstream header{std::string(lines[0])};
        std::string rest;
        if (!(header >> nvars >> order) || order == 0 || (header >> rest)) {
            fail(ErrorKind::Parse, "expected header 'nvars m', got '" + std::string(lines[0]) + "'");
        }
    }

    // Split every term line into coefficient and factor tokens first, so the
    // variable layout can be read off the first name seen.
    struct RawTerm {
        std::string_view coeff;
        std::vector<std::pair<std::string_view, std::uint32_t>> factors;
    };
    std::vector<RawTerm> raw;
    std::optional<ParsedName> first_name;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        RawTerm term;
        std::string_view line = lines[li];
        bool first = true;
        while (true) {
            const auto star = line.find('*');
            const auto token = trim_view(line.substr(0, star));
            if (token.empty()) fail(ErrorKind::Parse, "empty factor in '" + std::string(lines[li]) + "'");
            if (first) {
                term.coeff = token;
                first = false;
            } else {
                std::uint32_t exponent = 1;
                auto name = token;
                if (const auto caret = token.find('^'); caret != std::string_view::npos) {
                    name = token.substr(0, caret);
                    const auto exp_text = token.substr(caret + 1);
                    if (exp_text.empty() || !std::all_of(exp_text.begin(), exp_text.end(), ::isdigit)) {
                        fail(ErrorKind::Parse, "bad exponent in '" + std::string(token) + "'");
                    }
                    exponent = static_cast<std::uint32_t>(std::stoul(std::string(exp_text)));
                    if (exponent == 0) fail(ErrorKind::Parse, "zero exponent in '" + std::string(token) + "'");
                }
                if (!first_name) first_name = parse_name(name);
                term.factors.emplace_back(name, exponent);
            }
            if (star == std::string_view::npos) break;
            line = line.substr(star + 1);
        }
        raw.push_back(std::move(term));
    }

    VarTable vars = VarTable::vector(nvars);
    if (first_name) {
        if (first_name->indices.size() == 2) {
            const auto width = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(nvars))));
            if (width * width != nvars) fail(ErrorKind::Parse, "matrix variables need a square variable count");
            vars = VarTable::matrix(width, first_name->symbol);
        } else {
            vars = VarTable::vector(nvars, first_name->symbol);
        }
    }

    MultiPoly poly(nvars);
    for (const auto& term : raw) {
        std::vector<Monomial::Factor> factors;
        for (const auto& [name, e] : term.factors) factors.emplace_back(vars.lookup(name), e);
        const auto mono = Monomial::from_factors(factors);
        if (poly.terms().count(mono)) fail(ErrorKind::Parse, "repeated monomial in polynomial file");
        const auto coeff = CycloRational::parse(term.coeff);
        if (coeff.is_zero()) fail(ErrorKind::Parse, "zero coefficient in polynomial file");
        poly.add_term(mono, coeff);
    }
    if (order % poly.order() != 0) {
        fail(ErrorKind::Parse, "header order " + std::to_string(order) + " is not a multiple of coefficient orders");
    }
    return {std::move(poly), vars, order};
}

std::string to_display(const MultiPoly& p, const VarTable& vars) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        std::string coeff;
        bool negative = false;
        if (c.is_rational()) {
            Rational value = c.rational_part();
            negative = value < 0;
            if (negative) value = -value;
            if (value != 1 || mono.is_constant()) coeff = value.get_str();
        } else {
            coeff = "(" + c.to_string() + ")";
        }
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        first = false;
        std::string body = coeff;
        for (const auto& [v, e] : mono.factors()) {
            if (!body.empty()) body += "*";
            body += vars.name(v);
            if (e > 1) body += "^" + std::to_string(e);
        }
        out += body;
    }
    return out;
}

}  // namespace diffcomp
