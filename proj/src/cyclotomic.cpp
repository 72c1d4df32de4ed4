#include "diffcomp/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "diffcomp/error.hpp"

namespace diffcomp {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of x^m - 1 style integer polynomials by a monic divisor.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    IntPoly quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const Integer c = num[i];
        if (c == 0) continue;
        quot[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t j = 0; j < dn; ++j) {
        if (num[j] != 0) fail(ErrorKind::InternalInconsistency, "cyclotomic recurrence left a remainder");
    }
    return quot;
}

// Reduces p in place modulo the monic polynomial `mod` (integer coefficients).
void reduce_mod(QPoly& p, const IntPoly& mod) {
    const std::size_t deg = mod.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i] == 0) continue;
        const Rational c = p[i];
        for (std::size_t j = 0; j < deg; ++j) p[i - deg + j] -= c * mod[j];
        p[i] = 0;
    }
    p.resize(deg, Rational(0));
}

// (quotient, remainder) of a / b over Q; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {QPoly{}, a};
    QPoly q(a.size() - b.size() + 1, Rational(0));
    const Rational lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) continue;
        const Rational c = a[i] / lead;
        q[i - b.size() + 1] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

QPoly sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) fail(ErrorKind::Parse, "empty rational");
    std::size_t i = text.front() == '-' ? 1 : 0;
    bool seen_slash = false;
    std::size_t digits = 0;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '/' && !seen_slash && digits > 0) {
            seen_slash = true;
            digits = 0;
        } else if (ch >= '0' && ch <= '9') {
            ++digits;
        } else {
            fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
        }
    }
    if (digits == 0) fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    Rational value;
    if (value.set_str(std::string(text), 10) != 0) {
        fail(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    if (value.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    value.canonicalize();
    return value;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::uint64_t lcm_order(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

const IntPoly& cyclotomic_polynomial(std::uint64_t m) {
    if (m == 0) fail(ErrorKind::Domain, "cyclotomic order must be positive");
    static std::mutex mutex;
    static std::map<std::uint64_t, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    IntPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (std::uint64_t d = 1; d < m; ++d) {
        if (m % d == 0) num = divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
    std::lock_guard lock(mutex);
    // std::map never invalidates references on insert.
    return cache.emplace(m, std::move(num)).first->second;
}

CycloRational::CycloRational() : order_(1), coeffs_{Rational(0)} {}

CycloRational::CycloRational(const Rational& value) : order_(1), coeffs_{value} { coeffs_[0].canonicalize(); }

CycloRational::CycloRational(long value) : order_(1), coeffs_{Rational(value)} {}

CycloRational::CycloRational(std::uint64_t order, std::vector<Rational> coeffs, bool reduced)
    : order_(order), coeffs_(std::move(coeffs)) {
    if (!reduced) reduce_mod(coeffs_, cyclotomic_polynomial(order_));
}

CycloRational CycloRational::from_coefficients(std::uint64_t order, std::vector<Rational> coeffs) {
    if (order == 0) fail(ErrorKind::Domain, "cyclotomic order must be positive");
    for (auto& c : coeffs) c.canonicalize();
    return CycloRational(order, std::move(coeffs), false);
}

bool CycloRational::is_zero() const noexcept {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycloRational::is_one() const noexcept {
    return coeffs_.front() == 1 && is_rational();
}

bool CycloRational::is_rational() const noexcept {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return false;
    }
    return true;
}

CycloRational CycloRational::embed(std::uint64_t target) const {
    if (target == order_) return *this;
    if (target == 0 || target % order_ != 0) {
        fail(ErrorKind::Domain, "cannot embed order " + std::to_string(order_) + " into order " + std::to_string(target));
    }
    const std::uint64_t stride = target / order_;
    std::vector<Rational> out(std::max<std::uint64_t>(coeffs_.size() * stride, 1), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * stride] = coeffs_[i];
    return CycloRational(target, std::move(out), false);
}

CycloRational CycloRational::operator-() const {
    CycloRational out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycloRational& CycloRational::operator+=(const CycloRational& rhs) {
    if (order_ != rhs.order_) {
        const auto target = lcm_order(order_, rhs.order_);
        *this = embed(target);
        return *this += rhs.embed(target);
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& rhs) { return *this += -rhs; }

CycloRational& CycloRational::operator*=(const CycloRational& rhs) {
    if (order_ != rhs.order_) {
        const auto target = lcm_order(order_, rhs.order_);
        *this = embed(target);
        return *this *= rhs.embed(target);
    }
    if (coeffs_.size() == 1) {
        coeffs_[0] *= rhs.coeffs_[0];
        return *this;
    }
    auto product = mul(coeffs_, rhs.coeffs_);
    reduce_mod(product, cyclotomic_polynomial(order_));
    coeffs_ = std::move(product);
    return *this;
}

CycloRational& CycloRational::operator/=(const CycloRational& rhs) { return *this *= rhs.inverse(); }

CycloRational CycloRational::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in Q(w_" + std::to_string(order_) + ")");
    if (coeffs_.size() == 1) return CycloRational(order_, {1 / coeffs_[0]}, true);

    // Extended Euclid against Phi_m; Phi_m is irreducible so the gcd is a unit.
    const IntPoly& phi = cyclotomic_polynomial(order_);
    QPoly r0(phi.begin(), phi.end());
    QPoly r1 = coeffs_;
    trim(r1);
    QPoly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly next = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(next);
    }
    if (r0.size() != 1) fail(ErrorKind::InternalInconsistency, "cyclotomic polynomial not coprime to element");
    for (auto& c : s0) c /= r0[0];
    return CycloRational(order_, std::move(s0), false);
}

CycloRational CycloRational::pow(long long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    CycloRational base = *this;
    CycloRational acc = CycloRational(order_, {Rational(1)}, false);
    while (exponent > 0) {
        if (exponent & 1) acc *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return acc;
}

bool operator==(const CycloRational& lhs, const CycloRational& rhs) {
    if (lhs.order_ == rhs.order_) return lhs.coeffs_ == rhs.coeffs_;
    const auto target = lcm_order(lhs.order_, rhs.order_);
    return lhs.embed(target).coeffs_ == rhs.embed(target).coeffs_;
}

std::complex<double> CycloRational::to_complex() const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
        acc += coeffs_[i].get_d() * std::polar(1.0, angle);
    }
    return acc;
}

std::string CycloRational::to_string() const {
    std::string out = std::to_string(order_) + ":[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i > 0) out += ',';
        out += coeffs_[i].get_num().get_str();
        out += '/';
        out += coeffs_[i].get_den().get_str();
    }
    out += ']';
    return out;
}

CycloRational CycloRational::parse(std::string_view text) {
    std::string compact;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') compact += ch;
    }
    const auto colon = compact.find(':');
    if (colon == std::string::npos || colon == 0 || compact.size() < colon + 3 || compact[colon + 1] != '[' ||
        compact.back() != ']') {
        fail(ErrorKind::Parse, "expected 'm:[c0,...]', got '" + std::string(text) + "'");
    }
    std::uint64_t order = 0;
    for (std::size_t i = 0; i < colon; ++i) {
        if (compact[i] < '0' || compact[i] > '9') fail(ErrorKind::Parse, "bad order in '" + std::string(text) + "'");
        order = order * 10 + static_cast<std::uint64_t>(compact[i] - '0');
    }
    if (order == 0) fail(ErrorKind::Parse, "order must be positive in '" + std::string(text) + "'");

    std::vector<Rational> coeffs;
    const std::string_view body(compact.data() + colon + 2, compact.size() - colon - 3);
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        coeffs.push_back(parse_rational(body.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return from_coefficients(order, std::move(coeffs));
}

CycloRational root_of_unity(std::uint64_t m, long long k) {
    if (m == 0) fail(ErrorKind::Domain, "root of unity order must be positive");
    const auto mm = static_cast<long long>(m);
    const auto exponent = static_cast<std::size_t>(((k % mm) + mm) % mm);
    std::vector<Rational> coeffs(std::max<std::size_t>(exponent + 1, euler_phi(m)), Rational(0));
    coeffs[exponent] = 1;
    return CycloRational::from_coefficients(m, std::move(coeffs));
}

std::ostream& operator<<(std::ostream& os, const CycloRational& value) { return os << value.to_string(); }

}  // namespace diffcomp
