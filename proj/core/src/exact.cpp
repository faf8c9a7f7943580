#include "gxcalc/exact.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "gxcalc/error.hpp"

namespace gxcalc {

Rational Rational::make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorKind::InvalidData, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
}

Exact::Exact(Rational coeff, std::int64_t radicand, Rational phase)
    : coeff_(coeff), radicand_(radicand), phase_(phase) {
    normalize();
}

void Exact::normalize() {
    if (radicand_ <= 0) throw Error(ErrorKind::InvalidData, "radicand must be positive");
    // pull square factors out of the radicand
    std::int64_t outside = 1;
    for (std::int64_t p = 2; p * p <= radicand_; ++p) {
        while (radicand_ % (p * p) == 0) {
            radicand_ /= p * p;
            outside *= p;
        }
    }
    coeff_ = coeff_ * Rational::make(outside, 1);
    if (coeff_.num == 0) {
        radicand_ = 1;
        phase_ = {0, 1};
        return;
    }
    // phase into (-1, 1]; a phase of exactly 1 becomes a sign
    std::int64_t n = phase_.num % (2 * phase_.den);
    if (n <= -phase_.den) n += 2 * phase_.den;
    if (n > phase_.den) n -= 2 * phase_.den;
    phase_ = Rational::make(n, phase_.den);
    if (coeff_.num < 0 && phase_.num != 0) {
        coeff_.num = -coeff_.num;
        phase_ = phase_ + Rational::make(1, 1);
        n = phase_.num;
        if (n > phase_.den) n -= 2 * phase_.den;
        phase_ = Rational::make(n, phase_.den);
    }
    if (phase_ == Rational{1, 1}) {
        coeff_.num = -coeff_.num;
        phase_ = {0, 1};
    }
}

Complex Exact::value() const {
    double mag = coeff_.value() * (radicand_ == 1 ? 1.0 : std::sqrt(static_cast<double>(radicand_)));
    return mag * root_of_unity(phase_.num, phase_.den);
}

std::string Exact::str() const {
    std::vector<std::string> parts;
    std::int64_t n = coeff_.num;
    std::int64_t d = coeff_.den;
    std::string sign = n < 0 ? "-" : "";
    if (n < 0) n = -n;
    if (radicand_ != 1 && n == 1 && d == radicand_) {
        parts.push_back(sign + "1/sqrt(" + std::to_string(radicand_) + ")");
    } else {
        bool unit_coeff = n == 1 && d == 1;
        if (!unit_coeff || (radicand_ == 1 && phase_.num == 0)) {
            parts.push_back(sign + std::to_string(n) + (d != 1 ? "/" + std::to_string(d) : ""));
        } else if (!sign.empty()) {
            parts.push_back("-1");
        }
        if (radicand_ != 1) parts.push_back("sqrt(" + std::to_string(radicand_) + ")");
    }
    if (phase_.num != 0) {
        parts.push_back("exp(ipi " + std::to_string(phase_.num) + "/" + std::to_string(phase_.den) + ")");
    }
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
    return out;
}

Exact Exact::operator*(const Exact& o) const {
    // sqrt(r1) sqrt(r2) = sqrt(r1 r2); normalize re-extracts squares
    return Exact(coeff_ * o.coeff_, radicand_ * o.radicand_, phase_ + o.phase_);
}

Exact Exact::conj() const { return Exact(coeff_, radicand_, Rational::make(-phase_.num, phase_.den)); }

Exact Exact::inverse() const {
    if (coeff_.num == 0) throw Error(ErrorKind::InvalidData, "inverse of zero");
    // 1/(c sqrt(r)) = sqrt(r) / (c r)
    Rational c = Rational::make(coeff_.den, coeff_.num * radicand_);
    return Exact(c, radicand_, Rational::make(-phase_.num, phase_.den));
}

std::string Scalar::str() const {
    if (exact) return exact->str();
    char buf[80];
    if (value.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", value.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", value.real(), value.imag());
    }
    return buf;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact && b.exact) return Scalar(*a.exact * *b.exact);
    return Scalar(a.value * b.value);
}

Scalar conj(const Scalar& s) {
    if (s.exact) return Scalar(s.exact->conj());
    return Scalar(std::conj(s.value));
}

namespace {

std::string strip(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_ratio(std::string_view s, Rational& out) {
    auto slash = s.find('/');
    std::int64_t n = 0;
    std::int64_t d = 1;
    if (slash == std::string_view::npos) {
        if (!parse_int(s, n)) return false;
    } else if (!parse_int(s.substr(0, slash), n) || !parse_int(s.substr(slash + 1), d) || d == 0) {
        return false;
    }
    out = Rational::make(n, d);
    return true;
}

// one factor of an exact product; body has no spaces
std::optional<Exact> parse_factor(std::string_view f) {
    bool neg = false;
    if (!f.empty() && f.front() == '-') {
        neg = true;
        f.remove_prefix(1);
    }
    std::optional<Exact> e;
    if (f == "i") {
        e = Exact::phase(1, 2);
    } else if (f.starts_with("exp(ipi") && f.ends_with(")")) {
        Rational r;
        if (!parse_ratio(f.substr(7, f.size() - 8), r)) return std::nullopt;
        e = Exact(Rational::make(1, 1), 1, r);
    } else if (f.starts_with("sqrt(") && f.ends_with(")")) {
        std::int64_t n = 0;
        if (!parse_int(f.substr(5, f.size() - 6), n) || n <= 0) return std::nullopt;
        e = Exact(Rational::make(1, 1), n, {});
    } else if (auto pos = f.find("/sqrt("); pos != std::string_view::npos && f.ends_with(")")) {
        std::int64_t num = 0;
        std::int64_t n = 0;
        if (!parse_int(f.substr(0, pos), num)) return std::nullopt;
        if (!parse_int(f.substr(pos + 6, f.size() - pos - 7), n) || n <= 0) return std::nullopt;
        e = Exact(Rational::make(num, n), n, {});
    } else {
        Rational r;
        if (!parse_ratio(f, r)) return std::nullopt;
        e = Exact(r, 1, {});
    }
    if (neg) e = *e * Exact::integer(-1);
    return e;
}

std::optional<Exact> parse_exact(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::optional<Exact> acc = Exact::integer(1);
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
        if (k < s.size() && s[k] == '(') ++depth;
        if (k < s.size() && s[k] == ')') --depth;
        if (k == s.size() || (s[k] == '*' && depth == 0)) {
            auto f = parse_factor(std::string_view(s).substr(start, k - start));
            if (!f) return std::nullopt;
            acc = *acc * *f;
            start = k + 1;
        }
    }
    return acc;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
}

std::optional<Complex> parse_decimal_complex(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i') {
        double re = 0.0;
        if (!parse_double(s, re)) return std::nullopt;
        return Complex(re, 0.0);
    }
    // find the sign that separates re and im (not the exponent sign)
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    std::string ims = split == std::string::npos ? body : body.substr(split);
    if (split != std::string::npos && !parse_double(body.substr(0, split), re)) return std::nullopt;
    if (ims.empty() || ims == "+") {
        im = 1.0;
    } else if (ims == "-") {
        im = -1.0;
    } else if (!parse_double(ims, im)) {
        return std::nullopt;
    }
    return Complex(re, im);
}

}  // namespace

std::optional<Scalar> parse_scalar(std::string_view text) {
    std::string s = strip(text);
    if (auto e = parse_exact(s)) return Scalar(*e);
    if (auto z = parse_decimal_complex(s)) return Scalar(*z);
    return std::nullopt;
}

}  // namespace gxcalc
