#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gxcalc/numerics.hpp"

namespace gxcalc {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d);
    bool operator==(const Rational&) const = default;
    Rational operator*(const Rational& o) const { return make(num * o.num, den * o.den); }
    Rational operator+(const Rational& o) const { return make(num * o.den + o.num * den, den * o.den); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Values of the form coeff * sqrt(radicand) * exp(i pi phase), the shape of
// every symbol appearing in the catalog. Kept next to the double value so
// files re-emit the same tokens they were read from.
class Exact {
public:
    Exact() = default;
    Exact(Rational coeff, std::int64_t radicand, Rational phase);

    static Exact integer(std::int64_t n) { return Exact(Rational::make(n, 1), 1, {}); }
    static Exact phase(std::int64_t p, std::int64_t q) { return Exact(Rational::make(1, 1), 1, Rational::make(p, q)); }
    static Exact inv_sqrt(std::int64_t n) { return Exact(Rational::make(1, n), n, {}); }

    const Rational& coeff() const { return coeff_; }
    std::int64_t radicand() const { return radicand_; }
    const Rational& phase_pi() const { return phase_; }

    Complex value() const;
    std::string str() const;

    Exact operator*(const Exact& o) const;
    Exact conj() const;
    Exact inverse() const;
    bool operator==(const Exact&) const = default;

private:
    void normalize();

    Rational coeff_ = Rational::make(1, 1);
    std::int64_t radicand_ = 1;
    Rational phase_{0, 1};
};

// A symbol value: always a double, optionally with its exact form.
struct Scalar {
    Complex value{0.0, 0.0};
    std::optional<Exact> exact;

    Scalar() = default;
    Scalar(Complex v) : value(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(const Exact& e) : value(e.value()), exact(e) {}  // NOLINT(google-explicit-constructor)

    std::string str() const;
};

Scalar operator*(const Scalar& a, const Scalar& b);
Scalar conj(const Scalar& s);

// Parses either an exact product (factors joined by '*', each one of
// [-]n, n/m, sqrt(n), 1/sqrt(n), n/sqrt(m), exp(ipi p/q), i, -i) or a decimal
// complex such as 0.5, -0.25+0.75i, 1e-3-2i.
std::optional<Scalar> parse_scalar(std::string_view text);

}  // namespace gxcalc
