#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <string>

#include "gxcalc/catalog.hpp"
#include "gxcalc/error.hpp"

namespace testing {

using gxcalc::Complex;
using gxcalc::Matrix;

inline constexpr Complex I{0.0, 1.0};

inline Complex ei(double angle) { return std::polar(1.0, angle); }

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (Complex z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

inline Matrix diag(std::initializer_list<Complex> d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (Complex z : d) m(i, i) = z, ++i;
    return m;
}

// Catalog entries are immutable, so one copy per process is enough.
inline const gxcalc::SkeletalCategory& cat(const std::string& name) {
    static std::map<std::string, gxcalc::SkeletalCategory> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, gxcalc::catalog_builtin(name)).first;
    return it->second;
}

template <typename F>
gxcalc::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const gxcalc::Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected an error");
}

}  // namespace testing
