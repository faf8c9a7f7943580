#include "gxcalc/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch,
                    "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

Complex root_of_unity(long p, long q) {
    // reduce p/q mod 2 so quarter turns come out exact
    long n = 2 * q;
    long r = ((p % n) + n) % n;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == n) return {-1.0, 0.0};
    if (4 * r == n) return {0.0, 1.0};
    if (4 * r == 3 * n) return {0.0, -1.0};
    double ang = kPi * static_cast<double>(r) / static_cast<double>(q);
    return {std::cos(ang), std::sin(ang)};
}

Matrix phase_canonicalize(const Matrix& m, const Tolerance& tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Complex z = m(i, j);
            double r = std::abs(z);
            if (r > tol.dedup_tol) {
                Matrix out = m * (std::conj(z) / r);
                out(i, j) = Complex(r, 0.0);
                return out;
            }
        }
    }
    throw Error(ErrorKind::AllZeroMatrix, "no entry exceeds dedup_tol");
}

ProjectiveMatch projectively_equal(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    require_same_shape(a, b);
    Complex overlap = (b.adjoint() * a).trace();
    if (std::abs(overlap) <= 0.0) {
        if (a.size() == 0 || (a.cwiseAbs().maxCoeff() <= tol.eq_tol && b.cwiseAbs().maxCoeff() <= tol.eq_tol)) {
            return {true, Complex(1.0, 0.0)};
        }
        return {};
    }
    Complex phase = overlap / std::abs(overlap);
    if (max_abs_diff(a, phase * b) <= tol.eq_tol) return {true, phase};
    return {};
}

ScalarFit scalar_fit(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    double nb = b.squaredNorm();
    ScalarFit fit;
    if (nb > 0.0) fit.scalar = (b.adjoint() * a).trace() / nb;
    fit.residual = max_abs_diff(a, fit.scalar * b);
    return fit;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double projective_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Complex overlap = (b.adjoint() * a).trace();
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
    return max_abs_diff(a, phase * b);
}

double unitarity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    if (m.size() == 0) return 0.0;
    Matrix id = Matrix::Identity(m.rows(), m.cols());
    return std::max(max_abs_diff(m * m.adjoint(), id), max_abs_diff(m.adjoint() * m, id));
}

bool is_unitary(const Matrix& m, double tol) { return unitarity_defect(m) <= tol; }

bool is_finite(const Matrix& m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag())) return false;
    }
    return true;
}

std::string format_complex(Complex z, int digits) {
    auto clean = [digits](double x) {
        double eps = 0.5 * std::pow(10.0, -digits);
        return std::abs(x) < eps ? 0.0 : x;
    };
    double re = clean(z.real());
    double im = clean(z.imag());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*f%+.*fi", digits, re, digits, im);
    return buf;
}

}  // namespace gxcalc
