#pragma once

#include <complex>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace gxcalc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct Tolerance {
    double eq_tol = 1e-9;
    double residual_tol = 1e-10;
    double dedup_tol = 1e-6;
};

inline constexpr double kPi = 3.14159265358979323846;

// e^{i pi p/q}
Complex root_of_unity(long p, long q);

// Divides out the phase of the first entry (row-major) whose modulus
// exceeds tol.dedup_tol. Throws AllZeroMatrix when there is none.
Matrix phase_canonicalize(const Matrix& m, const Tolerance& tol = {});

struct ProjectiveMatch {
    bool equal = false;
    std::optional<Complex> phase;  // a = phase * b when equal
};

ProjectiveMatch projectively_equal(const Matrix& a, const Matrix& b,
                                   const Tolerance& tol = {});

// Least-squares scalar lambda with a ~ lambda * b. Unlike
// projectively_equal the modulus of lambda is unconstrained.
struct ScalarFit {
    Complex scalar{0.0, 0.0};
    double residual = 0.0;  // max entrywise |a - lambda b|
};
ScalarFit scalar_fit(const Matrix& a, const Matrix& b);

double max_abs_diff(const Matrix& a, const Matrix& b);
// min over phases of max entrywise |a - e^{i phi} b|, using the
// least-squares phase.
double projective_distance(const Matrix& a, const Matrix& b);
double unitarity_defect(const Matrix& m);
bool is_unitary(const Matrix& m, double tol);

bool is_finite(const Matrix& m);

std::string format_complex(Complex z, int digits = 8);

}  // namespace gxcalc
