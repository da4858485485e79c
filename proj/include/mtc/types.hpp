#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mtc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Int = std::int64_t;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// Numeric tolerances shared across the library. `num` bounds residuals of
/// analytic identities, `integer` bounds the deviation of fusion coefficients
/// from their rounded values.
struct Tolerances {
    double num = 1e-9;
    double integer = 1e-6;
};

/// Structural problems with inputs: bad shapes, invalid parameters,
/// unparseable files. Maps to CLI exit code 2.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internally inconsistent data: criteria disagreement, non-integral fusion
/// coefficients, ambiguous decompositions. Maps to CLI exit code 1.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

} // namespace mtc
