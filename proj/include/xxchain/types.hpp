#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace xxchain {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using Rational = boost::multiprecision::cpp_rational;

constexpr double PI = 3.14159265358979323846264338327950288;

// Status codes shared by the C API and the CLI exit-code contract.
enum class Status : int {
    Ok = 0,
    VerifyFail = 1,
    Validation = 2,
    Resource = 3,
    ExceptionalPoint = 4,
};

struct Error : std::runtime_error {
    Status code;
    Error(Status c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(Status::Validation, msg) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error(Status::Resource, msg) {}
};

// Raised where the metric construction breaks down (vanishing wave-function
// norm, singular algebra normalizer, Jordan blocks suspected).
struct ExceptionalPointError : Error {
    explicit ExceptionalPointError(const std::string& msg) : Error(Status::ExceptionalPoint, msg) {}
};

// Memory budget: full-space builds default to M <= 12 (4096^2 complex doubles
// ~ 268 MB), sector builds to M <= 16.  XXCHAIN_MAX_DIM overrides the row
// count allowed for a single dense matrix.
std::size_t max_dense_dim();
void check_dense_dim(std::size_t dim, const std::string& what);

inline double frob(const Mat& a) { return a.norm(); }
inline double maxabs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace xxchain
