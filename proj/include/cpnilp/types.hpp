#ifndef CPNILP_TYPES_HPP
#define CPNILP_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace cpnilp {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

/// Cutoffs for every rank/dimension decision. Integer outputs are only
/// trusted when the kept and dropped singular (or eigen) values are
/// separated by at least gap_ratio.
struct Tolerance {
    double atol = 1e-10;
    double rtol = 1e-8;
    double gap_ratio = 1e4;
};

struct IllConditioned : std::runtime_error {
    explicit IllConditioned(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotPSD : std::invalid_argument {
    explicit NotPSD(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotNilpotent : std::invalid_argument {
    explicit NotNilpotent(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotInvariant : std::invalid_argument {
    explicit NotInvariant(const std::string& msg) : std::invalid_argument(msg) {}
};

struct InvalidType : std::invalid_argument {
    explicit InvalidType(const std::string& msg) : std::invalid_argument(msg) {}
};

struct InvalidArgument : std::invalid_argument {
    explicit InvalidArgument(const std::string& msg) : std::invalid_argument(msg) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotARoot : std::invalid_argument {
    explicit NotARoot(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotContractive : std::invalid_argument {
    explicit NotContractive(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotInCone : std::invalid_argument {
    explicit NotInCone(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace cpnilp

#endif
