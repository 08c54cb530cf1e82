#ifndef QGIBBS_TYPES_HPP
#define QGIBBS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace qgibbs {

using cxd = std::complex<double>;
using VecD = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using MatD = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

inline constexpr double PI = 3.14159265358979323846;

} // namespace qgibbs

#endif
