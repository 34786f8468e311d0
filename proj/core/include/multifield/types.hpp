#pragma once

#include <Eigen/Dense>

#include "multifield/dual.hpp"

namespace multifield {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

using DVec3 = Eigen::Matrix<Dual, 3, 1>;
using DMat3 = Eigen::Matrix<Dual, 3, 3>;
using DVecX = Eigen::Matrix<Dual, Eigen::Dynamic, 1>;
using DMatX = Eigen::Matrix<Dual, Eigen::Dynamic, Eigen::Dynamic>;

// Lift plain data into dual containers with zero tangents.
template <typename Derived>
auto lift(const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<Dual>().eval();
}

template <typename Derived>
auto values(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
      out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).v;
  return out;
}

template <typename Derived>
auto tangents(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
      out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).d;
  return out;
}

// Reductions spelled out by hand: Eigen's own norm machinery expects abs2 on
// the scalar, which Dual does not provide.
template <typename DerivedA, typename DerivedB>
Dual ddot(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  Dual acc;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, j) * b(i, j);
  return acc;
}

template <typename Derived>
Dual sqnorm(const Eigen::MatrixBase<Derived>& a) {
  return ddot(a, a);
}

template <typename Derived>
Dual dtrace(const Eigen::MatrixBase<Derived>& a) {
  Dual acc;
  for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

inline Mat3 skew_part(const Mat3& m) { return 0.5 * (m - m.transpose()); }

// Axial vector of the skew part: skew_part(m) u = axial(m) x u.
inline Vec3 axial(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

inline Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
  return m;
}

}  // namespace multifield
