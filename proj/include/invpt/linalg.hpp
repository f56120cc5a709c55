#pragma once

#include <Eigen/Dense>

namespace invpt {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Closest orthogonal matrix in the Frobenius norm (polar factor).
inline Matrix nearest_orthogonal(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

inline double orthogonality_residual(const Matrix& q) {
    return (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
}

// Orthonormal basis (as columns) of the orthogonal complement of a unit vector.
inline Matrix complement_basis(const Point& normal) {
    const Eigen::Index n = normal.size();
    Matrix m(n, 1);
    m.col(0) = normal;
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    return q.rightCols(n - 1);
}

}  // namespace invpt
