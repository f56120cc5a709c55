#include "invpt/mvee.hpp"

#include <string>

namespace invpt {

Ellipsoid minimum_volume_ellipsoid(const ConvexBody& body, double eps, int max_iterations) {
    const Matrix& p = body.vertex_matrix();
    const Eigen::Index n = p.rows();
    const Eigen::Index count = p.cols();
    const double d1 = static_cast<double>(n + 1);

    Matrix q(n + 1, count);
    q.topRows(n) = p;
    q.row(n).setOnes();

    Eigen::VectorXd u = Eigen::VectorXd::Constant(count, 1.0 / static_cast<double>(count));
    for (int iter = 0; iter < max_iterations; ++iter) {
        const Matrix x = q * u.asDiagonal() * q.transpose();
        const Matrix solved = x.ldlt().solve(q);
        const Eigen::VectorXd m = (q.array() * solved.array()).colwise().sum().transpose();

        Eigen::Index up = 0;
        const double m_up = m.maxCoeff(&up);
        Eigen::Index down = -1;
        for (Eigen::Index i = 0; i < count; ++i)
            if (u(i) > 0.0 && (down < 0 || m(i) < m(down))) down = i;
        const double m_down = m(down);

        const double gap_up = m_up / d1 - 1.0;
        const double gap_down = 1.0 - m_down / d1;
        if (std::max(gap_up, gap_down) <= eps) {
            Ellipsoid e;
            e.center = p * u;
            const Matrix centred_cov = p * u.asDiagonal() * p.transpose() - e.center * e.center.transpose();
            e.shape = centred_cov.inverse() / static_cast<double>(n);
            e.iterations = iter;
            e.gap = std::max(gap_up, gap_down);
            return e;
        }

        if (gap_up >= gap_down) {
            const double step = (m_up - d1) / (d1 * (m_up - 1.0));
            u *= 1.0 - step;
            u(up) += step;
        } else {
            double step = (d1 - m_down) / (d1 * (m_down - 1.0));
            const bool drop = u(down) / (1.0 - u(down)) <= step;
            if (drop) step = u(down) / (1.0 - u(down));
            u *= 1.0 + step;
            u(down) -= step;
            if (drop) u(down) = 0.0;
        }
    }
    throw NoConvergence("ellipsoid iteration did not converge in " + std::to_string(max_iterations) + " steps");
}

}  // namespace invpt
