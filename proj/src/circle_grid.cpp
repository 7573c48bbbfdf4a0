#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cforge/numeric.hpp"

namespace cforge {

CircleGrid::CircleGrid(int n) : n_(n) {
    if (n < 3) throw algebra_error("circle grid needs at least 3 points");
}

double CircleGrid::spacing() const { return 2.0 * M_PI / n_; }

std::vector<double> CircleGrid::eigenvalues(int k, bool parallel) const {
    if (k < 1 || k > n_) throw algebra_error("eigenvalue count out of range");
    const double h = spacing();
    const double inv_h2 = 1.0 / (h * h);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
#ifdef CFORGE_HAVE_OPENMP
#pragma omp parallel for if (parallel)
#endif
    for (int i = 0; i < n_; ++i) {
        m(i, i) = 2.0 * inv_h2;
        m(i, (i + 1) % n_) = -inv_h2;
        m(i, (i + n_ - 1) % n_) = -inv_h2;
    }
    (void)parallel;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw algebra_error("eigensolver failed to converge");
    // The dense solver's absolute error scales with ||A|| ~ 4/h^2, which
    // swamps the small eigenvalues.  One extended-precision Rayleigh
    // quotient per eigenvector recovers them: the O(eps*||A||) vector error
    // only enters quadratically.
    std::vector<double> out(static_cast<std::size_t>(k));
#ifdef CFORGE_HAVE_OPENMP
#pragma omp parallel for if (parallel)
#endif
    for (int j = 0; j < k; ++j) {
        const auto v = solver.eigenvectors().col(j);
        long double num = 0.0L, den = 0.0L;
        for (int i = 0; i < n_; ++i) {
            long double vi = v(i);
            long double av = 2.0L * vi - v((i + 1) % n_) -
                             v((i + n_ - 1) % n_);
            num += vi * av;
            den += vi * vi;
        }
        out[static_cast<std::size_t>(j)] =
            static_cast<double>(num / den * static_cast<long double>(inv_h2));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> CircleGrid::analytic_spectrum(int k) const {
    if (k < 1 || k > n_) throw algebra_error("eigenvalue count out of range");
    const double h = spacing();
    std::vector<double> all(n_);
    for (int m = 0; m < n_; ++m) {
        double s = std::sin(M_PI * m / n_);
        all[m] = 4.0 / (h * h) * s * s;
    }
    std::sort(all.begin(), all.end());
    all.resize(k);
    return all;
}

}  // namespace cforge
