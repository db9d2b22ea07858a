#include "smf/zonotope.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace smf {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kReducedCostEps = 1e-11;
constexpr double kLpSlack = 1e-11;

struct LpResult {
    bool feasible = false;
    double value = 0.0;
};

/*
 * Two-phase dense tableau simplex with Bland's rule for
 *     min obj.x  s.t.  a x = b, x >= 0.
 * Sized for the membership problems built below (tens of rows/columns), and
 * those are bounded, so unboundedness is treated as a numerical failure.
 */
LpResult simplex_min(Eigen::MatrixXd a, Eigen::VectorXd b, const Eigen::VectorXd& obj) {
    const Eigen::Index n_rows = a.rows();
    const Eigen::Index n_vars = a.cols();
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        if (b(i) < 0.0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
        }
    }

    const Eigen::Index n_total = n_vars + n_rows;
    Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(n_rows, n_total + 1);
    tab.leftCols(n_vars) = a;
    tab.block(0, n_vars, n_rows, n_rows).setIdentity();
    tab.col(n_total) = b;
    std::vector<Eigen::Index> basis(static_cast<size_t>(n_rows));
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        basis[static_cast<size_t>(i)] = n_vars + i;
    }

    auto pivot = [&](Eigen::Index prow, Eigen::Index pcol) {
        tab.row(prow) /= tab(prow, pcol);
        for (Eigen::Index i = 0; i < n_rows; ++i) {
            if (i != prow && tab(i, pcol) != 0.0) {
                tab.row(i) -= tab(i, pcol) * tab.row(prow);
            }
        }
        basis[static_cast<size_t>(prow)] = pcol;
    };

    // Runs simplex on the current tableau for the cost vector c (length
    // n_total), allowing only columns < n_cols to enter. Returns false if an
    // iteration cap is hit.
    auto run = [&](const Eigen::VectorXd& c, Eigen::Index n_cols) {
        for (int iter = 0; iter < 20000; ++iter) {
            Eigen::VectorXd cost_b(n_rows);
            for (Eigen::Index i = 0; i < n_rows; ++i) {
                cost_b(i) = c(basis[static_cast<size_t>(i)]);
            }
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < n_cols; ++j) {
                const double reduced = c(j) - cost_b.dot(tab.col(j));
                if (reduced < -kReducedCostEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return true;
            }
            Eigen::Index leave = -1;
            double best_ratio = 0.0;
            for (Eigen::Index i = 0; i < n_rows; ++i) {
                const double aij = tab(i, enter);
                if (aij > kPivotEps) {
                    const double ratio = tab(i, n_total) / aij;
                    const bool better = leave < 0 || ratio < best_ratio - kPivotEps ||
                        (std::abs(ratio - best_ratio) <= kPivotEps &&
                         basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)]);
                    if (better) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) {
                return false;  // unbounded direction, should not occur here
            }
            pivot(leave, enter);
        }
        return false;
    };

    auto objective_value = [&](const Eigen::VectorXd& c) {
        double value = 0.0;
        for (Eigen::Index i = 0; i < n_rows; ++i) {
            value += c(basis[static_cast<size_t>(i)]) * tab(i, n_total);
        }
        return value;
    };

    // phase 1: drive the artificial variables to zero
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n_total);
    phase1.tail(n_rows).setOnes();
    if (!run(phase1, n_total)) {
        return {};
    }
    if (objective_value(phase1) > 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>())) {
        return {};
    }
    // pivot lingering artificials out of the basis where possible
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        if (basis[static_cast<size_t>(i)] >= n_vars) {
            for (Eigen::Index j = 0; j < n_vars; ++j) {
                if (std::abs(tab(i, j)) > kPivotEps) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // phase 2: artificial columns are barred from re-entering
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n_total);
    phase2.head(n_vars) = obj;
    if (!run(phase2, n_vars)) {
        return {};
    }
    return {true, objective_value(phase2)};
}

/*
 * min ||xi||_inf s.t. a xi = b, with a full row rank. Encoded with
 * xi = xi_plus - xi_minus and per-component cap rows
 * xi_plus_i + xi_minus_i + slack_i = t.
 */
LpResult min_inf_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index r = a.rows();
    const Eigen::Index m = a.cols();
    const Eigen::Index n_vars = 3 * m + 1;  // xi_plus, xi_minus, t, slacks
    Eigen::MatrixXd lp_a = Eigen::MatrixXd::Zero(r + m, n_vars);
    Eigen::VectorXd lp_b = Eigen::VectorXd::Zero(r + m);
    lp_a.block(0, 0, r, m) = a;
    lp_a.block(0, m, r, m) = -a;
    lp_b.head(r) = b;
    for (Eigen::Index i = 0; i < m; ++i) {
        lp_a(r + i, i) = 1.0;
        lp_a(r + i, m + i) = 1.0;
        lp_a(r + i, 2 * m) = -1.0;
        lp_a(r + i, 2 * m + 1 + i) = 1.0;
    }
    Eigen::VectorXd obj = Eigen::VectorXd::Zero(n_vars);
    obj(2 * m) = 1.0;
    return simplex_min(lp_a, lp_b, obj);
}

}  // namespace

Zonotope::Zonotope(Eigen::VectorXd center, Eigen::MatrixXd generators)
    : center_(std::move(center)), generators_(std::move(generators)) {
    if (generators_.rows() != center_.size()) {
        throw std::invalid_argument("Zonotope: generator rows must match the center dimension.");
    }
}

Zonotope::Zonotope(Eigen::VectorXd center)
    : center_(std::move(center)), generators_(center_.size(), 0) {}

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("minkowski_sum: operand dimensions differ.");
    }
    Eigen::MatrixXd g(a.dim(), a.order() + b.order());
    g << a.generators(), b.generators();
    return {a.center() + b.center(), std::move(g)};
}

Zonotope linear_map(const Eigen::MatrixXd& l, const Zonotope& z) {
    if (l.cols() != z.dim()) {
        throw std::invalid_argument("linear_map: matrix columns must match the set dimension.");
    }
    return {l * z.center(), l * z.generators()};
}

Zonotope reduce_order(const Zonotope& z, Eigen::Index s) {
    const Eigen::Index d = z.dim();
    const Eigen::Index m = z.order();
    if (s <= d) {
        throw std::invalid_argument("reduce_order: target order must exceed the set dimension.");
    }
    if (m <= s) {
        return z;
    }
    const Eigen::MatrixXd& g = z.generators();
    Eigen::VectorXd norms(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        norms(j) = g.col(j).norm();
    }
    std::vector<Eigen::Index> idx(static_cast<size_t>(m));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return norms(i) > norms(j); });

    const Eigen::Index keep = s - d;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, s);
    for (Eigen::Index j = 0; j < keep; ++j) {
        h.col(j) = g.col(idx[static_cast<size_t>(j)]);
    }
    for (Eigen::Index j = keep; j < m; ++j) {
        h.block(0, keep, d, d).diagonal() += g.col(idx[static_cast<size_t>(j)]).cwiseAbs();
    }
    return {z.center(), std::move(h)};
}

double f_radius(const Zonotope& z) {
    return z.generators().norm();
}

Eigen::MatrixXd covariance(const Zonotope& z) {
    return z.generators() * z.generators().transpose();
}

IntervalBox interval_hull(const Zonotope& z) {
    Eigen::VectorXd radius = z.generators().cwiseAbs().rowwise().sum();
    return {z.center() - radius, z.center() + radius};
}

bool contains(const Zonotope& z, const Eigen::VectorXd& x, double tol) {
    if (x.size() != z.dim()) {
        throw std::invalid_argument("contains: point dimension must match the set dimension.");
    }
    if (tol < 0.0) {
        throw std::invalid_argument("contains: tolerance must be nonnegative.");
    }
    const Eigen::VectorXd r = x - z.center();
    if (z.order() == 0) {
        return r.lpNorm<Eigen::Infinity>() <= tol + kLpSlack;
    }

    // Split r into components inside and outside the column span of G; the
    // LP only sees the consistent in-span system.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(z.generators(), Eigen::ComputeThinU);
    const double sigma_max = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > sigma_max * 1e-13) {
            ++rank;
        }
    }
    if (rank == 0) {
        return r.lpNorm<Eigen::Infinity>() <= tol + kLpSlack;
    }
    const Eigen::MatrixXd u_range = svd.matrixU().leftCols(rank);
    const Eigen::VectorXd r_in = u_range.transpose() * r;
    const Eigen::VectorXd r_out = r - u_range * r_in;
    if (r_out.lpNorm<Eigen::Infinity>() > tol + kLpSlack) {
        return false;
    }

    const LpResult lp = min_inf_norm(u_range.transpose() * z.generators(), r_in);
    return lp.feasible && lp.value <= 1.0 + tol + kLpSlack;
}

double uniform_pm1(std::mt19937_64& rng) {
    // 53 random bits mapped onto [0, 1), then shifted to [-1, 1)
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

Eigen::VectorXd sample(const Zonotope& z, std::mt19937_64& rng) {
    Eigen::VectorXd xi(z.order());
    for (Eigen::Index i = 0; i < z.order(); ++i) {
        xi(i) = uniform_pm1(rng);
    }
    return z.center() + z.generators() * xi;
}

}  // namespace smf
