#include "smf/zonotope.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using smf::Zonotope;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

Zonotope random_zonotope(std::mt19937_64& rng, Eigen::Index d, Eigen::Index m, double scale) {
    return Zonotope(oracle::random_matrix(rng, d, 1, scale),
                    oracle::random_matrix(rng, d, m, scale));
}

Eigen::VectorXd random_member(const Zonotope& z, std::mt19937_64& rng) {
    Eigen::VectorXd xi(z.order());
    for (Eigen::Index i = 0; i < z.order(); ++i) {
        xi(i) = oracle::uniform(rng, -1.0, 1.0);
    }
    return z.center() + z.generators() * xi;
}

}  // namespace

TEST_SUITE("zonotope") {

TEST_CASE("construction accepts singletons and rejects row mismatches") {
    const Zonotope point(Eigen::Vector2d(1.0, 2.0));
    CHECK(point.dim() == 2);
    CHECK(point.order() == 0);

    CHECK_THROWS_AS(Zonotope(Eigen::Vector2d::Zero(), Eigen::MatrixXd::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("minkowski sum with a singleton leaves the set unchanged") {
    const Zonotope a(Eigen::Vector2d(1.0, 2.0), Eigen::MatrixXd::Identity(2, 2));
    const Zonotope b(Eigen::Vector2d::Zero());
    const Zonotope sum = smf::minkowski_sum(a, b);
    CHECK(max_abs_diff(sum.center(), a.center()) == 0.0);
    CHECK(max_abs_diff(sum.generators(), a.generators()) == 0.0);
}

TEST_CASE("minkowski sum concatenates generators and adds orders") {
    Eigen::MatrixXd g1(2, 1);
    g1 << 1.0, 0.5;
    Eigen::MatrixXd g2(2, 1);
    g2 << -0.25, 2.0;
    const Zonotope sum = smf::minkowski_sum(Zonotope(Eigen::Vector2d::Zero(), g1),
                                            Zonotope(Eigen::Vector2d::Zero(), g2));
    CHECK(sum.order() == 2);
    CHECK(max_abs_diff(sum.generators().col(0), g1) == 0.0);
    CHECK(max_abs_diff(sum.generators().col(1), g2) == 0.0);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Zonotope za = random_zonotope(rng, 3, 1 + trial % 6, 2.0);
        const Zonotope zb = random_zonotope(rng, 3, 1 + (trial * 5) % 7, 2.0);
        CHECK(smf::minkowski_sum(za, zb).order() == za.order() + zb.order());
    }

    CHECK_THROWS_AS(smf::minkowski_sum(Zonotope(Eigen::Vector2d::Zero()),
                                       Zonotope(Eigen::Vector3d::Zero())),
                    std::invalid_argument);
}

TEST_CASE("sampled sums of members land inside the minkowski sum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Zonotope a = random_zonotope(rng, 3, 2 + trial % 4, 1.5);
        const Zonotope b = random_zonotope(rng, 3, 1 + trial % 5, 1.5);
        const Zonotope sum = smf::minkowski_sum(a, b);
        for (int s = 0; s < 100; ++s) {
            const Eigen::VectorXd x = random_member(a, rng) + random_member(b, rng);
            CHECK(smf::contains(sum, x, 1e-9));
        }
    }
}

TEST_CASE("linear map: identity, annihilation, rotation example") {
    std::mt19937_64 rng(3);
    const Zonotope z = random_zonotope(rng, 3, 4, 2.0);
    const Zonotope same = smf::linear_map(Eigen::Matrix3d::Identity(), z);
    CHECK(max_abs_diff(same.center(), z.center()) == 0.0);
    CHECK(max_abs_diff(same.generators(), z.generators()) == 0.0);

    const Zonotope zero = smf::linear_map(Eigen::Matrix3d::Zero(), z);
    CHECK(zero.center().cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero.generators().cwiseAbs().maxCoeff() == 0.0);

    Eigen::Matrix2d rot;
    const double half_pi = std::acos(-1.0) / 2.0;
    rot << std::cos(half_pi), -std::sin(half_pi), std::sin(half_pi), std::cos(half_pi);
    const Zonotope mapped = smf::linear_map(
        rot, Zonotope(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.2).asDiagonal()));
    CHECK(max_abs_diff(mapped.center(), Eigen::Vector2d(0.0, 1.0)) <= 1e-15);
    Eigen::Matrix2d expected;
    expected << 0.0, -0.2, 0.1, 0.0;
    CHECK(max_abs_diff(mapped.generators(), expected) <= 1e-15);

    CHECK_THROWS_AS(smf::linear_map(Eigen::Matrix2d::Identity(), z), std::invalid_argument);
}

TEST_CASE("linear map composition equals the mapped product") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const Zonotope z = random_zonotope(rng, 3, 5, 1.0);
        const Eigen::MatrixXd a = oracle::random_matrix(rng, 2, 3, 1.0);
        const Eigen::MatrixXd b = oracle::random_matrix(rng, 3, 3, 1.0);
        const Zonotope chained = smf::linear_map(a, smf::linear_map(b, z));
        const Zonotope direct = smf::linear_map(a * b, z);
        // products associate only up to rounding
        CHECK(max_abs_diff(chained.center(), direct.center()) <= 1e-13);
        CHECK(max_abs_diff(chained.generators(), direct.generators()) <= 1e-13);
    }
}

TEST_CASE("order reduction leaves small sets untouched and rejects s <= d") {
    std::mt19937_64 rng(9);
    const Zonotope z = random_zonotope(rng, 3, 5, 1.0);
    const Zonotope same = smf::reduce_order(z, 30);
    CHECK(max_abs_diff(same.generators(), z.generators()) == 0.0);

    CHECK_THROWS_AS(smf::reduce_order(z, 3), std::invalid_argument);
}

TEST_CASE("order reduction hand example: keep one column, box the rest") {
    // the zero column pads the order above s; in the plane a three-column set
    // admits no reducing target (need d < s < m), so without the pad this
    // would be a no-op
    Eigen::MatrixXd g(2, 4);
    g << 1.0, 0.0, 0.1, 0.0, 0.0, 1.0, 0.1, 0.0;
    const Zonotope reduced = smf::reduce_order(Zonotope(Eigen::Vector2d::Zero(), g), 3);
    REQUIRE(reduced.order() == 3);
    // norms (1, 1, ~0.141, 0): the tie between the first two keeps column 0;
    // the rest box into row-abs-sum diagonals (0.1, 1.1)
    Eigen::MatrixXd expected(2, 3);
    expected << 1.0, 0.1, 0.0, 0.0, 0.0, 1.1;
    CHECK(max_abs_diff(reduced.generators(), expected) == 0.0);
}

TEST_CASE("order reduction sorts stably on tied norms") {
    Eigen::MatrixXd g(2, 4);
    g.col(0) = Eigen::Vector2d(0.0, 2.0);
    g.col(1) = Eigen::Vector2d(2.0, 0.0);
    g.col(2) = Eigen::Vector2d(0.1, 0.0);
    g.col(3) = Eigen::Vector2d(0.0, 0.1);
    const Zonotope reduced = smf::reduce_order(Zonotope(Eigen::Vector2d::Zero(), g), 4);
    REQUIRE(reduced.order() == 4);
    CHECK(max_abs_diff(reduced.generators().col(0), g.col(0)) == 0.0);
    CHECK(max_abs_diff(reduced.generators().col(1), g.col(1)) == 0.0);
    Eigen::Matrix2d box = reduced.generators().rightCols(2);
    CHECK(max_abs_diff(box, Eigen::Vector2d(0.1, 0.1).asDiagonal().toDenseMatrix()) == 0.0);
}

TEST_CASE("order reduction caps the order and keeps every member") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index d = 2 + trial % 3;
        const Zonotope z = random_zonotope(rng, d, d + 6 + trial % 8, 1.0);
        const Eigen::Index s = d + 1 + trial % 3;
        const Zonotope reduced = smf::reduce_order(z, s);
        CHECK(reduced.order() == s);
        for (int sample = 0; sample < 200; ++sample) {
            CHECK(smf::contains(reduced, random_member(z, rng), 1e-9));
        }
    }
}

TEST_CASE("f-radius values and the trace identity") {
    CHECK(smf::f_radius(Zonotope(Eigen::Vector3d::Zero())) == 0.0);
    CHECK(smf::f_radius(Zonotope(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity())) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Zonotope z = random_zonotope(rng, 2 + trial % 3, 1 + trial % 9, 3.0);
        const double fr = smf::f_radius(z);
        const double tr = smf::covariance(z).trace();
        CHECK(std::abs(fr * fr - tr) <= 1e-12 * std::max(1.0, tr));
    }
}

TEST_CASE("covariance: empty, diagonal, symmetry") {
    CHECK(max_abs_diff(smf::covariance(Zonotope(Eigen::Vector2d::Zero())),
                       Eigen::Matrix2d::Zero()) == 0.0);
    const Zonotope diag(Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, 2.0).asDiagonal());
    CHECK(max_abs_diff(smf::covariance(diag),
                       Eigen::Vector2d(1.0, 4.0).asDiagonal().toDenseMatrix()) == 0.0);

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd cov = smf::covariance(random_zonotope(rng, 3, 7, 2.0));
        CHECK(max_abs_diff(cov, cov.transpose()) <= 1e-15 * cov.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("interval hull: degenerate, unit box, vertex enumeration") {
    const Zonotope point(Eigen::Vector2d(3.0, -1.0));
    const smf::IntervalBox degenerate = smf::interval_hull(point);
    CHECK(max_abs_diff(degenerate.lower, point.center()) == 0.0);
    CHECK(max_abs_diff(degenerate.upper, point.center()) == 0.0);

    const smf::IntervalBox unit =
        smf::interval_hull(Zonotope(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity()));
    CHECK(max_abs_diff(unit.lower, Eigen::Vector2d(-1.0, -1.0)) == 0.0);
    CHECK(max_abs_diff(unit.upper, Eigen::Vector2d(1.0, 1.0)) == 0.0);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Zonotope z = random_zonotope(rng, 3, 2 + trial % 9, 1.5);
        const smf::IntervalBox hull = smf::interval_hull(z);
        Eigen::VectorXd lower;
        Eigen::VectorXd upper;
        oracle::vertex_hull(z.center(), z.generators(), &lower, &upper);
        CHECK(max_abs_diff(hull.lower, lower) <= 1e-12);
        CHECK(max_abs_diff(hull.upper, upper) <= 1e-12);
    }
}

TEST_CASE("interval hull bounds are attained by dense sampling") {
    // two generators keep the corner probability high enough that draws
    // actually approach the faces; higher orders would need astronomically
    // many samples
    std::mt19937_64 rng(29);
    const Zonotope z = random_zonotope(rng, 2, 2, 1.0);
    const smf::IntervalBox hull = smf::interval_hull(z);
    Eigen::VectorXd seen_lower = z.center();
    Eigen::VectorXd seen_upper = z.center();
    for (int sample = 0; sample < 100000; ++sample) {
        const Eigen::VectorXd x = smf::sample(z, rng);
        for (Eigen::Index i = 0; i < 2; ++i) {
            CHECK(x(i) >= hull.lower(i) - 1e-12);
            CHECK(x(i) <= hull.upper(i) + 1e-12);
        }
        seen_lower = seen_lower.cwiseMin(x);
        seen_upper = seen_upper.cwiseMax(x);
    }
    CHECK(max_abs_diff(seen_lower, hull.lower) <= 0.05);
    CHECK(max_abs_diff(seen_upper, hull.upper) <= 0.05);
}

TEST_CASE("membership: frozen cases") {
    const Zonotope unit(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity());
    CHECK(smf::contains(unit, unit.center(), 0.0));
    CHECK_FALSE(smf::contains(unit, Eigen::Vector2d(1.5, 0.0), 0.0));
    CHECK(smf::contains(unit, Eigen::Vector2d(1.0, 1.0), 1e-9));  // corner

    CHECK_THROWS_AS(smf::contains(unit, Eigen::Vector3d::Zero(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(smf::contains(unit, Eigen::Vector2d::Zero(), -1.0), std::invalid_argument);
}

TEST_CASE("membership: forward-constructed points are inside, scaled boundary is not") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Zonotope z = random_zonotope(rng, 3, 2 + trial % 7, 2.0);
        for (int sample = 0; sample < 50; ++sample) {
            CHECK(smf::contains(z, random_member(z, rng), 1e-9));
        }
        // the support point in a random direction sits on the boundary, so
        // pushing it 5% further out must leave the set (random sign vectors
        // would not do: for order > dim most land strictly inside)
        const Eigen::VectorXd w = oracle::random_matrix(rng, 3, 1, 1.0);
        Eigen::VectorXd xi(z.order());
        for (Eigen::Index i = 0; i < z.order(); ++i) {
            xi(i) = w.dot(z.generators().col(i)) >= 0.0 ? 1.0 : -1.0;
        }
        const Eigen::VectorXd offset = z.generators() * xi;
        if (w.dot(offset) > 1e-3) {
            CHECK_FALSE(smf::contains(z, z.center() + 1.05 * offset, 1e-9));
        }
    }
}

TEST_CASE("membership: off-span residuals respect the tolerance") {
    Eigen::MatrixXd g(3, 2);
    g << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0;  // span is the z=0 plane
    const Zonotope z(Eigen::Vector3d::Zero(), g);
    CHECK(smf::contains(z, Eigen::Vector3d(0.5, 0.5, 1e-12), 1e-9));
    CHECK_FALSE(smf::contains(z, Eigen::Vector3d(0.5, 0.5, 0.1), 1e-9));
}

TEST_CASE("uniform draws stay in [-1, 1) and replay under the same seed") {
    std::mt19937_64 a(123);
    std::mt19937_64 b(123);
    for (int i = 0; i < 10000; ++i) {
        const double x = smf::uniform_pm1(a);
        CHECK(x >= -1.0);
        CHECK(x < 1.0);
        CHECK(smf::uniform_pm1(b) == x);
    }
}

TEST_CASE("sampling: singleton, membership, empirical mean") {
    std::mt19937_64 rng(37);
    const Zonotope point(Eigen::Vector2d(4.0, -2.0));
    for (int i = 0; i < 10; ++i) {
        CHECK(max_abs_diff(smf::sample(point, rng), point.center()) == 0.0);
    }

    const Zonotope z = random_zonotope(rng, 3, 6, 1.0);
    for (int i = 0; i < 200; ++i) {
        CHECK(smf::contains(z, smf::sample(z, rng), 1e-9));
    }

    Eigen::MatrixXd g(2, 3);
    g << 1.0, 0.4, -0.2, 0.0, 0.7, 0.5;
    const Zonotope mean_case(Eigen::Vector2d(2.0, -1.0), g);
    const int n = 1000000;
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) {
        acc += smf::sample(mean_case, rng);
    }
    const Eigen::Vector2d mean = acc / static_cast<double>(n);
    for (Eigen::Index i = 0; i < 2; ++i) {
        // per-coordinate variance of G*xi with xi uniform is sum_j G_ij^2 / 3
        const double sigma = std::sqrt(g.row(i).squaredNorm() / 3.0);
        CHECK(std::abs(mean(i) - mean_case.center()(i)) <= 3.0 * sigma / std::sqrt(double(n)));
    }
}

}  // TEST_SUITE
