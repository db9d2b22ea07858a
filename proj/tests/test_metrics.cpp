#include "smf/metrics.hpp"

#include <doctest.h>

#include <cmath>

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("metrics") {

TEST_CASE("wrap_angle lands in (-pi, pi] and preserves small differences") {
    CHECK(smf::wrap_angle(0.0) == 0.0);
    CHECK(smf::wrap_angle(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(smf::wrap_angle(-0.3) == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(smf::wrap_angle(2.0 * kPi + 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(smf::wrap_angle(-2.0 * kPi - 0.25) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(smf::wrap_angle(kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(smf::wrap_angle(-kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(smf::wrap_angle(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-12));

    // a heading error recorded across the 2*pi seam stays small
    const double truth = 0.01;
    const double estimate = 2.0 * kPi - 0.01;
    CHECK(std::abs(smf::wrap_angle(truth - estimate)) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("improvement percentages reproduce the reference arithmetic") {
    CHECK(smf::improvement_percent(0.1388153, 0.1286731) ==
          doctest::Approx(7.31).epsilon(1e-3));
    CHECK(smf::improvement_percent(0.4768847, 0.2223981) ==
          doctest::Approx(53.36).epsilon(1e-3));
    CHECK(smf::improvement_percent(0.5, 0.5) == 0.0);
    // a worse candidate yields a negative improvement
    CHECK(smf::improvement_percent(1.0, 1.25) == doctest::Approx(-25.0).epsilon(1e-12));
}

}  // TEST_SUITE
