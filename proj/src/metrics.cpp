#include "smf/metrics.hpp"

#include <cmath>
#include <numbers>

namespace smf {

double wrap_angle(double a) {
    constexpr double pi = std::numbers::pi;
    constexpr double two_pi = 2.0 * pi;
    double r = a - two_pi * std::floor((a + pi) / two_pi);
    if (r <= -pi) {
        r += two_pi;
    }
    if (r > pi) {
        r -= two_pi;
    }
    return r;
}

double improvement_percent(double baseline, double candidate) {
    if (baseline == 0.0) {
        return 0.0;
    }
    return (baseline - candidate) / baseline * 100.0;
}

}  // namespace smf
