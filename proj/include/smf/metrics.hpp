#ifndef SMF_METRICS_HPP
#define SMF_METRICS_HPP

namespace smf {

/// Wrap an angle difference into (-pi, pi].
double wrap_angle(double a);

/// Relative reduction from baseline to candidate in percent,
/// (baseline - candidate)/baseline * 100; positive when the candidate is
/// smaller.
double improvement_percent(double baseline, double candidate);

struct MetricsReport {
    double rmse_theta = 0.0;
    double rmse_x = 0.0;
    double aar_theta = 0.0;
    double aar_x = 0.0;
    double art_seconds = 0.0;
    double containment_rate = 0.0;
    double containment_rate_settled = 0.0;
};

}  // namespace smf

#endif
