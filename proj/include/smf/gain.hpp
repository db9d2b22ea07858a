#ifndef SMF_GAIN_HPP
#define SMF_GAIN_HPP

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

namespace smf {

/// Observer poles for placement; must be conjugate-closed with modulus < 1.
struct PoleConfiguration {
    std::vector<std::complex<double>> poles;
};

/// Greedy one-step minimizer of the propagated squared F-radius.
struct FRadiusOptimal {};

using GainStrategy = std::variant<PoleConfiguration, FRadiusOptimal>;

/// Throws std::invalid_argument naming the defect when the pole set cannot
/// drive an n-dimensional error state.
void validate(const PoleConfiguration& config, Eigen::Index state_dim);

double spectral_radius(const Eigen::MatrixXd& m);

/**
 * @brief Observer gain L with eig(a - L*c) equal to the requested poles.
 *
 * Solved as state feedback on the dual pair (a^T, c^T). Single-output pairs
 * use Ackermann's formula; multi-output pairs use eigenstructure assignment,
 * spending the leftover freedom on minimizing ||L||_F among exact
 * placements. Requested pole multiplicity must not exceed the number of
 * measurement rows.
 */
Eigen::MatrixXd pole_placement_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                                    const std::vector<std::complex<double>>& poles);

/**
 * @brief Gain minimizing the one-step squared F-radius of the updated set:
 * L = a*P*c^T*(c*P*c^T + Qv)^-1 with P = h*h^T and Qv = d_v*h_v*h_v^T*d_v^T.
 */
Eigen::MatrixXd f_radius_optimal_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                                      const Eigen::MatrixXd& h_reduced,
                                      const Eigen::MatrixXd& d_v, const Eigen::MatrixXd& h_v);

/// One-step squared F-radius as a function of the gain. The process-noise
/// term is constant in l but kept so the value is the complete cost.
double f_radius_cost(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                     const Eigen::MatrixXd& h_reduced,
                     const Eigen::MatrixXd& d_w, const Eigen::MatrixXd& h_w,
                     const Eigen::MatrixXd& d_v, const Eigen::MatrixXd& h_v,
                     const Eigen::MatrixXd& l);

}  // namespace smf

#endif
