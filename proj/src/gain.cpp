#include "smf/gain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smf {

namespace {

constexpr double kConjTol = 1e-9;
constexpr double kRankTol = 1e-12;

bool conjugate_closed(const std::vector<std::complex<double>>& poles) {
    std::vector<bool> used(poles.size(), false);
    for (size_t i = 0; i < poles.size(); ++i) {
        if (used[i] || std::abs(poles[i].imag()) <= kConjTol) {
            continue;
        }
        bool paired = false;
        for (size_t j = 0; j < poles.size(); ++j) {
            if (j == i || used[j]) {
                continue;
            }
            if (std::abs(poles[j] - std::conj(poles[i])) <= kConjTol) {
                used[i] = used[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired) {
            return false;
        }
    }
    return true;
}

Eigen::Index matrix_rank(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) {
        return 0;
    }
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > sv(0) * kRankTol) {
            ++rank;
        }
    }
    return rank;
}

bool observable(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
    const Eigen::Index n = a.rows();
    const Eigen::Index q = c.rows();
    Eigen::MatrixXd obs(n * q, n);
    Eigen::MatrixXd block = c;
    for (Eigen::Index k = 0; k < n; ++k) {
        obs.middleRows(k * q, q) = block;
        block = block * a;
    }
    return matrix_rank(obs) == n;
}

// Real coefficients of prod_i (x - poles[i]), highest power first.
Eigen::VectorXd real_characteristic_coeffs(const std::vector<std::complex<double>>& poles) {
    std::vector<std::complex<double>> coeff{1.0};
    for (const auto& p : poles) {
        std::vector<std::complex<double>> next(coeff.size() + 1, 0.0);
        for (size_t i = 0; i < coeff.size(); ++i) {
            next[i] += coeff[i];
            next[i + 1] -= coeff[i] * p;
        }
        coeff = std::move(next);
    }
    Eigen::VectorXd real_coeff(static_cast<Eigen::Index>(coeff.size()));
    for (size_t i = 0; i < coeff.size(); ++i) {
        real_coeff(static_cast<Eigen::Index>(i)) = coeff[i].real();
    }
    return real_coeff;
}

// Single-input feedback via Ackermann's formula on the dual pair.
Eigen::MatrixXd ackermann_feedback(const Eigen::MatrixXd& at, const Eigen::VectorXd& bt,
                                   const std::vector<std::complex<double>>& poles) {
    const Eigen::Index n = at.rows();
    Eigen::MatrixXd ctrb(n, n);
    Eigen::VectorXd col = bt;
    for (Eigen::Index k = 0; k < n; ++k) {
        ctrb.col(k) = col;
        col = at * col;
    }
    const Eigen::VectorXd coeff = real_characteristic_coeffs(poles);
    Eigen::MatrixXd horner = Eigen::MatrixXd::Identity(n, n) * coeff(0);
    for (Eigen::Index i = 1; i < coeff.size(); ++i) {
        horner = horner * at + coeff(i) * Eigen::MatrixXd::Identity(n, n);
    }
    Eigen::VectorXd e_n = Eigen::VectorXd::Zero(n);
    e_n(n - 1) = 1.0;
    const Eigen::VectorXd row = ctrb.transpose().fullPivLu().solve(e_n);
    return row.transpose() * horner;
}

// One requested closed-loop eigenvalue with its assignable direction space:
// columns of (basis_v, basis_w) span {(v, w) : (at - lambda I)v + bt w = 0}.
struct PoleSlot {
    std::complex<double> lambda;
    bool pair = false;  // complex pole; contributes Re/Im column pair
    Eigen::MatrixXcd basis_v;
    Eigen::MatrixXcd basis_w;
    Eigen::VectorXcd coord;
};

void null_pair_basis(const Eigen::MatrixXcd& at, const Eigen::MatrixXcd& bt,
                     std::complex<double> lambda, Eigen::MatrixXcd* basis_v,
                     Eigen::MatrixXcd* basis_w) {
    const Eigen::Index n = at.rows();
    const Eigen::Index q = bt.cols();
    Eigen::MatrixXcd m(n, n + q);
    m << at - lambda * Eigen::MatrixXcd::Identity(n, n), bt;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > sv(0) * kRankTol) {
            ++rank;
        }
    }
    const Eigen::Index dim = n + q - rank;
    const Eigen::MatrixXcd basis = svd.matrixV().rightCols(dim);
    *basis_v = basis.topRows(n);
    *basis_w = basis.bottomRows(q);
}

struct Assembled {
    Eigen::MatrixXd v;
    Eigen::MatrixXd w;
    bool well_conditioned = false;
};

Assembled assemble(const std::vector<PoleSlot>& slots, Eigen::Index n, Eigen::Index q) {
    Assembled out;
    out.v.resize(n, n);
    out.w.resize(q, n);
    Eigen::Index col = 0;
    for (const auto& slot : slots) {
        const Eigen::VectorXcd v = slot.basis_v * slot.coord;
        const Eigen::VectorXcd w = slot.basis_w * slot.coord;
        if (slot.pair) {
            out.v.col(col) = v.real();
            out.v.col(col + 1) = v.imag();
            out.w.col(col) = w.real();
            out.w.col(col + 1) = w.imag();
            col += 2;
        } else {
            out.v.col(col) = v.real();
            out.w.col(col) = w.real();
            col += 1;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.v);
    const auto& sv = svd.singularValues();
    out.well_conditioned = sv(sv.size() - 1) > sv(0) * 1e-12;
    return out;
}

// K = -W V^-1 so that eig(at - bt K) hits every slot eigenvalue.
Eigen::MatrixXd feedback_from(const Assembled& parts) {
    return -(parts.v.transpose().partialPivLu().solve(parts.w.transpose())).transpose();
}

double placement_objective(const std::vector<PoleSlot>& slots, Eigen::Index n, Eigen::Index q) {
    const Assembled parts = assemble(slots, n, q);
    if (!parts.well_conditioned) {
        return 1e30;
    }
    return feedback_from(parts).squaredNorm();
}

Eigen::Index param_count(const std::vector<PoleSlot>& slots) {
    Eigen::Index count = 0;
    for (const auto& slot : slots) {
        count += slot.coord.size() * (slot.pair ? 2 : 1);
    }
    return count;
}

void pack(const std::vector<PoleSlot>& slots, Eigen::VectorXd* p) {
    Eigen::Index k = 0;
    for (const auto& slot : slots) {
        for (Eigen::Index i = 0; i < slot.coord.size(); ++i) {
            (*p)(k++) = slot.coord(i).real();
            if (slot.pair) {
                (*p)(k++) = slot.coord(i).imag();
            }
        }
    }
}

void unpack(const Eigen::VectorXd& p, std::vector<PoleSlot>* slots) {
    Eigen::Index k = 0;
    for (auto& slot : *slots) {
        for (Eigen::Index i = 0; i < slot.coord.size(); ++i) {
            const double re = p(k++);
            const double im = slot.pair ? p(k++) : 0.0;
            slot.coord(i) = {re, im};
        }
        const double norm = slot.coord.norm();
        if (norm > 0.0) {
            slot.coord /= norm;
        }
    }
}

// Deterministic well-spread coordinates: walk the slots and pick, inside
// each direction space, the coordinate whose v-part lies farthest from the
// span of the columns already chosen. Unlike the nearest-eigenvector fit
// this cannot collapse onto one direction (a defective eigenspace of at
// pulls several fitted slots together), so it serves as the robust start.
void spread_coords(std::vector<PoleSlot>* slots, Eigen::Index n) {
    Eigen::MatrixXcd chosen(n, 0);
    for (auto& slot : *slots) {
        Eigen::MatrixXcd resid = slot.basis_v;
        if (chosen.cols() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> span(chosen, Eigen::ComputeThinU);
            const auto& sv = span.singularValues();
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                if (sv(i) > sv(0) * kRankTol) {
                    ++rank;
                }
            }
            const Eigen::MatrixXcd qmat = span.matrixU().leftCols(rank);
            resid -= qmat * (qmat.adjoint() * slot.basis_v);
        }
        if (slot.pair) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(resid, Eigen::ComputeFullV);
            slot.coord = svd.matrixV().col(0);
        } else {
            // a real pole needs a real coordinate; maximize the projected
            // norm over the real sphere instead of the complex one
            const Eigen::MatrixXd gram = (resid.adjoint() * resid).real();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
            slot.coord = eig.eigenvectors().col(gram.rows() - 1).cast<std::complex<double>>();
        }
        slot.coord /= slot.coord.norm();
        const Eigen::VectorXcd v = slot.basis_v * slot.coord;
        chosen.conservativeResize(n, chosen.cols() + (slot.pair ? 2 : 1));
        if (slot.pair) {
            chosen.col(chosen.cols() - 2) = v;
            chosen.col(chosen.cols() - 1) = v.conjugate();
        } else {
            chosen.col(chosen.cols() - 1) = v;
        }
    }
}

// Multi-input assignment: parametrize each slot inside its direction space,
// start from the directions closest to existing eigenvectors of at (so a
// spectrum already in place yields K = 0), then descend on ||K||_F^2.
Eigen::MatrixXd eigenstructure_feedback(const Eigen::MatrixXd& at, const Eigen::MatrixXd& bt,
                                        const std::vector<std::complex<double>>& poles) {
    const Eigen::Index n = at.rows();
    const Eigen::Index q = bt.cols();

    std::vector<PoleSlot> slots;
    std::vector<bool> consumed(poles.size(), false);
    for (size_t i = 0; i < poles.size(); ++i) {
        if (consumed[i]) {
            continue;
        }
        PoleSlot slot;
        if (std::abs(poles[i].imag()) <= kConjTol) {
            slot.lambda = {poles[i].real(), 0.0};
            slot.pair = false;
        } else {
            for (size_t j = i + 1; j < poles.size(); ++j) {
                if (!consumed[j] && std::abs(poles[j] - std::conj(poles[i])) <= kConjTol) {
                    consumed[j] = true;
                    break;
                }
            }
            slot.lambda = poles[i].imag() > 0.0 ? poles[i] : std::conj(poles[i]);
            slot.pair = true;
        }
        slots.push_back(std::move(slot));
    }

    const Eigen::MatrixXcd at_c = at.cast<std::complex<double>>();
    const Eigen::MatrixXcd bt_c = bt.cast<std::complex<double>>();
    for (auto& slot : slots) {
        null_pair_basis(at_c, bt_c, slot.lambda, &slot.basis_v, &slot.basis_w);
        slot.coord = Eigen::VectorXcd::Zero(slot.basis_v.cols());
    }
    for (const auto& slot : slots) {
        Eigen::Index multiplicity = 0;
        for (const auto& other : slots) {
            if (std::abs(other.lambda - slot.lambda) <= kConjTol) {
                ++multiplicity;
            }
        }
        if (multiplicity > slot.basis_v.cols()) {
            throw std::invalid_argument(
                "pole_placement_gain: pole multiplicity exceeds the assignable freedom.");
        }
    }

    // initial directions: least-squares fit to the nearest eigenvectors of at
    Eigen::EigenSolver<Eigen::MatrixXd> es(at);
    std::vector<bool> claimed(static_cast<size_t>(n), false);
    size_t sibling_rank = 0;
    for (size_t si = 0; si < slots.size(); ++si) {
        auto& slot = slots[si];
        Eigen::Index best = -1;
        double best_dist = 0.0;
        for (Eigen::Index e = 0; e < n; ++e) {
            if (claimed[static_cast<size_t>(e)]) {
                continue;
            }
            const double dist = std::abs(es.eigenvalues()(e) - slot.lambda);
            if (best < 0 || dist < best_dist) {
                best = e;
                best_dist = dist;
            }
        }
        claimed[static_cast<size_t>(best)] = true;
        const Eigen::VectorXcd target = es.eigenvectors().col(best);
        slot.coord = slot.basis_v.colPivHouseholderQr().solve(target);
        if (!slot.pair) {
            slot.coord = slot.coord.real().cast<std::complex<double>>();
        }
        if (slot.coord.norm() < 1e-10) {
            sibling_rank = (sibling_rank + 1) % static_cast<size_t>(slot.coord.size());
            slot.coord.setZero();
            slot.coord(static_cast<Eigen::Index>(sibling_rank)) = 1.0;
        }
        slot.coord /= slot.coord.norm();
    }
    // keep coordinates of a repeated pole linearly independent
    for (size_t si = 0; si < slots.size(); ++si) {
        for (size_t sj = 0; sj < si; ++sj) {
            if (std::abs(slots[si].lambda - slots[sj].lambda) <= kConjTol) {
                const std::complex<double> overlap = slots[sj].coord.dot(slots[si].coord);
                if (std::abs(overlap) > 1.0 - 1e-8) {
                    // rotate to the next canonical direction
                    Eigen::VectorXcd alt = Eigen::VectorXcd::Zero(slots[si].coord.size());
                    alt(static_cast<Eigen::Index>(si % static_cast<size_t>(alt.size()))) = 1.0;
                    slots[si].coord = (slots[si].coord + alt).normalized();
                }
            }
        }
    }

    // two candidate starts: the fitted one keeps K = 0 when the spectrum is
    // already in place, the greedy spread stays well conditioned when the
    // requested poles sit far from at's spectrum and the fit lands badly
    {
        std::vector<PoleSlot> spread = slots;
        spread_coords(&spread, n);
        if (placement_objective(spread, n, q) < placement_objective(slots, n, q)) {
            slots = std::move(spread);
        }
    }

    const Eigen::Index n_params = param_count(slots);
    Eigen::VectorXd p(n_params);
    pack(slots, &p);

    auto objective = [&](const Eigen::VectorXd& params) {
        std::vector<PoleSlot> local = slots;
        unpack(params, &local);
        return placement_objective(local, n, q);
    };

    double f0 = objective(p);
    double step = 0.25;
    for (int iter = 0; iter < 80 && f0 < 1e29; ++iter) {
        Eigen::VectorXd grad(n_params);
        const double h = 1e-6;
        for (Eigen::Index i = 0; i < n_params; ++i) {
            Eigen::VectorXd lo = p;
            Eigen::VectorXd hi = p;
            lo(i) -= h;
            hi(i) += h;
            grad(i) = (objective(hi) - objective(lo)) / (2.0 * h);
        }
        const double gnorm = grad.norm();
        if (gnorm <= 1e-11 * (1.0 + f0)) {
            break;
        }
        bool accepted = false;
        double alpha = step;
        for (int back = 0; back < 30; ++back) {
            const Eigen::VectorXd trial = p - alpha * grad;
            const double ft = objective(trial);
            if (ft <= f0 - 1e-4 * alpha * gnorm * gnorm) {
                p = trial;
                unpack(p, &slots);   // renormalizes slot coordinates
                pack(slots, &p);
                const double fn = objective(p);
                accepted = true;
                step = std::min(alpha * 2.0, 1.0);
                if (f0 - fn <= 1e-13 * (1.0 + f0)) {
                    f0 = fn;
                    iter = 80;  // converged
                } else {
                    f0 = fn;
                }
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            break;
        }
    }

    unpack(p, &slots);
    Assembled parts = assemble(slots, n, q);
    if (!parts.well_conditioned) {
        spread_coords(&slots, n);
        parts = assemble(slots, n, q);
    }
    if (!parts.well_conditioned) {
        throw std::runtime_error("pole_placement_gain: assignable directions became degenerate.");
    }
    return feedback_from(parts);
}

std::vector<std::complex<double>> sorted_by_modulus_angle(std::vector<std::complex<double>> v) {
    std::sort(v.begin(), v.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        const double ma = std::abs(a);
        const double mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) {
            return ma < mb;
        }
        return std::arg(a) < std::arg(b);
    });
    return v;
}

}  // namespace

void validate(const PoleConfiguration& config, Eigen::Index state_dim) {
    if (static_cast<Eigen::Index>(config.poles.size()) != state_dim) {
        throw std::invalid_argument("poles: expected one pole per error-state dimension.");
    }
    for (const auto& p : config.poles) {
        if (!(std::abs(p) < 1.0)) {
            throw std::invalid_argument("poles: every pole must have modulus below 1.");
        }
    }
    if (!conjugate_closed(config.poles)) {
        throw std::invalid_argument("poles: set must be closed under conjugation.");
    }
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("spectral_radius: matrix must be square.");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd pole_placement_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                                    const std::vector<std::complex<double>>& poles) {
    const Eigen::Index n = a.rows();
    const Eigen::Index q = c.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("pole_placement_gain: a must be square.");
    }
    if (c.cols() != n || q < 1) {
        throw std::invalid_argument("pole_placement_gain: c must be q x n with q >= 1.");
    }
    if (static_cast<Eigen::Index>(poles.size()) != n) {
        throw std::invalid_argument("pole_placement_gain: expected one pole per state dimension.");
    }
    if (!conjugate_closed(poles)) {
        throw std::invalid_argument("pole_placement_gain: poles must be closed under conjugation.");
    }
    if (!observable(a, c)) {
        throw std::invalid_argument("pole_placement_gain: the pair (a, c) is not observable.");
    }

    const Eigen::MatrixXd at = a.transpose();
    const Eigen::MatrixXd bt = c.transpose();
    Eigen::MatrixXd k;
    if (q == 1) {
        k = ackermann_feedback(at, bt.col(0), poles);
    } else {
        k = eigenstructure_feedback(at, bt, poles);
    }

    // verification against the request, sorted by (modulus, angle)
    Eigen::EigenSolver<Eigen::MatrixXd> es(at - bt * k, false);
    std::vector<std::complex<double>> achieved(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        achieved[static_cast<size_t>(i)] = es.eigenvalues()(i);
    }
    const auto want = sorted_by_modulus_angle(poles);
    const auto got = sorted_by_modulus_angle(achieved);
    for (size_t i = 0; i < want.size(); ++i) {
        if (std::abs(want[i] - got[i]) > 1e-7) {
            throw std::runtime_error("pole_placement_gain: placement verification failed.");
        }
    }
    return k.transpose();
}

Eigen::MatrixXd f_radius_optimal_gain(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                                      const Eigen::MatrixXd& h_reduced,
                                      const Eigen::MatrixXd& d_v, const Eigen::MatrixXd& h_v) {
    const Eigen::Index n = a.rows();
    const Eigen::Index q = c.rows();
    if (a.cols() != n || c.cols() != n) {
        throw std::invalid_argument("f_radius_optimal_gain: inconsistent a/c dimensions.");
    }
    if (h_reduced.rows() != n) {
        throw std::invalid_argument("f_radius_optimal_gain: h_reduced must have n rows.");
    }
    if (d_v.rows() != q || d_v.cols() != h_v.rows()) {
        throw std::invalid_argument("f_radius_optimal_gain: inconsistent noise shaping dimensions.");
    }
    const Eigen::MatrixXd p = h_reduced * h_reduced.transpose();
    const Eigen::MatrixXd qv = d_v * h_v * h_v.transpose() * d_v.transpose();
    const Eigen::MatrixXd s = c * p * c.transpose() + qv;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    const double max_eig = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (!(max_eig > 0.0) || eig.eigenvalues().minCoeff() <= max_eig * 1e-12) {
        throw std::invalid_argument("f_radius_optimal_gain: innovation covariance is singular.");
    }
    // L^T = S^-1 C P A^T
    return s.ldlt().solve(c * p * a.transpose()).transpose();
}

double f_radius_cost(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                     const Eigen::MatrixXd& h_reduced,
                     const Eigen::MatrixXd& d_w, const Eigen::MatrixXd& h_w,
                     const Eigen::MatrixXd& d_v, const Eigen::MatrixXd& h_v,
                     const Eigen::MatrixXd& l) {
    const Eigen::MatrixXd p = h_reduced * h_reduced.transpose();
    const Eigen::MatrixXd qw = d_w * h_w * h_w.transpose() * d_w.transpose();
    const Eigen::MatrixXd qv = d_v * h_v * h_v.transpose() * d_v.transpose();
    const Eigen::MatrixXd closed = a - l * c;
    return (closed * p * closed.transpose()).trace() + qw.trace() + (l * qv * l.transpose()).trace();
}

}  // namespace smf
