#ifndef BELLSIM_FIT_H
#define BELLSIM_FIT_H

#include <cstddef>
#include <vector>

namespace bellsim {

/// Point estimate with a 95% confidence interval.
struct FitValue {
    double value = 0;
    double lo = 0;
    double hi = 0;
};

/// Power-law error model of the boosted logical Bell pair,
/// p_L = alpha * (p_bell / p_bell_th)^(gamma * d_bell).
/// Defaults approximate the no-discard regime; gamma grows towards 1.2 as
/// the postselection discard fraction approaches one half.
struct BoostingModel {
    double alpha = 0.5;
    double gamma = 0.4;
    double p_bell_th = 0.12;

    double operator()(double p_bell, int d_bell) const;
};

struct BoostingSample {
    double p_bell = 0;
    int d_bell = 0;
    double p_l = 0;
};

struct BoostingFit {
    BoostingModel model;
    FitValue alpha, gamma, p_bell_th;
    double residual = 0;  // rms of the log-space residuals
    size_t points_used = 0;
};

/// Joint log-space least squares over all samples. The power law only holds
/// between saturation and threshold, so samples outside 1% < p_bell < 8% are
/// dropped first; what remains must cover >= 2 distinct d_bell and >= 3
/// distinct p_bell. The model is linear in (log alpha, gamma, gamma log
/// p_bell_th), so the optimum is closed-form.
BoostingFit fit_boosting_scaling(const std::vector<BoostingSample> &data);

/// Merged-patch surgery error model: polynomial prefactor kappa (d_s+1)^eta
/// times failure chains of pure-Bell, pure-local, and mixed type, where the
/// mixed chains pick up an alpha_c-weighted boost per crossing. Thresholds
/// and the local rate are fixed constants of the dataset, not fitted.
struct SurgeryModel {
    double kappa = 5.44e-2;
    double eta = 0.534;
    double alpha_c = 315.0;
    double p_local = 1e-3;
    double p_th_local = 0.0102;
    double p_th_bell = 0.153;

    double operator()(double p_bell, int d_s) const;
};

struct SurgerySample {
    double p_bell = 0;
    int d_s = 0;
    double p_out = 0;
};

struct SurgeryFit {
    SurgeryModel model;
    FitValue kappa, eta, alpha_c;
    double residual = 0;
    size_t points_used = 0;
};

/// Fits kappa, eta, alpha_c to below-threshold samples by log-space least
/// squares: for fixed alpha_c the model is linear in (log kappa, eta), so a
/// one-dimensional search over log alpha_c with a closed-form inner fit finds
/// the optimum. base supplies the fixed constants; samples with p_bell at or
/// above base.p_th_bell are rejected from the window.
SurgeryFit fit_surgery_scaling(const std::vector<SurgerySample> &data, SurgeryModel base = {});

}  // namespace bellsim

#endif
