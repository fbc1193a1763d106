#include "bellsim/fit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr double kZ95 = 1.959963984540054;

FitValue interval(double value, double sigma) {
    return {value, value - kZ95 * sigma, value + kZ95 * sigma};
}

FitValue exp_interval(double log_value, double sigma) {
    return {std::exp(log_value), std::exp(log_value - kZ95 * sigma),
            std::exp(log_value + kZ95 * sigma)};
}

/// Ordinary least squares for y = X beta with 3 columns, returning beta and
/// the unscaled normal-matrix inverse for covariance estimates.
struct Lsq3 {
    std::array<double, 3> beta{};
    std::array<std::array<double, 3>, 3> inv{};
    double rss = 0;
};

Lsq3 solve3(const std::vector<std::array<double, 3>> &rows, const std::vector<double> &y) {
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> v{};
    for (size_t i = 0; i < rows.size(); ++i) {
        for (int a = 0; a < 3; ++a) {
            v[a] += rows[i][a] * y[i];
            for (int b = 0; b < 3; ++b) m[a][b] += rows[i][a] * rows[i][b];
        }
    }
    // Gauss-Jordan on [m | I].
    std::array<std::array<double, 3>, 3> inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        if (std::fabs(m[pivot][col]) < 1e-12) throw std::invalid_argument("degenerate fit data");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        double scale = m[col][col];
        for (int c = 0; c < 3; ++c) {
            m[col][c] /= scale;
            inv[col][c] /= scale;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            for (int c = 0; c < 3; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    Lsq3 out;
    out.inv = inv;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.beta[a] += inv[a][b] * v[b];
    for (size_t i = 0; i < rows.size(); ++i) {
        double fit = 0;
        for (int a = 0; a < 3; ++a) fit += rows[i][a] * out.beta[a];
        out.rss += (y[i] - fit) * (y[i] - fit);
    }
    return out;
}

}  // namespace

double BoostingModel::operator()(double p_bell, int d_bell) const {
    return alpha * std::pow(p_bell / p_bell_th, gamma * d_bell);
}

BoostingFit fit_boosting_scaling(const std::vector<BoostingSample> &data) {
    std::vector<std::array<double, 3>> rows;
    std::vector<double> y;
    std::set<int> distances;
    std::set<double> rates;
    for (const auto &s : data) {
        if (s.p_bell <= 0.01 || s.p_bell >= 0.08) continue;
        if (s.d_bell < 1 || s.p_l <= 0) throw std::invalid_argument("bad sample");
        distances.insert(s.d_bell);
        rates.insert(s.p_bell);
        // log p_L = log alpha + gamma * d log p_bell - gamma log p_th * d
        rows.push_back({1.0, s.d_bell * std::log(s.p_bell), static_cast<double>(s.d_bell)});
        y.push_back(std::log(s.p_l));
    }
    if (distances.size() < 2 || rates.size() < 3)
        throw std::invalid_argument("need >= 2 d_bell and >= 3 p_bell values inside the fit window");

    Lsq3 ls = solve3(rows, y);
    double log_alpha = ls.beta[0], gamma = ls.beta[1], c = ls.beta[2];
    if (gamma <= 0) throw std::invalid_argument("fitted exponent is not positive");
    double log_p_th = -c / gamma;

    size_t n = rows.size();
    double var = n > 3 ? ls.rss / static_cast<double>(n - 3) : 0.0;
    double sa = std::sqrt(var * ls.inv[0][0]);
    double sg = std::sqrt(var * ls.inv[1][1]);
    // Delta method for p_th = exp(-c/gamma).
    double dg = c / (gamma * gamma), dc = -1.0 / gamma;
    double sp = std::sqrt(std::max(0.0, var * (dg * dg * ls.inv[1][1] + dc * dc * ls.inv[2][2] +
                                               2 * dg * dc * ls.inv[1][2])));

    BoostingFit fit;
    fit.alpha = exp_interval(log_alpha, sa);
    fit.gamma = interval(gamma, sg);
    fit.p_bell_th = {std::exp(log_p_th), std::exp(log_p_th - kZ95 * sp),
                     std::exp(log_p_th + kZ95 * sp)};
    fit.model = {fit.alpha.value, gamma, fit.p_bell_th.value};
    fit.residual = std::sqrt(ls.rss / static_cast<double>(n));
    fit.points_used = n;
    return fit;
}

double SurgeryModel::operator()(double p_bell, int d_s) const {
    if (d_s < 1 || d_s % 2 == 0) throw std::invalid_argument("d_s must be odd");
    double a = p_bell / p_th_bell;
    double b = p_local / p_th_local;
    if (b >= 1) throw std::invalid_argument("local rate must sit below its threshold");
    double boost = 1.0 + alpha_c * p_local * p_th_bell / (1.0 - std::sqrt(b));
    double mixed = a * boost * boost;
    double half = (d_s + 1) / 2.0;
    double sum = std::pow(a, half) + std::pow(b, half);
    for (int g = 1; g <= d_s; ++g) sum += std::pow(mixed, g / 2.0) * std::pow(b, half - g / 2.0);
    return kappa * std::pow(d_s + 1.0, eta) * sum;
}

namespace {

/// Residual sum of squares of the best (log kappa, eta) given alpha_c, by
/// 2-parameter linear least squares on log p_out - log(chain sum).
struct InnerFit {
    double rss = 0;
    double log_kappa = 0, eta = 0;
    double s_kappa = 0, s_eta = 0;
};

InnerFit surgery_inner(const std::vector<SurgerySample> &pts, SurgeryModel probe) {
    probe.kappa = 1;
    probe.eta = 0;
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    std::vector<double> xs(pts.size()), ys(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        xs[i] = std::log(pts[i].d_s + 1.0);
        ys[i] = std::log(pts[i].p_out) - std::log(probe(pts[i].p_bell, pts[i].d_s));
        s1 += 1;
        sx += xs[i];
        sxx += xs[i] * xs[i];
        sy += ys[i];
        sxy += xs[i] * ys[i];
    }
    double det = s1 * sxx - sx * sx;
    if (std::fabs(det) < 1e-12) throw std::invalid_argument("need >= 2 distinct d_s below threshold");
    InnerFit f;
    f.eta = (s1 * sxy - sx * sy) / det;
    f.log_kappa = (sy - f.eta * sx) / s1;
    for (size_t i = 0; i < pts.size(); ++i) {
        double r = ys[i] - f.log_kappa - f.eta * xs[i];
        f.rss += r * r;
    }
    double var = pts.size() > 3 ? f.rss / static_cast<double>(pts.size() - 3) : 0.0;
    f.s_kappa = std::sqrt(var * sxx / det);
    f.s_eta = std::sqrt(var * s1 / det);
    return f;
}

}  // namespace

SurgeryFit fit_surgery_scaling(const std::vector<SurgerySample> &data, SurgeryModel base) {
    std::vector<SurgerySample> pts;
    std::set<int> distances;
    for (const auto &s : data) {
        if (s.p_bell >= base.p_th_bell) continue;
        if (s.p_bell <= 0 || s.p_out <= 0 || s.d_s < 1 || s.d_s % 2 == 0)
            throw std::invalid_argument("bad sample");
        distances.insert(s.d_s);
        pts.push_back(s);
    }
    if (distances.size() < 2 || pts.size() < 3)
        throw std::invalid_argument("need >= 2 distinct d_s and >= 3 points below threshold");

    auto rss_at = [&](double log_ac) {
        SurgeryModel probe = base;
        probe.alpha_c = std::exp(log_ac);
        return surgery_inner(pts, probe).rss;
    };

    // Coarse log grid, then golden-section refinement of the 1-d profile.
    double best_x = 0, best_rss = HUGE_VAL;
    for (double x = std::log(1.0); x <= std::log(1e5) + 1e-9; x += std::log(1e5) / 80) {
        double r = rss_at(x);
        if (r < best_rss) {
            best_rss = r;
            best_x = x;
        }
    }
    double lo = best_x - std::log(1e5) / 80, hi = best_x + std::log(1e5) / 80;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = rss_at(x1), f2 = rss_at(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = rss_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = rss_at(x2);
        }
    }
    double log_ac = (lo + hi) / 2;

    SurgeryModel fitted = base;
    fitted.alpha_c = std::exp(log_ac);
    InnerFit inner = surgery_inner(pts, fitted);
    fitted.kappa = std::exp(inner.log_kappa);
    fitted.eta = inner.eta;

    SurgeryFit out;
    out.model = fitted;
    out.kappa = exp_interval(inner.log_kappa, inner.s_kappa);
    out.eta = interval(inner.eta, inner.s_eta);
    // Curvature of the RSS profile in log alpha_c gives the scale of its
    // uncertainty; a flat profile degrades to a point interval.
    double h = 0.05;
    double curv = (rss_at(log_ac + h) - 2 * inner.rss + rss_at(log_ac - h)) / (h * h);
    double var = pts.size() > 3 ? inner.rss / static_cast<double>(pts.size() - 3) : 0.0;
    double s_ac = curv > 0 ? std::sqrt(2 * var / curv) : 0.0;
    out.alpha_c = exp_interval(log_ac, s_ac);
    out.residual = std::sqrt(inner.rss / static_cast<double>(pts.size()));
    out.points_used = pts.size();
    return out;
}

}  // namespace bellsim
