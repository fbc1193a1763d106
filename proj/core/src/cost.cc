#include "bellsim/cost.h"

#include <algorithm>
#include <stdexcept>

namespace bellsim {

namespace {

void require_odd_distance(int d, const char *what) {
    if (d < 1 || d % 2 == 0) throw std::invalid_argument(std::string(what) + " must be odd");
}

double patch_qubits(int d) {
    return 2.0 * d * d - 1.0;
}

}  // namespace

CostReport llv_boosting(int d_bell, int d_s, double R, double q0) {
    require_odd_distance(d_bell, "d_bell");
    require_odd_distance(d_s, "d_s");
    if (R <= 0) throw std::invalid_argument("throughput R must be positive");
    if (q0 <= 0 || q0 > 1) throw std::invalid_argument("acceptance rate q0 must be in (0, 1]");
    double pairs = static_cast<double>(d_bell) * d_bell;
    CostReport rep;
    rep.v_buffer = pairs * pairs / R / q0;
    rep.v_factory = d_s * patch_qubits(d_s) / q0;
    rep.v_total = rep.v_buffer + rep.v_factory;
    rep.inverse_yield = pairs / q0;
    return rep;
}

CostReport llv_surgery(int d_s, double R) {
    require_odd_distance(d_s, "d_s");
    if (R <= 0) throw std::invalid_argument("throughput R must be positive");
    double consumed = d_s * (2.0 * d_s - 1.0);
    double shortfall = std::max(consumed - R * d_s, 0.0);
    CostReport rep;
    rep.v_buffer = shortfall * shortfall / R;
    // d_s merge rounds on the full patch plus the half-depth linking region.
    rep.v_factory = d_s * (patch_qubits(d_s) + (2.0 * d_s - 1.0) / 2.0);
    rep.v_total = rep.v_buffer + rep.v_factory;
    rep.inverse_yield = consumed;
    return rep;
}

double pipelined_volume(size_t n, size_t k, size_t r, int d_s) {
    require_odd_distance(d_s, "d_s");
    if (n == 0 || k > n || r > n - k) throw std::invalid_argument("need r <= n - k <= n");
    double steps = static_cast<double>(k * (n - k) + r * (n - r) + (n - r - k) * (n - 1));
    return steps * d_s * patch_qubits(d_s);
}

}  // namespace bellsim
