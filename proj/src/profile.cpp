#include "dikmc/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dikmc {

Profile::Profile(std::vector<double> values) : values_(std::move(values)) {
    const int m = grid_size();
    if (m < 3) {
        throw std::invalid_argument("profile: needs at least 3 grid points");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("profile: values must be finite");
        }
    }
    int imin = 0, imax = 0;
    int nmin = 1, nmax = 1;   // multiplicity of the extreme values
    for (int i = 1; i < m; ++i) {
        if (values_[i] < values_[imin]) {
            imin = i;
            nmin = 1;
        } else if (values_[i] == values_[imin]) {
            ++nmin;
        }
        if (values_[i] > values_[imax]) {
            imax = i;
            nmax = 1;
        } else if (values_[i] == values_[imax]) {
            ++nmax;
        }
    }
    phi_min_ = values_[imin];
    phi_max_ = values_[imax];
    x_min_ = static_cast<double>(imin) / m;
    x_max_ = static_cast<double>(imax) / m;
    auto stencil = [&](int i) {
        double lo = values_[(i + m - 1) % m];
        double hi = values_[(i + 1) % m];
        return (hi - 2.0 * values_[i] + lo) * m * static_cast<double>(m);
    };
    d2_min_ = stencil(imin);
    d2_max_ = stencil(imax);
    strict_ = nmin == 1 && nmax == 1 && d2_min_ > 0.0 && d2_max_ < 0.0;
}

double Profile::eval(double x) const {
    if (empty()) throw std::logic_error("profile: eval on empty profile");
    const int m = grid_size();
    double frac = x - std::floor(x);         // x mod 1 in [0,1)
    double u = frac * m;
    int k = static_cast<int>(u);
    if (k >= m) k = m - 1;                    // frac*m rounding up to m
    double w = u - k;
    return values_[k] + w * (values_[(k + 1) % m] - values_[k]);
}

void Profile::require_strict_extrema() const {
    if (empty() || !strict_) {
        throw std::domain_error(
            "profile: degenerate extremum (needs a unique minimum with "
            "positive curvature and a unique maximum with negative curvature)");
    }
}

bool Profile::in_unit_band() const {
    return !empty() && phi_min_ >= 1.0 - 1e-9 && phi_max_ <= 2.0 + 1e-9;
}

void Profile::require_unit_band() const {
    if (!in_unit_band()) {
        throw std::domain_error("profile: values must lie within [1, 2]");
    }
}

Profile cosine_profile(double x0, int grid) {
    if (grid < 3) throw std::invalid_argument("cosine_profile: grid too small");
    std::vector<double> v(grid);
    for (int k = 0; k < grid; ++k) {
        double x = static_cast<double>(k) / grid;
        v[k] = (3.0 - std::cos(2.0 * M_PI * (x - x0))) / 2.0;
    }
    return Profile(std::move(v));
}

Profile apply_R(const Profile& p, double c) {
    if (!(c > 0.0) || !(c < 1.0)) {
        throw std::domain_error("apply_R: requires c in (0,1)");
    }
    p.require_unit_band();
    const double denom = 4.0 - c * p.phi_max();   // >= 4 - 2c > 2
    std::vector<double> out(p.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (4.0 - c * p.values()[k]) / denom;
    }
    return Profile(std::move(out));
}

} // namespace dikmc
