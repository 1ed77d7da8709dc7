#pragma once

#include <vector>

namespace dikmc {

// A tabulated periodic field shape Phi on [0,1): values[k] = Phi(k/M) for
// k = 0..M-1, evaluated between grid points by periodic linear interpolation.
// Extremum locations and the second derivatives there (centered 3-point
// stencils) are cached at construction. A profile may be degenerate (ties for
// the extrema, e.g. Phi == 1); operations that need a nondegenerate extremum
// call require_strict_extrema() and refuse otherwise.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<double> values);

    bool empty() const { return values_.empty(); }
    int grid_size() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

    // Periodic linear interpolation at any real x (x is taken mod 1).
    double eval(double x) const;

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double phi_min() const { return phi_min_; }
    double phi_max() const { return phi_max_; }
    double d2_min() const { return d2_min_; }   // second derivative at x_min
    double d2_max() const { return d2_max_; }   // second derivative at x_max

    // True when the grid minimum and maximum are each attained at exactly one
    // grid point and the stencil curvatures have the expected signs.
    bool has_strict_extrema() const { return strict_; }
    void require_strict_extrema() const;  // throws std::domain_error otherwise

    // Scaling-regime hypothesis: values within [1, 2] (small roundoff slack).
    bool in_unit_band() const;
    void require_unit_band() const;       // throws std::domain_error otherwise

private:
    std::vector<double> values_;
    double x_min_ = 0.0, x_max_ = 0.0;
    double phi_min_ = 0.0, phi_max_ = 0.0;
    double d2_min_ = 0.0, d2_max_ = 0.0;
    bool strict_ = false;
};

// Phi(x) = (3 - cos(2 pi (x - x0))) / 2: range [1,2], minimum at x0 with
// curvature 2 pi^2, maximum at x0 + 1/2 with curvature -2 pi^2.
Profile cosine_profile(double x0, int grid = 4096);

// One renormalization step R Phi = (4 - c Phi) / (4 - c Phi(x^*)), c in (0,1):
// an affine orientation-reversing contraction of the shape toward the constant
// profile 1; the new minimum is exactly 1, attained where Phi was maximal.
Profile apply_R(const Profile& p, double c);

} // namespace dikmc
