#pragma once

#include <variant>

namespace fuzzy {

/// Triangular membership curve with lower limit a, peak m and upper limit b.
/// Well formed when a <= m <= b and a < b; a == m or m == b gives a shoulder
/// shape that is 1 at the peak side.
struct Triangular {
    double a = 0.0;
    double m = 0.0;
    double b = 0.0;
    friend bool operator==(const Triangular&, const Triangular&) = default;
};

/// Gaussian membership curve exp(-(x-m)^2 / (2 k^2)), central value m,
/// standard deviation k > 0.
struct Gaussian {
    double m = 0.0;
    double k = 1.0;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

using MembershipFunction = std::variant<Triangular, Gaussian>;

/// Degree of membership at x, always in [0, 1].
double eval_membership(const MembershipFunction& mf, double x);

/// Parameter sanity: a <= m <= b and a < b for triangles, k > 0 for gaussians.
bool mf_params_valid(const MembershipFunction& mf);

/// True when the curve is nonzero somewhere on a set of positive measure
/// inside [lo, hi].
bool mf_support_intersects(const MembershipFunction& mf, double lo, double hi);

} // namespace fuzzy
