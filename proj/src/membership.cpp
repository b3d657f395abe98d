#include "fuzzy/membership.hpp"

#include <algorithm>
#include <cmath>

namespace fuzzy {

namespace {

double eval_triangular(const Triangular& t, double x) {
    if (x == t.m) return 1.0;
    if (x <= t.a || x >= t.b) return 0.0;
    if (x < t.m) return (x - t.a) / (t.m - t.a);
    return (t.b - x) / (t.b - t.m);
}

double eval_gaussian(const Gaussian& g, double x) {
    const double d = x - g.m;
    return std::exp(-(d * d) / (2.0 * g.k * g.k));
}

} // namespace

double eval_membership(const MembershipFunction& mf, double x) {
    return std::visit(
        [x](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Triangular>) {
                return eval_triangular(shape, x);
            } else {
                return eval_gaussian(shape, x);
            }
        },
        mf);
}

bool mf_params_valid(const MembershipFunction& mf) {
    if (const auto* t = std::get_if<Triangular>(&mf)) {
        return std::isfinite(t->a) && std::isfinite(t->m) && std::isfinite(t->b) &&
               t->a <= t->m && t->m <= t->b && t->a < t->b;
    }
    const auto& g = std::get<Gaussian>(mf);
    return std::isfinite(g.m) && std::isfinite(g.k) && g.k > 0.0;
}

bool mf_support_intersects(const MembershipFunction& mf, double lo, double hi) {
    if (const auto* t = std::get_if<Triangular>(&mf)) {
        // open-interval overlap: touching at a single point carries no area
        return std::max(t->a, lo) < std::min(t->b, hi);
    }
    return lo < hi; // gaussian support is the whole real line
}

} // namespace fuzzy
