#include <cstdio>

#include "twoadic/tree.hpp"
#include "twoadic/ventilation.hpp"

// Pressure at the ends of a geometric tree fed by a constant and by a
// localized flux, computed three independent ways.
int main() {
    using namespace twoadic;
    const double alpha = 1.63;
    const int n = 8;

    const StepFunction one = StepFunction::constant(1.0, 0, n);
    std::printf("constant flux, alpha = %.2f: p = %.15f (1/(2-alpha) = %.15f)\n", alpha, nd_apply(one, alpha)[0].real(),
                1.0 / (2.0 - alpha));

    const StepFunction u = indicator(Cell{2, 1}, 0, n);  // flux through the ends 1 + 4Z2
    const StepFunction multiplier = nd_apply(u, alpha);
    const StepFunction spheres = nd_sphere_sum(u, alpha);
    StepFunction tree = nd_finite_tree(u, ResistanceProfile::geometric(alpha));
    for (std::size_t a = 0; a < tree.size(); ++a) tree[a] += u[a] * geometric_subtree_tail(alpha, n);

    std::printf("%6s %20s %20s %20s\n", "end", "multiplier", "sphere sum", "finite tree + tail");
    for (std::size_t a = 0; a < 8; ++a)
        std::printf("%6zu %20.15f %20.15f %20.15f\n", a, multiplier[a].real(), spheres[a].real(), tree[a].real());

    const StepFunction back = dn_apply(multiplier, alpha);
    std::printf("DN(ND u) - u, max abs: %.3e\n", lp_norm(back - u, std::numeric_limits<double>::infinity()));
}
