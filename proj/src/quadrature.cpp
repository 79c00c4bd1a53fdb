#include "nlperim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlperim {

namespace {

struct SimpsonCtx {
    const std::function<double(double)>* f;
    int max_depth;
    double abs_err = 0.0;
    bool converged = true;
};

// Per-segment error budget proportional to length; acceptance against a
// global tolerance avoids death spirals on segments where the integrand is
// negligible relative to the whole integral.
double simpson_rec(SimpsonCtx& c, double a, double b, double fa, double fm,
                   double fb, double whole, double tol_seg, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = (*c.f)(0.5 * (a + m));
    const double frm = (*c.f)(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol_seg || depth >= c.max_depth) {
        if (std::abs(delta) > 15.0 * tol_seg) c.converged = false;
        c.abs_err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(c, a, m, fa, flm, fm, left, 0.5 * tol_seg, depth + 1) +
           simpson_rec(c, m, b, fm, frm, fb, right, 0.5 * tol_seg, depth + 1);
}

} // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, const QuadOptions& opt) {
    if (a == b) return {0.0, 0.0, true};
    // Coarse composite estimate fixes the global tolerance scale.
    const int panels = 16;
    const double h = (b - a) / panels;
    double coarse = 0.0;
    double f_right = f(a);
    for (int i = 0; i < panels; ++i) {
        const double fa_ = f_right;
        const double fm_ = f(a + (i + 0.5) * h);
        f_right = f(a + (i + 1.0) * h);
        coarse += h / 6.0 * (fa_ + 4.0 * fm_ + f_right);
    }
    const double tol_total =
        std::max({opt.abs_tol, opt.rel_tol * std::abs(coarse), 1e-300});

    SimpsonCtx c{&f, opt.max_depth};
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    QuadResult r;
    r.value = simpson_rec(c, a, b, fa, fm, fb, whole, tol_total, 0);
    r.abs_err = c.abs_err;
    r.converged = c.converged;
    return r;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

double gamma_half_int(double x) {
    if (x <= 0.0 || std::round(2.0 * x) != 2.0 * x)
        throw std::domain_error("gamma_half_int: x must be a positive multiple of 1/2");
    double v;
    double t;
    if (std::round(x) == x) {
        v = 1.0; // Gamma(1)
        t = 1.0;
    } else {
        v = std::sqrt(std::numbers::pi); // Gamma(1/2)
        t = 0.5;
    }
    while (t + 0.5 <= x) {
        v *= t;
        t += 1.0;
    }
    return v;
}

double unit_sphere_area(int d) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_half_int(0.5 * d);
}

} // namespace nlperim
