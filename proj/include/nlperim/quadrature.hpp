#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace nlperim {

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;   // accumulated local error estimates
    bool converged = true;  // false if the depth budget ran out somewhere
};

struct QuadOptions {
    double rel_tol = 1e-11;
    double abs_tol = 0.0;
    int max_depth = 60;
};

// Adaptive Simpson with local Richardson acceptance on [a, b].
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, const QuadOptions& opt = {});

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Gamma(x) for positive integer and half-integer x only (recurrence from
// Gamma(1/2) = sqrt(pi), Gamma(1) = 1).
double gamma_half_int(double x);

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
double unit_sphere_area(int d);

} // namespace nlperim
