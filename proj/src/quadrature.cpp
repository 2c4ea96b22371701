#include "ri/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace ri {

namespace {

// Nodes/weights for 15-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 15> kNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr std::array<double, 15> kWeights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

double adaptive_rec(const Integrand& f, double a, double b, double whole,
                    double abs_tol, int depth) {
    if (!std::isfinite(whole)) return whole;  // overflowing integrand: give up
    double m = 0.5 * (a + b);
    double left = gl15(f, a, m);
    double right = gl15(f, m, b);
    double refined = left + right;
    if (depth <= 0 || !std::isfinite(refined) || std::abs(refined - whole) <= abs_tol)
        return refined;
    return adaptive_rec(f, a, m, left, 0.5 * abs_tol, depth - 1) +
           adaptive_rec(f, m, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double gl15(const Integrand& f, double a, double b) {
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i)
        sum += kWeights[i] * f(mid + half * kNodes[i]);
    return half * sum;
}

double integrate_adaptive(const Integrand& f, double a, double b,
                          double rel_tol, int max_depth) {
    if (!(b > a)) return 0.0;
    double whole = gl15(f, a, b);
    double abs_tol = rel_tol * std::max(std::abs(whole), 1e-300);
    return adaptive_rec(f, a, b, whole, abs_tol, max_depth);
}

double integrate_octaves(const Integrand& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) throw std::invalid_argument("integrate_octaves: a must be > 0");
    double sum = 0.0;
    double lo = a;
    while (lo < b) {
        double hi = std::min(2.0 * lo, b);
        sum += integrate_adaptive(f, lo, hi, rel_tol, 18);
        lo = hi;
    }
    return sum;
}

IntegralResult integrate_to_zero(const Integrand& f, double t, double rel_tol) {
    if (!(t > 0.0)) return {0.0, false};
    const int kMaxShells = 1400;
    const int kWindow = 16;
    double sum = 0.0;
    double hi = t;
    double prev_shell = -1.0;
    std::vector<double> ratios;
    for (int k = 0; k < kMaxShells; ++k) {
        double lo = 0.5 * hi;
        if (lo < 1e-300) break;  // shell budget exhausted at the subnormal edge
        double shell = integrate_adaptive(f, lo, hi, rel_tol, 14);
        sum += shell;
        if (prev_shell > 0.0 && shell > 0.0) ratios.push_back(shell / prev_shell);
        prev_shell = shell;
        hi = lo;
        if (shell <= rel_tol * std::max(sum, 1e-300)) return {sum, false};
    }
    // Did not converge inside the shell budget: classify by the trailing decay
    // rate. Ratios near 1 mean a logarithmic-type divergence.
    if (ratios.size() < static_cast<std::size_t>(kWindow)) return {sum, false};
    double trail = 0.0;
    for (int i = 0; i < kWindow; ++i) trail += ratios[ratios.size() - 1 - i];
    trail /= kWindow;
    if (trail >= 0.986) return divergent_integral();
    // Geometric-looking tail: extrapolate and accept.
    double tail = prev_shell * trail / (1.0 - trail);
    return {sum + tail, false};
}

double maximize_scan_golden(const Integrand& f, double a, double b,
                            int scan_points, double x_tol) {
    if (!(b > a)) return a;
    double best_x = a, best_v = f(a);
    for (int i = 1; i <= scan_points; ++i) {
        double x = a + (b - a) * i / scan_points;
        double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    // Golden-section around the best scan cell.
    double step = (b - a) / scan_points;
    double lo = std::max(a, best_x - step);
    double hi = std::min(b, best_x + step);
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > x_tol * std::max(1.0, std::abs(hi))) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }
    double mid = 0.5 * (lo + hi);
    return f(mid) >= best_v ? mid : best_x;
}

}  // namespace ri
