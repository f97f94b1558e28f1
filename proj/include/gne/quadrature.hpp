#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>

namespace gne {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& result, double& err) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodX[i]);
        fv[14 - i] = f(c + h * kKronrodX[i]);
    }
    fv[7] = f(c);
    double resk = kKronrodW[7] * fv[7];
    double resg = kGaussW[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kKronrodW[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kGaussW[i / 2] * (fv[i] + fv[14 - i]);
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

template <typename F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
    double result, err;
    gk15(f, a, b, result, err);
    if (err <= tol || depth >= 48) return result;
    double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * tol, depth + 1) +
           adaptive(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration to absolute tolerance abs_tol.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12) {
    if (a == b) return 0.0;
    return detail::adaptive(f, a, b, abs_tol, 0);
}

}  // namespace gne
