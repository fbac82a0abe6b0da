#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
// Works for any value type with +, * by double, and std::abs (double,
// std::complex<double>).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "bwp/error.hpp"

namespace bwp::quad {

template <typename T>
struct Result {
    T value{};
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double lo;
    double hi;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gk15(F& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const T fc = f(centre);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const T sum = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + sum * kKronrodWeights[i];
        if (i % 2 == 1) gauss = gauss + sum * kGaussWeights[i / 2];
    }
    kronrod = kronrod * half;
    gauss = gauss * half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Integrates f over [lo, hi] until the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or max_panels is reached.
template <typename T, typename F>
Result<T> integrate(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                    int max_panels = 2000) {
    std::priority_queue<detail::Panel<T>> heap;
    heap.push(detail::gk15<T>(f, lo, hi));
    Result<T> out;
    out.evaluations = 15;
    T total = heap.top().value;
    double error = heap.top().error;
    int panels = 1;
    while (true) {
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (error <= target) {
            out.converged = true;
            break;
        }
        if (panels >= max_panels) break;
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // interval no longer divisible
        heap.pop();
        auto left = detail::gk15<T>(f, worst.lo, mid);
        auto right = detail::gk15<T>(f, mid, worst.hi);
        out.evaluations += 30;
        total = total - worst.value + left.value + right.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum to remove drift from the incremental updates.
    T sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum = sum + heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.abs_error = err;
    return out;
}

}  // namespace bwp::quad
