#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite
// interval, QUADPACK style: the interval with the largest error estimate is
// bisected until the summed estimate meets max(abs_tol, rel_tol·|I|) or the
// interval budget is exhausted.

namespace hapseh::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;  ///< ∫|f|
    unsigned intervals = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (the last is the centre).
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error, l1;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_centre = f(centre);

    double kronrod = f_centre * kronrod_weights[7];
    double gauss = f_centre * gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(centre - dx);
        f2[static_cast<std::size_t>(j)] = f(centre + dx);
        const double pair = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        kronrod += kronrod_weights[static_cast<std::size_t>(j)] * pair;
        abs_sum += kronrod_weights[static_cast<std::size_t>(j)]
                   * (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)]));
        if (j % 2 == 1) gauss += gauss_weights[static_cast<std::size_t>(j / 2)] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kronrod_weights[7] * std::abs(f_centre - mean);
    for (std::size_t j = 0; j < 7; ++j) asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = kronrod * half;
    const double l1 = abs_sum * std::abs(half);
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    if (l1 > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * l1, err);
    return {a, b, value, err, l1};
}

} // namespace detail

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol, unsigned max_intervals) {
    Result r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    std::priority_queue<detail::Segment> heap;
    heap.push(detail::kronrod15(f, a, b));
    double value = heap.top().value;
    double error = heap.top().error;
    double l1 = heap.top().l1;
    unsigned n = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && n < max_intervals) {
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        const detail::Segment left = detail::kronrod15(f, worst.a, mid);
        const detail::Segment right = detail::kronrod15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    // Re-sum from the segments to drop the drift of the running updates.
    r.value = 0.0;
    r.error = 0.0;
    r.l1 = 0.0;
    std::vector<detail::Segment> segs;
    segs.reserve(heap.size());
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& s : segs) {
        r.value += s.value;
        r.error += s.error;
        r.l1 += s.l1;
    }
    r.intervals = n;
    r.converged = r.error <= std::max(abs_tol, rel_tol * std::abs(r.value));
    return r;
}

} // namespace hapseh::quad
