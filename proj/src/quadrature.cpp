#include "invlag/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace invlag {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) and weights;
// the embedded 7-point Gauss rule uses the odd-indexed abscissae.
constexpr double kAbscissa[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kKronrodWeight[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kGaussWeight[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double kronrod = kKronrodWeight[7] * f(center);
    double gauss = kGaussWeight[3] * f(center);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kAbscissa[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeight[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeight[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;

    std::vector<Segment> segments{evaluate(f, a, b)};
    for (int split = 0; split <= opts.max_subdivisions; ++split) {
        double total = 0.0, err = 0.0;
        for (const Segment& s : segments) {
            total += s.value;
            err += s.error;
        }
        if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) return total;
        if (split == opts.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge after " << opts.max_subdivisions
                << " subdivisions; achieved error estimate " << err;
            throw QuadratureError(msg.str(), err);
        }

        auto worst = std::max_element(
            segments.begin(), segments.end(),
            [](const Segment& u, const Segment& w) { return u.error < w.error; });
        const double mid = 0.5 * (worst->a + worst->b);
        const Segment left = evaluate(f, worst->a, mid);
        const Segment right = evaluate(f, mid, worst->b);
        *worst = left;
        segments.push_back(right);
    }
    return 0.0; // unreachable
}

} // namespace invlag
