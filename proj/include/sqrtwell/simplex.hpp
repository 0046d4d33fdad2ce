#pragma once

// Nelder-Mead downhill simplex for small unconstrained problems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>

namespace sqrtwell::simplex {

template <std::size_t Dim>
using Point = std::array<double, Dim>;

template <std::size_t Dim>
struct Result {
    Point<Dim> argmin{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct Options {
    double initial_step = 0.1;
    double diameter_tolerance = 1e-6; ///< stop once every vertex is this close to the best
    int max_iterations = 5000;
};

template <std::size_t Dim, typename F>
Result<Dim> minimize(F&& objective, const Point<Dim>& start, const Options& options = {})
{
    constexpr double reflect = 1.0;
    constexpr double expand = 2.0;
    constexpr double contract = 0.5;
    constexpr double shrink = 0.5;

    std::array<Point<Dim>, Dim + 1> vertex{};
    std::array<double, Dim + 1> value{};
    for (std::size_t i = 0; i <= Dim; ++i) {
        vertex[i] = start;
        if (i > 0) {
            vertex[i][i - 1] += options.initial_step;
        }
        value[i] = objective(vertex[i]);
    }

    auto combine = [](const Point<Dim>& base, const Point<Dim>& toward, double t) {
        Point<Dim> out{};
        for (std::size_t k = 0; k < Dim; ++k) {
            out[k] = base[k] + t * (toward[k] - base[k]);
        }
        return out;
    };

    std::array<std::size_t, Dim + 1> order{};
    Result<Dim> result;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return value[i] < value[j]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[Dim - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= Dim; ++i) {
            for (std::size_t k = 0; k < Dim; ++k) {
                diameter = std::max(diameter, std::abs(vertex[i][k] - vertex[best][k]));
            }
        }
        result.iterations = iter;
        if (diameter < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        Point<Dim> centroid{};
        for (std::size_t i = 0; i <= Dim; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < Dim; ++k) {
                centroid[k] += vertex[i][k] / static_cast<double>(Dim);
            }
        }

        const Point<Dim> reflected = combine(centroid, vertex[worst], -reflect);
        const double f_reflected = objective(reflected);
        if (f_reflected < value[best]) {
            const Point<Dim> expanded = combine(centroid, vertex[worst], -expand);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                vertex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                vertex[worst] = reflected;
                value[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = f_reflected;
            continue;
        }

        const bool outside = f_reflected < value[worst];
        const Point<Dim> contracted =
            outside ? combine(centroid, reflected, contract) : combine(centroid, vertex[worst], contract);
        const double f_contracted = objective(contracted);
        if (f_contracted < std::min(f_reflected, value[worst])) {
            vertex[worst] = contracted;
            value[worst] = f_contracted;
            continue;
        }

        for (std::size_t i = 0; i <= Dim; ++i) {
            if (i == best) {
                continue;
            }
            vertex[i] = combine(vertex[best], vertex[i], shrink);
            value[i] = objective(vertex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
    result.argmin = vertex[best];
    result.value = value[best];
    return result;
}

} // namespace sqrtwell::simplex
