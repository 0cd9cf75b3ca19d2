#include "mprony/random_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace mprony {

DiracEnsemble random_separated_ensemble(std::size_t d, std::size_t m, double q, std::uint64_t seed,
                                        std::size_t max_attempts_per_point)
{
    if (d == 0 || m == 0) throw std::invalid_argument("random ensemble needs d >= 1 and M >= 1");
    if (!(q > 0.0) || q > 0.5) throw std::invalid_argument("separation must lie in (0, 1/2]");
    if (static_cast<double>(m) * std::pow(q, static_cast<double>(d)) > 1.0) {
        throw PackingInfeasible(std::to_string(m) + " points with separation " + std::to_string(q) +
                                " do not fit on the " + std::to_string(d) + "-torus");
    }

    // Sequential placement jams near the packing limit, so a configuration
    // that stalls is discarded and sampling restarts. The overall draw budget
    // is max_attempts_per_point per requested point.
    constexpr std::size_t stall_limit = 1000;
    const std::size_t budget = max_attempts_per_point * m;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<TorusPoint> points;
    points.reserve(m);
    std::size_t draws = 0;
    std::size_t stalled = 0;
    while (points.size() < m) {
        if (draws++ >= budget) {
            throw PackingInfeasible("could not place " + std::to_string(m) + " points with separation " +
                                    std::to_string(q) + " within " + std::to_string(budget) + " draws");
        }
        std::vector<double> raw(d);
        for (auto& x : raw) x = unit(rng);
        TorusPoint candidate(std::move(raw));
        const bool ok = std::all_of(points.begin(), points.end(),
                                    [&](const TorusPoint& p) { return wrap_distance(p, candidate) >= q; });
        if (ok) {
            points.push_back(std::move(candidate));
            stalled = 0;
        } else if (++stalled >= stall_limit) {
            points.clear();
            stalled = 0;
        }
    }

    std::vector<Complex> coefficients;
    coefficients.reserve(m);
    std::uniform_real_distribution<double> modulus(0.5, 2.0);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = modulus(rng);
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        coefficients.push_back(std::polar(r, phase));
    }
    return DiracEnsemble(std::move(points), std::move(coefficients));
}

DiracEnsemble equispaced_ensemble(std::size_t d, std::size_t points_per_axis)
{
    if (d == 0 || points_per_axis == 0) throw std::invalid_argument("equispaced grid needs d >= 1 and m >= 1");
    std::size_t total = 1;
    for (std::size_t s = 0; s < d; ++s) total *= points_per_axis;
    std::vector<TorusPoint> points;
    points.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::vector<double> raw(d);
        std::size_t rest = i;
        for (std::size_t s = 0; s < d; ++s) {
            raw[s] = static_cast<double>(rest % points_per_axis) / static_cast<double>(points_per_axis);
            rest /= points_per_axis;
        }
        points.emplace_back(std::move(raw));
    }
    return DiracEnsemble(std::move(points), std::vector<Complex>(total, Complex(1.0, 0.0)));
}

}  // namespace mprony
