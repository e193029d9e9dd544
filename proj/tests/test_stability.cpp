#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bsde/errors.hpp"
#include "bsde/stability.hpp"
#include "test_util.hpp"

using namespace bsde;
using bsde::testing::linear_problem;

namespace {

PerturbationSpec constant_generator_shift(double c) {
    PerturbationSpec pert;
    pert.eps_f = [c](double, double, double) { return c; };
    return pert;
}

}  // namespace

TEST_CASE("zero perturbation reproduces solve bit-for-bit") {
    const auto p = example1();
    SchemeParams params;
    params.alpha = 0.5;
    const SolveResult base = solve(p, params, 8, true);
    const SolveResult pert = solve_perturbed(p, params, 8, PerturbationSpec{}, true);
    CHECK(base.y0 == pert.y0);
    CHECK(base.z0 == pert.z0);
    for (std::size_t l = 0; l < base.fields->size(); ++l) {
        for (int j = 0; j < (*base.fields)[l].grid.num_points; j += 16) {
            CHECK((*base.fields)[l].y_values[j] == (*pert.fields)[l].y_values[j]);
            CHECK((*base.fields)[l].z_values[j] == (*pert.fields)[l].z_values[j]);
        }
    }
}

TEST_CASE("a constant generator shift telescopes to T*c in y0 and cancels in z0") {
    const auto p = linear_problem();
    for (const double alpha : {0.25, 0.5, 1.0}) {
        for (const int n : {8, 64}) {
            CAPTURE(alpha);
            CAPTURE(n);
            SchemeParams params;
            params.alpha = alpha;
            const double c = 1e-3;
            const SolveResult base = solve(p, params, n);
            const SolveResult pert =
                solve_perturbed(p, params, n, constant_generator_shift(c));
            CHECK(std::abs((pert.y0 - base.y0) - p.terminal_time * c) <= 1e-10);
            CHECK(std::abs(pert.z0 - base.z0) <= 1e-10);
        }
    }
}

TEST_CASE("a constant terminal shift passes through unchanged") {
    const auto p = linear_problem();
    SchemeParams params;
    params.alpha = 0.5;
    PerturbationSpec pert;
    const double shift = 7.5e-4;
    pert.eps_y_terminal = [shift](double) { return shift; };
    const SolveResult base = solve(p, params, 16);
    const SolveResult shifted = solve_perturbed(p, params, 16, pert);
    CHECK(shifted.y0 - base.y0 == doctest::Approx(shift).epsilon(1e-12));
    CHECK(std::abs(shifted.z0 - base.z0) <= 1e-12);
}

TEST_CASE("deviation requires retained fields on matching meshes") {
    const auto p = linear_problem();
    SchemeParams params;
    const SolveResult without_fields = solve(p, params, 8);
    const SolveResult with_fields = solve(p, params, 8, true);
    CHECK_THROWS_AS(deviation(without_fields, with_fields), ConfigError);
    const SolveResult other_mesh = solve(p, params, 16, true);
    CHECK_THROWS_AS(deviation(with_fields, other_mesh), ConfigError);
}

TEST_CASE("deviation of identical results is zero") {
    const auto p = example1();
    SchemeParams params;
    const SolveResult res = solve(p, params, 8, true);
    const DeviationReport report = deviation(res, res);
    CHECK(report.dev == 0.0);
    CHECK(report.y0_at_x0 == 0.0);
    CHECK(report.z0_at_x0 == 0.0);
    for (const double s : report.sup_y) CHECK(s == 0.0);
    for (const double s : report.sup_z) CHECK(s == 0.0);
}

TEST_CASE("deviation of a constant y shift is its square") {
    const auto p = linear_problem();
    SchemeParams params;
    const SolveResult base = solve(p, params, 8, true);
    SolveResult shifted = base;
    const double c = 0.125;
    for (ValueField& f : *shifted.fields) {
        for (double& v : f.y_values) v += c;
    }
    const DeviationReport report = deviation(base, shifted);
    CHECK(report.dev == doctest::Approx(c * c).epsilon(1e-14));
    CHECK(report.z_sup_sq_sum == 0.0);
}

TEST_CASE("the deviation functional scales quadratically in the perturbation size") {
    const auto p = linear_problem();
    SchemeParams params;
    params.alpha = 0.5;
    const int n = 16;
    const SolveResult base = solve(p, params, n, true);
    std::vector<double> cs = {1e-4, 1e-3, 1e-2}, devs;
    for (const double c : cs) {
        const SolveResult pert =
            solve_perturbed(p, params, n, constant_generator_shift(c), true);
        devs.push_back(deviation(base, pert).dev);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        mx += std::log(cs[i]);
        my += std::log(devs[i]);
    }
    mx /= cs.size();
    my /= cs.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        num += (std::log(cs[i]) - mx) * (std::log(devs[i]) - my);
        den += (std::log(cs[i]) - mx) * (std::log(cs[i]) - mx);
    }
    const double slope = num / den;
    CHECK(slope >= 1.95);
    CHECK(slope <= 2.05);
}

TEST_CASE("the deviation functional stays bounded under mesh refinement") {
    const auto p = example1();
    SchemeParams params;
    params.alpha = 0.5;
    const double c = 1e-3;
    std::vector<double> devs;
    for (const int n : {8, 16, 32, 64, 128}) {
        const SolveResult base = solve(p, params, n, true);
        const SolveResult pert =
            solve_perturbed(p, params, n, constant_generator_shift(c), true);
        devs.push_back(deviation(base, pert).dev);
    }
    const auto [lo, hi] = std::minmax_element(devs.begin(), devs.end());
    CHECK(*hi / *lo <= 4.0);
    // dev(8) vs dev(64) agree within a factor of 2
    CHECK(devs[3] / devs[0] <= 2.0);
    CHECK(devs[0] / devs[3] <= 2.0);
}
