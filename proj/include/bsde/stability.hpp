#pragma once

#include <functional>
#include <vector>

#include "bsde/scheme.hpp"

namespace bsde {

/// Perturbations applied to the solve inputs: eps_f is added to the
/// generator wherever it is evaluated (predictor and corrector alike);
/// eps_y_terminal / eps_z_terminal shift the terminal data. Empty functions
/// mean no perturbation and leave the corresponding code path untouched.
struct PerturbationSpec {
    GeneratorFn eps_f;
    SpatialFn eps_y_terminal;
    SpatialFn eps_z_terminal;
};

/// Runs the identical solve pipeline on the perturbed inputs. With an empty
/// PerturbationSpec the result is bit-identical to solve().
SolveResult solve_perturbed(const FbsdeProblem& problem, const SchemeParams& params, int num_steps,
                            const PerturbationSpec& pert, bool keep_fields = false);

/// Deviation between a base and a perturbed solve, both retaining fields on
/// identical meshes and grids. Sup norms are taken over the grid; the
/// composite functional is
///
///   dev = sup|eps_y at level 0|^2 + h * sum_{l=0}^{N-1} sup|eps_z at level l|^2.
struct DeviationReport {
    std::vector<double> sup_y;   // per level 0..N
    std::vector<double> sup_z;   // per level 0..N
    double dev = 0.0;            // composite functional above
    double z_sup_sq_sum = 0.0;   // h * sum of squared z sup-deviations, levels 0..N-1
    double y0_at_x0 = 0.0;       // |y deviation| at (0, x0)
    double z0_at_x0 = 0.0;       // |z deviation| at (0, x0)
};

/// Computes per-level deviations and the composite functional. Throws
/// ConfigError when the two results lack fields or their meshes/grids differ.
DeviationReport deviation(const SolveResult& base, const SolveResult& perturbed);

}  // namespace bsde
