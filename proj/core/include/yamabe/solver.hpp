#pragma once

#include <optional>
#include <vector>

#include "yamabe/errors.hpp"
#include "yamabe/exponents.hpp"
#include "yamabe/factors.hpp"
#include "yamabe/field.hpp"

namespace yamabe {

/// Radial reduction of N = M x R^n for a homogeneous M with S > 0: a uniform
/// node mesh r_k = k*dr, k = 0..K on [0, r_max], finite-volume quadrature
/// integrating the weight density V_M * sigma_{n-1} * r^{n-1} exactly per
/// control volume.  Dirichlet at r_max, Neumann at 0 by ghost symmetry.
class RadialProblem {
  public:
    RadialProblem(const ManifoldFactor& manifold, ConformalExponents ce,
                  double r_max, int cells);

    const ConformalExponents& exponents() const { return ce_; }
    double volume_m() const { return volume_m_; }
    double scalar_curvature() const { return scalar_curvature_; }
    double r_max() const { return r_max_; }
    int cells() const { return cells_; } ///< K; nodes are 0..K
    double dr() const { return dr_; }
    double node_r(int k) const { return k * dr_; }
    /// Quadrature volume of node k, k = 0..K-1 (node K is Dirichlet).
    double node_volume(int k) const { return node_volume_[k]; }
    /// Stiffness conductance of the interface between nodes k and k+1.
    double conductance(int k) const { return conductance_[k]; }

  private:
    ConformalExponents ce_;
    double volume_m_ = 0.0;
    double scalar_curvature_ = 0.0;
    double r_max_ = 0.0;
    int cells_ = 0;
    double dr_ = 0.0;
    std::vector<double> node_volume_;
    std::vector<double> conductance_;
};

struct SolveOptions {
    double tol = 3e-9;    ///< stop when the EL residual falls below this
    int max_iter = 100000;
};

struct SolveReport {
    double s = 0.0;
    double lambda_s = 0.0;
    std::vector<double> profile; ///< node values f_0..f_K, f_K = 0
    int iterations = 0;
    double final_residual = 0.0;
    double final_quotient = 0.0;
    double norm_check = 0.0;     ///< ||u||_s after the final rescale
    double boundary_mass = 0.0;  ///< fraction of the s-mass in the outer 10%
    std::vector<double> quotient_trace; ///< accepted Q_s values, descending
};

/// Flow hit max_iter (or could no longer descend) with residual above tol.
/// Carries the partial report.
class NonConvergenceError : public Error {
  public:
    NonConvergenceError(const std::string& what, SolveReport report)
        : Error(what), report(std::move(report)) {}
    SolveReport report;
};

struct ContinuationEntry {
    double s = 0.0;
    double lambda_s = 0.0;
    double residual = 0.0;
    bool subcritical = false; ///< lambda_s < Y_{m+n}
    bool converged = false;
    bool warm_started = false;
    int iterations = 0;
};

struct ContinuationReport {
    std::vector<ContinuationEntry> entries; ///< ordered by s ascending
    double sphere_constant = 0.0;           ///< Y_{m+n}
};

struct ShootResult {
    std::vector<double> profile; ///< normalized profile sampled at the nodes
    double lambda = 0.0;         ///< Q_s of the normalized ground state
    double f0 = 0.0;             ///< bracketed initial height (unscaled)
};

/// Projected descent on Q_s under ||u||_s = 1 for 2 < s < p (s = p is
/// accepted by continuation() as an empirical endpoint).  Each accepted step
/// moves against the Euler-Lagrange residual a*Lap u + S u - lambda(u) u^{s-1}
/// preconditioned by the linear part a*Lap + S, clips negatives, rescales to
/// unit s-norm, and must strictly decrease Q_s (backtracking line search).
/// Stops when the residual drops below opts.tol and the relative Q_s change
/// falls below 1e-12; throws NonConvergenceError otherwise.
SolveReport minimize_subcritical(const RadialProblem& prob, double s,
                                 const SolveOptions& opts = {},
                                 const std::optional<std::vector<double>>& init = std::nullopt,
                                 bool allow_critical = false);

/// Independent shooting oracle for the radial ground state: integrates
/// -a (f'' + (n-1)/r f') + S f = f^{s-1} from f(0) = f0, f'(0) = 0 with an
/// adaptive Dormand-Prince 5(4) scheme and bisects f0 between shots that
/// cross zero inside [0, r_max] and shots that turn upward, until bracketed
/// to 1e-12 relative.  This pins the ground state of the same truncated
/// domain the flow discretizes (the crossing radius converges to r_max);
/// the result is rescaled to ||f||_s = 1 (lambda -> c^{2-s} lambda) and
/// lambda = Q_s(f) is evaluated by high-order quadrature of the dense
/// output.  f0 seeds the bracket sweep.
ShootResult shoot_radial(const RadialProblem& prob, double s, double f0);

/// Runs minimize_subcritical over ascending s values, warm-starting each
/// solve from the previous profile, and flags every lambda_s against the
/// sphere constant Y_{m+n}.  Non-convergent entries are recorded, not fatal.
ContinuationReport continuation(const RadialProblem& prob,
                                const std::vector<double>& s_list,
                                const SolveOptions& opts = {});

/// Field on (homogeneous M) x Radial built from a node profile by averaging
/// adjacent nodes onto shell midpoints; feeds the mass-capture diagnostic.
Field profile_to_field(const RadialProblem& prob,
                       const std::vector<double>& profile);

} // namespace yamabe
