#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddh/catalog.hpp"
#include "ddh/grid.hpp"
#include "ddh/solver.hpp"

namespace ddh {

/// Everything measured on one (grid, case, lambda) solve: the consistency
/// error c of the midpoint rule, the nodal error E = u(x_m) - U_m, the
/// midpoint defect s, and the norm family the study driver reports.
struct ErrorReport {
    std::vector<Complex> c;
    std::vector<Complex> E;
    std::vector<double> s;

    double norm_c_l2;
    double norm_c_linf;
    double norm_E_l2;
    double norm_E_l2_interior;  ///< restriction to the interior window
    double norm_E_scaled;       ///< sqrt(h) * ||E||_2
    double norm_e_L2;           ///< L2 error of the piecewise-constant approximation
};

/// Names of the scalar columns of ErrorReport, in output order.
std::span<const char* const> error_norm_keys();
double error_norm_value(const ErrorReport& report, std::string_view key);

/// Midpoint-rule defect of the constant function,
///
///     s_j = integral_a^b dy/(y - x_j) - sum_{k != j} h/(x_k - x_j) .
///
/// Cell pairs placed symmetrically around j cancel exactly, so only the
/// unpaired harmonic tail is summed (compensated prefix sums); the
/// antisymmetry s_{M-1-j} = -s_j then holds to the last bit.
std::vector<double> midpoint_defect(const Grid& g);

/// Single-node defect (0-based index) in O(M) time, for very fine meshes.
double midpoint_defect_at(const Grid& g, int index);

/// Quadrature error of the midpoint rule applied to the transform,
///
///     c_m = Hu(x_m) - sum_{n != m} u(x_n) / (i pi (n - m)) ,
///
/// with the integral supplied in closed form by the catalog and the sum by a
/// Toeplitz product over the nodal values.
std::vector<Complex> consistency_error(const Grid& g, const ExactCase& exact,
                                       const ToeplitzOperator& op);
std::vector<Complex> consistency_error(const Grid& g, const ExactCase& exact);

/// Full report for a solve of (lambda I - T) U = F with F_m = f(x_m).
/// Verifies the residual identity (lambda I - T) E = c to
/// 1e-10 (1 + ||c||_2) and throws InternalConsistencyError when it fails --
/// that signals a sign-convention or solver bug upstream, never a bad input.
/// The interior window is clamped to [a, b].
ErrorReport discrete_error(const Grid& g, const ExactCase& exact, const SpectralParameter& lambda,
                           const ToeplitzOperator& op, const SolveResult& sol,
                           double interior_lo = 0.0, double interior_hi = 1.2);

/// L2(a, b) distance between u and the piecewise-constant function with cell
/// values U.  Gauss quadrature per cell; the two boundary cells are refined
/// geometrically (ratio 1/2, `boundary_depth` levels) toward a and b, which
/// integrates the power case's endpoint blow-up without case-specific code.
double pw_constant_l2_error(const Grid& g, const ExactCase& exact, std::span<const Complex> U,
                            int gauss_points = 8, int boundary_depth = 40);

/// Evaluates the quadrature-method solution off the grid,
///
///     u(x) = ( f(x) + (1/(i pi)) sum_n h U_n / (x_n - x) ) / lambda .
///
/// x must keep clear of the nodes (simple poles); the guard is 1e-12 h.
Complex nystrom_reconstruct(const Grid& g, const SpectralParameter& lambda,
                            std::span<const Complex> U,
                            const std::function<Complex(double)>& f, double x);

/// Least-squares slope of log v against log n over the trailing `window`
/// points.  Requires window >= 3 and positive data.
double fit_loglog_slope(std::span<const double> n, std::span<const double> v, int window);

/// Parameters of a refinement study; defaults reproduce the reference
/// experiment on [-0.15, 1.35] with lambda = 2.
struct StudyConfig {
    double a = -0.15;
    double b = 1.35;
    Complex lambda{2.0, 0.0};
    ExactKind example = ExactKind::Constant;
    double alpha = 0.25;
    std::vector<int> Ns{10, 30, 90, 270, 810};
    double interior_lo = 0.0;
    double interior_hi = 1.2;
    SolverChoice solver = SolverChoice::Auto;
    int slope_window = 0;       ///< 0: all points except the first
    std::uint64_t seed = 0;     ///< echoed into outputs; the study itself is deterministic

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// Reports per refinement level plus fitted log-log slopes per norm column.
struct ConvergenceStudy {
    std::vector<int> Ns;                   ///< ascending
    std::vector<ErrorReport> reports;      ///< one per N, same order
    std::map<std::string, double> slopes;  ///< per norm key, trailing-window fit
    int slope_window;

    double slope(std::string_view key) const;
};

/// Runs one report per N (levels run concurrently, results merged in
/// ascending-N order) and fits the slopes.
ConvergenceStudy run_study(const StudyConfig& cfg);

}  // namespace ddh
