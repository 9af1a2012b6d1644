#pragma once

#include <span>
#include <vector>

#include "ddh/spectral_parameter.hpp"
#include "ddh/toeplitz.hpp"
#include "ddh/types.hpp"

namespace ddh {

enum class SolveMethod { Dense, Levinson };
enum class SolverChoice { Dense, Levinson, Auto };

/// Solution of (lambda I - T) U = F together with the certificates recorded
/// for it.  Accepted results keep residual_rel small and bound_ratio at or
/// below 1 + 1e-8 (the resolvent estimate ||U|| <= ||F|| / dist(lambda, C)).
struct SolveResult {
    std::vector<Complex> U;
    SolveMethod method;
    double residual_rel;      ///< ||(lambda I - T) U - F||_2 / ||F||_2
    double bound_ratio;       ///< ||U||_2 dist(lambda, C) / ||F||_2
    bool dense_fallback;      ///< Toeplitz recursion broke down; dense result returned
    int refinement_sweeps;
};

/// Validates lambda; throws UnstableParameterError within 1e-12 of [-1, 1].
SpectralParameter check_stability(Complex lambda);

/// One equation set (lambda I - T) U = F.
struct DiscreteSystem {
    SpectralParameter lambda;
    ToeplitzOperator op;
    std::vector<Complex> rhs;

    DiscreteSystem(SpectralParameter lambda_, ToeplitzOperator op_, std::vector<Complex> rhs_);
};

/// Dense LU with partial pivoting of lambda I - T: factor once, solve many
/// right-hand sides in O(M^2) each.
class ShiftedDenseLU {
public:
    ShiftedDenseLU(const ToeplitzOperator& op, const SpectralParameter& lambda);

    int size() const { return size_; }
    std::vector<Complex> solve(std::span<const Complex> rhs) const;

private:
    int size_;
    std::vector<Complex> lu_;  // row-major, L unit lower
    std::vector<int> pivots_;
};

/// O(M^3) factorization path, refined to residual ~eps; the correctness
/// oracle for the fast path.
SolveResult solve_dense(const ToeplitzOperator& op, const SpectralParameter& lambda,
                        std::span<const Complex> rhs);

/// O(M^2) Toeplitz recursion.  Every leading section of lambda I - T is
/// invertible for admissible lambda, so breakdown only signals rounding
/// trouble; in that case the solve falls back to dense and flags it.
/// One or two sweeps of iterative refinement run when the raw residual
/// exceeds 1e-9.
SolveResult solve_levinson(const ToeplitzOperator& op, const SpectralParameter& lambda,
                           std::span<const Complex> rhs);

/// Auto dispatch: dense up to 512 unknowns, the recursion above that.
SolveResult solve(const ToeplitzOperator& op, const SpectralParameter& lambda,
                  std::span<const Complex> rhs, SolverChoice choice = SolverChoice::Auto);
SolveResult solve(const DiscreteSystem& sys, SolverChoice choice = SolverChoice::Auto);

}  // namespace ddh
