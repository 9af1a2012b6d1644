#include "ddh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace ddh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDenseCutoff = 512;
constexpr int kMaxRefineSweeps = 2;

// r = F - (lambda U - T U)
std::vector<Complex> residual_vec(const ToeplitzOperator& op, Complex lambda,
                                  std::span<const Complex> u, std::span<const Complex> f) {
    std::vector<Complex> r = op.apply(u);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = f[i] - (lambda * u[i] - r[i]);
    return r;
}

void finish_result(const ToeplitzOperator& op, const SpectralParameter& lambda,
                   std::span<const Complex> f, double f_norm, SolveResult& res) {
    const double r_norm = l2_norm(residual_vec(op, lambda.lambda(), res.U, f));
    res.residual_rel = f_norm > 0.0 ? r_norm / f_norm : r_norm;
    res.bound_ratio = f_norm > 0.0 ? l2_norm(res.U) * lambda.dist() / f_norm : 0.0;
}

struct LevinsonBreakdown {};

// Solves sum_j R(i - j) x_j = y_i for a general Toeplitz matrix given by its
// first column col[d] = R(d) and first row row[d] = R(-d), col[0] == row[0].
// Zohar-style recursion over the leading sections: O(n^2) time, O(n) space.
std::vector<Complex> levinson_raw(std::span<const Complex> col, std::span<const Complex> row,
                                  std::span<const Complex> y, double breakdown_tol) {
    const int n = static_cast<int>(y.size());
    std::vector<Complex> x(static_cast<std::size_t>(n));
    if (std::abs(col[0]) <= breakdown_tol) throw LevinsonBreakdown{};
    x[0] = y[0] / col[0];
    if (n == 1) return x;

    std::vector<Complex> g(static_cast<std::size_t>(n - 1));
    std::vector<Complex> h(static_cast<std::size_t>(n - 1));
    g[0] = row[1] / col[0];
    h[0] = col[1] / col[0];

    for (int q = 1;; ++q) {
        // Extend the order-q solution by x[q].
        Complex sxn = -y[q];
        Complex sd = -col[0];
        for (int j = 0; j < q; ++j) {
            sxn += col[q - j] * x[j];
            sd += col[q - j] * g[q - 1 - j];
        }
        if (std::abs(sd) <= breakdown_tol) throw LevinsonBreakdown{};
        x[q] = sxn / sd;
        for (int j = 0; j < q; ++j) x[j] -= x[q] * g[q - 1 - j];
        if (q == n - 1) return x;

        // Extend the forward/backward vectors to order q + 1.
        Complex sgn = -row[q + 1];
        Complex shn = -col[q + 1];
        Complex sgd = -col[0];
        for (int j = 0; j < q; ++j) {
            sgn += row[q - j] * g[j];
            shn += col[q - j] * h[j];
            sgd += row[q - j] * h[q - 1 - j];
        }
        if (std::abs(sgd) <= breakdown_tol) throw LevinsonBreakdown{};
        g[q] = sgn / sgd;
        h[q] = shn / sd;

        const Complex pp = g[q];
        const Complex qq = h[q];
        int k = q - 1;
        const int half = (q + 1) >> 1;
        for (int j = 0; j < half; ++j, --k) {
            const Complex pt1 = g[j];
            const Complex pt2 = g[k];
            const Complex qt1 = h[j];
            const Complex qt2 = h[k];
            g[j] = pt1 - pp * qt2;
            g[k] = pt2 - pp * qt1;
            h[j] = qt1 - qq * pt2;
            h[k] = qt2 - qq * pt1;
        }
    }
}

// First column / first row of lambda I - T.
void shifted_kernel(int n, Complex lambda, std::vector<Complex>& col, std::vector<Complex>& row) {
    col.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    row.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    col[0] = row[0] = lambda;
    for (int d = 1; d < n; ++d) {
        col[static_cast<std::size_t>(d)] = {0.0, -1.0 / (kPi * d)};
        row[static_cast<std::size_t>(d)] = {0.0, 1.0 / (kPi * d)};
    }
}

void require_rhs(const ToeplitzOperator& op, std::span<const Complex> rhs) {
    if (static_cast<int>(rhs.size()) != op.size())
        throw ValidationError("dimension error: rhs length " + std::to_string(rhs.size()) +
                              " does not match section size " + std::to_string(op.size()));
}

}  // namespace

SpectralParameter check_stability(Complex lambda) { return SpectralParameter(lambda); }

DiscreteSystem::DiscreteSystem(SpectralParameter lambda_, ToeplitzOperator op_,
                               std::vector<Complex> rhs_)
    : lambda(lambda_), op(std::move(op_)), rhs(std::move(rhs_)) {
    require_rhs(op, rhs);
}

ShiftedDenseLU::ShiftedDenseLU(const ToeplitzOperator& op, const SpectralParameter& lambda)
    : size_(op.size()),
      lu_(static_cast<std::size_t>(op.size()) * static_cast<std::size_t>(op.size())),
      pivots_(static_cast<std::size_t>(op.size())) {
    const int n = size_;
    const Complex lam = lambda.lambda();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lu_[static_cast<std::size_t>(i) * n + j] =
                (i == j ? lam : Complex{0.0, 0.0}) - op.entry(i, j);

    const double pivot_floor = 1e-14 * (std::abs(lam) + 1.0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double mag = std::abs(lu_[static_cast<std::size_t>(i) * n + k]);
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (!(best > pivot_floor)) throw SingularMatrixError(best);
        pivots_[static_cast<std::size_t>(k)] = piv;
        if (piv != k)
            std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k) * n,
                             lu_.begin() + static_cast<std::ptrdiff_t>(k + 1) * n,
                             lu_.begin() + static_cast<std::ptrdiff_t>(piv) * n);
        const Complex inv = Complex{1.0, 0.0} / lu_[static_cast<std::size_t>(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            Complex* ri = &lu_[static_cast<std::size_t>(i) * n];
            const Complex* rk = &lu_[static_cast<std::size_t>(k) * n];
            const Complex lik = ri[k] * inv;
            ri[k] = lik;
            for (int j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        }
    }
}

std::vector<Complex> ShiftedDenseLU::solve(std::span<const Complex> rhs) const {
    if (static_cast<int>(rhs.size()) != size_)
        throw ValidationError("dimension error: rhs length does not match factorization");
    const int n = size_;
    std::vector<Complex> x(rhs.begin(), rhs.end());
    for (int k = 0; k < n; ++k) {
        const int piv = pivots_[static_cast<std::size_t>(k)];
        if (piv != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(piv)]);
    }
    for (int i = 1; i < n; ++i) {
        const Complex* ri = &lu_[static_cast<std::size_t>(i) * n];
        Complex s = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) s -= ri[j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        const Complex* ri = &lu_[static_cast<std::size_t>(i) * n];
        Complex s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= ri[j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / ri[i];
    }
    return x;
}

SolveResult solve_dense(const ToeplitzOperator& op, const SpectralParameter& lambda,
                        std::span<const Complex> rhs) {
    require_rhs(op, rhs);
    const ShiftedDenseLU lu(op, lambda);
    const double f_norm = l2_norm(rhs);

    SolveResult res{lu.solve(rhs), SolveMethod::Dense, 0.0, 0.0, false, 0};
    for (int sweep = 0; sweep < kMaxRefineSweeps; ++sweep) {
        const auto r = residual_vec(op, lambda.lambda(), res.U, rhs);
        if (l2_norm(r) <= 1e-12 * f_norm) break;
        const auto d = lu.solve(r);
        for (std::size_t i = 0; i < res.U.size(); ++i) res.U[i] += d[i];
        res.refinement_sweeps = sweep + 1;
    }
    finish_result(op, lambda, rhs, f_norm, res);
    return res;
}

SolveResult solve_levinson(const ToeplitzOperator& op, const SpectralParameter& lambda,
                           std::span<const Complex> rhs) {
    require_rhs(op, rhs);
    std::vector<Complex> col;
    std::vector<Complex> row;
    shifted_kernel(op.size(), lambda.lambda(), col, row);
    const double breakdown_tol = 1e-14 * (std::abs(lambda.lambda()) + 1.0);
    const double f_norm = l2_norm(rhs);

    SolveResult res{{}, SolveMethod::Levinson, 0.0, 0.0, false, 0};
    try {
        res.U = levinson_raw(col, row, rhs, breakdown_tol);
    } catch (const LevinsonBreakdown&) {
        res = solve_dense(op, lambda, rhs);
        res.dense_fallback = true;
        return res;
    }
    for (int sweep = 0; sweep < kMaxRefineSweeps; ++sweep) {
        const auto r = residual_vec(op, lambda.lambda(), res.U, rhs);
        if (l2_norm(r) <= 1e-9 * f_norm) break;
        std::vector<Complex> d;
        try {
            d = levinson_raw(col, row, r, breakdown_tol);
        } catch (const LevinsonBreakdown&) {
            break;  // keep the current iterate
        }
        for (std::size_t i = 0; i < res.U.size(); ++i) res.U[i] += d[i];
        res.refinement_sweeps = sweep + 1;
    }
    finish_result(op, lambda, rhs, f_norm, res);
    return res;
}

SolveResult solve(const ToeplitzOperator& op, const SpectralParameter& lambda,
                  std::span<const Complex> rhs, SolverChoice choice) {
    switch (choice) {
        case SolverChoice::Dense: return solve_dense(op, lambda, rhs);
        case SolverChoice::Levinson: return solve_levinson(op, lambda, rhs);
        case SolverChoice::Auto:
            return op.size() <= kDenseCutoff ? solve_dense(op, lambda, rhs)
                                             : solve_levinson(op, lambda, rhs);
    }
    throw ValidationError("unknown solver choice");
}

SolveResult solve(const DiscreteSystem& sys, SolverChoice choice) {
    return solve(sys.op, sys.lambda, sys.rhs, choice);
}

}  // namespace ddh
