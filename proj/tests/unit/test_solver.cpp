#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "ddh/catalog.hpp"
#include "ddh/grid.hpp"
#include "ddh/rng.hpp"
#include "ddh/solver.hpp"

using namespace ddh;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> random_vector(int m, SplitMix64& rng) {
    std::vector<Complex> v(static_cast<std::size_t>(m));
    for (auto& z : v) z = rng.complex_symmetric();
    return v;
}

double rel_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(a[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("solver: stability guard") {
    CHECK(check_stability({2.0, 0.0}).dist() == doctest::Approx(1.0));
    CHECK(check_stability({0.0, 1.0}).dist() == doctest::Approx(1.0));
    CHECK_THROWS_AS(check_stability({0.5, 0.0}), UnstableParameterError);
}

TEST_CASE("solver: 1x1 section is the zero matrix") {
    const ToeplitzOperator op(1);
    const SpectralParameter lam({2.0, 0.0});
    const std::vector<Complex> f{{6.0, 0.0}};
    for (const auto& res : {solve_dense(op, lam, f), solve_levinson(op, lam, f)}) {
        CHECK(std::abs(res.U[0] - Complex{3.0, 0.0}) <= 1e-15);
        CHECK(res.residual_rel <= 1e-15);
        CHECK(res.bound_ratio <= 1.0 + 1e-12);
    }
}

TEST_CASE("solver: 2x2 system against the closed-form inverse") {
    // lambda I - T = [[lambda, i/pi], [-i/pi, lambda]], inverted by hand.
    const ToeplitzOperator op(2);
    const SpectralParameter lam({2.0, 0.0});
    const std::vector<Complex> f{{1.0, 0.0}, {0.0, 0.0}};
    const Complex det = Complex{4.0, 0.0} - Complex{1.0 / (kPi * kPi), 0.0};
    const Complex want0 = Complex{2.0, 0.0} / det;
    const Complex want1 = Complex{0.0, 1.0 / kPi} / det;
    for (const auto& res : {solve_dense(op, lam, f), solve_levinson(op, lam, f)}) {
        CHECK(std::abs(res.U[0] - want0) <= 1e-15);
        CHECK(std::abs(res.U[1] - want1) <= 1e-15);
    }
}

TEST_CASE("solver: reference-problem regression (constant case, N = 10)") {
    const Grid g = Grid::from_N(-0.15, 1.35, 10);
    const ExactCase exact(ExactKind::Constant, -0.15, 1.35);
    const SpectralParameter lam({2.0, 0.0});
    const ToeplitzOperator op(g.cells());
    std::vector<Complex> f(static_cast<std::size_t>(g.cells()));
    for (int i = 0; i < g.cells(); ++i) f[i] = exact.f(lam, g.node(i));
    const auto res = solve_dense(op, lam, f);
    CHECK(res.residual_rel <= 1e-10);
    double einf = 0.0;
    for (int i = 0; i < g.cells(); ++i)
        einf = std::max(einf, std::abs(exact.u(g.node(i)) - res.U[i]));
    // frozen after the first verified run
    CHECK(einf == doctest::Approx(0.019555918382235239).epsilon(1e-9));
}

TEST_CASE("solver: levinson agrees with dense") {
    SplitMix64 rng(404);
    const ToeplitzOperator op(300);
    const auto f = random_vector(300, rng);

    const SpectralParameter well({2.0, 0.0});
    const auto dense_well = solve_dense(op, well, f);
    const auto lev_well = solve_levinson(op, well, f);
    CHECK(rel_distance(dense_well.U, lev_well.U) <= 1e-8);
    CHECK_FALSE(lev_well.dense_fallback);

    // ill-conditioned near the spectrum: looser tolerance
    const SpectralParameter near({1.01, 0.0});
    const auto dense_near = solve_dense(op, near, f);
    const auto lev_near = solve_levinson(op, near, f);
    CHECK(rel_distance(dense_near.U, lev_near.U) <= 1e-6);
}

TEST_CASE("solver: resolvent bound over the lambda/size matrix") {
    SplitMix64 rng(808);
    const Complex lambdas[] = {{2.0, 0.0}, {0.0, 1.0}, {-1.5, 0.0}, {1.0, 1.0}, {0.5, 0.1}};
    for (int m : {15, 45, 135}) {
        const ToeplitzOperator op(m);
        for (const Complex lambda : lambdas) {
            const SpectralParameter sp(lambda);
            const ShiftedDenseLU lu(op, sp);
            for (int trial = 0; trial < 200; ++trial) {
                const auto f = random_vector(m, rng);
                const auto u = lu.solve(f);
                CHECK(l2_norm(u) * sp.dist() <= l2_norm(f) * (1.0 + 1e-8));
            }
        }
    }
}

TEST_CASE("solver: solutions carry their certificates") {
    SplitMix64 rng(3);
    for (int m : {15, 135, 600}) {
        const ToeplitzOperator op(m);
        const SpectralParameter lam({0.0, 1.0});
        const auto f = random_vector(m, rng);
        const auto res = solve(op, lam, f);
        CHECK(res.method == (m <= 512 ? SolveMethod::Dense : SolveMethod::Levinson));
        CHECK(res.residual_rel <= 1e-10);
        CHECK(res.bound_ratio <= 1.0 + 1e-8);
    }
}

TEST_CASE("solver: reversal covariance") {
    // With J index reversal, J U solves (lambda I + T) V = J F.
    SplitMix64 rng(55);
    const int m = 64;
    const ToeplitzOperator op(m);
    const SpectralParameter lam({0.0, 1.0});
    const auto f = random_vector(m, rng);
    const auto res = solve_dense(op, lam, f);
    std::vector<Complex> ju(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) ju[i] = res.U[m - 1 - i];
    const auto tju = op.apply(ju);
    double defect = 0.0;
    for (int i = 0; i < m; ++i)
        defect += std::norm(lam.lambda() * ju[i] + tju[i] - f[m - 1 - i]);
    CHECK(std::sqrt(defect) <= 1e-10 * l2_norm(f));
}

TEST_CASE("solver: dimension and system validation") {
    const ToeplitzOperator op(8);
    const SpectralParameter lam({2.0, 0.0});
    const std::vector<Complex> short_rhs(7, Complex{1.0, 0.0});
    CHECK_THROWS_AS(solve_dense(op, lam, short_rhs), ValidationError);
    CHECK_THROWS_AS(solve_levinson(op, lam, short_rhs), ValidationError);
    CHECK_THROWS_AS(DiscreteSystem(lam, ToeplitzOperator(8), short_rhs), ValidationError);

    const DiscreteSystem sys(lam, ToeplitzOperator(8), std::vector<Complex>(8, Complex{1.0, 0.0}));
    const auto res = solve(sys);
    CHECK(res.residual_rel <= 1e-12);
}

TEST_CASE("solver: cost scaling between 1000 and 2000 unknowns (soft check)") {
    // Single-sample wall times; informational only, never fails the suite.
    SplitMix64 rng(11);
    const SpectralParameter lam({2.0, 0.0});
    double dense_time[2];
    double lev_time[2];
    int idx = 0;
    for (int m : {1000, 2000}) {
        const ToeplitzOperator op(m);
        const auto f = random_vector(m, rng);
        auto tic = std::chrono::steady_clock::now();
        (void)solve_dense(op, lam, f);
        dense_time[idx] = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
        tic = std::chrono::steady_clock::now();
        (void)solve_levinson(op, lam, f);
        lev_time[idx] = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
        ++idx;
    }
    const double dense_order = std::log2(dense_time[1] / dense_time[0]);
    const double lev_order = std::log2(lev_time[1] / lev_time[0]);
    WARN_MESSAGE(dense_order >= 2.6, "dense growth order ", dense_order, " below the expected ~3");
    WARN_MESSAGE(lev_order <= 2.4, "levinson growth order ", lev_order, " above the expected ~2");
}
