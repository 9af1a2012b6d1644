#include "ddh/analysis.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ddh {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated running sum.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Harmonic prefix sums H[k] = sum_{d=1..k} 1/d, compensated.
std::vector<double> harmonic_prefix(int up_to) {
    std::vector<double> H(static_cast<std::size_t>(up_to) + 1, 0.0);
    KahanSum acc;
    for (int d = 1; d <= up_to; ++d) {
        acc.add(1.0 / d);
        H[static_cast<std::size_t>(d)] = acc.sum;
    }
    return H;
}

struct GaussRule {
    std::vector<double> x;  // on (-1, 1)
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Newton iteration on the recurrence.
GaussRule gauss_legendre(int npts) {
    if (npts < 1) throw ValidationError("gauss rule needs at least one point");
    GaussRule rule;
    rule.x.assign(static_cast<std::size_t>(npts), 0.0);
    rule.w.assign(static_cast<std::size_t>(npts), 0.0);
    const int half = (npts + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (npts + 0.5));
        double p0 = 1.0;
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < npts; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            dp = npts * (t * p0 - p1) / (t * t - 1.0);
            const double step = p0 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.x[static_cast<std::size_t>(i)] = -t;
        rule.x[static_cast<std::size_t>(npts - 1 - i)] = t;
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        rule.w[static_cast<std::size_t>(i)] = w;
        rule.w[static_cast<std::size_t>(npts - 1 - i)] = w;
    }
    return rule;
}

// integral over [lo, hi] of |u(y) - value|^2.  Pieces narrower than a few
// ulp are dropped: their quadrature nodes would round onto the interval
// endpoints where u is undefined, and their contribution is below rounding.
double cell_piece(const ExactCase& exact, Complex value, double lo, double hi,
                  const GaussRule& rule) {
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    if (!(hi - lo > 32.0 * std::numeric_limits<double>::epsilon() * scale)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double y = mid + half * rule.x[i];
        acc += rule.w[i] * std::norm(exact.u(y) - value);
    }
    return acc * half;
}

}  // namespace

std::span<const char* const> error_norm_keys() {
    static constexpr std::array<const char*, 6> keys{
        "norm_c_l2", "norm_c_linf", "norm_E_l2", "norm_E_l2_interior",
        "norm_E_scaled", "norm_e_L2"};
    return {keys.data(), keys.size()};
}

double error_norm_value(const ErrorReport& report, std::string_view key) {
    if (key == "norm_c_l2") return report.norm_c_l2;
    if (key == "norm_c_linf") return report.norm_c_linf;
    if (key == "norm_E_l2") return report.norm_E_l2;
    if (key == "norm_E_l2_interior") return report.norm_E_l2_interior;
    if (key == "norm_E_scaled") return report.norm_E_scaled;
    if (key == "norm_e_L2") return report.norm_e_L2;
    throw ValidationError("unknown norm key: " + std::string(key));
}

std::vector<double> midpoint_defect(const Grid& g) {
    const int m = g.cells();
    const auto H = harmonic_prefix(m);
    std::vector<double> s(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int j = i + 1;  // 1-based node index
        // Exact-cancellation form: pairs (k, 2j - k) drop out, the log term
        // and the harmonic tail are left.  Both flip sign exactly under
        // j -> M + 1 - j.
        const double log_term = std::log(m - j + 0.5) - std::log(j - 0.5);
        const double tail = H[static_cast<std::size_t>(m - j)] - H[static_cast<std::size_t>(j - 1)];
        s[static_cast<std::size_t>(i)] = log_term - tail;
    }
    return s;
}

double midpoint_defect_at(const Grid& g, int index) {
    const int m = g.cells();
    if (index < 0 || index >= m)
        throw ValidationError("midpoint defect index out of range: " + std::to_string(index));
    const int j = index + 1;
    const double log_term = std::log(m - j + 0.5) - std::log(j - 0.5);
    const int lo = std::min(j, m + 1 - j);
    const int hi = std::max(j, m + 1 - j) - 1;
    KahanSum tail;
    for (int d = lo; d <= hi; ++d) tail.add(1.0 / d);
    return j <= m - j ? log_term - tail.sum : log_term + tail.sum;
}

std::vector<Complex> consistency_error(const Grid& g, const ExactCase& exact,
                                       const ToeplitzOperator& op) {
    if (op.size() != g.cells())
        throw ValidationError("dimension error: operator size does not match the grid");
    if (exact.a() != g.a() || exact.b() != g.b())
        throw ValidationError("exact case interval does not match the grid");
    const int m = g.cells();
    std::vector<Complex> u_nodes(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) u_nodes[static_cast<std::size_t>(i)] = exact.u(g.node(i));
    std::vector<Complex> c = op.apply(u_nodes);
    for (int i = 0; i < m; ++i) {
        auto& ci = c[static_cast<std::size_t>(i)];
        ci = exact.Hu(g.node(i)) - ci;
    }
    return c;
}

std::vector<Complex> consistency_error(const Grid& g, const ExactCase& exact) {
    return consistency_error(g, exact, ToeplitzOperator(g.cells()));
}

ErrorReport discrete_error(const Grid& g, const ExactCase& exact, const SpectralParameter& lambda,
                           const ToeplitzOperator& op, const SolveResult& sol,
                           double interior_lo, double interior_hi) {
    const int m = g.cells();
    if (static_cast<int>(sol.U.size()) != m)
        throw ValidationError("dimension error: solution length does not match the grid");

    ErrorReport rep;
    rep.c = consistency_error(g, exact, op);
    rep.s = midpoint_defect(g);
    rep.E.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        rep.E[static_cast<std::size_t>(i)] = exact.u(g.node(i)) - sol.U[static_cast<std::size_t>(i)];

    rep.norm_c_l2 = l2_norm(rep.c);
    rep.norm_c_linf = linf_norm(rep.c);

    // Residual identity (lambda I - T) E = c; a violation means the solve
    // and the closed forms disagree about the kernel sign or the rhs.
    {
        std::vector<Complex> r = op.apply(rep.E);
        for (int i = 0; i < m; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            r[k] = lambda.lambda() * rep.E[k] - r[k] - rep.c[k];
        }
        const double defect = l2_norm(r);
        if (!(defect <= 1e-10 * (1.0 + rep.norm_c_l2)))
            throw InternalConsistencyError(
                "residual identity (lambda I - T) E = c violated: defect " + detail::sci(defect));
    }

    rep.norm_E_l2 = l2_norm(rep.E);
    rep.norm_E_scaled = std::sqrt(g.h()) * rep.norm_E_l2;

    const double lo = std::max(interior_lo, g.a());
    const double hi = std::min(interior_hi, g.b());
    double acc = 0.0;
    if (lo < hi)
        for (int i : g.interior_indices(lo, hi)) acc += std::norm(rep.E[static_cast<std::size_t>(i)]);
    rep.norm_E_l2_interior = std::sqrt(acc);

    rep.norm_e_L2 = pw_constant_l2_error(g, exact, sol.U);
    return rep;
}

double pw_constant_l2_error(const Grid& g, const ExactCase& exact, std::span<const Complex> U,
                            int gauss_points, int boundary_depth) {
    const int m = g.cells();
    if (static_cast<int>(U.size()) != m)
        throw ValidationError("dimension error: cell-value length does not match the grid");
    if (boundary_depth < 1) throw ValidationError("boundary refinement depth must be >= 1");
    const GaussRule rule = gauss_legendre(gauss_points);
    const double h = g.h();

    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        const Cell cell = g.cell(k);
        const Complex value = U[static_cast<std::size_t>(k)];
        if (k == 0) {
            // Geometric refinement toward a; the innermost piece still has
            // all quadrature nodes strictly inside (a, b).
            double frac = 1.0;
            for (int p = 0; p < boundary_depth; ++p) {
                total += cell_piece(exact, value, g.a() + 0.5 * frac * h, g.a() + frac * h, rule);
                frac *= 0.5;
            }
            total += cell_piece(exact, value, g.a(), g.a() + frac * h, rule);
        } else if (k == m - 1) {
            double frac = 1.0;
            for (int p = 0; p < boundary_depth; ++p) {
                total += cell_piece(exact, value, g.b() - frac * h, g.b() - 0.5 * frac * h, rule);
                frac *= 0.5;
            }
            total += cell_piece(exact, value, g.b() - frac * h, g.b(), rule);
        } else {
            total += cell_piece(exact, value, cell.lo, cell.hi, rule);
        }
    }
    return std::sqrt(total);
}

Complex nystrom_reconstruct(const Grid& g, const SpectralParameter& lambda,
                            std::span<const Complex> U,
                            const std::function<Complex(double)>& f, double x) {
    const int m = g.cells();
    if (static_cast<int>(U.size()) != m)
        throw ValidationError("dimension error: solution length does not match the grid");
    if (!(x > g.a() && x < g.b()))
        throw ValidationError("evaluation point outside the open interval (a, b)");
    const double h = g.h();
    for (int i = 0; i < m; ++i)
        if (std::abs(x - g.node(i)) < 1e-12 * h)
            throw PoleProximityError("evaluation point within 1e-12 h of node " + std::to_string(i));

    Complex sum{0.0, 0.0};
    for (int i = 0; i < m; ++i) sum += U[static_cast<std::size_t>(i)] / (g.node(i) - x);
    // 1/(i pi) = -i/pi
    const Complex quad = Complex{0.0, -1.0 / kPi} * (h * sum);
    return (f(x) + quad) / lambda.lambda();
}

double fit_loglog_slope(std::span<const double> n, std::span<const double> v, int window) {
    if (n.size() != v.size())
        throw ValidationError("dimension error: rate fit needs matching abscissa/value lengths");
    if (window < 3)
        throw ValidationError("rate fit needs a window of at least 3 points");
    if (static_cast<int>(n.size()) < window)
        throw ValidationError("rate fit window exceeds the number of points");
    const std::size_t start = n.size() - static_cast<std::size_t>(window);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = start; i < n.size(); ++i) {
        if (!(n[i] > 0.0) || !(v[i] > 0.0))
            throw ValidationError("degenerate data: rate fit needs positive values");
        const double lx = std::log(n[i]);
        const double ly = std::log(v[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double w = static_cast<double>(window);
    const double denom = w * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0))
        throw ValidationError("degenerate data: rate fit abscissae coincide");
    return (w * sxy - sx * sy) / denom;
}

}  // namespace ddh
