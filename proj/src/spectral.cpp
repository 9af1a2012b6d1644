#include "ddh/spectral.hpp"

#include <cmath>
#include <limits>

#include "ddh/rng.hpp"
#include "ddh/solver.hpp"

namespace ddh {

namespace {

Complex inner(std::span<const Complex> v, std::span<const Complex> w) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * w[i];
    return acc;
}

}  // namespace

SpectralReport rayleigh_scan(const ToeplitzOperator& op, int samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("rayleigh scan needs at least one sample");
    const int m = op.size();
    SpectralReport rep{m,
                       samples,
                       seed,
                       std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(),
                       0.0,
                       {}};
    std::vector<Complex> v(static_cast<std::size_t>(m), Complex{0.0, 0.0});
    auto consider = [&]() {
        const auto w = op.apply(v);
        const Complex q = inner(v, w);
        rep.rayleigh_min = std::min(rep.rayleigh_min, q.real());
        rep.rayleigh_max = std::max(rep.rayleigh_max, q.real());
        rep.max_imag_rayleigh = std::max(rep.max_imag_rayleigh, std::abs(q.imag()));
    };

    for (int j = 0; j < m; ++j) {
        v[static_cast<std::size_t>(j)] = {1.0, 0.0};
        consider();
        v[static_cast<std::size_t>(j)] = {0.0, 0.0};
    }

    SplitMix64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        double nrm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            v[static_cast<std::size_t>(i)] = rng.complex_symmetric();
            nrm2 += std::norm(v[static_cast<std::size_t>(i)]);
        }
        if (!(nrm2 > 0.0)) continue;
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& z : v) z *= inv;
        consider();
    }
    return rep;
}

SpectralReport resolvent_probe(const ToeplitzOperator& op, std::span<const Complex> lambdas,
                               int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("resolvent probe needs at least one trial");
    if (lambdas.empty()) throw ValidationError("resolvent probe needs at least one lambda");
    SpectralReport rep{op.size(), trials, seed, 0.0, 0.0, 0.0, {}};
    SplitMix64 rng(seed);
    const int m = op.size();
    std::vector<Complex> f(static_cast<std::size_t>(m));
    for (const Complex lambda : lambdas) {
        const SpectralParameter sp = check_stability(lambda);
        const ShiftedDenseLU lu(op, sp);
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            for (auto& z : f) z = rng.complex_symmetric();
            const double f_norm = l2_norm(f);
            if (!(f_norm > 0.0)) continue;
            const auto u = lu.solve(f);
            worst = std::max(worst, l2_norm(u) * sp.dist() / f_norm);
        }
        rep.resolvent.push_back({lambda, sp.dist(), worst});
    }
    return rep;
}

}  // namespace ddh
