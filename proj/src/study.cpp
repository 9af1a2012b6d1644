#include <future>
#include <string>

#include "ddh/analysis.hpp"

namespace ddh {

void StudyConfig::validate() const {
    if (!(b > a)) throw ValidationError("config field a/b: need b > a");
    if (Ns.empty()) throw ValidationError("config field Ns: need at least one refinement level");
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] < 1) throw ValidationError("config field Ns: levels must be positive");
        if (i > 0 && Ns[i] <= Ns[i - 1])
            throw ValidationError("config field Ns: levels must be strictly increasing");
    }
    for (int n : Ns) (void)Grid::from_N(a, b, n);  // integral (b - a) N
    (void)SpectralParameter(lambda);               // field lambda: stability
    (void)ExactCase(example, a, b, alpha);         // field alpha: range check
    if (!(interior_lo < interior_hi))
        throw ValidationError("config field interior: need lo < hi");
    if (slope_window < 0)
        throw ValidationError("config field slope_window: must be >= 0");
}

double ConvergenceStudy::slope(std::string_view key) const {
    const auto it = slopes.find(std::string(key));
    if (it == slopes.end())
        throw ValidationError("no fitted slope for norm key: " + std::string(key));
    return it->second;
}

ConvergenceStudy run_study(const StudyConfig& cfg) {
    cfg.validate();

    auto level = [&cfg](int n) {
        const Grid g = Grid::from_N(cfg.a, cfg.b, n);
        const ExactCase exact(cfg.example, cfg.a, cfg.b, cfg.alpha);
        const SpectralParameter lambda(cfg.lambda);
        const ToeplitzOperator op(g.cells());
        std::vector<Complex> rhs(static_cast<std::size_t>(g.cells()));
        for (int i = 0; i < g.cells(); ++i)
            rhs[static_cast<std::size_t>(i)] = exact.f(lambda, g.node(i));
        const SolveResult sol = solve(op, lambda, rhs, cfg.solver);
        return discrete_error(g, exact, lambda, op, sol, cfg.interior_lo, cfg.interior_hi);
    };

    std::vector<std::future<ErrorReport>> jobs;
    jobs.reserve(cfg.Ns.size());
    for (int n : cfg.Ns)
        jobs.push_back(std::async(std::launch::async, level, n));

    ConvergenceStudy study;
    study.Ns = cfg.Ns;
    study.reports.reserve(jobs.size());
    for (auto& job : jobs) study.reports.push_back(job.get());

    const int window =
        cfg.slope_window > 0 ? cfg.slope_window : static_cast<int>(cfg.Ns.size()) - 1;
    study.slope_window = window;
    if (window >= 3 && window <= static_cast<int>(cfg.Ns.size())) {
        std::vector<double> ns(cfg.Ns.begin(), cfg.Ns.end());
        for (const char* key : error_norm_keys()) {
            std::vector<double> values;
            values.reserve(study.reports.size());
            bool positive = true;
            for (const auto& rep : study.reports) {
                const double v = error_norm_value(rep, key);
                positive = positive && v > 0.0;
                values.push_back(v);
            }
            if (positive)
                study.slopes.emplace(key, fit_loglog_slope(ns, values, window));
        }
    }
    return study;
}

}  // namespace ddh
