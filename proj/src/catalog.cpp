#include "ddh/catalog.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ddh {

namespace {
constexpr double kPi = std::numbers::pi;
}

ExactCase::ExactCase(ExactKind kind, double a, double b, double alpha)
    : kind_(kind), a_(a), b_(b), alpha_(alpha) {
    if (!(b > a))
        throw ValidationError("exact case: interval length must be positive");
    if (kind == ExactKind::Power && !(alpha > -0.5 && alpha < 0.5))
        throw ValidationError("exact case: power exponent must lie in (-1/2, 1/2), got " +
                              std::to_string(alpha));
}

void ExactCase::require_inside(double x) const {
    if (!(x > a_ && x < b_))
        throw ValidationError("evaluation point outside the open interval (a, b)");
}

// ((x - a)/(b - x))^alpha through logs; the bare ratio overflows next to b.
double ExactCase::ratio_pow(double x) const {
    return std::exp(alpha_ * (std::log(x - a_) - std::log(b_ - x)));
}

Complex ExactCase::u(double x) const {
    require_inside(x);
    switch (kind_) {
        case ExactKind::Constant:
            return {1.0, 0.0};
        case ExactKind::SqrtBump:
            return {std::sqrt((x - a_) * (b_ - x)), 0.0};
        case ExactKind::Power:
            return {std::sin(kPi * alpha_) * ratio_pow(x), 0.0};
    }
    throw ValidationError("exact case: unknown kind");
}

Complex ExactCase::Hu(double x) const {
    require_inside(x);
    switch (kind_) {
        case ExactKind::Constant:
            return {0.0, (std::log(x - a_) - std::log(b_ - x)) / kPi};
        case ExactKind::SqrtBump:
            return {0.0, x - 0.5 * (a_ + b_)};
        case ExactKind::Power:
            return {0.0, std::cos(kPi * alpha_) * ratio_pow(x) - 1.0};
    }
    throw ValidationError("exact case: unknown kind");
}

Complex ExactCase::f(const SpectralParameter& lambda, double x) const {
    return lambda.lambda() * u(x) - Hu(x);
}

ExactKind exact_kind_from_name(std::string_view name) {
    if (name == "const") return ExactKind::Constant;
    if (name == "bump") return ExactKind::SqrtBump;
    if (name == "power") return ExactKind::Power;
    throw ValidationError("unknown example name: " + std::string(name) +
                          " (expected const, bump or power)");
}

const char* to_string(ExactKind kind) {
    switch (kind) {
        case ExactKind::Constant: return "const";
        case ExactKind::SqrtBump: return "bump";
        case ExactKind::Power: return "power";
    }
    return "?";
}

}  // namespace ddh
