#pragma once

#include <string_view>

#include "ddh/spectral_parameter.hpp"
#include "ddh/types.hpp"

namespace ddh {

enum class ExactKind { Constant, SqrtBump, Power };

/// Closed-form triples (u, Hu, f = lambda u - Hu) for the interval operator
///
///     (Hu)(x) = 1/(i pi)  p.v. integral_a^b  u(y) / (y - x)  dy .
///
/// Three cases ship, normalized so that the solutions read
///
///     Constant   u(x) = 1
///     SqrtBump   u(x) = sqrt((x - a)(b - x))
///     Power      u(x) = sin(pi alpha) ((x - a)/(b - x))^alpha
///
/// with alpha in (-1/2, 1/2) so the Power traces stay square integrable.
/// Power is unbounded at b for alpha > 0 (at a for alpha < 0).  Both u and
/// Hu are evaluated from closed forms, never by quadrature.  Instances are
/// immutable and all evaluations are pure.
class ExactCase {
public:
    ExactCase(ExactKind kind, double a, double b, double alpha = 0.25);

    ExactKind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double alpha() const { return alpha_; }

    /// Exact solution at x in (a, b).
    Complex u(double x) const;

    /// Transform value Hu(x) at x in (a, b).
    Complex Hu(double x) const;

    /// Right-hand side f(x) = lambda u(x) - Hu(x).
    Complex f(const SpectralParameter& lambda, double x) const;

private:
    void require_inside(double x) const;
    double ratio_pow(double x) const;

    ExactKind kind_;
    double a_;
    double b_;
    double alpha_;
};

/// Parses "const" / "bump" / "power".
ExactKind exact_kind_from_name(std::string_view name);
const char* to_string(ExactKind kind);

}  // namespace ddh
