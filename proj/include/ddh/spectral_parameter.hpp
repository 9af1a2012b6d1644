#pragma once

#include <cmath>
#include <complex>

#include "ddh/errors.hpp"

namespace ddh {

/// Complex shift lambda together with its distance to the segment
/// C = [-1, 1].  The solve (lambda I - T) U = F is well posed exactly when
/// lambda stays off that segment, and the distance controls both the
/// resolvent norm and every tolerance downstream, so it is computed once
/// here and carried along.  Construction rejects lambda closer than
/// kMinDistance.
class SpectralParameter {
public:
    static constexpr double kMinDistance = 1e-12;

    explicit SpectralParameter(std::complex<double> lambda)
        : lambda_(lambda), dist_(distance_to_segment(lambda)) {
        if (!(dist_ >= kMinDistance)) throw UnstableParameterError(dist_);
    }

    std::complex<double> lambda() const { return lambda_; }

    /// Exact point-to-segment distance to [-1, 1].
    double dist() const { return dist_; }

    static double distance_to_segment(std::complex<double> lambda) {
        const double re = lambda.real();
        const double im = lambda.imag();
        if (re < -1.0) return std::hypot(re + 1.0, im);
        if (re > 1.0) return std::hypot(re - 1.0, im);
        return std::abs(im);
    }

private:
    std::complex<double> lambda_;
    double dist_;
};

}  // namespace ddh
