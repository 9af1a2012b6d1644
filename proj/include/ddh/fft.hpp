#pragma once

#include <vector>

#include "ddh/types.hpp"

namespace ddh::detail {

/// Smallest power of two >= n.
int next_pow2(int n);

/// Radix-2 transform of a fixed power-of-two length with precomputed
/// bit-reversal table and twiddle factors, so repeated products on the same
/// plan cost no trigonometry.  inverse() includes the 1/n scaling.
class Fft {
public:
    explicit Fft(int length);

    int length() const { return n_; }

    void forward(std::vector<Complex>& data) const { run(data, false); }
    void inverse(std::vector<Complex>& data) const { run(data, true); }

private:
    void run(std::vector<Complex>& data, bool inverse) const;

    int n_;
    std::vector<int> bitrev_;
    std::vector<Complex> twiddle_;  // per stage: exp(-2 pi i k/len), k < len/2
};

}  // namespace ddh::detail
