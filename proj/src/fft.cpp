#include "ddh/fft.hpp"

#include <cmath>
#include <numbers>

#include "ddh/errors.hpp"

namespace ddh::detail {

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

Fft::Fft(int length) : n_(length) {
    if (n_ < 1 || (n_ & (n_ - 1)) != 0)
        throw ValidationError("fft length must be a power of two");
    bitrev_.resize(static_cast<std::size_t>(n_));
    bitrev_[0] = 0;
    for (int i = 1, j = 0; i < n_; ++i) {
        int bit = n_ >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        bitrev_[static_cast<std::size_t>(i)] = j;
    }
    // Stage-packed twiddles: offsets len/2 - 1 for len = 2, 4, ..., n.
    twiddle_.resize(static_cast<std::size_t>(n_ > 1 ? n_ - 1 : 0));
    for (int len = 2; len <= n_; len <<= 1) {
        const std::size_t off = static_cast<std::size_t>(len / 2 - 1);
        for (int k = 0; k < len / 2; ++k)
            twiddle_[off + static_cast<std::size_t>(k)] =
                std::polar(1.0, -2.0 * std::numbers::pi * k / len);
    }
}

void Fft::run(std::vector<Complex>& a, bool inverse) const {
    if (static_cast<int>(a.size()) != n_)
        throw ValidationError("fft: data length does not match the plan");
    for (int i = 0; i < n_; ++i) {
        const int j = bitrev_[static_cast<std::size_t>(i)];
        if (i < j) std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
        const std::size_t off = static_cast<std::size_t>(len / 2 - 1);
        for (int base = 0; base < n_; base += len) {
            for (int k = 0; k < len / 2; ++k) {
                Complex w = twiddle_[off + static_cast<std::size_t>(k)];
                if (inverse) w = std::conj(w);
                const std::size_t lo = static_cast<std::size_t>(base + k);
                const std::size_t hi = lo + static_cast<std::size_t>(len / 2);
                const Complex u = a[lo];
                const Complex v = a[hi] * w;
                a[lo] = u + v;
                a[hi] = u - v;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / n_;
        for (auto& z : a) z *= scale;
    }
}

}  // namespace ddh::detail
