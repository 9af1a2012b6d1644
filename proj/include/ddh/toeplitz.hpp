#pragma once

#include <span>
#include <vector>

#include "ddh/errors.hpp"
#include "ddh/fft.hpp"
#include "ddh/types.hpp"

namespace ddh {

/// Finite section of the discrete convolution with kernel 1/(i pi k):
///
///     entry(m, n) = 1/(i pi (n - m))  for n != m,     0 on the diagonal.
///
/// The section is Hermitian with purely imaginary entries and satisfies the
/// reversal identity J T J = -T.  Only the kernel is stored (O(M) memory);
/// products run either as the O(M^2) reference loop or in O(M log M)
/// through a circulant embedding of length >= 2M - 1, padded to a power of
/// two.  The embedding transform is precomputed, so matvecs on a shared
/// instance are pure and may run concurrently.
class ToeplitzOperator {
public:
    /// size >= 1; the 1 x 1 section is the zero matrix.
    explicit ToeplitzOperator(int size);

    int size() const { return size_; }

    /// 0-based row/column access.
    Complex entry(int row, int col) const;

    /// Reference O(M^2) product.
    std::vector<Complex> matvec_direct(std::span<const Complex> v) const;

    /// Circulant-embedding product, O(M log M).
    std::vector<Complex> matvec_fft(std::span<const Complex> v) const;

    /// matvec_fft above the crossover size, matvec_direct below.
    std::vector<Complex> apply(std::span<const Complex> v) const;

private:
    void require_length(std::span<const Complex> v) const;

    int size_;
    detail::Fft fft_;
    std::vector<Complex> kernel_hat_;  // transform of the embedded kernel column
};

/// Partial Fourier sum and closed form of the kernel symbol on (-pi, pi):
///
///     partial     = sum_{m=1..terms} 2 sin(m tau) / (pi m)
///     closed_form = sign(tau) - tau/pi        (0 at tau = 0)
struct SymbolValues {
    double partial;
    double closed_form;
};

SymbolValues symbol(double tau, long terms);

}  // namespace ddh
