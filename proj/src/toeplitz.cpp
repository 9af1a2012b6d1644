#include "ddh/toeplitz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ddh/errors.hpp"

namespace ddh {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kFftCrossover = 64;

// Kernel value at offset row - col = d (d != 0):  1/(i pi (col - row)) = i/(pi d).
inline Complex kernel_at(int d) { return {0.0, 1.0 / (kPi * d)}; }
}  // namespace

ToeplitzOperator::ToeplitzOperator(int size)
    : size_(size), fft_(detail::next_pow2(size >= 1 ? 2 * size - 1 : 1)) {
    if (size < 1)
        throw ValidationError("toeplitz section size must be >= 1, got " + std::to_string(size));
    const int len = fft_.length();
    std::vector<Complex> embedded(static_cast<std::size_t>(len), Complex{0.0, 0.0});
    for (int d = 1; d < size_; ++d) {
        embedded[static_cast<std::size_t>(d)] = kernel_at(d);
        embedded[static_cast<std::size_t>(len - d)] = kernel_at(-d);
    }
    fft_.forward(embedded);
    kernel_hat_ = std::move(embedded);
}

Complex ToeplitzOperator::entry(int row, int col) const {
    if (row < 0 || row >= size_ || col < 0 || col >= size_)
        throw ValidationError("toeplitz entry index out of range");
    if (row == col) return {0.0, 0.0};
    return {0.0, -1.0 / (kPi * (col - row))};
}

void ToeplitzOperator::require_length(std::span<const Complex> v) const {
    if (static_cast<int>(v.size()) != size_)
        throw ValidationError("dimension error: vector length " + std::to_string(v.size()) +
                              " does not match section size " + std::to_string(size_));
}

std::vector<Complex> ToeplitzOperator::matvec_direct(std::span<const Complex> v) const {
    require_length(v);
    std::vector<Complex> y(static_cast<std::size_t>(size_));
    for (int m = 0; m < size_; ++m) {
        double re = 0.0;
        double im = 0.0;
        for (int n = 0; n < size_; ++n) {
            if (n == m) continue;
            // entry(m, n) = i * w with w = -1/(pi (n - m))
            const double w = -1.0 / (kPi * (n - m));
            const Complex& z = v[static_cast<std::size_t>(n)];
            re -= w * z.imag();
            im += w * z.real();
        }
        y[static_cast<std::size_t>(m)] = {re, im};
    }
    return y;
}

std::vector<Complex> ToeplitzOperator::matvec_fft(std::span<const Complex> v) const {
    require_length(v);
    const int len = fft_.length();
    std::vector<Complex> work(static_cast<std::size_t>(len), Complex{0.0, 0.0});
    for (int i = 0; i < size_; ++i) work[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    fft_.forward(work);
    for (int i = 0; i < len; ++i) work[static_cast<std::size_t>(i)] *= kernel_hat_[static_cast<std::size_t>(i)];
    fft_.inverse(work);
    work.resize(static_cast<std::size_t>(size_));
    return work;
}

std::vector<Complex> ToeplitzOperator::apply(std::span<const Complex> v) const {
    return size_ >= kFftCrossover ? matvec_fft(v) : matvec_direct(v);
}

SymbolValues symbol(double tau, long terms) {
    if (!(tau > -kPi && tau < kPi))
        throw ValidationError("symbol: tau must lie in (-pi, pi)");
    if (terms < 1)
        throw ValidationError("symbol: need at least one term");
    // Kahan summation; the terms decay like 1/m and alternate slowly.
    double sum = 0.0;
    double comp = 0.0;
    for (long m = 1; m <= terms; ++m) {
        const double term = 2.0 * std::sin(static_cast<double>(m) * tau) / (kPi * static_cast<double>(m));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double closed = tau == 0.0 ? 0.0 : (tau > 0.0 ? 1.0 : -1.0) - tau / kPi;
    return {sum, closed};
}

}  // namespace ddh
