#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fraclab {

/// In-place iterative radix-2 FFT; size must be a power of two.
/// inverse = true applies the conjugate transform without the 1/n factor.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// Symmetric Toeplitz matrix-vector product through a circulant embedding.
/// The transform of the embedded symbol is cached by the caller.
class ToeplitzApply {
public:
    ToeplitzApply() = default;

    /// row holds the first matrix row t_0 .. t_(n-1).
    explicit ToeplitzApply(const std::vector<double>& row) : n_(row.size()) {
        std::size_t m = 1;
        while (m < 2 * n_) m <<= 1;
        symbol_.assign(m, {0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) symbol_[k] = {row[k], 0.0};
        for (std::size_t k = 1; k < n_; ++k) symbol_[m - k] = {row[k], 0.0};
        fft_pow2(symbol_, false);
    }

    std::size_t size() const { return n_; }

    void apply(const double* in, double* out) const {
        const std::size_t m = symbol_.size();
        std::vector<std::complex<double>> work(m, {0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) work[k] = {in[k], 0.0};
        fft_pow2(work, false);
        for (std::size_t k = 0; k < m; ++k) work[k] *= symbol_[k];
        fft_pow2(work, true);
        const double scale = 1.0 / static_cast<double>(m);
        for (std::size_t k = 0; k < n_; ++k) out[k] = work[k].real() * scale;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> symbol_;
};

} // namespace fraclab
