#ifndef AMTIS_FFT_HPP
#define AMTIS_FFT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace amtis::detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

/// Iterative radix-2 transform, in place. `a.size()` must be a power of two.
inline void fft_pow2(cplx* a, std::size_t n, bool inverse) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] *= inv;
    }
}

/// One-dimensional DFT plan for a fixed length. Power-of-two lengths run
/// radix-2 directly; everything else goes through Bluestein's chirp-z
/// reduction to a padded power-of-two convolution.
class Fft1d {
public:
    explicit Fft1d(std::size_t n) : n_(n) {
        if (n_ <= 1 || is_pow2(n_))
            return;
        m_ = next_pow2(2 * n_ - 1);
        chirp_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            // angle pi*k^2/n reduced mod 2*pi to keep large k accurate
            long long r = static_cast<long long>(k) * static_cast<long long>(k) %
                          (2LL * static_cast<long long>(n_));
            double ang = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n_);
            chirp_[k] = cplx(std::cos(ang), -std::sin(ang));
        }
        bhat_.assign(m_, cplx(0.0, 0.0));
        bhat_[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n_; ++j)
            bhat_[j] = bhat_[m_ - j] = std::conj(chirp_[j]);
        fft_pow2(bhat_.data(), m_, false);
    }

    std::size_t size() const { return n_; }

    void transform(cplx* a, bool inverse) const {
        if (n_ <= 1)
            return;
        if (is_pow2(n_)) {
            fft_pow2(a, n_, inverse);
            return;
        }
        // inverse(x) = conj(forward(conj(x))) / n
        if (inverse)
            for (std::size_t k = 0; k < n_; ++k)
                a[k] = std::conj(a[k]);
        bluestein(a);
        if (inverse) {
            double inv = 1.0 / static_cast<double>(n_);
            for (std::size_t k = 0; k < n_; ++k)
                a[k] = std::conj(a[k]) * inv;
        }
    }

private:
    void bluestein(cplx* a) const {
        std::vector<cplx> u(m_, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < n_; ++j)
            u[j] = a[j] * chirp_[j];
        fft_pow2(u.data(), m_, false);
        for (std::size_t j = 0; j < m_; ++j)
            u[j] *= bhat_[j];
        fft_pow2(u.data(), m_, true);
        for (std::size_t k = 0; k < n_; ++k)
            a[k] = u[k] * chirp_[k];
    }

    std::size_t n_;
    std::size_t m_ = 0;
    std::vector<cplx> chirp_;
    std::vector<cplx> bhat_;
};

/// Row-major two-dimensional transform, in place.
class Fft2d {
public:
    Fft2d(int rows, int cols)
        : rows_(rows), cols_(cols), row_plan_(static_cast<std::size_t>(cols)),
          col_plan_(static_cast<std::size_t>(rows)) {}

    void transform(std::vector<cplx>& data, bool inverse) const {
        for (int r = 0; r < rows_; ++r)
            row_plan_.transform(data.data() + static_cast<std::size_t>(r) * cols_, inverse);
        std::vector<cplx> col(static_cast<std::size_t>(rows_));
        for (int c = 0; c < cols_; ++c) {
            for (int r = 0; r < rows_; ++r)
                col[r] = data[static_cast<std::size_t>(r) * cols_ + c];
            col_plan_.transform(col.data(), inverse);
            for (int r = 0; r < rows_; ++r)
                data[static_cast<std::size_t>(r) * cols_ + c] = col[r];
        }
    }

private:
    int rows_;
    int cols_;
    Fft1d row_plan_;
    Fft1d col_plan_;
};

} // namespace amtis::detail

#endif
