#include "rustic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rustic/errors.hpp"

namespace rustic::numerics {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, decimation in time. sign = -1 forward.
std::vector<cplx> fft_pow2(std::span<const cplx> x, double sign) {
    const std::size_t n = x.size();
    std::vector<cplx> a(x.begin(), x.end());
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    return a;
}

// Direct O(N^2) transform with a mod-N twiddle table so large k*n products
// do not lose angular precision.
std::vector<cplx> dft_direct(std::span<const cplx> x, double sign) {
    const std::size_t n = x.size();
    std::vector<cplx> table(n);
    for (std::size_t i = 0; i < n; ++i)
        table[i] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                       static_cast<double>(i) / static_cast<double>(n));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) acc += x[i] * table[(k * i) % n];
        out[k] = acc;
    }
    return out;
}

std::vector<cplx> transform(std::span<const cplx> x, double sign) {
    if (x.empty()) throw std::invalid_argument("dft: empty input");
    if (x.size() == 1) return {x[0]};
    if (is_pow2(x.size())) return fft_pow2(x, sign);
    return dft_direct(x, sign);
}

} // namespace

std::vector<cplx> dft(std::span<const cplx> x) { return transform(x, -1.0); }

std::vector<cplx> idft(std::span<const cplx> x) {
    auto out = transform(x, 1.0);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= inv;
    return out;
}

namespace serial {
std::vector<cplx> dft(std::span<const cplx> x) {
    if (x.empty()) throw std::invalid_argument("dft: empty input");
    return dft_direct(x, -1.0);
}
} // namespace serial

// ---------------------------------------------------------------------------
// SVD: Householder QR for tall matrices, then one-sided Jacobi.
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxJacobiSweeps = 10000;

// One-sided Jacobi on column-major B (m x n): rotates columns until all
// pairs are orthogonal. V (n x n, column-major) accumulates the rotations.
void one_sided_jacobi(std::vector<double>& b, std::size_t m, std::size_t n,
                      std::vector<double>& v) {
    // V = I
    v.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;
    if (n < 2) return;

    const double tol = 1e-14;
    for (std::size_t sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double* bp = b.data() + p * m;
                double* bq = b.data() + q * m;
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += bp[i] * bp[i];
                    aqq += bq[i] * bq[i];
                    apq += bp[i] * bq[i];
                }
                if (app == 0.0 || aqq == 0.0) continue;
                if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double xp = bp[i];
                    const double xq = bq[i];
                    bp[i] = c * xp - s * xq;
                    bq[i] = s * xp + c * xq;
                }
                double* vp = v.data() + p * n;
                double* vq = v.data() + q * n;
                for (std::size_t i = 0; i < n; ++i) {
                    const double xp = vp[i];
                    const double xq = vq[i];
                    vp[i] = c * xp - s * xq;
                    vq[i] = s * xp + c * xq;
                }
            }
        }
        if (!rotated) return;
    }
    throw numerical_error("svd: one-sided Jacobi did not converge within sweep cap");
}

// Householder QR of column-major a (m x n, m >= n). Reflectors are stored
// below the diagonal (scaled so v[0] = 1), R on and above it.
void householder_qr(std::vector<double>& a, std::size_t m, std::size_t n,
                    std::vector<double>& tau) {
    tau.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double* col = a.data() + j * m;
        double norm = 0.0;
        for (std::size_t i = j; i < m; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            tau[j] = 0.0;
            continue;
        }
        const double x0 = col[j];
        const double alpha = (x0 >= 0.0) ? -norm : norm;
        const double v0 = x0 - alpha;
        // v = [1, col[j+1:]/v0]; H = I - tau v v^T
        double vsq = 1.0;
        for (std::size_t i = j + 1; i < m; ++i) {
            col[i] /= v0;
            vsq += col[i] * col[i];
        }
        tau[j] = 2.0 / vsq;
        col[j] = alpha;
        for (std::size_t k = j + 1; k < n; ++k) {
            double* ck = a.data() + k * m;
            double w = ck[j];
            for (std::size_t i = j + 1; i < m; ++i) w += col[i] * ck[i];
            w *= tau[j];
            ck[j] -= w;
            for (std::size_t i = j + 1; i < m; ++i) ck[i] -= w * col[i];
        }
    }
}

// Applies Q (from householder_qr) to column-major c (m x n), in place.
void apply_q(const std::vector<double>& a, const std::vector<double>& tau,
             std::size_t m, std::size_t n, std::vector<double>& c, std::size_t ccols) {
    for (std::size_t jj = n; jj-- > 0;) {
        if (tau[jj] == 0.0) continue;
        const double* v = a.data() + jj * m;
        for (std::size_t k = 0; k < ccols; ++k) {
            double* ck = c.data() + k * m;
            double w = ck[jj];
            for (std::size_t i = jj + 1; i < m; ++i) w += v[i] * ck[i];
            w *= tau[jj];
            ck[jj] -= w;
            for (std::size_t i = jj + 1; i < m; ++i) ck[i] -= w * v[i];
        }
    }
}

// Extracts singular values/vectors from the rotated column set and fills
// orthonormal replacements for numerically zero columns.
SvdResult finalize_jacobi(std::vector<double>& b, std::size_t m, std::size_t n,
                          std::vector<double>& v) {
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        const double* col = b.data() + j * m;
        for (std::size_t i = 0; i < m; ++i) norm += col[i] * col[i];
        sigma[j] = std::sqrt(norm);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    const double smax = sigma.empty() ? 0.0 : sigma[order[0]];
    const double tiny = smax * 2.2e-16 * static_cast<double>(std::max(m, n));

    SvdResult out;
    out.u = RealMatrix(m, n);
    out.v = RealMatrix(n, n);
    out.sigma.resize(n);
    std::size_t filled = 0;
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t src = order[jj];
        out.sigma[jj] = sigma[src];
        for (std::size_t i = 0; i < n; ++i) out.v.at(i, jj) = v[src * n + i];
        if (sigma[src] > tiny && sigma[src] > 0.0) {
            const double inv = 1.0 / sigma[src];
            for (std::size_t i = 0; i < m; ++i) out.u.at(i, jj) = b[src * m + i] * inv;
            ++filled;
        }
    }
    // Orthonormal completion for rank-deficient inputs so U keeps
    // orthonormal columns; these directions pair with zero singular values.
    for (std::size_t jj = filled; jj < n; ++jj) {
        out.sigma[jj] = 0.0;
        std::vector<double> cand(m, 0.0);
        for (std::size_t basis = 0; basis < m; ++basis) {
            std::fill(cand.begin(), cand.end(), 0.0);
            cand[basis] = 1.0;
            for (std::size_t k = 0; k < jj; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < m; ++i) dot += out.u.at(i, k) * cand[i];
                for (std::size_t i = 0; i < m; ++i) cand[i] -= dot * out.u.at(i, k);
            }
            double norm = 0.0;
            for (double x : cand) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 0.5) {
                for (std::size_t i = 0; i < m; ++i) out.u.at(i, jj) = cand[i] / norm;
                break;
            }
        }
    }
    return out;
}

SvdResult svd_tall(const RealMatrix& x) {
    const std::size_t m = x.rows;
    const std::size_t n = x.cols;
    // column-major copy
    std::vector<double> a(m * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) a[j * m + i] = x.at(i, j);

    if (m > n) {
        std::vector<double> tau;
        householder_qr(a, m, n, tau);
        // Jacobi on R (n x n)
        std::vector<double> r(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i <= j; ++i) r[j * n + i] = a[j * m + i];
        std::vector<double> v;
        one_sided_jacobi(r, n, n, v);
        SvdResult small = finalize_jacobi(r, n, n, v);
        // U = Q * [U_r; 0]
        std::vector<double> u(m * n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) u[j * m + i] = small.u.at(i, j);
        apply_q(a, tau, m, n, u, n);
        SvdResult out;
        out.sigma = std::move(small.sigma);
        out.v = std::move(small.v);
        out.u = RealMatrix(m, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) out.u.at(i, j) = u[j * m + i];
        return out;
    }

    std::vector<double> v;
    one_sided_jacobi(a, m, n, v);
    SvdResult out = finalize_jacobi(a, m, n, v);
    return out;
}

} // namespace

SvdResult svd(const RealMatrix& x) {
    if (x.rows == 0 || x.cols == 0) throw std::invalid_argument("svd: empty matrix");
    for (double val : x.data)
        if (!std::isfinite(val)) throw std::invalid_argument("svd: non-finite entry");
    if (x.rows >= x.cols) return svd_tall(x);
    SvdResult t = svd_tall(transpose(x));
    SvdResult out;
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    out.sigma = std::move(t.sigma);
    return out;
}

// ---------------------------------------------------------------------------
// Convolutions (correlation orientation, zero padding).
// ---------------------------------------------------------------------------

void conv2d_same_into(std::span<const double> input, std::size_t h, std::size_t w,
                      const Kernel2D& kernel, std::span<double> out) {
    const std::size_t k = kernel.side;
    if (k == 0 || k % 2 == 0)
        throw std::invalid_argument("conv2d_same: kernel side must be odd");
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(k / 2);
    const std::ptrdiff_t hh = static_cast<std::ptrdiff_t>(h);
    const std::ptrdiff_t ww = static_cast<std::ptrdiff_t>(w);
    for (std::ptrdiff_t i = 0; i < hh; ++i) {
        for (std::ptrdiff_t j = 0; j < ww; ++j) {
            double acc = 0.0;
            for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(k); ++u) {
                const std::ptrdiff_t ii = i + u - r;
                if (ii < 0 || ii >= hh) continue;
                for (std::ptrdiff_t vv = 0; vv < static_cast<std::ptrdiff_t>(k); ++vv) {
                    const std::ptrdiff_t jj = j + vv - r;
                    if (jj < 0 || jj >= ww) continue;
                    acc += input[static_cast<std::size_t>(ii * ww + jj)] *
                           kernel.taps[static_cast<std::size_t>(u) * k +
                                       static_cast<std::size_t>(vv)];
                }
            }
            out[static_cast<std::size_t>(i * ww + j)] = acc;
        }
    }
}

RealMatrix conv2d_same(const RealMatrix& input, const Kernel2D& kernel) {
    RealMatrix out(input.rows, input.cols);
    conv2d_same_into(input.data, input.rows, input.cols, kernel, out.data);
    return out;
}

void conv1d_same_into(std::span<const double> input, const Kernel1D& kernel,
                      std::span<double> out) {
    const std::size_t k = kernel.side;
    if (k == 0 || k % 2 == 0)
        throw std::invalid_argument("conv1d_same: kernel length must be odd");
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(k / 2);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(input.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(k); ++u) {
            const std::ptrdiff_t ii = i + u - r;
            if (ii < 0 || ii >= n) continue;
            acc += input[static_cast<std::size_t>(ii)] *
                   kernel.taps[static_cast<std::size_t>(u)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
}

std::vector<double> conv1d_same(std::span<const double> input, const Kernel1D& kernel) {
    std::vector<double> out(input.size());
    conv1d_same_into(input, kernel, out);
    return out;
}

VideoTensor conv2d_frames(const VideoTensor& input, const Kernel2D& kernel) {
    if (kernel.side == 0 || kernel.side % 2 == 0)
        throw std::invalid_argument("conv2d_frames: kernel side must be odd");
    VideoTensor out(input.frames, input.height, input.width);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(input.frames);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < m; ++f) {
        conv2d_same_into(input.frame(static_cast<std::size_t>(f)), input.height,
                         input.width, kernel, out.frame(static_cast<std::size_t>(f)));
    }
    return out;
}

namespace serial {

RealMatrix conv2d_same(const RealMatrix& input, const Kernel2D& kernel) {
    const std::size_t k = kernel.side;
    if (k == 0 || k % 2 == 0)
        throw std::invalid_argument("conv2d_same: kernel side must be odd");
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(k / 2);
    RealMatrix out(input.rows, input.cols);
    for (std::size_t i = 0; i < input.rows; ++i) {
        for (std::size_t j = 0; j < input.cols; ++j) {
            double acc = 0.0;
            for (std::size_t u = 0; u < k; ++u) {
                for (std::size_t vv = 0; vv < k; ++vv) {
                    const std::ptrdiff_t ii =
                        static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(u) - r;
                    const std::ptrdiff_t jj =
                        static_cast<std::ptrdiff_t>(j) + static_cast<std::ptrdiff_t>(vv) - r;
                    if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(input.rows)) continue;
                    if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(input.cols)) continue;
                    acc += input.at(static_cast<std::size_t>(ii),
                                    static_cast<std::size_t>(jj)) *
                           kernel.at(u, vv);
                }
            }
            out.at(i, j) = acc;
        }
    }
    return out;
}

std::vector<double> conv1d_same(std::span<const double> input, const Kernel1D& kernel) {
    const std::size_t k = kernel.side;
    if (k == 0 || k % 2 == 0)
        throw std::invalid_argument("conv1d_same: kernel length must be odd");
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(k / 2);
    std::vector<double> out(input.size(), 0.0);
    for (std::size_t i = 0; i < input.size(); ++i) {
        double acc = 0.0;
        for (std::size_t u = 0; u < k; ++u) {
            const std::ptrdiff_t ii =
                static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(u) - r;
            if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(input.size())) continue;
            acc += input[static_cast<std::size_t>(ii)] * kernel.taps[u];
        }
        out[i] = acc;
    }
    return out;
}

} // namespace serial

// ---------------------------------------------------------------------------
// Small dense helpers.
// ---------------------------------------------------------------------------

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    RealMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double av = a.at(i, k);
            if (av == 0.0) continue;
            const double* brow = b.data.data() + k * b.cols;
            double* crow = c.data.data() + i * c.cols;
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

RealMatrix matmul_transb(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("matmul_transb: shape mismatch");
    RealMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + i * a.cols;
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* brow = b.data.data() + j * b.cols;
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
            c.at(i, j) = acc;
        }
    }
    return c;
}

RealMatrix matmul_transa(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("matmul_transa: shape mismatch");
    RealMatrix c(a.cols, b.cols);
    for (std::size_t k = 0; k < a.rows; ++k) {
        const double* arow = a.data.data() + k * a.cols;
        const double* brow = b.data.data() + k * b.cols;
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double av = arow[i];
            if (av == 0.0) continue;
            double* crow = c.data.data() + i * c.cols;
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

RealMatrix transpose(const RealMatrix& a) {
    RealMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

double frobenius_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double frobenius_norm(const RealMatrix& a) { return frobenius_norm(std::span(a.data)); }

} // namespace rustic::numerics
