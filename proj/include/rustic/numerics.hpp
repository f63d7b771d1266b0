#pragma once

#include <span>
#include <vector>

#include "rustic/tensor.hpp"

namespace rustic::numerics {

/// Forward DFT, X[k] = sum_n x[n] exp(-j 2 pi k n / N). Radix-2 FFT for
/// power-of-two lengths, direct evaluation otherwise.
std::vector<cplx> dft(std::span<const cplx> x);

/// Inverse DFT; dft followed by idft reproduces the input.
std::vector<cplx> idft(std::span<const cplx> x);

/// Thin SVD, X = U diag(sigma) V^T with sigma sorted descending and U, V
/// carrying orthonormal columns. U is rows x k, V is cols x k, k = min(rows, cols).
struct SvdResult {
    RealMatrix u;
    std::vector<double> sigma;
    RealMatrix v;
};

/// Householder QR reduction followed by one-sided Jacobi iteration.
/// Throws numerical_error if Jacobi fails to converge within the sweep cap.
SvdResult svd(const RealMatrix& x);

/// Same-size 2D cross-correlation (no kernel flip) with zero padding.
/// Kernel side must be odd.
RealMatrix conv2d_same(const RealMatrix& input, const Kernel2D& kernel);
void conv2d_same_into(std::span<const double> input, std::size_t h, std::size_t w,
                      const Kernel2D& kernel, std::span<double> out);

/// Same-size 1D cross-correlation with zero padding. Kernel length must be odd.
std::vector<double> conv1d_same(std::span<const double> input, const Kernel1D& kernel);
void conv1d_same_into(std::span<const double> input, const Kernel1D& kernel,
                      std::span<double> out);

/// Per-frame batched convolution: out[m] = k * in[m], frames independent
/// (parallelized over frames).
VideoTensor conv2d_frames(const VideoTensor& input, const Kernel2D& kernel);

/// c = a * b
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
/// c = a * b^T
RealMatrix matmul_transb(const RealMatrix& a, const RealMatrix& b);
/// c = a^T * b
RealMatrix matmul_transa(const RealMatrix& a, const RealMatrix& b);
RealMatrix transpose(const RealMatrix& a);

double frobenius_norm(std::span<const double> v);
double frobenius_norm(const RealMatrix& a);

/// Serial reference kernels: independently written direct-summation loops
/// kept for testing the parallel versions and for the benchmark target.
namespace serial {
RealMatrix conv2d_same(const RealMatrix& input, const Kernel2D& kernel);
std::vector<double> conv1d_same(std::span<const double> input, const Kernel1D& kernel);
std::vector<cplx> dft(std::span<const cplx> x);
} // namespace serial

} // namespace rustic::numerics
