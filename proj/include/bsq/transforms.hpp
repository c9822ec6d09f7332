#pragma once

#include "bsq/spectral_field.hpp"

namespace bsq {

// Forward transform with 1/N^2 so coefficients are Fourier-series
// coefficients; enforces Hermitian symmetry and zero Nyquist rows.
// Normalization is pinned by Parseval: ||f||_{L^2}^2 = (2pi)^2 sum |f_hat|^2.
SpectralField to_spectral(const RealGrid& values, const Grid& grid);

// Unnormalized inverse transform; imaginary residue (roundoff for Hermitian
// inputs) is discarded.
RealGrid to_physical(const SpectralField& f);

// Caps the FFT data parallelism (reads BSQ_NUM_THREADS once; returns the
// effective cap). Plans are cached per grid size and shared; execution is
// reentrant-safe.
int fft_thread_cap();

}  // namespace bsq
