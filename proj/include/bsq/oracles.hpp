#pragma once

#include "bsq/spectral_field.hpp"

namespace bsq {

// Reference implementations used to cross-check the fast paths; deliberately
// direct summation, never sharing code with the operators they validate.

// Exact spectral convolution of two band-limited fields by O(N^4) summation
// over retained mode pairs, truncated to the dealias set.
SpectralField convolution_oracle(const SpectralField& f, const SpectralField& g);

// Direct Parseval sum for the H^s norm (oracle for the Besov B^s_{2,2} route).
Real direct_hs_norm(const SpectralField& f, Real s);

}  // namespace bsq
