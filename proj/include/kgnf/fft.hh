// fft.hh -- FFTW-backed complex transforms with a per-size plan cache.
// Plan creation is serialized behind a mutex (FFTW planning is not
// thread-safe); executing cached plans on caller-owned buffers is.
#pragma once

#include <vector>

#include "kgnf/grid.hh"

namespace kgnf {

// out_k = sum_j in_j exp(-2 pi i j k / N)   (unnormalized forward DFT)
void dft_raw_forward(const std::vector<cplx>& in, std::vector<cplx>& out);
// out_j = sum_k in_k exp(+2 pi i j k / N)   (unnormalized backward DFT)
void dft_raw_backward(const std::vector<cplx>& in, std::vector<cplx>& out);

}  // namespace kgnf
