#pragma once

#include "qheis/field.hpp"

namespace qheis {

// forward uses the kernel ebar(k.v), inverse uses e(k.v); plain Lebesgue measure either way.
enum class FourierDirection { forward, inverse };

// Fourier transform in the third variable only: (x, y, r) <-> (x, y, z).
Field3 partial_fourier_r(const Field3& f, FourierDirection dir, const QuadGrid& grid);

// Fourier transform in (x, y) only: (x, y, r) <-> (p, q, r).
Field3 partial_fourier_xy(const Field3& f, FourierDirection dir, const QuadGrid& grid);

// Fourier transform in all three blocks: (x, y, z) <-> (p, q, r).
Field3 full_fourier(const Field3& f, FourierDirection dir, const QuadGrid& grid);

}  // namespace qheis
