#pragma once

#include "afree/grid.hpp"

namespace afree {

// Discrete stand-ins for u^(xi) = integral exp(-2 pi i x.xi) u(x) dx on the
// grid window. With w_j = -L/2 + j h and xi_a = a/L the phases factor as
//   u^(xi_a) = h^d (-1)^{sum a} FFT[u]_a,
//   u(w_j)   = L^{-d} IFFT[(-1)^{sum a} u^(xi_a)]_j,
// so a checkerboard sign wraps an unnormalized FFTW pass on each side.
ComplexField forward_transform(const Grid& grid, const ComplexField& field);
ComplexField inverse_transform(const Grid& grid, const ComplexField& spectrum);

}  // namespace afree
