#include "afree/fft.hpp"

#include <fftw3.h>

#include <complex>

namespace afree {

namespace {

// One unnormalized FFTW pass; sign is FFTW_FORWARD or FFTW_BACKWARD.
ComplexField raw_transform(const Grid& grid, const ComplexField& in, int sign) {
  const long total = grid.size();
  if (static_cast<long>(in.size()) != total) throw Error("field size does not match grid");

  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(total));
  if (buf == nullptr) throw Error("fftw allocation failed");
  for (long i = 0; i < total; ++i) {
    buf[i][0] = in[static_cast<size_t>(i)].real();
    buf[i][1] = in[static_cast<size_t>(i)].imag();
  }

  std::vector<int> dims(static_cast<size_t>(grid.d), grid.n);
  fftw_plan plan = fftw_plan_dft(grid.d, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
  if (plan == nullptr) {
    fftw_free(buf);
    throw Error("fftw plan creation failed");
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  ComplexField out(static_cast<size_t>(total));
  for (long i = 0; i < total; ++i)
    out[static_cast<size_t>(i)] = {buf[i][0], buf[i][1]};
  fftw_free(buf);
  return out;
}

void apply_parity(const Grid& grid, ComplexField& field) {
  std::vector<int> idx;
  const long total = grid.size();
  for (long flat = 0; flat < total; ++flat) {
    grid.unflatten(flat, idx);
    field[static_cast<size_t>(flat)] *= grid.parity(idx);
  }
}

}  // namespace

ComplexField forward_transform(const Grid& grid, const ComplexField& field) {
  ComplexField out = raw_transform(grid, field, FFTW_FORWARD);
  apply_parity(grid, out);
  const double scale = std::pow(grid.h(), grid.d);
  for (auto& v : out) v *= scale;
  return out;
}

ComplexField inverse_transform(const Grid& grid, const ComplexField& spectrum) {
  ComplexField tmp = spectrum;
  apply_parity(grid, tmp);
  ComplexField out = raw_transform(grid, tmp, FFTW_BACKWARD);
  const double scale = std::pow(1.0 / grid.length, grid.d);
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace afree
