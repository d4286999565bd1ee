// Copyright 2026 The ckam authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CKAM_DETAIL_FFT_HPP
#define CKAM_DETAIL_FFT_HPP

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace ckam::detail {

// FFTW's planner is not thread safe; execution of independent plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place complex DFT, sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
// Unnormalized, matching FFTW conventions.
inline void fft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& shape,
                   int sign) {
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

inline void fft_1d(std::vector<std::complex<double>>& data, int sign) {
  fft_nd(data, {static_cast<int>(data.size())}, sign);
}

}  // namespace ckam::detail

#endif  // CKAM_DETAIL_FFT_HPP
