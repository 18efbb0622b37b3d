// Copyright 2026 The AUGUST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "august/hadamard.h"

#include <bit>
#include <cmath>
#include <string>

#include "august/errors.h"

namespace august {

std::vector<int> HadamardMatrix::row(std::size_t index) const {
  std::vector<int> out(order());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*this)(index, j);
  return out;
}

std::vector<std::int8_t> HadamardMatrix::materialize() const {
  if (depth_ > 13) {
    throw Error(ErrorCode::kDepthOutOfRange,
                "dense Hadamard materialization is limited to d <= 13");
  }
  std::vector<std::int8_t> current = {1};
  std::size_t k = 1;
  while (k < order()) {
    const std::size_t next = 2 * k;
    std::vector<std::int8_t> grown(next * next);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::int8_t v = current[i * k + j];
        grown[i * next + j] = v;
        grown[i * next + j + k] = v;
        grown[(i + k) * next + j] = v;
        grown[(i + k) * next + j + k] = static_cast<std::int8_t>(-v);
      }
    }
    current = std::move(grown);
    k = next;
  }
  return current;
}

HadamardMatrix sylvester(int depth) {
  if (depth < 1 || depth > 20) {
    throw Error(ErrorCode::kDepthOutOfRange,
                "Hadamard depth must lie in [1, 20], got " +
                    std::to_string(depth));
  }
  return HadamardMatrix(depth);
}

void fwht_inplace(std::span<double> values) {
  const std::size_t n = values.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::kLengthNotPowerOfTwo,
                "transform length " + std::to_string(n) +
                    " is not a power of two");
  }
  for (std::size_t half = 1; half < n; half *= 2) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = values[i];
        const double b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
    }
  }
}

std::vector<double> fwht(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  fwht_inplace(out);
  return out;
}

SymmetryVector symmetry_statistics(const CellProbabilities& probs) {
  std::vector<double> transformed(probs.values().begin(), probs.values().end());
  fwht_inplace(transformed);
  if (std::abs(transformed[0] - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidCellProbabilities,
                "leading Hadamard coordinate differs from one; cell "
                "probabilities are not normalized");
  }
  return SymmetryVector{
      std::vector<double>(transformed.begin() + 1, transformed.end()),
      probs.depth()};
}

double dot(const SymmetryVector& a, const SymmetryVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "symmetry vector lengths differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace august
