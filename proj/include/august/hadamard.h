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

#ifndef AUGUST_HADAMARD_H_
#define AUGUST_HADAMARD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "august/hypergeom.h"

namespace august {

// Sylvester-ordered Hadamard matrix of order 2^d. Entry (i, j), zero-based,
// is (-1)^popcount(i & j), which is the closed form of H_2k = H_2 (x) H_k.
class HadamardMatrix {
 public:
  int depth() const { return depth_; }
  std::size_t order() const { return std::size_t{1} << depth_; }

  int operator()(std::size_t row, std::size_t col) const {
    return (__builtin_popcountll(row & col) & 1) ? -1 : 1;
  }

  std::vector<int> row(std::size_t index) const;

  // Dense entries built by the explicit Kronecker recursion, row-major.
  // Limited to d <= 13.
  std::vector<std::int8_t> materialize() const;

 private:
  friend HadamardMatrix sylvester(int depth);
  explicit HadamardMatrix(int depth) : depth_(depth) {}

  int depth_;
};

// Throws DepthOutOfRange unless 1 <= d <= 20.
HadamardMatrix sylvester(int depth);

// In-place fast Walsh-Hadamard transform in Sylvester order.
// Throws LengthNotPowerOfTwo.
void fwht_inplace(std::span<double> values);
std::vector<double> fwht(std::span<const double> values);

// All but the first coordinate of H_{2^d} P. Entry i (zero-based) belongs to
// Hadamard row i + 1, i.e. one-based row i + 2.
struct SymmetryVector {
  std::vector<double> stats;
  int depth = 0;

  std::size_t size() const { return stats.size(); }
  double operator[](std::size_t i) const { return stats[i]; }
  bool operator==(const SymmetryVector&) const = default;
};

// Throws InvalidCellProbabilities when the discarded first coordinate is
// not within 1e-12 of one.
SymmetryVector symmetry_statistics(const CellProbabilities& probs);

double dot(const SymmetryVector& a, const SymmetryVector& b);

}  // namespace august

#endif  // AUGUST_HADAMARD_H_
