// Copyright 2026 The sccodec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCC_TRANSFORM_HPP_
#define SCC_TRANSFORM_HPP_

#include <cstdint>

namespace scc {

// Separable integer DCT-II for square blocks, n in {2,4,8,16,32}.
//
// Output coefficients are scaled by 64 relative to the orthonormal DCT, so
// coefficient energy is 4096x sample energy (within 0.1%). One rounding per
// direction; inverse(forward(x)) is within +-1 of x for |x| <= 1024.
void dct_forward(const int32_t* x, int n, int32_t* coeff);
void dct_inverse(const int32_t* coeff, int n, int32_t* x);

}  // namespace scc

#endif  // SCC_TRANSFORM_HPP_
