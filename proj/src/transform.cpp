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

#include "scc/transform.hpp"

#include <array>
#include <cassert>

namespace scc {

namespace {

// round(1024*sqrt(2)*cos(pi*m/64)) for m = 0..64. Row k>=1 of the n-point
// basis is this table sampled at k*(2i+1)*(32/n); row 0 is all 1024, so every
// row has squared norm 1024^2*n to within 7.5e-5 and rows sum to exactly zero
// for k>=1 (constant blocks produce a single DC coefficient).
constexpr int32_t kCos[65] = {
    1448,  1446,  1441,  1432,  1420,  1405,  1386,  1364,  1338,  1309,
    1277,  1242,  1204,  1163,  1119,  1073,  1024,  973,   919,   863,
    805,   745,   683,   619,   554,   488,   420,   352,   283,   212,
    142,   71,    0,     -71,   -142,  -212,  -283,  -352,  -420,  -488,
    -554,  -619,  -683,  -745,  -805,  -863,  -919,  -973,  -1024, -1073,
    -1119, -1163, -1204, -1242, -1277, -1309, -1338, -1364, -1386, -1405,
    -1420, -1432, -1441, -1446, -1448};

constexpr int32_t cos_at(int m) {
  m %= 128;                 // cos(pi*m/64) has period 128 in m
  if (m > 64) m = 128 - m;  // cos(2*pi - t) == cos(t)
  return kCos[m];
}

constexpr int kDcValue = 1024;

template <int N>
struct Basis {
  std::array<std::array<int32_t, N>, N> row{};
  constexpr Basis() {
    for (int i = 0; i < N; ++i) row[0][i] = kDcValue;
    for (int k = 1; k < N; ++k)
      for (int i = 0; i < N; ++i) row[k][i] = cos_at(k * (2 * i + 1) * (32 / N));
  }
};

template <int N>
constexpr Basis<N> kBasis{};

constexpr int log2_of(int n) {
  int m = 0;
  while ((1 << m) < n) ++m;
  return m;
}

template <int N>
void forward_impl(const int32_t* x, int32_t* coeff) {
  const auto& t = kBasis<N>.row;
  constexpr int kShift = 14 + log2_of(N);
  constexpr int64_t kRound = int64_t{1} << (kShift - 1);
  int64_t tmp[N][N];  // tmp = T * X
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      int64_t acc = 0;
      for (int i = 0; i < N; ++i) acc += int64_t{t[k][i]} * x[i * N + j];
      tmp[k][j] = acc;
    }
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) {
      int64_t acc = 0;  // (T * X * T^t)[k][l]
      for (int j = 0; j < N; ++j) acc += tmp[k][j] * t[l][j];
      coeff[k * N + l] = static_cast<int32_t>((acc + kRound) >> kShift);
    }
}

template <int N>
void inverse_impl(const int32_t* coeff, int32_t* x) {
  const auto& t = kBasis<N>.row;
  constexpr int kShift = 26 + log2_of(N);
  constexpr int64_t kRound = int64_t{1} << (kShift - 1);
  int64_t tmp[N][N];  // tmp = T^t * C
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      int64_t acc = 0;
      for (int i = 0; i < N; ++i) acc += int64_t{t[i][k]} * coeff[i * N + j];
      tmp[k][j] = acc;
    }
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      int64_t acc = 0;  // (T^t * C * T)[k][j]
      for (int i = 0; i < N; ++i) acc += tmp[k][i] * t[i][j];
      x[k * N + j] = static_cast<int32_t>((acc + kRound) >> kShift);
    }
}

}  // namespace

void dct_forward(const int32_t* x, int n, int32_t* coeff) {
  switch (n) {
    case 2: forward_impl<2>(x, coeff); break;
    case 4: forward_impl<4>(x, coeff); break;
    case 8: forward_impl<8>(x, coeff); break;
    case 16: forward_impl<16>(x, coeff); break;
    case 32: forward_impl<32>(x, coeff); break;
    default: assert(false && "unsupported transform size");
  }
}

void dct_inverse(const int32_t* coeff, int n, int32_t* x) {
  switch (n) {
    case 2: inverse_impl<2>(coeff, x); break;
    case 4: inverse_impl<4>(coeff, x); break;
    case 8: inverse_impl<8>(coeff, x); break;
    case 16: inverse_impl<16>(coeff, x); break;
    case 32: inverse_impl<32>(coeff, x); break;
    default: assert(false && "unsupported transform size");
  }
}

}  // namespace scc
