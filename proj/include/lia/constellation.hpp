// SPDX-License-Identifier: Apache-2.0
//
// lia: layered interference alignment simulator for MIMO X channels
// Copyright (C) 2026 The lia authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LIA_CONSTELLATION_HPP
#define LIA_CONSTELLATION_HPP

#include "lia/common.hpp"

#include <vector>

namespace lia
{
    // Single-layer integer constellation A * {-Q, ..., Q}.
    struct Constellation
    {
        int half_width = 0;    // Q
        double amplitude = 0;  // A
        std::vector<double> points;

        std::size_t size() const { return points.size(); }
        double max_magnitude() const { return amplitude * half_width; }
        double max_power() const { return max_magnitude() * max_magnitude(); }
    };

    // Throws std::invalid_argument for Q < 1 or A <= 0.
    Constellation build_constellation(int Q, double A);

    // Per-antenna weights of the two destination messages carried by one scalar.
    struct EncodingPair
    {
        double a = 1.0;
        double b = 1.0;
    };

    // A * (a*u + b*v); u and v must lie in {-Q..Q}.
    double encode_antenna(int u, int v, const EncodingPair &pair, double A, int Q);

    // Exhaustive check that the (2Q+1)^2 values a*u + b*v are pairwise separated by more than tol.
    bool unique_decomposition_check(const EncodingPair &pair, int Q, double tol = 1e-9);

    // Amplitude law A = Q^k and the resulting power scale P ~ Q^{2(k+1)}.
    struct ScalingLaw
    {
        double exponent = 1.0; // k

        double amplitude(int Q) const;
        double power(int Q) const;
    };

    // Uniform draw from {-Q..Q}.
    int draw_symbol(Rng &rng, int Q);

    // Uniform draw of a symbol in the given field: real symbols have zero imaginary part,
    // complex symbols are Gaussian integers with both parts in {-Q..Q}.
    cplx draw_symbol(Rng &rng, int Q, Field field);

    // Number of symbols per stream: 2Q+1 (real) or (2Q+1)^2 (complex).
    double symbol_cardinality(int Q, Field field);
} // namespace lia

#endif
