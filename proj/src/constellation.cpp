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

#include "lia/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lia
{
    Constellation build_constellation(int Q, double A)
    {
        if (Q < 1)
            throw std::invalid_argument("build_constellation: Q must be >= 1");
        if (!(A > 0.0))
            throw std::invalid_argument("build_constellation: A must be > 0");

        Constellation c;
        c.half_width = Q;
        c.amplitude = A;
        c.points.reserve(2 * static_cast<std::size_t>(Q) + 1);
        for (int s = -Q; s <= Q; ++s)
            c.points.push_back(A * s);
        return c;
    }

    double encode_antenna(int u, int v, const EncodingPair &pair, double A, int Q)
    {
        if (u < -Q || u > Q || v < -Q || v > Q)
            throw std::out_of_range("encode_antenna: symbol outside {-" + std::to_string(Q) + ".." +
                                    std::to_string(Q) + "}");
        return A * (pair.a * u + pair.b * v);
    }

    bool unique_decomposition_check(const EncodingPair &pair, int Q, double tol)
    {
        if (Q < 1)
            throw std::invalid_argument("unique_decomposition_check: Q must be >= 1");
        if (!(tol > 0.0))
            throw std::invalid_argument("unique_decomposition_check: tol must be > 0");

        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(2 * Q + 1) * (2 * Q + 1));
        for (int u = -Q; u <= Q; ++u)
            for (int v = -Q; v <= Q; ++v)
                values.push_back(pair.a * u + pair.b * v);

        // In sorted order the closest pair is adjacent.
        std::sort(values.begin(), values.end());
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] - values[i - 1] <= tol)
                return false;
        return true;
    }

    double ScalingLaw::amplitude(int Q) const
    {
        return std::pow(static_cast<double>(Q), exponent);
    }

    double ScalingLaw::power(int Q) const
    {
        return std::pow(static_cast<double>(Q), 2.0 * (exponent + 1.0));
    }

    int draw_symbol(Rng &rng, int Q)
    {
        std::uniform_int_distribution<int> dist(-Q, Q);
        return dist(rng);
    }

    cplx draw_symbol(Rng &rng, int Q, Field field)
    {
        const double re = draw_symbol(rng, Q);
        const double im = field == Field::Complex ? draw_symbol(rng, Q) : 0.0;
        return {re, im};
    }

    double symbol_cardinality(int Q, Field field)
    {
        const double per_dim = 2.0 * Q + 1.0;
        return field == Field::Complex ? per_dim * per_dim : per_dim;
    }
} // namespace lia
