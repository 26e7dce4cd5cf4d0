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

#include "lia/common.hpp"

#include <algorithm>
#include <cmath>

namespace lia
{
    std::string_view to_string(Field f)
    {
        return f == Field::Complex ? "complex" : "real";
    }

    Field field_from_string(std::string_view s)
    {
        if (s == "real")
            return Field::Real;
        if (s == "complex")
            return Field::Complex;
        throw ConfigError("unknown field '" + std::string(s) + "' (expected real|complex)");
    }

    double least_squares_slope(std::span<const double> x, std::span<const double> y)
    {
        if (x.size() != y.size() || x.size() < 2)
            throw std::invalid_argument("least_squares_slope: need at least two paired samples");
        const double n = static_cast<double>(x.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx == 0.0)
            throw std::invalid_argument("least_squares_slope: x values are all equal");
        return sxy / sxx;
    }

    double loglog_slope(std::span<const double> x, std::span<const double> y)
    {
        std::vector<double> lx(x.size()), ly(y.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (!(x[i] > 0.0) || !(y[i] > 0.0))
                throw std::invalid_argument("loglog_slope: values must be positive");
            lx[i] = std::log(x[i]);
            ly[i] = std::log(y[i]);
        }
        return least_squares_slope(lx, ly);
    }

    double median(std::vector<double> v)
    {
        if (v.empty())
            throw std::invalid_argument("median of empty sample");
        std::sort(v.begin(), v.end());
        const std::size_t h = v.size() / 2;
        return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    }
} // namespace lia
