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

#ifndef LIA_COMMON_HPP
#define LIA_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lia
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;
    using Rng = std::mt19937_64;

    // Scalar field of channel gains and symbols. Complex mode carries two real
    // dimensions per scalar; symbols are then Gaussian integers.
    enum class Field
    {
        Real,
        Complex
    };

    std::string_view to_string(Field f);
    Field field_from_string(std::string_view s);

    inline int real_dims(Field f) { return f == Field::Complex ? 2 : 1; }

    // Error hierarchy. Each class maps to one CLI exit code.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
        virtual int exit_code() const noexcept { return 1; }
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
        int exit_code() const noexcept override { return 2; }
    };

    class BudgetExceeded : public Error
    {
    public:
        using Error::Error;
        int exit_code() const noexcept override { return 3; }
    };

    class InfeasibleError : public Error
    {
    public:
        using Error::Error;
        int exit_code() const noexcept override { return 4; }
    };

    // SplitMix64 finalizer; used to derive independent per-trial streams from one seed.
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // derive_seed(seed, a, b, ...) is a pure function of its arguments.
    template <typename... Ts>
    constexpr std::uint64_t derive_seed(std::uint64_t seed, Ts... streams) noexcept
    {
        std::uint64_t s = mix64(seed);
        ((s = mix64(s ^ mix64(static_cast<std::uint64_t>(streams) + 0x632BE59BD9B4E019ull))), ...);
        return s;
    }

    // Least-squares slope of y against x.
    double least_squares_slope(std::span<const double> x, std::span<const double> y);

    // Least-squares slope of log(y) against log(x); all values must be positive.
    double loglog_slope(std::span<const double> x, std::span<const double> y);

    double median(std::vector<double> v);
} // namespace lia

#endif
