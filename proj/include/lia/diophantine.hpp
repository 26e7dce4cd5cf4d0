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

#ifndef LIA_DIOPHANTINE_HPP
#define LIA_DIOPHANTINE_HPP

#include "lia/common.hpp"

#include <cstdint>
#include <vector>

namespace lia
{
    enum class FormMode
    {
        Classical, // independent nearest integer p_i per form
        Hybrid     // one common integer p for all forms
    };

    std::string_view to_string(FormMode m);
    FormMode form_mode_from_string(std::string_view s);

    // Decreasing approximating function.
    struct ApproxFunction
    {
        enum class Kind
        {
            PowerLaw,  // scale * r^(e - eps)
            LogPower,  // scale * r^-a * (ln r)^-b, evaluated at max(r, 2)
            Tabulated  // values[r - 1] for r = 1..size; last value repeated beyond
        };

        Kind kind = Kind::PowerLaw;
        double e = -1.0;
        double eps = 0.0;
        double a = 1.0;
        double b = 0.0;
        double scale = 1.0;
        std::vector<double> values;

        static ApproxFunction power_law(double e, double eps = 0.0, double scale = 1.0);
        static ApproxFunction log_power(double a, double b, double scale = 1.0);
        static ApproxFunction tabulated(std::vector<double> values);

        double operator()(double r) const;
    };

    // X is m x n; real entries in [-1/2, 1/2], complex entries with both parts in [-1/2, 1/2].
    struct LinearFormsPoint
    {
        Field field = Field::Real;
        CMatrix X;

        int m() const { return static_cast<int>(X.rows()); }
        int n() const { return static_cast<int>(X.cols()); }
    };

    LinearFormsPoint sample_forms_point(int m, int n, Field field, Rng &rng);

    // q, p hold Gaussian integers in complex mode (zero imaginary parts otherwise).
    struct ApproxWitness
    {
        std::vector<cplx> q;
        std::vector<cplx> p;   // n entries; all equal in hybrid mode
        double error = 0.0;    // max_i |L_i - p_i|
        double norm = 0.0;     // max |q_k| (modulus in complex mode)
    };

    // Default enumeration cap on the number of q vectors.
    inline constexpr std::uint64_t kFormBudget = 400'000'000ull;

    // Exhaustive minimum of the approximation error over 0 < |q| <= N. Ties go to the smaller
    // norm, then to the lexicographically smaller q. Throws BudgetExceeded or ConfigError
    // (hybrid mode with m + 1 <= n).
    ApproxWitness min_form_distance(const LinearFormsPoint &X, int N, FormMode mode,
                                    std::uint64_t budget = kFormBudget);
    ApproxWitness min_form_distance_serial(const LinearFormsPoint &X, int N, FormMode mode,
                                           std::uint64_t budget = kFormBudget);
    // Independent oracle: reverse enumeration order and a full scan over candidate p.
    ApproxWitness min_form_distance_reference(const LinearFormsPoint &X, int N, FormMode mode);

    struct DirichletResult
    {
        bool holds = false;
        double bound = 0.0;
        ApproxWitness witness;
    };

    // Real hybrid check: error < (m + 2) * 2 * N^(1 - (m + 1) / n).
    DirichletResult dirichlet_hybrid_check(const LinearFormsPoint &X, int N);

    // Calibrated constant c of the complex classical bound error < c * N^(-m/n);
    // 99th percentile of error * N^(m/n) over 2000 draws at (m, n) = (2, 1), N = 10
    // (seed stream 0xCA11B), rounded up to three decimals.
    inline constexpr double kComplexDirichletConstant = 0.628;

    DirichletResult dirichlet_complex_check(const LinearFormsPoint &X, int N,
                                            double c = kComplexDirichletConstant);

    enum class SeriesVariant
    {
        Classical,        // r^(m-1) psi^n
        Hybrid,           // psi^n r^(m-n)
        ComplexClassical, // r^(2m-1) psi^(2n)
        ComplexHybrid     // (r^(m-n) psi^n)^2
    };

    std::string_view to_string(SeriesVariant v);

    struct SeriesResult
    {
        std::vector<double> partial_sums; // index r - 1
        bool convergent = false;
        bool exact_verdict = false;       // true for the power-law and log-power families
        double exponent = 0.0;            // summand ~ r^exponent (ln r)^log_exponent
        double log_exponent = 0.0;
    };

    SeriesResult kg_series(const ApproxFunction &psi, int m, int n, int R_max, SeriesVariant variant);

    // Fraction of uniform samples X with a witness N0 < |q| <= N_max, error < psi(|q|).
    double estimate_approximable_measure(const ApproxFunction &psi, int m, int n, FormMode mode, Field field,
                                         int samples, int N0, int N_max, std::uint64_t seed,
                                         std::uint64_t budget = kFormBudget);

    // C(N) = min over 1 <= |q| <= N of error(q) |q|^w for N = 1..N_max, with w the critical
    // exponent ((m+1)/n - 1 hybrid, m/n classical) plus extra_exponent.
    std::vector<double> badly_approximable_profile(const LinearFormsPoint &X, int N_max, FormMode mode,
                                                   double extra_exponent = 0.0);
    double badly_approximable_constant(const LinearFormsPoint &X, int N_max, FormMode mode,
                                       double extra_exponent = 0.0);

    struct CensusRow
    {
        int r = 0;
        std::int64_t disc = 0;      // q in Z[i], |q| <= r
        std::int64_t pair_shell = 0; // (q1, q2) with max |q_k| in (r, r+1]
        std::int64_t resonant = 0;   // shell pairs times p with |p| < max |q_k|
    };

    std::vector<CensusRow> gaussian_lattice_census(int r_max);
} // namespace lia

#endif
