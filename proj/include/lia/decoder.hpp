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

#ifndef LIA_DECODER_HPP
#define LIA_DECODER_HPP

#include "lia/common.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lia
{
    // Receive-side gains of one message stream. Column 0 is the desired symbol, columns 1..
    // are the other variables (other desired symbols and interference bundles).
    // Each variable c takes integer values in [-half_range[c], half_range[c]] (both parts in complex mode).
    struct GainTable
    {
        Field field = Field::Real;
        CMatrix coeffs;                // antennas x variables, desired column is all ones after normalization
        std::vector<int> half_range;   // per variable
        RVector noise_variance;        // per antenna, after normalization
        CVector scale;                 // per-antenna target coefficient that was divided out
        double raw_noise_variance = 1.0;
    };

    // Divides each antenna row by its coefficient on variable `target` and moves that variable
    // to column 0. Throws InfeasibleError on a zero target coefficient.
    GainTable normalize_for_target(const CMatrix &raw, int target, double noise_variance,
                                   const std::vector<int> &half_range, Field field);

    // Real embedding of a receive constellation. Complex scalars map to (re, im) coordinates, so
    // a complex variable owns two orthogonal, equal-norm columns.
    struct LatticeModel
    {
        RMatrix basis;                // real receive dims x real coordinates
        std::vector<int> half_range;  // per coordinate
        int target_coords = 1;        // leading coordinates carrying the desired symbol
        int tail_coords = 1;          // trailing coordinates solved in closed form
        double sigma = 1.0;           // noise std per real dimension

        int dims() const { return static_cast<int>(basis.rows()); }
        int coords() const { return static_cast<int>(basis.cols()); }
    };

    // Whitens a normalized gain table back to an isotropic receive space.
    LatticeModel make_lattice(const GainTable &g);

    // Lattice straight from raw coefficients; target is placed first.
    LatticeModel make_lattice(const CMatrix &raw, int target, double noise_variance,
                              const std::vector<int> &half_range, Field field);

    RVector real_embedding(const CVector &y, Field field);

    struct ReceivedConstellation
    {
        std::vector<RVector> points;
        std::vector<std::vector<std::vector<int>>> provenance; // per point, sorted coordinate tuples
        std::vector<std::vector<std::vector<int>>> targets;    // per point, sorted distinct target tuples
        double d_min = 0.0;
        int target_coords = 1;
    };

    // Exhaustive noiseless receive set. Throws BudgetExceeded beyond max_points.
    ReceivedConstellation enumerate_received(const LatticeModel &lat, std::uint64_t max_points = 10'000'000);

    bool check_property_gamma(const ReceivedConstellation &rc);

    struct DecodeOutcome
    {
        std::vector<int> decoded;  // target coordinates
        bool correct = false;
        double distance = 0.0;
    };

    // Nearest point; ties go to the lexicographically smallest provenance tuple.
    DecodeOutcome hard_decode(const RVector &y, const ReceivedConstellation &rc,
                              const std::optional<std::vector<int>> &truth = std::nullopt);

    struct NearestPoint
    {
        std::vector<int> coords;
        double distance = 0.0;
    };

    // Closed-form kernels over the box ranges of a lattice model.
    // min_distance: smallest distance between receive points with different target coordinates.
    double min_distance(const LatticeModel &lat);
    double min_distance_serial(const LatticeModel &lat);
    double min_distance_bruteforce(const LatticeModel &lat);

    // Nearest lattice point to y; lexicographic tie rule over the coordinate tuple.
    NearestPoint nearest_point(const LatticeModel &lat, const RVector &y);
    NearestPoint nearest_point_bruteforce(const LatticeModel &lat, const RVector &y);

    // Number of inner evaluations each kernel performs; used for budget checks.
    double min_distance_cost(const LatticeModel &lat);
    double nearest_point_cost(const LatticeModel &lat);

    // Decodes the desired symbol of y by joint nearest-point search over all antennas.
    DecodeOutcome joint_decode_message(const RVector &y, const LatticeModel &lat,
                                       const std::optional<std::vector<int>> &truth = std::nullopt);

    struct ErrorBound
    {
        double exponential = 1.0; // exp(-d^2 / (8 sigma^2))
        double q_function = 1.0;  // Q(d / (2 sigma))
    };

    ErrorBound error_probability_bound(double d_min, double sigma);

    // log2(card) - 1 - P_e log2(card); may be negative.
    double rate_lower_bound(double cardinality, double p_error);
    double reported_rate(double cardinality, double p_error);

    // d_min > sqrt(N), strict.
    bool noise_removal_check(double d_min, double noise_variance);
} // namespace lia

#endif
