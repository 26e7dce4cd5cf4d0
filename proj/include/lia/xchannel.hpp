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

#ifndef LIA_XCHANNEL_HPP
#define LIA_XCHANNEL_HPP

#include "lia/common.hpp"

#include <json.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace lia
{
    // KbyTwo: K transmitters, 2 receivers, M antennas everywhere.
    // TwoByK: 2 transmitters, K receivers, M antennas everywhere.
    // SimoMac: 3 single-antenna users, one receiver with 2 antennas.
    enum class TopologyKind
    {
        KbyTwo,
        TwoByK,
        SimoMac
    };

    std::string_view to_string(TopologyKind k);
    TopologyKind topology_kind_from_string(std::string_view s);

    struct ChannelMatrix
    {
        CMatrix gains; // rows: receive antennas, cols: transmit antennas
        double condition_number = 1.0;
    };

    double condition_number(const CMatrix &m);

    // Fully connected network; H(tx, rx) is the gain matrix from transmitter tx to receiver rx.
    // Indices are zero-based.
    struct XTopology
    {
        TopologyKind kind = TopologyKind::KbyTwo;
        int K = 2;
        int M = 1;
        Field field = Field::Real;
        std::uint64_t seed = 0;
        double cond_ceiling = 1e6;
        std::vector<ChannelMatrix> links; // row-major in (tx, rx)

        int num_tx() const;
        int num_rx() const;
        int tx_antennas() const;
        int rx_antennas() const;

        const CMatrix &H(int tx, int rx) const;
        CMatrix &H(int tx, int rx);
    };

    // Draws i.i.d. standard normal entries (independent real and imaginary parts in complex
    // mode), resampling any matrix whose condition number exceeds cond_ceiling.
    // Throws ConfigError when 100 resamples in a row fail or the shape is invalid.
    XTopology sample_topology(TopologyKind kind, int K, int M, Field field, std::uint64_t seed,
                              double cond_ceiling = 1e6);

    struct NoiseModel
    {
        double variance = 1.0; // per real dimension
    };

    // y[rx] = sum_tx H(tx, rx) x[tx] + z[rx].
    std::vector<CVector> transmit(const XTopology &topo, const std::vector<CVector> &x, const NoiseModel &noise,
                                  Rng &rng);
    std::vector<CVector> transmit(const XTopology &topo, const std::vector<CVector> &x, const NoiseModel &noise,
                                  std::uint64_t seed);

    // Adds i.i.d. Gaussian noise of the given per-real-dimension variance in place.
    void add_noise(CVector &y, Field field, double variance, Rng &rng);

    nlohmann::json to_json(const XTopology &topo);
    XTopology topology_from_json(const nlohmann::json &j);
} // namespace lia

#endif
