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

#include "lia/xchannel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lia
{
    std::string_view to_string(TopologyKind k)
    {
        switch (k)
        {
        case TopologyKind::KbyTwo:
            return "kx2";
        case TopologyKind::TwoByK:
            return "2xk";
        case TopologyKind::SimoMac:
            return "mac";
        }
        return "?";
    }

    TopologyKind topology_kind_from_string(std::string_view s)
    {
        if (s == "kx2")
            return TopologyKind::KbyTwo;
        if (s == "2xk")
            return TopologyKind::TwoByK;
        if (s == "mac")
            return TopologyKind::SimoMac;
        throw ConfigError("unknown topology kind '" + std::string(s) + "' (expected kx2|2xk|mac)");
    }

    double condition_number(const CMatrix &m)
    {
        Eigen::JacobiSVD<CMatrix> svd(m);
        const auto &s = svd.singularValues();
        if (s.size() == 0)
            return 1.0;
        const double lo = s(s.size() - 1);
        if (lo == 0.0)
            return std::numeric_limits<double>::infinity();
        return s(0) / lo;
    }

    int XTopology::num_tx() const
    {
        switch (kind)
        {
        case TopologyKind::KbyTwo:
            return K;
        case TopologyKind::TwoByK:
            return 2;
        case TopologyKind::SimoMac:
            return 3;
        }
        return 0;
    }

    int XTopology::num_rx() const
    {
        switch (kind)
        {
        case TopologyKind::KbyTwo:
            return 2;
        case TopologyKind::TwoByK:
            return K;
        case TopologyKind::SimoMac:
            return 1;
        }
        return 0;
    }

    int XTopology::tx_antennas() const { return kind == TopologyKind::SimoMac ? 1 : M; }
    int XTopology::rx_antennas() const { return kind == TopologyKind::SimoMac ? 2 : M; }

    const CMatrix &XTopology::H(int tx, int rx) const
    {
        return links.at(static_cast<std::size_t>(tx * num_rx() + rx)).gains;
    }

    CMatrix &XTopology::H(int tx, int rx)
    {
        return links.at(static_cast<std::size_t>(tx * num_rx() + rx)).gains;
    }

    namespace
    {
        CMatrix draw_matrix(int rows, int cols, Field field, Rng &rng)
        {
            std::normal_distribution<double> n01(0.0, 1.0);
            CMatrix m(rows, cols);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c)
                {
                    const double re = n01(rng);
                    const double im = field == Field::Complex ? n01(rng) : 0.0;
                    m(r, c) = {re, im};
                }
            return m;
        }

        void validate_shape(TopologyKind kind, int K, int M)
        {
            if (kind == TopologyKind::SimoMac)
                return;
            if (K < 2)
                throw ConfigError("topology needs K >= 2 (got " + std::to_string(K) + ")");
            if (M < 1)
                throw ConfigError("topology needs M >= 1 (got " + std::to_string(M) + ")");
        }
    } // namespace

    XTopology sample_topology(TopologyKind kind, int K, int M, Field field, std::uint64_t seed, double cond_ceiling)
    {
        validate_shape(kind, K, M);
        if (!(cond_ceiling >= 1.0))
            throw ConfigError("condition-number ceiling must be >= 1");

        XTopology topo;
        topo.kind = kind;
        topo.K = kind == TopologyKind::SimoMac ? 3 : K;
        topo.M = kind == TopologyKind::SimoMac ? 1 : M;
        topo.field = field;
        topo.seed = seed;
        topo.cond_ceiling = cond_ceiling;

        Rng rng(seed);
        const int n_links = topo.num_tx() * topo.num_rx();
        topo.links.reserve(static_cast<std::size_t>(n_links));
        for (int l = 0; l < n_links; ++l)
        {
            ChannelMatrix cm;
            int attempt = 0;
            for (;; ++attempt)
            {
                if (attempt == 100)
                    throw ConfigError("sample_topology: 100 resamples exceeded condition ceiling " +
                                      std::to_string(cond_ceiling));
                cm.gains = draw_matrix(topo.rx_antennas(), topo.tx_antennas(), field, rng);
                cm.condition_number = condition_number(cm.gains);
                if (cm.condition_number <= cond_ceiling)
                    break;
            }
            topo.links.push_back(std::move(cm));
        }
        return topo;
    }

    void add_noise(CVector &y, Field field, double variance, Rng &rng)
    {
        if (variance < 0.0)
            throw std::invalid_argument("noise variance must be >= 0");
        if (variance == 0.0)
            return;
        std::normal_distribution<double> n(0.0, std::sqrt(variance));
        for (Eigen::Index i = 0; i < y.size(); ++i)
        {
            const double re = n(rng);
            const double im = field == Field::Complex ? n(rng) : 0.0;
            y(i) += cplx(re, im);
        }
    }

    std::vector<CVector> transmit(const XTopology &topo, const std::vector<CVector> &x, const NoiseModel &noise,
                                  Rng &rng)
    {
        if (static_cast<int>(x.size()) != topo.num_tx())
            throw std::invalid_argument("transmit: expected " + std::to_string(topo.num_tx()) +
                                        " transmit vectors, got " + std::to_string(x.size()));
        for (const auto &xi : x)
            if (xi.size() != topo.tx_antennas())
                throw std::invalid_argument("transmit: transmit vector has wrong dimension");

        std::vector<CVector> y;
        y.reserve(static_cast<std::size_t>(topo.num_rx()));
        for (int rx = 0; rx < topo.num_rx(); ++rx)
        {
            CVector yr = CVector::Zero(topo.rx_antennas());
            for (int tx = 0; tx < topo.num_tx(); ++tx)
                yr += topo.H(tx, rx) * x[static_cast<std::size_t>(tx)];
            add_noise(yr, topo.field, noise.variance, rng);
            y.push_back(std::move(yr));
        }
        return y;
    }

    std::vector<CVector> transmit(const XTopology &topo, const std::vector<CVector> &x, const NoiseModel &noise,
                                  std::uint64_t seed)
    {
        Rng rng(seed);
        return transmit(topo, x, noise, rng);
    }

    nlohmann::json to_json(const XTopology &topo)
    {
        nlohmann::json links = nlohmann::json::array();
        for (int tx = 0; tx < topo.num_tx(); ++tx)
            for (int rx = 0; rx < topo.num_rx(); ++rx)
            {
                const CMatrix &h = topo.H(tx, rx);
                std::vector<double> re, im;
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                    for (Eigen::Index c = 0; c < h.cols(); ++c)
                    {
                        re.push_back(h(r, c).real());
                        im.push_back(h(r, c).imag());
                    }
                nlohmann::json l = {{"tx", tx}, {"rx", rx}, {"rows", h.rows()}, {"cols", h.cols()}, {"re", re}};
                if (topo.field == Field::Complex)
                    l["im"] = im;
                links.push_back(std::move(l));
            }
        return {{"kind", to_string(topo.kind)},
                {"field", to_string(topo.field)},
                {"K", topo.K},
                {"M", topo.M},
                {"seed", topo.seed},
                {"cond_ceiling", topo.cond_ceiling},
                {"links", std::move(links)}};
    }

    XTopology topology_from_json(const nlohmann::json &j)
    {
        try
        {
            XTopology topo;
            topo.kind = topology_kind_from_string(j.at("kind").get<std::string>());
            topo.field = field_from_string(j.at("field").get<std::string>());
            topo.K = j.at("K").get<int>();
            topo.M = j.at("M").get<int>();
            topo.seed = j.at("seed").get<std::uint64_t>();
            topo.cond_ceiling = j.value("cond_ceiling", 1e6);
            topo.links.resize(static_cast<std::size_t>(topo.num_tx() * topo.num_rx()));
            for (const auto &l : j.at("links"))
            {
                const int tx = l.at("tx").get<int>(), rx = l.at("rx").get<int>();
                const int rows = l.at("rows").get<int>(), cols = l.at("cols").get<int>();
                if (tx < 0 || tx >= topo.num_tx() || rx < 0 || rx >= topo.num_rx())
                    throw ConfigError("topology json: link index out of range");
                if (rows != topo.rx_antennas() || cols != topo.tx_antennas())
                    throw ConfigError("topology json: link shape mismatch");
                const auto re = l.at("re").get<std::vector<double>>();
                const auto im = l.contains("im") ? l.at("im").get<std::vector<double>>()
                                                 : std::vector<double>(re.size(), 0.0);
                if (re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size())
                    throw ConfigError("topology json: entry count mismatch");
                ChannelMatrix cm;
                cm.gains.resize(rows, cols);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c)
                    {
                        const auto k = static_cast<std::size_t>(r * cols + c);
                        cm.gains(r, c) = {re[k], im[k]};
                    }
                cm.condition_number = condition_number(cm.gains);
                topo.links[static_cast<std::size_t>(tx * topo.num_rx() + rx)] = std::move(cm);
            }
            for (const auto &cm : topo.links)
                if (cm.gains.size() == 0)
                    throw ConfigError("topology json: missing link");
            return topo;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("topology json: ") + e.what());
        }
    }
} // namespace lia
