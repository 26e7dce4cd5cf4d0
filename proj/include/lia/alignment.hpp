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

#ifndef LIA_ALIGNMENT_HPP
#define LIA_ALIGNMENT_HPP

#include "lia/xchannel.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace lia
{
    // Interference target bases at receivers 1 and 2 of the K x 2 channel.
    struct DirectionSetKx2
    {
        CMatrix I1;
        CMatrix I2;

        static DirectionSetKx2 identity(int M);
    };

    // pu[i] = (H^{i,2})^{-1} I2 carries u^i (for receiver 1).
    // pv[i] = (H^{i,1})^{-1} I1 carries v^i (for receiver 2).
    struct PrecodersKx2
    {
        std::vector<CMatrix> pu;
        std::vector<CMatrix> pv;
    };

    // Throws InfeasibleError if a channel matrix exceeds the topology's condition ceiling.
    PrecodersKx2 make_precoders_kx2(const XTopology &topo, const DirectionSetKx2 &dirs);

    // x^i = A (pu[i] u^i + pv[i] v^i).
    std::vector<CVector> precode_kx2(const XTopology &topo, const DirectionSetKx2 &dirs,
                                     const std::vector<CVector> &u, const std::vector<CVector> &v, double A);
    std::vector<CVector> precode_kx2(const PrecodersKx2 &pre, const std::vector<CVector> &u,
                                     const std::vector<CVector> &v, double A);

    struct AlignmentReport
    {
        double max_residual = 0.0;
        std::vector<double> residuals;                    // one per constraint
        std::vector<int> per_receiver_interference_rank;
        std::vector<std::vector<int>> pairing;            // 2xK only: pairing[i][j], -1 on the diagonal
    };

    nlohmann::json to_json(const AlignmentReport &r);

    // Residual per (transmitter, receiver) is ||H^{i,r} P^i - I^r||_F / ||I^r||_F.
    AlignmentReport verify_alignment_kx2(const XTopology &topo, const DirectionSetKx2 &dirs);
    AlignmentReport verify_alignment_kx2(const XTopology &topo, const DirectionSetKx2 &dirs,
                                         const PrecodersKx2 &pre);

    // Index of the v message that aligns with u^j at receiver i (all zero-based, i != j).
    int pairing_2xk(int K, int i, int j);
    std::vector<std::vector<int>> pairing_table_2xk(int K);

    struct DirectionSet2xK
    {
        std::vector<CMatrix> rho;
        std::vector<CMatrix> zeta;
        std::vector<std::vector<int>> pairing;
    };

    // One independent cycle of the constraint graph, closed by the edge
    // zeta^{s} = T_i rho^{j} with T_i = (H^{2,i})^{-1} H^{1,i}.
    struct ConstraintCycle
    {
        int receiver = 0;
        int rho_index = 0;
        int zeta_index = 0;
        std::vector<std::string> path; // node labels around the cycle
        CMatrix product;               // maps the component generator to itself when aligned
        std::vector<cplx> eigenvalues;
    };

    struct ChainSolution
    {
        DirectionSet2xK dirs;
        std::vector<ConstraintCycle> cycles;
        AlignmentReport report;
        bool real_spectrum = true; // false if a real-mode cycle has no real eigen-direction
    };

    // Best-effort solve: generators from cycle eigenvectors (a seeded generic matrix for acyclic
    // components), propagated along a spanning forest.
    // Never throws for infeasibility; inspect report.max_residual and real_spectrum.
    ChainSolution solve_direction_chain(const XTopology &topo);

    // Throws InfeasibleError naming the offending cycle when the residual exceeds tol or
    // a real-mode cycle has complex spectrum.
    DirectionSet2xK design_directions_2xk(const XTopology &topo, double tol = 1e-9);

    // Residual per constraint is ||H^{1,i} rho^j - H^{2,i} zeta^s||_F / ||H^{1,i} rho^j||_F.
    AlignmentReport verify_alignment_2xk(const XTopology &topo, const DirectionSet2xK &dirs);

    struct InterferenceBundle
    {
        int u_index = 0;  // u^j
        int v_index = 0;  // v^{sigma_i(j)}
        CMatrix gain;     // H^{1,i} rho^j
    };

    // Noiseless receive model at receiver i (unit amplitude):
    // y = desired_u u^i + desired_v v^i + sum_b gain_b (u^{j_b} + v^{s_b}).
    struct ReceiverModel2xK
    {
        int receiver = 0;
        CMatrix desired_u;
        CMatrix desired_v;
        std::vector<InterferenceBundle> bundles;

        int interference_coordinates() const;
        std::vector<CVector> bundle_values(const std::vector<CVector> &u, const std::vector<CVector> &v) const;
        CVector signal(const std::vector<CVector> &u, const std::vector<CVector> &v, double A) const;
    };

    std::vector<ReceiverModel2xK> received_model_2xk(const XTopology &topo, const DirectionSet2xK &dirs);

    // x^1 = A sum_j rho^j u^j, x^2 = A sum_j zeta^j v^j.
    std::vector<CVector> precode_2xk(const DirectionSet2xK &dirs, const std::vector<CVector> &u,
                                     const std::vector<CVector> &v, double A);

    // Per-user one-antenna signals A * u for the 3-user SIMO MAC. Symbols must lie in {-Q..Q}
    // (both parts in complex mode).
    std::vector<CVector> build_mac_streams(const XTopology &topo, std::span<const cplx> symbols, int Q, double A);
} // namespace lia

#endif
