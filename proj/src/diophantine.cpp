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

#include "lia/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lia
{
    std::string_view to_string(FormMode m) { return m == FormMode::Classical ? "classical" : "hybrid"; }

    FormMode form_mode_from_string(std::string_view s)
    {
        if (s == "classical")
            return FormMode::Classical;
        if (s == "hybrid")
            return FormMode::Hybrid;
        throw ConfigError("unknown form mode '" + std::string(s) + "' (expected classical|hybrid)");
    }

    std::string_view to_string(SeriesVariant v)
    {
        switch (v)
        {
        case SeriesVariant::Classical:
            return "classical";
        case SeriesVariant::Hybrid:
            return "hybrid";
        case SeriesVariant::ComplexClassical:
            return "complex_classical";
        case SeriesVariant::ComplexHybrid:
            return "complex_hybrid";
        }
        return "?";
    }

    ApproxFunction ApproxFunction::power_law(double e, double eps, double scale)
    {
        ApproxFunction f;
        f.kind = Kind::PowerLaw;
        f.e = e;
        f.eps = eps;
        f.scale = scale;
        return f;
    }

    ApproxFunction ApproxFunction::log_power(double a, double b, double scale)
    {
        ApproxFunction f;
        f.kind = Kind::LogPower;
        f.a = a;
        f.b = b;
        f.scale = scale;
        return f;
    }

    ApproxFunction ApproxFunction::tabulated(std::vector<double> values)
    {
        if (values.empty())
            throw std::invalid_argument("tabulated approximating function needs values");
        for (double v : values)
            if (!(v > 0))
                throw std::invalid_argument("tabulated approximating function must be positive");
        ApproxFunction f;
        f.kind = Kind::Tabulated;
        f.values = std::move(values);
        return f;
    }

    double ApproxFunction::operator()(double r) const
    {
        switch (kind)
        {
        case Kind::PowerLaw:
            return scale * std::pow(r, e - eps);
        case Kind::LogPower:
        {
            const double rr = std::max(r, 2.0);
            return scale * std::pow(rr, -a) * std::pow(std::log(rr), -b);
        }
        case Kind::Tabulated:
        {
            const auto idx = static_cast<std::size_t>(std::clamp(std::ceil(r), 1.0, static_cast<double>(values.size())));
            return values[idx - 1];
        }
        }
        return 0.0;
    }

    LinearFormsPoint sample_forms_point(int m, int n, Field field, Rng &rng)
    {
        if (m < 1 || n < 1)
            throw std::invalid_argument("sample_forms_point: m, n >= 1");
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        LinearFormsPoint X;
        X.field = field;
        X.X.resize(m, n);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i)
            {
                const double re = u(rng);
                const double im = field == Field::Complex ? u(rng) : 0.0;
                X.X(k, i) = {re, im};
            }
        return X;
    }

    namespace
    {
        struct Candidate
        {
            double error = std::numeric_limits<double>::infinity();
            long long norm2 = 0;
            std::vector<int> q; // (re, im) per coordinate in complex mode
            std::vector<cplx> p;
        };

        bool better(const Candidate &a, const Candidate &b)
        {
            if (a.error != b.error)
                return a.error < b.error;
            if (a.norm2 != b.norm2)
                return a.norm2 < b.norm2;
            return a.q < b.q;
        }

        struct FormEvaluator
        {
            const LinearFormsPoint &X;
            FormMode mode;
            int m, n;
            bool complex;
            std::vector<cplx> L;
            std::vector<cplx> p;

            FormEvaluator(const LinearFormsPoint &x, FormMode md)
                : X(x), mode(md), m(x.m()), n(x.n()), complex(x.field == Field::Complex),
                  L(static_cast<std::size_t>(x.n())), p(static_cast<std::size_t>(x.n()))
            {
            }

            // L_i = sum_k q_k x_{k,i}, summed in k order.
            void forms(const cplx *q)
            {
                for (int i = 0; i < n; ++i)
                {
                    if (complex)
                    {
                        cplx s(0.0, 0.0);
                        for (int k = 0; k < m; ++k)
                            s += q[k] * X.X(k, i);
                        L[static_cast<std::size_t>(i)] = s;
                    }
                    else
                    {
                        double s = 0.0;
                        for (int k = 0; k < m; ++k)
                            s += q[k].real() * X.X(k, i).real();
                        L[static_cast<std::size_t>(i)] = {s, 0.0};
                    }
                }
            }

            double sup_error(cplx pc) const
            {
                double e = 0;
                for (const auto &l : L)
                    e = std::max(e, complex ? std::abs(l - pc) : std::abs(l.real() - pc.real()));
                return e;
            }

            // Optimal p for the current forms; smallest p on ties.
            double optimal(const cplx *q)
            {
                forms(q);
                if (mode == FormMode::Classical)
                {
                    double err = 0;
                    for (int i = 0; i < n; ++i)
                    {
                        const cplx l = L[static_cast<std::size_t>(i)];
                        auto pick = [](double x) {
                            const double f = std::floor(x);
                            return std::abs(x - (f + 1.0)) < std::abs(x - f) ? f + 1.0 : f;
                        };
                        const cplx pi(pick(l.real()), complex ? pick(l.imag()) : 0.0);
                        p[static_cast<std::size_t>(i)] = pi;
                        err = std::max(err, complex ? std::abs(l - pi) : std::abs(l.real() - pi.real()));
                    }
                    return err;
                }
                if (!complex)
                {
                    double lo = L[0].real(), hi = L[0].real();
                    for (const auto &l : L)
                    {
                        lo = std::min(lo, l.real());
                        hi = std::max(hi, l.real());
                    }
                    const double c = std::floor((hi + lo) / 2.0 + 0.5);
                    double best = std::numeric_limits<double>::infinity(), bp = c;
                    for (double cand = c - 1.0; cand <= c + 1.0; cand += 1.0)
                    {
                        const double e = sup_error({cand, 0.0});
                        if (e < best)
                        {
                            best = e;
                            bp = cand;
                        }
                    }
                    std::fill(p.begin(), p.end(), cplx(bp, 0.0));
                    return best;
                }
                // complex hybrid: any better p lies within the current error of L_1
                const cplx l1 = L[0];
                const cplx c0(std::floor(l1.real() + 0.5), std::floor(l1.imag() + 0.5));
                const double B = sup_error(c0) * (1.0 + 1e-12);
                double best = std::numeric_limits<double>::infinity();
                cplx bp = c0;
                for (double re = std::ceil(l1.real() - B); re <= std::floor(l1.real() + B); re += 1.0)
                    for (double im = std::ceil(l1.imag() - B); im <= std::floor(l1.imag() + B); im += 1.0)
                    {
                        const cplx cand(re, im);
                        if (std::abs(l1 - cand) > B)
                            continue;
                        const double e = sup_error(cand);
                        if (e < best)
                        {
                            best = e;
                            bp = cand;
                        }
                    }
                std::fill(p.begin(), p.end(), bp);
                return best;
            }
        };

        // Per-coordinate candidates in ascending (re, im) order.
        std::vector<cplx> coordinate_values(int N, bool complex)
        {
            std::vector<cplx> out;
            for (int a = -N; a <= N; ++a)
            {
                if (!complex)
                {
                    out.emplace_back(a, 0);
                    continue;
                }
                for (int b = -N; b <= N; ++b)
                    if (a * a + b * b <= N * N)
                        out.emplace_back(a, b);
            }
            return out;
        }

        long long norm2_of(cplx z) { return std::llround(std::norm(z)); }

        void validate(const LinearFormsPoint &X, int N, FormMode mode)
        {
            if (N < 1)
                throw std::invalid_argument("min_form_distance: N must be >= 1");
            if (X.m() < 1 || X.n() < 1)
                throw std::invalid_argument("min_form_distance: empty matrix");
            if (mode == FormMode::Hybrid && X.m() + 1 <= X.n())
                throw ConfigError("hybrid mode requires m + 1 > n (got m=" + std::to_string(X.m()) +
                                  ", n=" + std::to_string(X.n()) + ")");
        }

        Candidate make_candidate(const FormEvaluator &ev, const cplx *q, double err)
        {
            Candidate c;
            c.error = err;
            for (int k = 0; k < ev.m; ++k)
            {
                c.norm2 = std::max(c.norm2, norm2_of(q[k]));
                c.q.push_back(static_cast<int>(q[k].real()));
                if (ev.complex)
                    c.q.push_back(static_cast<int>(q[k].imag()));
            }
            c.p = ev.p;
            return c;
        }

        ApproxWitness to_witness(const Candidate &c, int m, bool complex)
        {
            ApproxWitness w;
            w.error = c.error;
            w.norm = std::sqrt(static_cast<double>(c.norm2));
            w.p = c.p;
            for (int k = 0; k < m; ++k)
                w.q.emplace_back(complex ? c.q[static_cast<std::size_t>(2 * k)] : c.q[static_cast<std::size_t>(k)],
                                 complex ? c.q[static_cast<std::size_t>(2 * k + 1)] : 0);
            return w;
        }

        // Scans all q whose first coordinate is vals[first]; q = 0 is skipped.
        void scan_slice(FormEvaluator &ev, const std::vector<cplx> &vals, std::size_t first, Candidate &best)
        {
            const int m = ev.m;
            std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
            idx[0] = first;
            std::vector<cplx> q(static_cast<std::size_t>(m));
            for (;;)
            {
                bool zero = true;
                for (int k = 0; k < m; ++k)
                {
                    q[static_cast<std::size_t>(k)] = vals[idx[static_cast<std::size_t>(k)]];
                    zero = zero && q[static_cast<std::size_t>(k)] == cplx(0.0, 0.0);
                }
                if (!zero)
                {
                    const double err = ev.optimal(q.data());
                    if (err <= best.error)
                    {
                        Candidate c = make_candidate(ev, q.data(), err);
                        if (better(c, best))
                            best = std::move(c);
                    }
                }
                int k = m - 1;
                for (; k >= 1; --k)
                {
                    auto &i = idx[static_cast<std::size_t>(k)];
                    if (++i < vals.size())
                        break;
                    i = 0;
                }
                if (k < 1)
                    break;
            }
        }

        ApproxWitness min_form_impl(const LinearFormsPoint &X, int N, FormMode mode, std::uint64_t budget,
                                    bool parallel)
        {
            validate(X, N, mode);
            const bool complex = X.field == Field::Complex;
            const auto vals = coordinate_values(N, complex);
            const double count = std::pow(static_cast<double>(vals.size()), X.m());
            if (count > static_cast<double>(budget))
                throw BudgetExceeded("min_form_distance: " + std::to_string(static_cast<long long>(count)) +
                                     " vectors q exceed the budget of " + std::to_string(budget));

            std::vector<Candidate> per_slice(vals.size());
            const auto n_slices = static_cast<std::ptrdiff_t>(vals.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
            for (std::ptrdiff_t s = 0; s < n_slices; ++s)
            {
                FormEvaluator ev(X, mode);
                scan_slice(ev, vals, static_cast<std::size_t>(s), per_slice[static_cast<std::size_t>(s)]);
            }
            Candidate best;
            for (auto &c : per_slice)
                if (better(c, best))
                    best = std::move(c);
            return to_witness(best, X.m(), complex);
        }
    } // namespace

    ApproxWitness min_form_distance(const LinearFormsPoint &X, int N, FormMode mode, std::uint64_t budget)
    {
        return min_form_impl(X, N, mode, budget, true);
    }

    ApproxWitness min_form_distance_serial(const LinearFormsPoint &X, int N, FormMode mode, std::uint64_t budget)
    {
        return min_form_impl(X, N, mode, budget, false);
    }

    ApproxWitness min_form_distance_reference(const LinearFormsPoint &X, int N, FormMode mode)
    {
        validate(X, N, mode);
        const int m = X.m(), n = X.n();
        const bool complex = X.field == Field::Complex;
        // |L_i| <= m N sqrt(2) / 2, so every useful p lies in [-P, P]
        const int P = static_cast<int>(std::ceil(m * N * 0.75)) + 1;

        FormEvaluator ev(X, mode);
        Candidate best;
        std::vector<cplx> q(static_cast<std::size_t>(m));
        std::vector<int> re(static_cast<std::size_t>(m), N), im(static_cast<std::size_t>(m), complex ? N : 0);

        auto abs_err = [complex](cplx l, cplx p) { return complex ? std::abs(l - p) : std::abs(l.real() - p.real()); };

        for (;;)
        {
            bool inside = true, zero = true;
            for (int k = 0; k < m; ++k)
            {
                const auto i = static_cast<std::size_t>(k);
                q[i] = cplx(re[i], im[i]);
                inside = inside && re[i] * re[i] + im[i] * im[i] <= N * N;
                zero = zero && re[i] == 0 && im[i] == 0;
            }
            if (inside && !zero)
            {
                ev.forms(q.data());
                const int Pim = complex ? P : 0;
                double err = 0;
                if (mode == FormMode::Classical)
                {
                    for (int i = 0; i < n; ++i)
                    {
                        double bi = std::numeric_limits<double>::infinity();
                        cplx bp;
                        for (int a = -P; a <= P; ++a)
                            for (int b = -Pim; b <= Pim; ++b)
                            {
                                const double e = abs_err(ev.L[static_cast<std::size_t>(i)], cplx(a, b));
                                if (e < bi)
                                {
                                    bi = e;
                                    bp = cplx(a, b);
                                }
                            }
                        ev.p[static_cast<std::size_t>(i)] = bp;
                        err = std::max(err, bi);
                    }
                }
                else
                {
                    err = std::numeric_limits<double>::infinity();
                    cplx bp;
                    for (int a = -P; a <= P; ++a)
                        for (int b = -Pim; b <= Pim; ++b)
                        {
                            double e = 0;
                            for (const auto &l : ev.L)
                                e = std::max(e, abs_err(l, cplx(a, b)));
                            if (e < err)
                            {
                                err = e;
                                bp = cplx(a, b);
                            }
                        }
                    std::fill(ev.p.begin(), ev.p.end(), bp);
                }
                Candidate c = make_candidate(ev, q.data(), err);
                if (better(c, best))
                    best = std::move(c);
            }
            // descending odometer: (re, im) of the first coordinate slowest
            int k = 2 * m - 1;
            for (; k >= 0; --k)
            {
                auto &v = (k % 2 == 0) ? re[static_cast<std::size_t>(k / 2)] : im[static_cast<std::size_t>(k / 2)];
                const int lim = (k % 2 == 0 || complex) ? N : 0;
                if (v > -lim)
                {
                    --v;
                    break;
                }
                v = lim;
            }
            if (k < 0)
                break;
        }
        return to_witness(best, m, complex);
    }

    DirichletResult dirichlet_hybrid_check(const LinearFormsPoint &X, int N)
    {
        if (X.field != Field::Real)
            throw std::invalid_argument("dirichlet_hybrid_check: real forms expected");
        const int m = X.m(), n = X.n();
        DirichletResult r;
        r.witness = min_form_distance(X, N, FormMode::Hybrid);
        r.bound = (m + 2) * 2.0 * std::pow(static_cast<double>(N), 1.0 - static_cast<double>(m + 1) / n);
        r.holds = r.witness.error < r.bound;
        return r;
    }

    DirichletResult dirichlet_complex_check(const LinearFormsPoint &X, int N, double c)
    {
        if (X.field != Field::Complex)
            throw std::invalid_argument("dirichlet_complex_check: complex forms expected");
        DirichletResult r;
        r.witness = min_form_distance(X, N, FormMode::Classical);
        r.bound = c * std::pow(static_cast<double>(N), -static_cast<double>(X.m()) / X.n());
        r.holds = r.witness.error < r.bound;
        return r;
    }

    SeriesResult kg_series(const ApproxFunction &psi, int m, int n, int R_max, SeriesVariant variant)
    {
        if (R_max < 1 || m < 1 || n < 1)
            throw std::invalid_argument("kg_series: need R_max, m, n >= 1");
        SeriesResult res;
        std::vector<double> terms;
        double sum = 0;
        for (int r = 1; r <= R_max; ++r)
        {
            const double rr = r, p = psi(rr);
            double t = 0;
            switch (variant)
            {
            case SeriesVariant::Classical:
                t = std::pow(rr, m - 1) * std::pow(p, n);
                break;
            case SeriesVariant::Hybrid:
                t = std::pow(p, n) * std::pow(rr, m - n);
                break;
            case SeriesVariant::ComplexClassical:
                t = std::pow(rr, 2 * m - 1) * std::pow(p, 2 * n);
                break;
            case SeriesVariant::ComplexHybrid:
            {
                const double b = std::pow(rr, m - n) * std::pow(p, n);
                t = b * b;
                break;
            }
            }
            terms.push_back(t);
            sum += t;
            res.partial_sums.push_back(sum);
        }

        double g = 0, lg = 0; // psi ~ r^g (ln r)^lg
        switch (psi.kind)
        {
        case ApproxFunction::Kind::PowerLaw:
            g = psi.e - psi.eps;
            res.exact_verdict = true;
            break;
        case ApproxFunction::Kind::LogPower:
            g = -psi.a;
            lg = -psi.b;
            res.exact_verdict = true;
            break;
        case ApproxFunction::Kind::Tabulated:
            break;
        }

        if (res.exact_verdict)
        {
            switch (variant)
            {
            case SeriesVariant::Classical:
                res.exponent = (m - 1) + n * g;
                res.log_exponent = n * lg;
                break;
            case SeriesVariant::Hybrid:
                res.exponent = n * g + (m - n);
                res.log_exponent = n * lg;
                break;
            case SeriesVariant::ComplexClassical:
                res.exponent = (2 * m - 1) + 2 * n * g;
                res.log_exponent = 2 * n * lg;
                break;
            case SeriesVariant::ComplexHybrid:
                res.exponent = 2 * (m - n) + 2 * n * g;
                res.log_exponent = 2 * n * lg;
                break;
            }
            constexpr double tie = 1e-12;
            res.convergent = res.exponent < -1 - tie ||
                             (std::abs(res.exponent + 1) <= tie && res.log_exponent < -1 - tie);
            return res;
        }

        // tail slope over the upper half of the range
        std::vector<double> x, y;
        for (int r = std::max(2, R_max / 2); r <= R_max; ++r)
            if (terms[static_cast<std::size_t>(r - 1)] > 0)
            {
                x.push_back(static_cast<double>(r));
                y.push_back(terms[static_cast<std::size_t>(r - 1)]);
            }
        if (x.size() >= 2)
        {
            res.exponent = loglog_slope(x, y);
            res.convergent = res.exponent < -1;
        }
        return res;
    }

    namespace
    {
        // error(q) for every q with lo < |q| <= hi, stopping once visit returns false.
        template <typename Visit>
        void for_each_q(FormEvaluator &ev, int N_max, Visit &&visit)
        {
            const auto vals = coordinate_values(N_max, ev.complex);
            const int m = ev.m;
            std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
            std::vector<cplx> q(static_cast<std::size_t>(m));
            for (;;)
            {
                long long n2 = 0;
                for (int k = 0; k < m; ++k)
                {
                    q[static_cast<std::size_t>(k)] = vals[idx[static_cast<std::size_t>(k)]];
                    n2 = std::max(n2, norm2_of(q[static_cast<std::size_t>(k)]));
                }
                if (n2 > 0 && !visit(q.data(), n2))
                    return;
                int k = m - 1;
                for (; k >= 0; --k)
                {
                    auto &i = idx[static_cast<std::size_t>(k)];
                    if (++i < vals.size())
                        break;
                    i = 0;
                }
                if (k < 0)
                    return;
            }
        }
    } // namespace

    double estimate_approximable_measure(const ApproxFunction &psi, int m, int n, FormMode mode, Field field,
                                         int samples, int N0, int N_max, std::uint64_t seed, std::uint64_t budget)
    {
        if (samples < 1 || N0 < 0 || N_max <= N0)
            throw std::invalid_argument("estimate_approximable_measure: need samples >= 1 and 0 <= N0 < N_max");
        if (mode == FormMode::Hybrid && m + 1 <= n)
            throw ConfigError("hybrid mode requires m + 1 > n");
        const double per_sample = std::pow(field == Field::Complex ? std::numbers::pi * (N_max + 1.0) * (N_max + 1.0)
                                                                   : 2.0 * N_max + 1.0,
                                           m);
        if (per_sample * samples > static_cast<double>(budget) * 10.0)
            throw BudgetExceeded("estimate_approximable_measure: enumeration budget exceeded");

        const long long n0sq = static_cast<long long>(N0) * N0;
        int hits = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : hits)
        for (int s = 0; s < samples; ++s)
        {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
            const LinearFormsPoint X = sample_forms_point(m, n, field, rng);
            FormEvaluator ev(X, mode);
            bool hit = false;
            for_each_q(ev, N_max, [&](const cplx *q, long long n2) {
                if (n2 <= n0sq)
                    return true;
                const double err = ev.optimal(q);
                if (err < psi(std::sqrt(static_cast<double>(n2))))
                {
                    hit = true;
                    return false;
                }
                return true;
            });
            hits += hit ? 1 : 0;
        }
        return static_cast<double>(hits) / samples;
    }

    std::vector<double> badly_approximable_profile(const LinearFormsPoint &X, int N_max, FormMode mode,
                                                   double extra_exponent)
    {
        validate(X, N_max, mode);
        const double m = X.m(), n = X.n();
        const double w = (mode == FormMode::Hybrid ? (m + 1) / n - 1 : m / n) + extra_exponent;
        std::vector<double> shell(static_cast<std::size_t>(N_max) + 1, std::numeric_limits<double>::infinity());
        FormEvaluator ev(X, mode);
        for_each_q(ev, N_max, [&](const cplx *q, long long n2) {
            const double norm = std::sqrt(static_cast<double>(n2));
            auto bucket = static_cast<std::size_t>(std::ceil(norm - 1e-12));
            bucket = std::max<std::size_t>(bucket, 1);
            const double v = ev.optimal(q) * std::pow(norm, w);
            shell[bucket] = std::min(shell[bucket], v);
            return true;
        });
        std::vector<double> profile;
        double run = std::numeric_limits<double>::infinity();
        for (int N = 1; N <= N_max; ++N)
        {
            run = std::min(run, shell[static_cast<std::size_t>(N)]);
            profile.push_back(run);
        }
        return profile;
    }

    double badly_approximable_constant(const LinearFormsPoint &X, int N_max, FormMode mode, double extra_exponent)
    {
        return badly_approximable_profile(X, N_max, mode, extra_exponent).back();
    }

    std::vector<CensusRow> gaussian_lattice_census(int r_max)
    {
        if (r_max < 1)
            throw std::invalid_argument("gaussian_lattice_census: r_max >= 1");
        const auto S = static_cast<std::size_t>((r_max + 1) * (r_max + 1));
        std::vector<std::int64_t> reps(S + 1, 0);
        for (int a = -r_max - 1; a <= r_max + 1; ++a)
            for (int b = -r_max - 1; b <= r_max + 1; ++b)
            {
                const auto s = static_cast<std::size_t>(a * a + b * b);
                if (s <= S)
                    ++reps[s];
            }
        std::vector<std::int64_t> le(S + 1);
        std::int64_t acc = 0;
        for (std::size_t s = 0; s <= S; ++s)
            le[s] = acc += reps[s];

        std::vector<CensusRow> rows;
        for (int r = 1; r <= r_max; ++r)
        {
            CensusRow row;
            row.r = r;
            row.disc = le[static_cast<std::size_t>(r * r)];
            for (auto s = static_cast<std::size_t>(r * r + 1); s <= static_cast<std::size_t>((r + 1) * (r + 1)); ++s)
            {
                const std::int64_t lt = le[s - 1];
                const std::int64_t exact_max = le[s] * le[s] - lt * lt;
                row.pair_shell += exact_max;
                row.resonant += exact_max * lt;
            }
            rows.push_back(row);
        }
        return rows;
    }
} // namespace lia
