#pragma once

// Double zeta values zeta_D(s1,s2) = sum_{m>n>=1} m^{-s1} n^{-s2}, computed as
// sum_n zeta(s1, n+1)/n^{s2} with the tail pushed through the Hurwitz
// asymptotics. The divergent boundary case (1, r) carries the regularized
// convention zeta_D(1,r) = -(zeta_D(r,1) + zeta(r+1) - gamma zeta(r)).

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "stieltjes.hpp"

namespace hzmt {

template <class R>
EvalOutcome<R> double_zeta(const R& s1, const R& s2, const AccuracyBudget<R>& bud) {
    using std::abs;
    bud.validate();
    if (!(s1 > 1)) throw domain_error("double_zeta: s1 must exceed 1");
    if (!(s1 + s2 > 2)) throw domain_error("double_zeta: need s1 + s2 > 2");

    const int K = bud.em_order;
    double A = detail::em_start_estimate(as_double(s1), K,
                                         std::log(as_double(bud.target_abs_err) / 6));
    std::int64_t N = static_cast<std::int64_t>(std::ceil(A)) + 1;
    if (N < 8) N = 8;
    if (N > bud.max_terms) N = bud.max_terms;

    AccuracyBudget<R> tb{bud.target_abs_err / (6 * (K + 3)), bud.max_terms, K};

    kahan<R> acc;
    R term_err = 0;
    std::int64_t terms = N;
    for (std::int64_t n = 1; n <= N; ++n) {
        R w = rpow(R(n), -s2);
        AccuracyBudget<R> hb{bud.target_abs_err / (R(6) * N * (w + 1)), bud.max_terms, K};
        auto hz = hurwitz_zeta(s1, R(n + 1), hb);
        acc.add(hz.value * w);
        term_err += hz.err_bound * w;
        terms += hz.terms_used;
    }

    // zeta(s1, n+1) ~ (n+1)^{1-s1}/(s1-1) + (n+1)^{-s1}/2 + EM corrections
    R tail_err = 0;
    auto t0 = tail_sum_pow(R(1) - s1, s2, R(1), N, tb);
    acc.add(t0.value / (s1 - 1));
    tail_err += t0.err_bound / abs(s1 - 1);
    auto t1 = tail_sum_pow(-s1, s2, R(1), N, tb);
    acc.add(t1.value / 2);
    tail_err += t1.err_bound / 2;
    R poch = s1;
    for (int k = 1; k <= K; ++k) {
        auto tk = tail_sum_pow(R(1) - s1 - R(2 * k), s2, R(1), N, tb);
        R coef = b2k_over_fact<R>(k) * poch;
        acc.add(coef * tk.value);
        tail_err += abs(coef) * tk.err_bound;
        poch *= (s1 + R(2 * k - 1)) * (s1 + R(2 * k));
        terms += tk.terms_used;
    }
    auto trem = tail_sum_pow(-s1 - R(2 * K + 1), s2, R(1), N, tb);
    R rem = 2 * abs(b2k_over_fact<R>(K + 1)) * poch * (abs(trem.value) + trem.err_bound);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = rem + term_err + tail_err + (abs(out.value) + 1) * real_eps<R>() * R(4 + N / 64);
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Convention-aware variant used by the three-term assemblies, where the
// boundary value zeta_D(1, r) appears.
template <class R>
EvalOutcome<R> double_zeta_conv(const R& s1, const R& s2, const AccuracyBudget<R>& bud) {
    if (s1 == 1) {
        if (!(s2 > 1)) throw domain_error("double_zeta_conv: need s2 > 1 at the boundary");
        auto base = double_zeta(s2, R(1), bud.scaled(R(1) / 2));
        long long r;
        R zr1, zr;
        if (is_integer(s2, r)) {
            zr1 = detail::zeta_int_cached<R>(static_cast<int>(r) + 1);
            zr = detail::zeta_int_cached<R>(static_cast<int>(r));
        } else {
            zr1 = hurwitz_zeta(s2 + 1, R(1), bud.scaled(R(1) / 8)).value;
            zr = hurwitz_zeta(s2, R(1), bud.scaled(R(1) / 8)).value;
        }
        R g = detail::stieltjes_cached<R>(0);
        EvalOutcome<R> out;
        out.value = -(base.value + zr1 - g * zr);
        out.err_bound = base.err_bound + (abs(out.value) + 1) * real_eps<R>() * 8;
        out.terms_used = base.terms_used;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }
    return double_zeta(s1, s2, bud);
}

} // namespace hzmt
