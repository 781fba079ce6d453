#pragma once

// Digamma and polygamma, plus the pole-free Hurwitz zeta combination
// zeta(z,a) - a^{1-z}/(z-1), which stays regular through z = 1 and is the
// building block for the series of the Herglotz functions.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "stieltjes.hpp"

namespace hzmt {

// psi(a) by upward recurrence into the asymptotic region, then the classical
// expansion log A - 1/2A - sum B_2k/(2k A^2k). The remainder is bounded by
// the first omitted term for every A > 0.
template <class R>
EvalOutcome<R> digamma(const R& a, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(a > 0)) throw domain_error("digamma: argument must be positive");

    const int K = bud.em_order;
    const double ad = as_double(a);
    double A_req = std::max(10.0, real_digits10<R> / 2.0);
    {
        double m = 2.0 * K + 2.0;
        double logB = std::log(std::abs(as_double(bernoulli_rational(2 * K + 2)))) - std::log(m);
        double cand = std::exp((logB - std::log(as_double(bud.target_abs_err))) / m);
        if (cand > A_req) A_req = cand;
    }

    EvalOutcome<R> out;
    for (int attempt = 0;; ++attempt) {
        std::int64_t M = 0;
        if (A_req > ad) M = static_cast<std::int64_t>(std::ceil(A_req - ad));
        if (M > bud.max_terms) M = bud.max_terms;

        kahan<R> recips;
        for (std::int64_t i = 0; i < M; ++i) recips.add(R(1) / (a + R(i)));

        R A = a + R(M);
        kahan<R> acc;
        acc.add(log(A));
        acc.add(R(-1) / (2 * A));
        R inv2 = R(1) / (A * A);
        R apow = inv2;
        R last = 0;
        bool decreasing = true;
        for (int k = 1; k <= K; ++k) {
            R term = -bernoulli_number<R>(2 * k) / R(2 * k) * apow;
            acc.add(term);
            if (k > 1 && abs(term) > abs(last)) decreasing = false;
            last = term;
            apow *= inv2;
        }
        R err = abs(bernoulli_number<R>(2 * K + 2)) / R(2 * K + 2) * apow;

        if (!decreasing || (err > bud.target_abs_err && M < bud.max_terms)) {
            if (attempt < 48) { A_req = std::max(A_req * 2, ad + 16); continue; }
        }
        out.value = acc.value() - recips.value();
        out.err_bound = err + (abs(out.value) + 1) * real_eps<R>() * R(4 + M / 64);
        out.terms_used = M + K;
        out.converged = decreasing && out.err_bound <= bud.target_abs_err;
        return out;
    }
}

// psi^(j)(a) = (-1)^{j+1} j! zeta(j+1, a)
template <class R>
EvalOutcome<R> polygamma(int j, const R& a, const AccuracyBudget<R>& bud) {
    using std::abs;
    if (j < 0) throw domain_error("polygamma: order must be nonnegative");
    if (j == 0) return digamma(a, bud);
    R fact(1);
    for (int i = 2; i <= j; ++i) fact *= i;
    AccuracyBudget<R> hb = bud;
    hb.target_abs_err = bud.target_abs_err / fact;
    auto z = hurwitz_zeta(R(j + 1), a, hb);
    R sign = (j % 2 == 0) ? R(-1) : R(1);
    return EvalOutcome<R>{sign * fact * z.value, fact * z.err_bound, z.terms_used, z.converged};
}

// zeta(z,a) - a^{1-z}/(z-1), continued through z = 1 where it equals
// log a - psi(a). Near z = 1 a short Taylor expansion avoids the cancellation.
template <class R>
EvalOutcome<R> hurwitz_zeta_reg(const R& z, const R& a, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(a > 0)) throw domain_error("hurwitz_zeta_reg: a must be positive");
    if (!(z > 0)) throw domain_error("hurwitz_zeta_reg: z must be positive");

    R d = z - 1;
    R la = log(a);
    if (d == 0) {
        auto ps = digamma(a, bud);
        return EvalOutcome<R>{la - ps.value, ps.err_bound, ps.terms_used, ps.converged};
    }
    if (abs(d) < R(1) / 1024) {
        auto ps = digamma(a, bud.scaled(R(1) / 4));
        auto g1 = stieltjes_generalized(1, a, bud.scaled(R(1) / 4));
        auto g2 = stieltjes_generalized(2, a, bud.scaled(R(1) / 4));
        R c0 = la - ps.value;
        R c1 = -g1.value - la * la / 2;
        R c2 = g2.value / 2 + la * la * la / 6;
        // third-order remainder with a crude envelope for gamma_3
        R g3env = (abs(la * la * la) + 8) * (R(1) / a + 1);
        R rem = abs(d * d * d) * (g3env / 6 + powi(abs(la), 4) / 24 + 1);
        EvalOutcome<R> out;
        out.value = c0 + d * (c1 + d * c2);
        out.err_bound = ps.err_bound + g1.err_bound * abs(d) + g2.err_bound * d * d + rem;
        out.terms_used = ps.terms_used + g1.terms_used + g2.terms_used;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }
    auto hz = hurwitz_zeta(z, a, bud.scaled(R(1) / 2));
    R pole = rpow(a, R(1) - z) / d;
    EvalOutcome<R> out;
    out.value = hz.value - pole;
    out.err_bound = hz.err_bound + (abs(hz.value) + abs(pole)) * real_eps<R>() * 4;
    out.terms_used = hz.terms_used;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

} // namespace hzmt
