#pragma once

// Polylogarithm on (0,1] for integer order. Small arguments go through the
// defining series; arguments near 1 switch to the expansion of Li_r(e^{-y})
// in powers of y, whose zeta coefficients at nonpositive integers are exact.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"

namespace hzmt {

template <class R>
EvalOutcome<R> polylog_exp(int r, const R& y, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::exp;
    using std::log;
    bud.validate();
    if (r < 2) throw domain_error("polylog_exp: order must be >= 2");
    if (!(y > 0)) throw domain_error("polylog_exp: y must be positive");

    EvalOutcome<R> out;
    if (y >= R(1) / 2) {
        R q = exp(-y);
        R qpow = q;
        kahan<R> acc;
        std::int64_t u = 1;
        for (;; ++u) {
            R term = qpow * rpow(R(u), R(-r));
            acc.add(term);
            R next = qpow * q / rpow(R(u + 1), R(r));
            if (next / (1 - q) <= bud.target_abs_err / 2) {
                out.err_bound = next / (1 - q);
                break;
            }
            if (u > bud.max_terms) { out.err_bound = next / (1 - q); break; }
            qpow *= q;
        }
        out.value = acc.value();
        out.terms_used = u;
        out.err_bound += abs(out.value) * real_eps<R>() * 4;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }

    // Li_r(e^-y) = (-1)^{r-1} (H_{r-1} - log y) y^{r-1}/(r-1)!
    //              + sum_{k>=0, k != r-1} zeta(r-k) (-y)^k / k!
    R fact(1);
    for (int i = 2; i < r; ++i) fact *= i;
    R sign = (r % 2 == 0) ? R(-1) : R(1);
    R main = sign * (harmonic<R>(r - 1) - log(y)) * powi(y, r - 1) / fact;

    kahan<R> acc;
    R coef(1); // (-y)^k / k!
    R q2 = y * y / (4 * pi_const<R>() * pi_const<R>());
    R last = 0;
    std::int64_t terms = 0;
    int k = 0;
    for (;; ++k) {
        if (k != r - 1) {
            R zv = (k <= r - 2) ? detail::zeta_int_cached<R>(r - k)
                                : zeta_nonpos_int<R>(static_cast<long long>(r) - k);
            if (zv != 0) {
                R term = coef * zv;
                acc.add(term);
                last = term;
                ++terms;
            }
            if (k > r + 2 && abs(last) * 4 <= bud.target_abs_err && k % 2 == (r + 1) % 2) break;
        }
        if (k > 400) break;
        coef *= -y / R(k + 1);
    }
    out.value = main + acc.value();
    out.err_bound = abs(last) * q2 / (1 - q2) * 4 + (abs(out.value) + abs(main)) * real_eps<R>() * 4;
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err && k <= 400;
    return out;
}

template <class R>
EvalOutcome<R> polylog(int r, const R& z, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::exp;
    using std::log;
    bud.validate();
    if (r < 1) throw domain_error("polylog: order must be >= 1");
    if (!(z >= 0) || z > 1) throw domain_error("polylog: argument must lie in [0,1]");
    if (z == 0) return exact_outcome(R(0));
    if (z == 1) {
        if (r < 2) throw domain_error("polylog: divergent at z = 1, r = 1");
        return exact_outcome(detail::zeta_int_cached<R>(r));
    }
    if (z < exp(R(-1) / 2)) {
        R zpow = z;
        kahan<R> acc;
        std::int64_t u = 1;
        R err;
        for (;; ++u) {
            acc.add(zpow * rpow(R(u), R(-r)));
            R next = zpow * z / rpow(R(u + 1), R(r));
            err = next / (1 - z);
            if (err <= bud.target_abs_err / 2 || u > bud.max_terms) break;
            zpow *= z;
        }
        EvalOutcome<R> out;
        out.value = acc.value();
        out.err_bound = err + abs(out.value) * real_eps<R>() * 4;
        out.terms_used = u;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }
    if (r == 1) return exact_outcome(-log(1 - z));
    return polylog_exp(r, -log(z), bud);
}

template <class R>
EvalOutcome<R> dilog(const R& z, const AccuracyBudget<R>& bud) {
    return polylog(2, z, bud);
}

} // namespace hzmt
