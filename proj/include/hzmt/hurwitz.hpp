#pragma once

// Hurwitz and Riemann zeta by direct summation plus an Euler-Maclaurin tail.
// The tail error is controlled by the first omitted correction term, with the
// summation start chosen so that bound lands under the requested target.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hzmt {

namespace detail {

// Smallest A with  |B_{2K+2}/(2K+2)!| * poch(s,2K+1) * A^{-s-2K-1} <= target,
// estimated in double; the real computation re-derives the bound exactly.
inline double em_start_estimate(double s, int K, double log_target) {
    double m = 2.0 * K + 2.0;
    double logB = std::log(std::abs(as_double(bernoulli_rational(2 * K + 2)))) - std::lgamma(m + 1);
    double logpoch = std::lgamma(s + 2 * K + 1) - std::lgamma(s);
    double denom = s + 2 * K + 1;
    if (denom < 1) denom = 1;
    double logA = (logB + logpoch - log_target) / denom;
    double A = std::exp(std::min(logA, 40.0));
    return A < 1 ? 1 : A;
}

} // namespace detail

template <class R>
EvalOutcome<R> hurwitz_zeta(const R& s, const R& a, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(a > 0)) throw domain_error("hurwitz_zeta: a must be positive");
    if (s == 1) throw domain_error("hurwitz_zeta: pole at s = 1");
    if (!(s > 0)) throw domain_error("hurwitz_zeta: s must be positive here");

    const int K = bud.em_order;
    const double sd = as_double(s);
    const double ad = as_double(a);
    double A_req = detail::em_start_estimate(sd, K, std::log(as_double(bud.target_abs_err)));

    EvalOutcome<R> out;
    for (int attempt = 0;; ++attempt) {
        std::int64_t N = 0;
        if (A_req > ad) N = static_cast<std::int64_t>(std::ceil(A_req - ad));
        bool capped = false;
        if (N > bud.max_terms) { N = bud.max_terms; capped = true; }

        kahan<R> acc;
        R ms = -s;
        for (std::int64_t n = 0; n < N; ++n)
            acc.add(rpow(a + R(n), ms));

        R A = a + R(N);
        R pw1 = rpow(A, R(1) - s); // A^{1-s}
        acc.add(pw1 / (s - 1));
        R pws = pw1 / A;           // A^{-s}
        acc.add(pws / 2);

        R poch = s;                 // poch(s, 1)
        R apow = pws / A;           // A^{-s-1}
        R inv2 = R(1) / (A * A);
        R last = 0;
        bool decreasing = true;
        for (int k = 1; k <= K; ++k) {
            R term = b2k_over_fact<R>(k) * poch * apow;
            acc.add(term);
            if (k > 1 && abs(term) > abs(last)) decreasing = false;
            last = term;
            poch *= (s + R(2 * k - 1)) * (s + R(2 * k));
            apow *= inv2;
        }
        R first_omitted = abs(b2k_over_fact<R>(K + 1) * poch * apow);
        R err = 2 * first_omitted;

        if (!capped && (!decreasing || err > bud.target_abs_err) && attempt < 48) {
            A_req = std::max(A_req * 2, ad + 16);
            continue;
        }
        if (!decreasing) err = err > 4 * abs(last) ? err : 4 * abs(last);
        out.value = acc.value();
        out.err_bound = err + abs(out.value) * real_eps<R>() * R(4 + N / 64);
        out.terms_used = N + K;
        out.converged = decreasing && out.err_bound <= bud.target_abs_err;
        return out;
    }
}

// Exact values at nonpositive integers: zeta(0) = -1/2, zeta(-j) = -B_{j+1}/(j+1).
template <class R>
R zeta_nonpos_int(long long j) {
    if (j > 0) throw domain_error("zeta_nonpos_int: argument must be <= 0");
    if (j == 0) return R(-1) / 2;
    unsigned idx = static_cast<unsigned>(1 - j);
    return -bernoulli_number<R>(idx) / R(idx);
}

namespace detail {
// Positive integer zeta values recur constantly in assemblies; cache them at a
// fixed tight budget so results never depend on the caller's budget.
template <class R>
R zeta_int_cached(long long k) {
    static std::map<long long, R> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    AccuracyBudget<R> bud{R(100) * real_eps<R>(), 1'000'000, 10};
    R v = hurwitz_zeta(R(k), R(1), bud).value;
    cache.emplace(k, v);
    return v;
}
} // namespace detail

template <class R>
EvalOutcome<R> riemann_zeta(const R& s, const AccuracyBudget<R>& bud) {
    long long k;
    if (is_integer(s, k)) {
        if (k == 1) throw domain_error("riemann_zeta: pole at s = 1");
        if (k <= 0) return exact_outcome(zeta_nonpos_int<R>(k));
        R v = detail::zeta_int_cached<R>(k);
        EvalOutcome<R> out{v, R(200) * real_eps<R>() * (v < 0 ? -v : v), 1, true};
        return out;
    }
    return hurwitz_zeta(s, R(1), bud);
}

// sum_{m>M} (m x + 1)^alpha m^{-w}  via the binomial series in 1/(m x).
// Requires (M+1) x comfortably above 1 so the series contracts.
template <class R>
EvalOutcome<R> tail_sum_pow(const R& alpha, const R& w, const R& x, std::int64_t M,
                            const AccuracyBudget<R>& bud) {
    using std::abs;
    bud.validate();
    if (!(x > 0) || M < 0) throw domain_error("tail_sum_pow: bad arguments");
    R rho0 = R(1) / (R(M + 1) * x);
    if (!(rho0 < R(0.55))) throw domain_error("tail_sum_pow: M too small for given x");

    kahan<R> acc;
    R err_acc = 0;
    std::int64_t terms = 0;

    R binom(1);               // binom(alpha, j)
    R xpow = rpow(x, alpha);  // x^{alpha-j}
    EvalOutcome<R> out;
    const int jcap = 220;
    for (int j = 0;; ++j) {
        if (binom == 0) { out.converged = true; break; } // expansion terminated exactly
        R arg = w - alpha + R(j);
        if (abs(arg - 1) < R(1) / 1024) throw domain_error("tail_sum_pow: zeta argument hits the pole");
        R coef = binom * xpow;
        R sub = bud.target_abs_err / (R(16) * R((j + 1) * (j + 1)));
        AccuracyBudget<R> hb{sub / (abs(coef) + R(1)), bud.max_terms, bud.em_order};
        if (hb.target_abs_err < real_eps<R>() * real_eps<R>()) hb.target_abs_err = real_eps<R>() * real_eps<R>();
        auto z = hurwitz_zeta(arg, R(M + 1), hb);
        R term = coef * z.value;
        acc.add(term);
        err_acc += abs(coef) * z.err_bound;
        terms += z.terms_used;
        R rho = abs((alpha - R(j)) / R(j + 1)) * rho0;
        if (rho < 1) {
            R rem = abs(term) * rho / (1 - rho);
            if (rem <= bud.target_abs_err / 2 && j >= 1) {
                err_acc += rem;
                out.converged = true;
                break;
            }
        }
        if (j >= jcap) {
            err_acc += abs(term);
            out.converged = false;
            break;
        }
        binom *= (alpha - R(j)) / R(j + 1);
        xpow /= x;
    }
    out.value = acc.value();
    out.err_bound = err_acc + abs(out.value) * real_eps<R>() * 4;
    out.terms_used = terms;
    if (out.err_bound > bud.target_abs_err) out.converged = false;
    return out;
}

} // namespace hzmt
