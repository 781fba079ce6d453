#pragma once

// Stieltjes constants, zeta derivatives, and the Euler-Maclaurin engine for
// functions of the shape (polynomial in log u) / u^p. Derivatives of that
// shape stay in the family, so corrections of any order come from a small
// coefficient recursion.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"

#include <vector>
#include <map>
#include <mutex>

namespace hzmt {

namespace detail {

// f(u) = P(log u) / u^p  ->  f' has polynomial P'(L) - p P(L) and power p+1.
// Returns f^(j)(A) for j = 0 .. jmax.
template <class R>
std::vector<R> logpow_derivatives(std::vector<R> poly, R p, const R& A, int jmax) {
    using std::log;
    std::vector<R> vals;
    vals.reserve(jmax + 1);
    R L = log(A);
    R apow = rpow(A, -p);
    for (int j = 0;; ++j) {
        R e = 0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) e = e * L + *it;
        vals.push_back(e * apow);
        if (j == jmax) break;
        std::vector<R> next(poly.size() + 0);
        next.assign(poly.size(), R(0));
        for (std::size_t i = 0; i + 1 < poly.size(); ++i) next[i] = R(i + 1) * poly[i + 1];
        for (std::size_t i = 0; i < poly.size(); ++i) next[i] -= p * poly[i];
        while (next.size() > 1 && next.back() == 0) next.pop_back();
        poly = std::move(next);
        p += 1;
        apow /= A;
    }
    return vals;
}

} // namespace detail

// Generalized Stieltjes constant gamma_n(a): the constant term in the Laurent
// expansion of zeta(s,a) about s=1 carries gamma_0(a); higher n give the
// (-1)^n gamma_n(a)/n! coefficients.
template <class R>
EvalOutcome<R> stieltjes_generalized(int n, const R& a, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (n < 0 || n > 4) throw domain_error("stieltjes_generalized: n out of range");
    if (!(a > 0)) throw domain_error("stieltjes_generalized: a must be positive");

    const int K = bud.em_order < 10 ? 10 : bud.em_order;
    const double ad = as_double(a);
    const double logt = std::log(as_double(bud.target_abs_err));

    // pick A so the first omitted correction falls under target
    double A_req = 24;
    {
        double m = 2.0 * K + 2.0;
        double logB = std::log(std::abs(as_double(bernoulli_rational(2 * K + 2)))) - std::lgamma(m + 1);
        for (int it = 0; it < 200; ++it) {
            double lA = std::log(A_req);
            double logf = std::lgamma(m) + n * std::log(std::max(lA, 1.0)) - m * lA;
            if (logB + logf <= logt - 0.7) break;
            A_req *= 1.3;
        }
    }

    EvalOutcome<R> out;
    for (int attempt = 0;; ++attempt) {
        std::int64_t M = 0;
        if (A_req > ad) M = static_cast<std::int64_t>(std::ceil(A_req - ad));
        if (M > bud.max_terms) M = bud.max_terms;

        kahan<R> acc;
        for (std::int64_t k = 0; k < M; ++k) {
            R u = a + R(k);
            R lu = log(u);
            acc.add(powi(lu, n) / u);
        }
        R A = a + R(M);
        R LA = log(A);
        acc.add(-powi(LA, n + 1) / R(n + 1));

        std::vector<R> poly(n + 1, R(0));
        poly[n] = 1;
        auto dv = detail::logpow_derivatives<R>(poly, R(1), A, 2 * K + 1);
        acc.add(dv[0] / 2);
        for (int k = 1; k <= K; ++k)
            acc.add(-b2k_over_fact<R>(k) * dv[2 * k - 1]);
        R err = 2 * abs(b2k_over_fact<R>(K + 1) * dv[2 * K + 1]);

        if (err > bud.target_abs_err && attempt < 40 && M < bud.max_terms) {
            A_req = std::max(A_req * 2, ad + 16);
            continue;
        }
        out.value = acc.value();
        out.err_bound = err + (abs(out.value) + 1) * real_eps<R>() * R(4 + M / 64);
        out.terms_used = M + 2 * K;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }
}

template <class R>
EvalOutcome<R> stieltjes(int n, const AccuracyBudget<R>& bud) {
    return stieltjes_generalized(n, R(1), bud);
}

namespace detail {
template <class R>
R stieltjes_cached(int n) {
    static std::map<int, R> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    AccuracyBudget<R> bud{R(100) * real_eps<R>(), 2'000'000, 12};
    R v = stieltjes(n, bud).value;
    cache.emplace(n, v);
    return v;
}
} // namespace detail

// zeta'(s) for s > 1, from -sum log(k) k^{-s} with the same tail engine.
template <class R>
EvalOutcome<R> riemann_zeta_prime(const R& s, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(s > 1)) throw domain_error("riemann_zeta_prime: s must exceed 1");

    const int K = bud.em_order < 8 ? 8 : bud.em_order;
    double A_req = detail::em_start_estimate(as_double(s), K,
                                             std::log(as_double(bud.target_abs_err)) - 1.5);
    EvalOutcome<R> out;
    for (int attempt = 0;; ++attempt) {
        std::int64_t M = static_cast<std::int64_t>(std::ceil(std::max(A_req, 8.0)));
        if (M > bud.max_terms) M = bud.max_terms;

        kahan<R> acc;
        for (std::int64_t k = 2; k < M; ++k)
            acc.add(log(R(k)) * rpow(R(k), -s));

        R Mr(M);
        R LM = log(Mr);
        R sm1 = s - 1;
        acc.add(rpow(Mr, R(1) - s) * (LM / sm1 + R(1) / (sm1 * sm1)));

        auto dv = detail::logpow_derivatives<R>(std::vector<R>{R(0), R(1)}, s, Mr, 2 * K + 1);
        acc.add(dv[0] / 2);
        for (int k = 1; k <= K; ++k)
            acc.add(-b2k_over_fact<R>(k) * dv[2 * k - 1]);
        R err = 2 * abs(b2k_over_fact<R>(K + 1) * dv[2 * K + 1]);

        if (err > bud.target_abs_err && attempt < 40 && M < bud.max_terms) {
            A_req = std::max(A_req * 2, 16.0);
            continue;
        }
        out.value = -acc.value();
        out.err_bound = err + (abs(out.value) + 1) * real_eps<R>() * R(4 + M / 64);
        out.terms_used = M + 2 * K;
        out.converged = out.err_bound <= bud.target_abs_err;
        return out;
    }
}

} // namespace hzmt
