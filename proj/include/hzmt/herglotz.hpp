#pragma once

// The Herglotz-type series
//   F(x)    = sum (psi(nx) - log nx)/n
//   F_r(x)  = sum psi(nx)/n^r            (r >= 2)
//   Phi(z,x)= sum (zeta(z,nx) - (nx)^{1-z}/(z-1))/n
// evaluated by splitting at an index where the digamma / Hurwitz asymptotics
// take over; the swapped tail collapses into zeta values.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "stieltjes.hpp"
#include "digamma.hpp"
#include "polylog.hpp"

namespace hzmt {

namespace detail {

// index threshold so the first omitted psi-asymptotic term clears the target
inline double psi_tail_start(int K, double log_target) {
    double m = 2.0 * K + 2.0;
    double logB = std::log(std::abs(as_double(bernoulli_rational(2 * K + 2)))) - std::log(m);
    return std::exp((logB - log_target) / m);
}

// psi(v) minus its asymptotic expansion through order K, computed explicitly
template <class R>
R psi_asym_defect(const R& v, int K, const EvalOutcome<R>& psi_v) {
    using std::log;
    kahan<R> acc;
    acc.add(psi_v.value);
    acc.add(-log(v));
    acc.add(R(1) / (2 * v));
    R inv2 = R(1) / (v * v);
    R vpow = inv2;
    for (int k = 1; k <= K; ++k) {
        acc.add(bernoulli_number<R>(2 * k) / R(2 * k) * vpow);
        vpow *= inv2;
    }
    return acc.value();
}

} // namespace detail

template <class R>
EvalOutcome<R> herglotz_F(const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(x > 0)) throw domain_error("herglotz_F: x must be positive");

    const int K = bud.em_order;
    const double xd = as_double(x);
    double A = detail::psi_tail_start(K, std::log(as_double(bud.target_abs_err) / 4));
    std::int64_t N = static_cast<std::int64_t>(std::ceil(A / xd)) + 1;
    if (N > bud.max_terms) N = bud.max_terms;

    R logN = R(std::log(static_cast<double>(N) + 1));
    AccuracyBudget<R> pb{bud.target_abs_err / (4 * (logN + 2)), bud.max_terms, K};
    AccuracyBudget<R> zb{bud.target_abs_err / (8 * (K + 2)), bud.max_terms, K};

    kahan<R> acc;
    R psi_err = 0;
    std::int64_t terms = N;
    for (std::int64_t n = 1; n <= N; ++n) {
        R v = x * R(n);
        auto ps = digamma(v, pb);
        acc.add((ps.value - log(v)) / R(n));
        psi_err += ps.err_bound / R(n);
        terms += ps.terms_used;
    }

    R zeta_err = 0;
    auto z2 = hurwitz_zeta(R(2), R(N + 1), zb);
    acc.add(-z2.value / (2 * x));
    zeta_err += z2.err_bound / (2 * x);
    R xpow = x * x;
    for (int k = 1; k <= K; ++k) {
        auto zk = hurwitz_zeta(R(2 * k + 1), R(N + 1), zb);
        acc.add(-bernoulli_number<R>(2 * k) / (R(2 * k) * xpow) * zk.value);
        zeta_err += abs(bernoulli_number<R>(2 * k)) / (R(2 * k) * xpow) * zk.err_bound;
        xpow *= x * x;
    }
    auto ztail = hurwitz_zeta(R(2 * K + 3), R(N + 1), zb);
    R rem = abs(bernoulli_number<R>(2 * K + 2)) / (R(2 * K + 2) * xpow) *
            (ztail.value + ztail.err_bound);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = rem + psi_err + zeta_err + (abs(out.value) + 1) * real_eps<R>() * R(4 + N / 64);
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// F_r(x) = zeta(r) log x - zeta'(r) - zeta(r+1)/(2x) - sum_k B_2k zeta(r+2k)/(2k x^2k)
//          + sum_{n<=N} (psi(nx) - asym_K(nx))/n^r + bounded remainder
template <class R>
EvalOutcome<R> higher_herglotz_F(int r, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (r < 2) throw domain_error("higher_herglotz_F: order must be >= 2");
    if (!(x > 0)) throw domain_error("higher_herglotz_F: x must be positive");

    const int K = bud.em_order;
    const double xd = as_double(x);
    double A = detail::psi_tail_start(K, std::log(as_double(bud.target_abs_err) / 4));
    std::int64_t N = static_cast<std::int64_t>(std::ceil(A / xd)) + 1;
    if (N > bud.max_terms) N = bud.max_terms;

    AccuracyBudget<R> pb{bud.target_abs_err / 8, bud.max_terms, K};
    AccuracyBudget<R> zb{bud.target_abs_err / (8 * (K + 2)), bud.max_terms, K};

    kahan<R> acc;
    acc.add(detail::zeta_int_cached<R>(r) * log(x));
    auto zp = riemann_zeta_prime(R(r), zb);
    acc.add(-zp.value);
    acc.add(-detail::zeta_int_cached<R>(r + 1) / (2 * x));
    R xpow = x * x;
    for (int k = 1; k <= K; ++k) {
        acc.add(-bernoulli_number<R>(2 * k) * detail::zeta_int_cached<R>(r + 2 * k) / (R(2 * k) * xpow));
        xpow *= x * x;
    }

    R psi_err = 0;
    std::int64_t terms = N + zp.terms_used;
    for (std::int64_t n = 1; n <= N; ++n) {
        R v = x * R(n);
        R w = rpow(R(n), R(-r));
        auto ps = digamma(v, pb.scaled(R(1) / (1 + abs(w))));
        acc.add(detail::psi_asym_defect(v, K, ps) * w);
        psi_err += ps.err_bound * w;
        terms += ps.terms_used;
    }

    auto ztail = hurwitz_zeta(R(r + 2 * K + 2), R(N + 1), zb);
    R rem = abs(bernoulli_number<R>(2 * K + 2)) / (R(2 * K + 2) * xpow) *
            (ztail.value + ztail.err_bound);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = rem + psi_err + zp.err_bound + (abs(out.value) + 1) * real_eps<R>() * R(8 + N / 64);
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Phi(z,x); at z = 1 the series limit equals -F(x)
template <class R>
EvalOutcome<R> phi(const R& z, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (!(z > 0)) throw domain_error("phi: z must be positive");
    if (!(x > 0)) throw domain_error("phi: x must be positive");
    if (z == 1) {
        auto f = herglotz_F(x, bud);
        f.value = -f.value;
        return f;
    }

    const int K = bud.em_order;
    const double xd = as_double(x);
    double A = detail::em_start_estimate(std::max(as_double(z), 0.3), K,
                                         std::log(as_double(bud.target_abs_err) / 4));
    if (A < 20) A = 20;
    std::int64_t N = static_cast<std::int64_t>(std::ceil(A / xd)) + 1;
    if (N > bud.max_terms) N = bud.max_terms;

    R logN = R(std::log(static_cast<double>(N) + 1));
    AccuracyBudget<R> tb{bud.target_abs_err / (4 * (logN + 2)), bud.max_terms, K};
    AccuracyBudget<R> zb{bud.target_abs_err / (8 * (K + 2)), bud.max_terms, K};

    kahan<R> acc;
    R term_err = 0;
    std::int64_t terms = N;
    for (std::int64_t n = 1; n <= N; ++n) {
        auto rg = hurwitz_zeta_reg(z, x * R(n), tb);
        acc.add(rg.value / R(n));
        term_err += rg.err_bound / R(n);
        terms += rg.terms_used;
    }

    R zeta_err = 0;
    auto z1 = hurwitz_zeta(z + 1, R(N + 1), zb);
    R xz = rpow(x, -z);
    acc.add(xz * z1.value / 2);
    zeta_err += xz * z1.err_bound / 2;
    R poch = z;
    R xpow = xz / x; // x^{-z-1}
    for (int k = 1; k <= K; ++k) {
        auto zk = hurwitz_zeta(z + R(2 * k), R(N + 1), zb);
        R coef = b2k_over_fact<R>(k) * poch * xpow;
        acc.add(coef * zk.value);
        zeta_err += abs(coef) * zk.err_bound;
        poch *= (z + R(2 * k - 1)) * (z + R(2 * k));
        xpow /= x * x;
    }
    auto ztail = hurwitz_zeta(z + R(2 * K + 2), R(N + 1), zb);
    R rem = 2 * abs(b2k_over_fact<R>(K + 1)) * poch * abs(xpow) * (ztail.value + ztail.err_bound);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = rem + term_err + zeta_err + (abs(out.value) + 1) * real_eps<R>() * R(4 + N / 64);
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// phi(x) = psi(x) + 1/(2x) - log x, the decaying part of digamma
template <class R>
EvalOutcome<R> ramanujan_phi(const R& x, const AccuracyBudget<R>& bud) {
    using std::log;
    if (!(x > 0)) throw domain_error("ramanujan_phi: x must be positive");
    auto ps = digamma(x, bud);
    EvalOutcome<R> out;
    out.value = ps.value + R(1) / (2 * x) - log(x);
    out.err_bound = ps.err_bound + (abs(out.value) + 1) * real_eps<R>() * 4;
    out.terms_used = ps.terms_used;
    out.converged = ps.converged;
    return out;
}

// F(1) = -gamma^2/2 - pi^2/12 - gamma_1
template <class R>
EvalOutcome<R> f1_constant(const AccuracyBudget<R>& bud) {
    R g = detail::stieltjes_cached<R>(0);
    R g1 = detail::stieltjes_cached<R>(1);
    R pi = pi_const<R>();
    R v = -g * g / 2 - pi * pi / 12 - g1;
    return EvalOutcome<R>{v, R(300) * real_eps<R>(), 1, R(300) * real_eps<R>() <= bud.target_abs_err};
}

// P(x,y) = F(x) - F(y) + Li2(y/x) - pi^2/6
//          + log(x/y) (gamma - log(x-y)/2 + log(x/y)/4)
template <class R>
EvalOutcome<R> zagier_P(const R& x, const R& y, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    if (!(y > 0) || !(x > y)) throw domain_error("zagier_P: need x > y > 0");
    auto fx = herglotz_F(x, bud.scaled(R(1) / 4));
    auto fy = herglotz_F(y, bud.scaled(R(1) / 4));
    auto li = dilog(y / x, bud.scaled(R(1) / 4));
    R g = detail::stieltjes_cached<R>(0);
    R pi = pi_const<R>();
    R lr = log(x / y);
    EvalOutcome<R> out;
    out.value = fx.value - fy.value + li.value - pi * pi / 6 +
                lr * (g - log(x - y) / 2 + lr / 4);
    out.err_bound = fx.err_bound + fy.err_bound + li.err_bound +
                    (abs(out.value) + 1) * real_eps<R>() * 8;
    out.terms_used = fx.terms_used + fy.terms_used + li.terms_used;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// sum_m psi(mx+1)/m^r = F_r(x) + zeta(r+1)/x
template <class R>
EvalOutcome<R> psi_series(int r, const R& x, const AccuracyBudget<R>& bud) {
    auto f = higher_herglotz_F(r, x, bud);
    f.value += detail::zeta_int_cached<R>(r + 1) / x;
    f.err_bound += (abs(f.value) + 1) * real_eps<R>() * 4;
    return f;
}

} // namespace hzmt
