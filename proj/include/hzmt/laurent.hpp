#pragma once

// Pole expansions of the double sums at their boundary singularities.  The
// principal parts and constant terms are closed forms; slope fitting against
// actual evaluations certifies the claimed remainder order numerically.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "herglotz.hpp"

#include <map>
#include <string>
#include <vector>

namespace hzmt {

template <class R>
struct LaurentExpansion {
    std::string variable;    // name of the offset variable
    R center;                // expansion point of that variable
    std::map<int, R> coeffs; // order -> coefficient
    int remainder_order;     // lowest order left out
};

// Theta(1,1,t,x) as t -> 0:
//   2/t^2 + (2 gamma - log x)/t + (gamma^2 - gamma log x - pi^2/6) + O(t)
template <class R>
LaurentExpansion<R> theta11_laurent(const R& x) {
    using std::log;
    if (!(x > 0)) throw domain_error("theta11_laurent: x must be positive");
    R g = euler_const<R>();
    R lx = log(x);
    R pi = pi_const<R>();
    LaurentExpansion<R> L;
    L.variable = "t";
    L.center = 0;
    L.coeffs[-2] = R(2);
    L.coeffs[-1] = 2 * g - lx;
    L.coeffs[0] = g * g - g * lx - pi * pi / 6;
    L.remainder_order = 1;
    return L;
}

// Theta(r,r,t,x) as t -> 1-r for integer r >= 2:
//   zeta(r)(1+x^{r-1})/(t-(1-r))
//   + x^{r-1} zeta(r)(gamma - log x) + gamma zeta(r)
//   + x^{r-1} sum_{k=1}^{r-2} C(r-1,k) x^-k zeta(r-k) zeta(k+1)  + O(t-(1-r))
template <class R>
LaurentExpansion<R> theta_rr_laurent(int r, const R& x) {
    using std::log;
    if (r < 2) throw domain_error("theta_rr_laurent: need integer r >= 2");
    if (!(x > 0)) throw domain_error("theta_rr_laurent: x must be positive");
    R g = euler_const<R>();
    R lx = log(x);
    R zr = detail::zeta_int_cached<R>(r);
    R xr = powi(x, r - 1);

    LaurentExpansion<R> L;
    L.variable = "t";
    L.center = R(1 - r);
    L.coeffs[-1] = zr * (1 + xr);
    R c0 = xr * zr * (g - lx) + g * zr;
    for (int k = 1; k <= r - 2; ++k)
        c0 += xr * binomial_real(R(r - 1), k) * powi(x, -k) *
              detail::zeta_int_cached<R>(r - k) * detail::zeta_int_cached<R>(k + 1);
    L.coeffs[0] = c0;
    L.remainder_order = 1;
    return L;
}

// The same constant term assembled from psi-weighted series at x and 1/x.
// Agreement with theta_rr_laurent's coefficient is a nontrivial identity.
template <class R>
EvalOutcome<R> klf_constant_series(int r, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    using std::log;
    bud.validate();
    if (r < 2) throw domain_error("klf_constant_series: need integer r >= 2");
    if (!(x > 0)) throw domain_error("klf_constant_series: x must be positive");
    R g = euler_const<R>();
    R zr = detail::zeta_int_cached<R>(r);
    R xr = powi(x, r - 1);
    int sgn = (r % 2 == 0) ? 1 : -1;

    auto ps = psi_series(r, x, bud.scaled(R(1) / 4));
    auto psi_inv = psi_series(r, R(1) / x, bud.scaled(R(1) / (4 * (xr + 1))));

    EvalOutcome<R> out;
    out.value = -xr * zr * log(x) - ps.value + R(sgn) * xr * psi_inv.value +
                (1 + R(sgn)) * xr * g * zr;
    for (int l = 1; l <= r - 2; ++l)
        out.value += (R((l % 2 == 1) ? 1 : -1) + binomial_real(R(r - 1), l)) * powi(x, l) *
                     detail::zeta_int_cached<R>(l + 1) * detail::zeta_int_cached<R>(r - l);
    out.err_bound = ps.err_bound + xr * psi_inv.err_bound +
                    (abs(out.value) + 1) * real_eps<R>() * 8;
    out.terms_used = ps.terms_used + psi_inv.terms_used;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Least-squares slope of log|d| against log eps.  Near 1.0 it certifies that
// d shrinks linearly, i.e. that a claimed expansion is complete through its
// constant term.
template <class R>
R richardson_slope(const std::vector<R>& eps, const std::vector<R>& d) {
    using std::abs;
    using std::log;
    if (eps.size() != d.size() || eps.size() < 2)
        throw domain_error("richardson_slope: need matching lists with at least two points");
    std::vector<R> lx, ly;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0) || d[i] == 0)
            throw domain_error("richardson_slope: eps must be positive and d nonzero");
        lx.push_back(log(eps[i]));
        ly.push_back(log(abs(d[i])));
    }
    R mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= R(static_cast<int>(lx.size()));
    my /= R(static_cast<int>(lx.size()));
    R num = 0, den = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

} // namespace hzmt
