#pragma once

// Double sums Theta(r,s,t,x) = sum_{n,m>=1} n^-r m^-s (n+mx)^-t.
// Convergence region: r+t>1, s+t>1, r+s+t>2, x>0.
//
// theta_direct sums a finite block and bounds the three leftover regions
// rigorously; it is slow but shares no series rearrangement with the other
// evaluators, so it serves as the cross-check route.  theta_0r, theta_01_reg
// and theta11_via_phi are fast one-dimensional accelerations for the r=0 and
// r=s=1 slices.  theta_rr_near_pole assembles Theta(r,r,t,x) close to its
// pole at t=1-r from pieces that stay numerically stable there.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "digamma.hpp"
#include "herglotz.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace hzmt {

template <class R>
struct ThetaPoint {
    R r, s, t, x;

    R margin() const {
        R a = r + t - 1, b = s + t - 1, c = r + s + t - 2;
        return std::min(a, std::min(b, c));
    }
    bool in_region() const { return x > 0 && margin() > 0; }
    bool on_singularity() const {
        return r + t == 1 || s + t == 1 || r + s + t == 2;
    }
};

namespace detail {

// Upper bound for the doubly infinite corner n > n0, m > M.  All terms are
// positive.  For t >= 0 use n+mx >= n^(1-lam) (mx)^lam with lam chosen so
// both remaining exponents stay above 1; such lam exists exactly when
// r+s+t > 2.  For t < 0 use n+mx <= nm(1+x).
template <class R>
R theta_corner_bound(const R& r, const R& s, const R& t, const R& x,
                     std::int64_t n0, std::int64_t M, const AccuracyBudget<R>& bud) {
    AccuracyBudget<R> cb{bud.target_abs_err / 8, bud.max_terms, bud.em_order};
    if (t == 0) {
        auto za = hurwitz_zeta(r, R(n0 + 1), cb);
        auto zb = hurwitz_zeta(s, R(M + 1), cb);
        return (za.value + za.err_bound) * (zb.value + zb.err_bound);
    }
    if (t > 0) {
        R lo = std::max(R(0), (1 - s) / t);
        R hi = std::min(R(1), 1 - (1 - r) / t);
        R lam = (lo + hi) / 2;
        auto za = hurwitz_zeta(r + (1 - lam) * t, R(n0 + 1), cb);
        auto zb = hurwitz_zeta(s + lam * t, R(M + 1), cb);
        return rpow(x, -lam * t) * (za.value + za.err_bound) * (zb.value + zb.err_bound);
    }
    auto za = hurwitz_zeta(r + t, R(n0 + 1), cb);
    auto zb = hurwitz_zeta(s + t, R(M + 1), cb);
    return rpow(1 + x, -t) * (za.value + za.err_bound) * (zb.value + zb.err_bound);
}

// Strip sums of the form  sum_j binom(-t,j) scale^j zeta(arg0+j, base+1) * W_j
// where W_j is a finite power sum advanced by one power of its index per j.
// ratio0 bounds the geometric contraction of consecutive terms.
template <class R>
struct strip_sum {
    kahan<R> acc;
    R err = 0;
    bool converged = false;
    std::int64_t terms = 0;
};

template <class R>
strip_sum<R> theta_strip(const R& t, const R& arg0, const R& scale, const R& scale_pre,
                         std::int64_t base, std::vector<R>& wpow, const R& ratio0,
                         const AccuracyBudget<R>& bud) {
    using std::abs;
    strip_sum<R> out;
    R binom(1);
    R spow = scale_pre;
    const int jcap = 200;
    for (int j = 0;; ++j) {
        R W = 0;
        for (auto& p : wpow) W += p;
        R coef = binom * spow * W;
        R sub = bud.target_abs_err / (R(16) * R((j + 1) * (j + 1)));
        AccuracyBudget<R> hb{sub / (abs(coef) + R(1)), bud.max_terms, bud.em_order};
        if (hb.target_abs_err < real_eps<R>() * real_eps<R>())
            hb.target_abs_err = real_eps<R>() * real_eps<R>();
        auto z = hurwitz_zeta(arg0 + R(j), R(base + 1), hb);
        R term = coef * z.value;
        out.acc.add(term);
        out.err += abs(coef) * z.err_bound;
        out.terms += z.terms_used + static_cast<std::int64_t>(wpow.size());

        // per-step ratio bound |t+j|/(j+1) * ratio0; the sup over later steps
        R step = (abs(t) + R(j)) / R(j + 1) * ratio0;
        R sup = ratio0 * std::max(R(1), (abs(t) + R(j + 1)) / R(j + 2));
        if (j >= 2 && sup < R(9) / 10) {
            R rem = abs(term) * step / (1 - sup);
            if (rem <= bud.target_abs_err / 2) {
                out.err += rem;
                out.converged = true;
                break;
            }
        }
        if (j >= jcap) { out.err += abs(term); break; }
        binom *= (-t - R(j)) / R(j + 1);
        spow *= scale;
        for (std::size_t i = 0; i < wpow.size(); ++i) wpow[i] *= R(static_cast<std::int64_t>(i) + 1);
    }
    return out;
}

} // namespace detail

// Block summation with rigorous remainder bounds for all three outer regions.
// Doubles the block until the bound meets the budget or the caps are hit.
template <class R>
EvalOutcome<R> theta_direct(const R& r, const R& s, const R& t, const R& x,
                            const AccuracyBudget<R>& bud, std::int64_t m_cap = 4096) {
    using std::abs;
    using std::ceil;
    bud.validate();
    ThetaPoint<R> pt{r, s, t, x};
    if (!(x > 0)) throw domain_error("theta_direct: x must be positive");
    if (!(pt.margin() >= R(1) / 4))
        throw domain_error("theta_direct: exponents too close to the convergence boundary");

    const double xd = as_double(x);
    std::vector<R> npow_r; // n^-r, shared across block sizes
    EvalOutcome<R> best;
    best.err_bound = -1;

    for (std::int64_t M = 32;; M *= 2) {
        std::int64_t N = std::max<std::int64_t>(32, static_cast<std::int64_t>(std::ceil(2.0 * M * xd)));
        if (M > m_cap || M * N > bud.max_terms) break;

        while (static_cast<std::int64_t>(npow_r.size()) < N)
            npow_r.push_back(rpow(R(static_cast<std::int64_t>(npow_r.size()) + 1), -r));

        kahan<R> block;
        std::vector<R> mpow_s(M);
        for (std::int64_t m = 1; m <= M; ++m) {
            mpow_s[m - 1] = rpow(R(m), -s);
            R c = R(m) * x;
            kahan<R> inner;
            for (std::int64_t n = 1; n <= N; ++n)
                inner.add(npow_r[n - 1] * rpow(R(n) + c, -t));
            block.add(mpow_s[m - 1] * inner.value());
        }

        AccuracyBudget<R> sb{bud.target_abs_err / 6, bud.max_terms, bud.em_order};

        // m <= M, n > N: expand (n+mx)^-t in powers of mx/n
        R ratioB = R(M) * x / R(N + 1);
        auto strB = detail::theta_strip(t, r + t, x, R(1), N, mpow_s, ratioB, sb);

        // m > M, n <= n0: expand in powers of n/(mx)
        std::int64_t n0 = static_cast<std::int64_t>((M + 1) * xd / 2);
        if (n0 >= N) n0 = N - 1;
        detail::strip_sum<R> strC;
        if (n0 >= 1) {
            std::vector<R> ppow(npow_r.begin(), npow_r.begin() + n0);
            R ratioC = R(n0) / (R(M + 1) * x);
            strC = detail::theta_strip(t, s + t, R(1) / x, rpow(x, -t), M, ppow, ratioC, sb);
        } else {
            strC.converged = true;
        }

        R corner = detail::theta_corner_bound(r, s, t, x, n0, M, sb);

        EvalOutcome<R> out;
        out.value = block.value() + strB.acc.value() + strC.acc.value();
        out.err_bound = strB.err + strC.err + corner +
                        (abs(out.value) + 1) * real_eps<R>() * R(8 + M * N / 65536);
        out.terms_used = M * N + strB.terms + strC.terms;
        out.converged = strB.converged && strC.converged && out.err_bound <= bud.target_abs_err;
        if (best.err_bound < 0 || out.err_bound < best.err_bound) best = out;
        if (out.converged) return out;
    }
    if (best.err_bound < 0) throw domain_error("theta_direct: term budget excludes even the smallest block");
    best.converged = false;
    return best;
}

// Theta(0,r,w,x) - zeta(r)/(w-1)  =  sum_m m^-r [zeta(w,mx+1) - 1/(w-1)],
// finite through w = 1 where it equals -sum_m psi(mx+1)/m^r.
template <class R>
EvalOutcome<R> theta_0r_reg(const R& w, const R& r, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    bud.validate();
    if (!(x > 0)) throw domain_error("theta_0r_reg: x must be positive");
    if (!(r > 1)) throw domain_error("theta_0r_reg: need r > 1");
    if (w == 1) {
        long long ri = 0;
        if (!is_integer(r, ri) || ri < 2)
            throw domain_error("theta_0r_reg: limit at w = 1 implemented for integer r >= 2");
        auto ps = psi_series(static_cast<int>(ri), x, bud);
        ps.value = -ps.value;
        return ps;
    }
    if (!(w + r > 2)) throw domain_error("theta_0r_reg: need w + r > 2");

    const int K = bud.em_order;
    const double xd = as_double(x);
    double A = detail::em_start_estimate(std::max(as_double(w), 0.3), K,
                                         std::log(as_double(bud.target_abs_err) / 6));
    std::int64_t M = std::max<std::int64_t>({static_cast<std::int64_t>(std::ceil((A - 1) / xd)) + 1,
                                             static_cast<std::int64_t>(std::ceil(2.2 / xd)),
                                             8});
    if (M > bud.max_terms) M = bud.max_terms;

    R inv_w1 = R(1) / (w - 1);
    AccuracyBudget<R> db{bud.target_abs_err / (6 * R(M)), bud.max_terms, K};
    kahan<R> acc;
    R err = 0;
    std::int64_t terms = M;
    for (std::int64_t m = 1; m <= M; ++m) {
        auto z = hurwitz_zeta(w, R(m) * x + 1, db);
        R wgt = rpow(R(m), -r);
        acc.add(wgt * (z.value - inv_w1));
        err += wgt * z.err_bound;
        terms += z.terms_used;
    }

    // tail over m > M, Euler-Maclaurin expansion of zeta(w, mx+1) summed term
    // by term; the pole pair nearly cancels, so both pieces get a budget
    // scaled by |w-1|
    R wgap = abs(w - 1);
    AccuracyBudget<R> pb{bud.target_abs_err * wgap / 12, bud.max_terms, K};
    if (pb.target_abs_err < real_eps<R>() * real_eps<R>())
        pb.target_abs_err = real_eps<R>() * real_eps<R>();
    AccuracyBudget<R> tb{bud.target_abs_err / (8 * (K + 2)), bud.max_terms, K};

    auto t_pole = tail_sum_pow(1 - w, r, x, M, pb);
    auto z_pole = hurwitz_zeta(r, R(M + 1), pb);
    acc.add((t_pole.value - z_pole.value) * inv_w1);
    err += (t_pole.err_bound + z_pole.err_bound) * abs(inv_w1);
    terms += t_pole.terms_used + z_pole.terms_used;

    auto t_half = tail_sum_pow(-w, r, x, M, tb);
    acc.add(t_half.value / 2);
    err += t_half.err_bound / 2;
    terms += t_half.terms_used;

    R poch = w;
    for (int k = 1; k <= K; ++k) {
        auto tk = tail_sum_pow(1 - w - R(2 * k), r, x, M, tb);
        R coef = b2k_over_fact<R>(k) * poch;
        acc.add(coef * tk.value);
        err += abs(coef) * tk.err_bound;
        terms += tk.terms_used;
        poch *= (w + R(2 * k - 1)) * (w + R(2 * k));
    }
    auto trem = tail_sum_pow(-w - R(2 * K + 1), r, x, M, tb);
    err += 2 * abs(b2k_over_fact<R>(K + 1)) * poch * (abs(trem.value) + trem.err_bound);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = err + (abs(out.value) + 1) * real_eps<R>() * 8;
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Theta(0,r,w,x), pole at w = 1 included
template <class R>
EvalOutcome<R> theta_0r(const R& w, const R& r, const R& x, const AccuracyBudget<R>& bud) {
    if (w == 1) throw domain_error("theta_0r: pole at w = 1; use theta_0r_reg");
    auto out = theta_0r_reg(w, r, x, bud);
    auto zr = riemann_zeta(r, AccuracyBudget<R>{bud.target_abs_err / 4, bud.max_terms, bud.em_order});
    R inv_w1 = R(1) / (w - 1);
    out.value += zr.value * inv_w1;
    out.err_bound += zr.err_bound * abs(inv_w1) + (abs(out.value) + 1) * real_eps<R>() * 4;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Theta(0,1,w,x) for w > 1.  Per-term pole subtraction against (mx)^{1-w}
// keeps the bracket summable; the subtracted parts resum to x^{1-w} zeta(w)/(w-1).
template <class R>
EvalOutcome<R> theta_01_reg(const R& w, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    bud.validate();
    if (!(x > 0)) throw domain_error("theta_01_reg: x must be positive");
    if (!(w > 1)) throw domain_error("theta_01_reg: need w > 1");

    const int K = bud.em_order;
    const double xd = as_double(x);
    double A = detail::em_start_estimate(as_double(w), K,
                                         std::log(as_double(bud.target_abs_err) / 6));
    if (A < 20) A = 20;
    std::int64_t M = std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(A / xd)) + 1, 8);
    if (M > bud.max_terms) M = bud.max_terms;

    R logM = R(std::log(static_cast<double>(M) + 1));
    AccuracyBudget<R> db{bud.target_abs_err / (6 * (logM + 2)), bud.max_terms, K};
    AccuracyBudget<R> tb{bud.target_abs_err / (8 * (K + 2)), bud.max_terms, K};

    kahan<R> acc;
    R err = 0;
    std::int64_t terms = M;
    for (std::int64_t m = 1; m <= M; ++m) {
        R a = R(m) * x;
        auto rg = hurwitz_zeta_reg(w, a, db);
        acc.add((rg.value - rpow(a, -w)) / R(m));
        err += rg.err_bound / R(m);
        terms += rg.terms_used;
    }

    R xw = rpow(x, -w);
    auto z1 = hurwitz_zeta(w + 1, R(M + 1), tb);
    acc.add(-xw * z1.value / 2);
    err += xw * z1.err_bound / 2;

    R poch = w;
    R xpow = xw * x; // x^{1-w-2k} at k=0
    for (int k = 1; k <= K; ++k) {
        xpow /= x * x;
        auto zk = hurwitz_zeta(w + R(2 * k), R(M + 1), tb);
        R coef = b2k_over_fact<R>(k) * poch * xpow;
        acc.add(coef * zk.value);
        err += abs(coef) * zk.err_bound;
        poch *= (w + R(2 * k - 1)) * (w + R(2 * k));
        terms += zk.terms_used;
    }
    auto ztail = hurwitz_zeta(w + R(2 * K + 2), R(M + 1), tb);
    err += 2 * abs(b2k_over_fact<R>(K + 1)) * poch * abs(xpow / (x * x)) *
           (ztail.value + ztail.err_bound);

    auto zw = riemann_zeta(w, tb);
    R pole_sum = rpow(x, 1 - w) / (w - 1);
    acc.add(zw.value * pole_sum);
    err += zw.err_bound * abs(pole_sum);

    EvalOutcome<R> out;
    out.value = acc.value();
    out.err_bound = err + (abs(out.value) + 1) * real_eps<R>() * 8;
    out.terms_used = terms;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Theta(1,1,t,x) for t > 0 through the two-sided Phi assembly
template <class R>
EvalOutcome<R> theta11_via_phi(const R& t, const R& x, const AccuracyBudget<R>& bud) {
    using std::abs;
    bud.validate();
    if (!(x > 0)) throw domain_error("theta11_via_phi: x must be positive");
    if (!(t > 0)) throw domain_error("theta11_via_phi: need t > 0");
    R z = t + 1;
    AccuracyBudget<R> qb{bud.target_abs_err / 8, bud.max_terms, bud.em_order};

    auto p1 = phi(z, x, qb);
    auto p2 = phi(z, R(1) / x, qb);
    R xz = rpow(x, 1 - z);
    AccuracyBudget<R> zb{bud.target_abs_err * std::min(R(1), abs(z - 1)) / 16, bud.max_terms,
                         bud.em_order};
    if (zb.target_abs_err < real_eps<R>() * real_eps<R>())
        zb.target_abs_err = real_eps<R>() * real_eps<R>();
    auto zeta_z = hurwitz_zeta(z, R(1), zb);
    auto zeta_z1 = hurwitz_zeta(z + 1, R(1), qb);

    EvalOutcome<R> out;
    R pole = (1 + xz) / (z - 1);
    out.value = p1.value + xz * p2.value + pole * zeta_z.value -
                (x + rpow(x, -z)) * zeta_z1.value;
    out.err_bound = p1.err_bound + xz * p2.err_bound + abs(pole) * zeta_z.err_bound +
                    (x + rpow(x, -z)) * zeta_z1.err_bound +
                    (abs(out.value) + 1) * real_eps<R>() * 8;
    out.terms_used = p1.terms_used + p2.terms_used + zeta_z.terms_used + zeta_z1.terms_used;
    out.converged = out.err_bound <= bud.target_abs_err;
    return out;
}

// Theta(r,r,t,x) near t = 1-r, r >= 2 integer.  The two Theta(0,r,.) pieces
// carry the pole analytically; the bridge S stays regular there and is
// evaluated by block summation, so it never shares machinery with the pieces
// it corrects.
template <class R>
EvalOutcome<R> theta_rr_near_pole(int r, const R& t, const R& x, const AccuracyBudget<R>& bud,
                                  const AccuracyBudget<R>& bridge_bud, std::int64_t m_cap = 512) {
    using std::abs;
    bud.validate();
    if (r < 2) throw domain_error("theta_rr_near_pole: need integer r >= 2");
    if (!(x > 0)) throw domain_error("theta_rr_near_pole: x must be positive");
    R w = t + R(r);
    if (w == 1) throw domain_error("theta_rr_near_pole: pole at t = 1 - r");

    auto a1 = theta_0r(w, R(r), x, bud);
    auto a2 = theta_0r(w, R(r), R(1) / x, bud);
    R xt = rpow(x, -t);

    EvalOutcome<R> out;
    out.value = a1.value + xt * a2.value;
    out.err_bound = a1.err_bound + xt * a2.err_bound;
    out.terms_used = a1.terms_used + a2.terms_used;
    bool conv = a1.converged && a2.converged;

    if (r % 2 == 0) {
        auto b = theta_direct(R(r - 1), R(1), w, x, bridge_bud, m_cap);
        R coef = 2 * powi(x, r - 1);
        out.value += coef * b.value;
        out.err_bound += coef * b.err_bound;
        out.terms_used += b.terms_used;
        conv = conv && b.converged;
    }
    for (int l = 1; l <= r - 2; ++l) {
        R coef = (R((l % 2 == 1) ? 1 : -1) + binomial_real(R(r - 1), l)) * powi(x, l);
        auto b = theta_direct(R(l + 1), R(r - l), t + R(r - 1), x, bridge_bud, m_cap);
        out.value += coef * b.value;
        out.err_bound += abs(coef) * b.err_bound;
        out.terms_used += b.terms_used;
        conv = conv && b.converged;
    }
    out.err_bound += (abs(out.value) + 1) * real_eps<R>() * 8;
    out.converged = conv && out.err_bound <= bud.target_abs_err;
    return out;
}

// Main entry: route each exponent pattern to the strongest evaluator.
// The route taken is reported so callers can disclose it.
enum class ThetaRoute { zeta_product, axis_0r, axis_01, diag_11, block };

template <class R>
struct ThetaResult {
    EvalOutcome<R> out;
    ThetaRoute route;
};

template <class R>
ThetaResult<R> mt_zeta_routed(const R& r, const R& s, const R& t, const R& x,
                              const AccuracyBudget<R>& bud, std::int64_t m_cap = 4096) {
    using std::abs;
    bud.validate();
    ThetaPoint<R> pt{r, s, t, x};
    if (!(x > 0)) throw domain_error("mt_zeta: x must be positive");
    if (!pt.in_region()) throw domain_error("mt_zeta: exponents outside the convergence region");

    if (t == 0 && r > 1 && s > 1) {
        AccuracyBudget<R> hb{bud.target_abs_err / 4, bud.max_terms, bud.em_order};
        auto za = riemann_zeta(r, hb);
        auto zb = riemann_zeta(s, hb);
        EvalOutcome<R> out;
        out.value = za.value * zb.value;
        out.err_bound = abs(za.value) * zb.err_bound + abs(zb.value) * za.err_bound +
                        za.err_bound * zb.err_bound + abs(out.value) * real_eps<R>() * 4;
        out.terms_used = za.terms_used + zb.terms_used;
        out.converged = out.err_bound <= bud.target_abs_err;
        return {out, ThetaRoute::zeta_product};
    }
    if (s == 0 && (r == 1 || r > 1)) {
        // flip n and m: Theta(r,0,t,x) = x^-t Theta(0,r,t,1/x)
        R xi = R(1) / x;
        auto sub = (r == 1) ? theta_01_reg(t, xi, bud.scaled(rpow(x, t)))
                            : theta_0r(t, R(r), xi, bud.scaled(rpow(x, t)));
        R c = rpow(x, -t);
        sub.value *= c;
        sub.err_bound *= c;
        return {sub, r == 1 ? ThetaRoute::axis_01 : ThetaRoute::axis_0r};
    }
    if (r == 0 && s == 1)
        return {theta_01_reg(t, x, bud), ThetaRoute::axis_01};
    if (r == 0 && s > 1)
        return {theta_0r(t, s, x, bud), ThetaRoute::axis_0r};
    if (r == 1 && s == 1 && t > 0)
        return {theta11_via_phi(t, x, bud), ThetaRoute::diag_11};
    return {theta_direct(r, s, t, x, bud, m_cap), ThetaRoute::block};
}

template <class R>
EvalOutcome<R> mt_zeta(const R& r, const R& s, const R& t, const R& x,
                       const AccuracyBudget<R>& bud, std::int64_t m_cap = 4096) {
    return mt_zeta_routed(r, s, t, x, bud, m_cap).out;
}

} // namespace hzmt
