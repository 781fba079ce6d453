// Standalone acceptance gate for the identity catalogue.  Each numbered
// criterion prints one PASS/FAIL line with its worst residual and wall time;
// the process exits 0 only if every criterion holds.  Tolerances and point
// sets are pinned here and deliberately independent of the unit suites.

#include <hzmt/hzmt.hpp>

#include "brute.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

using R = hzmt::real30;
using hzmt::AccuracyBudget;
using hzmt::as_double;

namespace {

int g_failed = 0;

AccuracyBudget<R> bud(const R& target) { return {target, 4'000'000, 8}; }

std::string sci(const R& v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(1) << as_double(v);
    return os.str();
}

// worst absolute residual seen across a family of checks
struct Worst {
    R val{0};
    void feed(const R& r) {
        if (r > val) val = r;
    }
};

void criterion(int num, const char* name, double limit_s,
               const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && limit_s > 0 && secs >= limit_s) {
        ok = false;
        detail += " [exceeded " + std::to_string(static_cast<int>(limit_s)) + "s limit]";
    }
    std::printf("[%s] %2d %-36s %s (%.1fs)\n", ok ? "PASS" : "FAIL", num, name,
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

} // namespace

int main() {
    using std::abs;
    const auto grid = hzmt::GridSpec<R>::defaults();
    const std::vector<R>& xs = grid.x_values;
    const std::vector<R>& eps = grid.epsilon_offsets;

    std::printf("acceptance gate, precision-30 backend, default x grid (%zu points)\n",
                xs.size());

    criterion(1, "F(1) closed constant", 1.0, [&](std::string& d) {
        auto c = hzmt::verify_f1_value(R(1e-9), bud(R(1e-10)));
        d = "residual " + sci(c.abs_residual);
        return c.abs_residual <= R(1e-9);
    });

    criterion(2, "fe2 reflection x <-> 1/x", 5.0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        for (const R& x : xs) {
            auto c = hzmt::verify_fe2(x, R(1e-9), bud(R(1e-10)));
            w.feed(c.abs_residual);
            ok = ok && c.abs_residual <= R(1e-9);
        }
        d = "max residual " + sci(w.val);
        return ok;
    });

    criterion(3, "fe1 three-term relation", 0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        for (const R& x : xs) {
            auto c = hzmt::verify_fe1(x, R(1e-9), bud(R(1e-10)));
            w.feed(c.abs_residual);
            ok = ok && c.abs_residual <= R(1e-9);
        }
        d = "max residual " + sci(w.val);
        return ok;
    });

    criterion(4, "vz2 r in 2..6, vz3 r in 2..5", 60.0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        auto b = bud(R(1e-10));
        int cells = 0;
        for (int r = 2; r <= 6; ++r)
            for (const R& x : xs) {
                auto c = hzmt::verify_vz2(r, x, R(1e-9), b);
                w.feed(c.abs_residual);
                ok = ok && c.abs_residual <= R(1e-9);
                ++cells;
            }
        hzmt::DoubleZetaCache<R> zd;
        for (int r = 2; r <= 5; ++r)
            for (const R& x : xs) {
                auto c = hzmt::verify_vz3(r, x, R(1e-9), b, &zd);
                w.feed(c.abs_residual);
                ok = ok && c.abs_residual <= R(1e-9);
                ++cells;
            }
        d = "max residual " + sci(w.val) + " over " + std::to_string(cells) + " cells";
        return ok;
    });

    criterion(5, "theta(r,r) pole: constant + residue", 0, [&](std::string& d) {
        const R xs5[] = {R(2) / 5, R(1), R(5) / 2};
        Worst w;
        bool ok = true;
        auto b = bud(R(1e-10));
        double slope_lo = 2, slope_hi = 0;
        for (int r = 2; r <= 6; ++r)
            for (const R& x : xs5) {
                auto series = hzmt::klf_constant_series(r, x, b);
                R closed = hzmt::theta_rr_laurent(r, x).coeffs.at(0);
                R res = abs(series.value - closed);
                w.feed(res);
                ok = ok && res <= R(1e-9);
                double s = hzmt::klf_rr_slope(r, x, eps);
                slope_lo = std::min(slope_lo, s);
                slope_hi = std::max(slope_hi, s);
                ok = ok && s > 0.8 && s < 1.2;
            }
        std::ostringstream os;
        os << "max |c0 gap| " << sci(w.val) << ", slopes [" << std::fixed
           << std::setprecision(3) << slope_lo << ", " << slope_hi << "]";
        d = os.str();
        return ok;
    });

    criterion(6, "theta(1,1) principal part at t=0", 0, [&](std::string& d) {
        bool ok = true;
        double slope_lo = 2, slope_hi = 0;
        for (const R& x : {R(1) / 2, R(1), R(2)}) {
            double s = as_double(hzmt::klf11_slope(x, eps, bud(R(1e-10))));
            slope_lo = std::min(slope_lo, s);
            slope_hi = std::max(slope_hi, s);
            ok = ok && s > 0.8 && s < 1.2;
        }
        std::ostringstream os;
        os << "slopes [" << std::fixed << std::setprecision(3) << slope_lo << ", "
           << slope_hi << "]";
        d = os.str();
        return ok;
    });

    criterion(7, "guinand modular sums", 0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        auto b = bud(R(1e-10));
        for (int z : {3, 4, 5})
            for (const R& x : xs) {
                auto c = hzmt::verify_guinand_deriv(z, x, R(1e-9), b);
                w.feed(c.abs_residual);
                ok = ok && c.abs_residual <= R(1e-9);
            }
        for (const R& x : xs) {
            auto c = hzmt::verify_guinand_first(x, R(1e-9), b);
            w.feed(c.abs_residual);
            ok = ok && c.abs_residual <= R(1e-9);
        }
        d = "max residual " + sci(w.val);
        return ok;
    });

    criterion(8, "ramanujan weighted transformation", 0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        for (const R& x : xs) {
            auto c = hzmt::verify_ramanujan_first(x, R(1e-9), bud(R(1e-10)));
            w.feed(c.abs_residual);
            ok = ok && c.abs_residual <= R(1e-9);
        }
        d = "max residual " + sci(w.val);
        return ok;
    });

    criterion(9, "theta structural identities", 120.0, [&](std::string& d) {
        Worst w;
        bool ok = true;
        R tol = R(1e-7);
        auto b = bud(R(1e-8));

        auto take = [&](const hzmt::CheckResult<R>& c) {
            w.feed(c.abs_residual);
            ok = ok && c.abs_residual <= tol;
        };
        take(hzmt::verify_split(R(2), R(2), R(2), R(3) / 2, tol, b));
        take(hzmt::verify_split(R(3), R(1), R(2), R(7) / 10, tol, b));
        take(hzmt::verify_inversion(R(2), R(3), R(2), R(8) / 5, tol, b));
        take(hzmt::verify_inversion(R(2), R(2), R(4), R(4) / 5, tol, b));
        for (int n : {1, 2, 3}) {
            take(hzmt::verify_recursion(n, R(3), R(3), R(1), R(3) / 2, tol, b));
            take(hzmt::verify_recursion(n, R(4), R(2), R(2), R(4) / 5, tol, b));
        }
        for (const R& z : {R(3) / 2, R(11) / 5, R(3)})
            for (const R& x : xs)
                take(hzmt::verify_decomposition(z, x, tol, b));

        // one cell cross-checked against the slow block-summation oracle
        auto cb = hzmt::verify_decomposition(R(3), R(3) / 2, R(1e-5), bud(R(1e-6)), true);
        ok = ok && cb.abs_residual <= R(1e-5);

        d = "max residual " + sci(w.val) + ", block-oracle cell " + sci(cb.abs_residual);
        return ok;
    });

    criterion(10, "slow-oracle agreement", 0, [&](std::string& d) {
        bool ok = true;
        auto b = bud(R(1e-12));

        R res_zd =
            abs(hzmt::double_zeta(R(2), R(1), b).value - R(brute::double_zeta(2, 1, 2000)));
        ok = ok && res_zd <= R(1e-8);

        Worst ws;
        const int st_pts[][2] = {{2, 2}, {3, 2}, {2, 3}};
        for (auto& p : st_pts) {
            auto c = hzmt::verify_stuffle(p[0], p[1], R(1e-10), bud(R(1e-11)));
            ws.feed(c.abs_residual);
            ok = ok && c.abs_residual <= R(1e-10);
        }

        Worst wf;
        for (double xd : {0.4, 0.75, 1.0, 1.6, 2.5}) {
            R res = abs(hzmt::herglotz_F(R(xd), b).value - R(brute::herglotz_F(xd)));
            wf.feed(res);
            ok = ok && res <= R(2e-8);
        }

        Worst wr;
        const struct { int r; double x; } fr_pts[] = {
            {2, 0.4}, {2, 0.8}, {3, 1.3}, {4, 1.9}, {5, 2.5}};
        for (auto& p : fr_pts) {
            R res = abs(hzmt::higher_herglotz_F(p.r, R(p.x), b).value -
                        R(brute::higher_F(p.r, p.x)));
            wr.feed(res);
            ok = ok && res <= R(1e-9);
        }

        Worst wp;
        const struct { double z, x; } ph_pts[] = {
            {1.2, 0.6}, {1.5, 1.0}, {2.0, 1.8}, {2.5, 1.3}, {3.0, 0.9}};
        for (auto& p : ph_pts) {
            R res = abs(hzmt::phi(R(p.z), R(p.x), b).value - R(brute::phi(p.z, p.x)));
            wp.feed(res);
            ok = ok && res <= R(3e-8);
        }

        d = "zeta_D " + sci(res_zd) + ", stuffle " + sci(ws.val) + ", F " + sci(wf.val) +
            ", F_r " + sci(wr.val) + ", Phi " + sci(wp.val);
        return ok;
    });

    criterion(11, "unit constants", 0, [&](std::string& d) {
        auto b = bud(R(1e-14));
        R g = hzmt::euler_const<R>();
        R pi = hzmt::pi_const<R>();
        R z2 = hzmt::riemann_zeta(R(2), b).value;
        Worst w;
        w.feed(abs(hzmt::digamma(R(1), b).value + g));
        w.feed(abs(z2 - pi * pi / 6));
        w.feed(abs(hzmt::dilog(R(1), b).value - z2));
        w.feed(abs(hzmt::hurwitz_zeta(R(5) / 2, R(7) / 10, b).value -
                   hzmt::hurwitz_zeta(R(5) / 2, R(17) / 10, b).value -
                   hzmt::rpow(R(7) / 10, R(-5) / 2)));
        d = "max deviation " + sci(w.val);
        return w.val <= R(1e-12);
    });

    std::printf("%d of 11 criteria passed\n", 11 - g_failed);
    return g_failed == 0 ? 0 : 1;
}
