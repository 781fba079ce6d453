#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <hzmt/real.hpp>
#include <hzmt/budget.hpp>

using R30 = hzmt::real30;

// absolute-or-relative closeness against a reference value
template <class R>
bool close_to(const R& got, const R& want, const R& tol) {
    using std::abs;
    R d = abs(got - want);
    if (d <= tol) return true;
    return d <= tol * abs(want);
}

#define CHECK_NEAR(got, want, tol)                                              \
    do {                                                                        \
        auto g_ = (got);                                                        \
        auto w_ = (want);                                                       \
        INFO("got  " << hzmt::to_decimal(g_, 30));                              \
        INFO("want " << hzmt::to_decimal(w_, 30));                              \
        CHECK(close_to(g_, w_, decltype(g_)(tol)));                             \
    } while (0)

inline hzmt::AccuracyBudget<R30> bud30() { return hzmt::default_budget<R30>(); }
