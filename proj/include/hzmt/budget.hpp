#pragma once

// Accuracy contracts. Every evaluation routine takes an AccuracyBudget and
// returns an EvalOutcome whose err_bound is an honest upper estimate of the
// truncation error actually committed, never a wish.

#include "real.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hzmt {

class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

template <class R>
struct AccuracyBudget {
    R target_abs_err;
    std::int64_t max_terms;
    int em_order; // number of Bernoulli pairs in Euler-Maclaurin tails

    void validate() const {
        if (!(target_abs_err > 0)) throw domain_error("budget: target_abs_err must be positive");
        if (max_terms < 1) throw domain_error("budget: max_terms must be at least 1");
        if (em_order < 1 || em_order > 32) throw domain_error("budget: em_order out of [1,32]");
    }

    AccuracyBudget scaled(const R& factor) const {
        AccuracyBudget b = *this;
        b.target_abs_err = target_abs_err * factor;
        return b;
    }
};

// Default target sits a few orders above machine epsilon of the backend, so
// cancellation headroom remains for the assemblies built on top.
template <class R>
AccuracyBudget<R> default_budget() {
    return AccuracyBudget<R>{R(1e4) * real_eps<R>(), 4'000'000, 8};
}

template <class R>
struct EvalOutcome {
    R value{0};
    R err_bound{0};
    std::int64_t terms_used{0};
    bool converged{false};
};

template <class R>
EvalOutcome<R> exact_outcome(const R& v) {
    return EvalOutcome<R>{v, real_eps<R>() * (v < 0 ? -v : v), 1, true};
}

} // namespace hzmt
