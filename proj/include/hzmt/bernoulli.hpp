#pragma once

// Exact Bernoulli numbers and small combinatorial helpers. The recurrence is
// run once in rational arithmetic and cached; callers convert to their real
// type on demand. B_2 .. B_66 cover every Euler-Maclaurin order we allow plus
// the first omitted term used for error bounds.

#include "real.hpp"
#include "budget.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace hzmt {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

inline bigint binomial_exact(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    bigint acc = 1;
    for (unsigned i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

namespace detail {
inline const std::vector<bigrat>& bernoulli_table() {
    static const std::vector<bigrat> table = [] {
        constexpr unsigned kmax = 66;
        std::vector<bigrat> b(kmax + 1);
        b[0] = 1;
        // sum_{j=0}^{m} C(m+1,j) B_j = 0 for m >= 1
        for (unsigned m = 1; m <= kmax; ++m) {
            bigrat s = 0;
            for (unsigned j = 0; j < m; ++j)
                s += bigrat(binomial_exact(m + 1, j)) * b[j];
            b[m] = -s / bigrat(m + 1);
        }
        return b;
    }();
    return table;
}
} // namespace detail

inline bigrat bernoulli_rational(unsigned k) {
    const auto& t = detail::bernoulli_table();
    if (k >= t.size()) throw domain_error("bernoulli: index above supported range");
    return t[k];
}

template <class R>
R bernoulli_number(unsigned k) {
    return bernoulli_rational(k).template convert_to<R>();
}

// B_{2k} / (2k)!  appears in every Euler-Maclaurin correction.
template <class R>
R b2k_over_fact(unsigned k) {
    bigrat q = bernoulli_rational(2 * k);
    bigint f = 1;
    for (unsigned i = 2; i <= 2 * k; ++i) f *= i;
    q /= bigrat(f);
    return q.template convert_to<R>();
}

template <class R>
R harmonic(std::int64_t n) {
    if (n < 0) throw domain_error("harmonic: negative index");
    kahan<R> acc;
    for (std::int64_t i = 1; i <= n; ++i) acc.add(R(1) / R(i));
    return acc.value();
}

template <class R>
R binomial_real(const R& a, unsigned j) {
    R acc(1);
    for (unsigned i = 0; i < j; ++i) acc *= (a - R(i)) / R(i + 1);
    return acc;
}

} // namespace hzmt
