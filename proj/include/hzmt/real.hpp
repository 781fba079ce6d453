#pragma once

// Floating-point backends and small numeric primitives shared by every module.
// Three working precisions: binary64 for quick runs, a 40-digit and a 60-digit
// binary float for serious ones. All algorithms are templated on the real type.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <locale>
#include <sstream>
#include <iomanip>
#include <string>
#include <stdexcept>

namespace hzmt {

using real30 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<40>,
                                             boost::multiprecision::et_off>;
using real50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>,
                                             boost::multiprecision::et_off>;

template <class R>
inline R real_eps() { return std::numeric_limits<R>::epsilon(); }

template <class R>
inline constexpr int real_digits10 = std::numeric_limits<R>::digits10;

template <class R> inline R pi_const()    { return boost::math::constants::pi<R>(); }
template <class R> inline R euler_const() { return boost::math::constants::euler<R>(); }

template <class R>
double as_double(const R& v) {
    if constexpr (std::is_same_v<R, double>) return v;
    else return v.template convert_to<double>();
}

// Integer power by binary exponentiation. Handles negative bases and exponents.
template <class R>
R powi(R base, long long e) {
    if (e < 0) return R(1) / powi(base, -e);
    R acc(1), b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

template <class R>
bool is_integer(const R& v, long long& out) {
    using std::floor;
    using std::abs;
    if (abs(v) > R(1e15)) return false;
    R f = floor(v);
    if (f != v) return false;
    out = static_cast<long long>(f);
    return true;
}

inline bool is_integer(const double& v, long long& out) {
    if (std::abs(v) > 1e15) return false;
    double f = std::floor(v);
    if (f != v) return false;
    out = static_cast<long long>(f);
    return true;
}

// pow for positive base with fast paths for integer and half-integer exponents.
// Those cover almost every exponent this library meets, and avoid exp/log.
template <class R>
R rpow(const R& base, const R& expo) {
    using std::exp;
    using std::log;
    using std::sqrt;
    if (base <= 0) throw std::domain_error("rpow: base must be positive");
    long long k;
    if (is_integer(expo, k)) return powi(base, k);
    R twice = expo + expo;
    if (is_integer(twice, k)) {
        // expo = k/2 with k odd, so expo = (k-1)/2 + 1/2 exactly
        return powi(base, (k - 1) / 2) * sqrt(base);
    }
    return exp(expo * log(base));
}

// Compensated accumulator. Ordering of additions is fixed by the callers so
// results are bit-for-bit reproducible.
template <class R>
struct kahan {
    R sum{0};
    R carry{0};
    void add(const R& x) {
        R y = x - carry;
        R t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const R& value() const { return sum; }
};

// Locale-independent decimal rendering at a given significant-digit count.
template <class R>
std::string to_decimal(const R& v, int digits) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(digits) << v;
    return os.str();
}

template <class R>
R parse_real(const std::string& s) {
    if constexpr (std::is_same_v<R, double>) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
        return v;
    } else {
        return R(s);
    }
}

} // namespace hzmt
