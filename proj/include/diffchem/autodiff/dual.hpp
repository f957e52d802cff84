// Copyright 2026 The diffchem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <type_traits>

namespace diffchem::ad {

/**
 * @brief Forward-mode dual number carrying a value and N directional
 * derivatives.
 *
 * `Dual<Dual<double, N>, M>` nests for second derivatives. Every kernel in the
 * library is written against a generic scalar `T`, so instantiating it with a
 * `Dual` propagates exact parameter derivatives through the whole pipeline.
 * Comparisons look at the primal value only; tangents follow the taken branch.
 */
template <class T, std::size_t N> class Dual {
  public:
    using value_type = T;
    static constexpr std::size_t directions = N;

    constexpr Dual() : value_(0), tangent_{} { tangent_.fill(T(0)); }

    template <class S, std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
    constexpr Dual(S value) : value_(static_cast<double>(value)), tangent_{} {
        tangent_.fill(T(0));
    }

    template <class U = T,
              std::enable_if_t<!std::is_arithmetic_v<U>, int> = 0>
    constexpr Dual(const T &value) : value_(value), tangent_{} {
        tangent_.fill(T(0));
    }

    constexpr Dual(const T &value, const std::array<T, N> &tangent)
        : value_(value), tangent_(tangent) {}

    /// A variable seeded along direction `slot` (unit tangent there).
    static constexpr Dual variable(const T &value, std::size_t slot) {
        Dual d(value);
        d.tangent_[slot] = T(1);
        return d;
    }

    [[nodiscard]] constexpr const T &value() const { return value_; }
    [[nodiscard]] constexpr T &value() { return value_; }
    [[nodiscard]] constexpr const T &tangent(std::size_t i) const {
        return tangent_[i];
    }
    [[nodiscard]] constexpr T &tangent(std::size_t i) { return tangent_[i]; }
    [[nodiscard]] constexpr const std::array<T, N> &tangents() const {
        return tangent_;
    }

    constexpr Dual &operator+=(const Dual &o) {
        value_ += o.value_;
        for (std::size_t i = 0; i < N; ++i) {
            tangent_[i] += o.tangent_[i];
        }
        return *this;
    }
    constexpr Dual &operator-=(const Dual &o) {
        value_ -= o.value_;
        for (std::size_t i = 0; i < N; ++i) {
            tangent_[i] -= o.tangent_[i];
        }
        return *this;
    }
    constexpr Dual &operator*=(const Dual &o) {
        for (std::size_t i = 0; i < N; ++i) {
            tangent_[i] = tangent_[i] * o.value_ + value_ * o.tangent_[i];
        }
        value_ *= o.value_;
        return *this;
    }
    constexpr Dual &operator/=(const Dual &o) {
        const T inv = T(1) / o.value_;
        const T q = value_ * inv;
        for (std::size_t i = 0; i < N; ++i) {
            tangent_[i] = (tangent_[i] - q * o.tangent_[i]) * inv;
        }
        value_ = q;
        return *this;
    }

    /// Multiplication by a constant scales every component.
    template <class S, std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
    constexpr Dual &operator*=(S s) {
        value_ *= s;
        for (auto &t : tangent_) {
            t *= s;
        }
        return *this;
    }

    /// Builds a dual from the value and the derivative of a unary primitive.
    static constexpr Dual chain(const T &value, const T &derivative,
                                const Dual &x) {
        Dual r(value);
        for (std::size_t i = 0; i < N; ++i) {
            r.tangent_[i] = derivative * x.tangent_[i];
        }
        return r;
    }

  private:
    T value_;
    std::array<T, N> tangent_;
};

template <class T> struct is_dual : std::false_type {};
template <class T, std::size_t N>
struct is_dual<Dual<T, N>> : std::true_type {};
template <class T> inline constexpr bool is_dual_v = is_dual<T>::value;

/// Innermost real value of a possibly nested dual.
inline constexpr double primal(double x) { return x; }
template <class T, std::size_t N>
constexpr double primal(const Dual<T, N> &x) {
    return primal(x.value());
}

/// True if the primal value and every tangent component are finite.
inline bool all_finite(double x) { return std::isfinite(x); }
template <class T, std::size_t N> bool all_finite(const Dual<T, N> &x) {
    if (!all_finite(x.value())) {
        return false;
    }
    for (const auto &t : x.tangents()) {
        if (!all_finite(t)) {
            return false;
        }
    }
    return true;
}

/// True if every component is exactly zero.
inline bool is_zero(double x) { return x == 0.0; }
template <class T, std::size_t N> bool is_zero(const Dual<T, N> &x) {
    if (!is_zero(x.value())) {
        return false;
    }
    for (const auto &t : x.tangents()) {
        if (!is_zero(t)) {
            return false;
        }
    }
    return true;
}

/// Largest magnitude over the primal value and all tangent components.
inline double max_abs_component(double x) { return std::abs(x); }
template <class T, std::size_t N>
double max_abs_component(const Dual<T, N> &x) {
    double m = max_abs_component(x.value());
    for (const auto &t : x.tangents()) {
        m = std::max(m, max_abs_component(t));
    }
    return m;
}

// Arithmetic.

template <class T, std::size_t N>
constexpr Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N> &b) {
    return a += b;
}
template <class T, std::size_t N>
constexpr Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N> &b) {
    return a -= b;
}
template <class T, std::size_t N>
constexpr Dual<T, N> operator*(Dual<T, N> a, const Dual<T, N> &b) {
    return a *= b;
}
template <class T, std::size_t N>
constexpr Dual<T, N> operator/(Dual<T, N> a, const Dual<T, N> &b) {
    return a /= b;
}
template <class T, std::size_t N>
constexpr Dual<T, N> operator-(const Dual<T, N> &a) {
    Dual<T, N> r(-a.value());
    for (std::size_t i = 0; i < N; ++i) {
        r.tangent(i) = -a.tangent(i);
    }
    return r;
}
template <class T, std::size_t N>
constexpr Dual<T, N> operator+(const Dual<T, N> &a) {
    return a;
}

#define DIFFCHEM_DUAL_MIXED_OP(op)                                             \
    template <class T, std::size_t N, class S,                                 \
              std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>              \
    constexpr Dual<T, N> operator op(const Dual<T, N> &a, S b) {               \
        return a op Dual<T, N>(b);                                             \
    }                                                                          \
    template <class T, std::size_t N, class S,                                 \
              std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>              \
    constexpr Dual<T, N> operator op(S a, const Dual<T, N> &b) {               \
        return Dual<T, N>(a) op b;                                             \
    }

DIFFCHEM_DUAL_MIXED_OP(+)
DIFFCHEM_DUAL_MIXED_OP(-)
DIFFCHEM_DUAL_MIXED_OP(/)
#undef DIFFCHEM_DUAL_MIXED_OP

template <class T, std::size_t N, class S,
          std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
constexpr Dual<T, N> operator*(Dual<T, N> a, S b) {
    return a *= b;
}
template <class T, std::size_t N, class S,
          std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>
constexpr Dual<T, N> operator*(S a, Dual<T, N> b) {
    return b *= a;
}

// Comparisons act on primal values.

#define DIFFCHEM_DUAL_CMP(op)                                                  \
    template <class T, std::size_t N>                                          \
    constexpr bool operator op(const Dual<T, N> &a, const Dual<T, N> &b) {     \
        return primal(a) op primal(b);                                         \
    }                                                                          \
    template <class T, std::size_t N, class S,                                 \
              std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>              \
    constexpr bool operator op(const Dual<T, N> &a, S b) {                     \
        return primal(a) op static_cast<double>(b);                            \
    }                                                                          \
    template <class T, std::size_t N, class S,                                 \
              std::enable_if_t<std::is_arithmetic_v<S>, int> = 0>              \
    constexpr bool operator op(S a, const Dual<T, N> &b) {                     \
        return static_cast<double>(a) op primal(b);                            \
    }

DIFFCHEM_DUAL_CMP(<)
DIFFCHEM_DUAL_CMP(>)
DIFFCHEM_DUAL_CMP(<=)
DIFFCHEM_DUAL_CMP(>=)
DIFFCHEM_DUAL_CMP(==)
DIFFCHEM_DUAL_CMP(!=)
#undef DIFFCHEM_DUAL_CMP

// Elementary functions. Each one evaluates the derivative in the inner scalar
// type so nesting yields second derivatives.

template <class T, std::size_t N> Dual<T, N> exp(const Dual<T, N> &x) {
    using std::exp;
    const T e = exp(x.value());
    return Dual<T, N>::chain(e, e, x);
}

template <class T, std::size_t N> Dual<T, N> log(const Dual<T, N> &x) {
    using std::log;
    return Dual<T, N>::chain(log(x.value()), T(1) / x.value(), x);
}

template <class T, std::size_t N> Dual<T, N> sqrt(const Dual<T, N> &x) {
    using std::sqrt;
    const T s = sqrt(x.value());
    return Dual<T, N>::chain(s, T(0.5) / s, x);
}

template <class T, std::size_t N> Dual<T, N> pow(const Dual<T, N> &x, double p) {
    using std::pow;
    if (p == 0.0) {
        return Dual<T, N>(1.0);
    }
    const T xp1 = pow(x.value(), p - 1.0);
    return Dual<T, N>::chain(xp1 * x.value(), p * xp1, x);
}

template <class T, std::size_t N>
Dual<T, N> pow(const Dual<T, N> &x, const Dual<T, N> &p) {
    using std::log;
    return exp(p * log(x));
}

template <class T, std::size_t N> Dual<T, N> erf(const Dual<T, N> &x) {
    using std::erf;
    using std::exp;
    const T d = (2.0 / std::sqrt(std::numbers::pi)) * exp(-(x.value() * x.value()));
    return Dual<T, N>::chain(erf(x.value()), d, x);
}

template <class T, std::size_t N> Dual<T, N> sin(const Dual<T, N> &x) {
    using std::cos;
    using std::sin;
    return Dual<T, N>::chain(sin(x.value()), cos(x.value()), x);
}

template <class T, std::size_t N> Dual<T, N> cos(const Dual<T, N> &x) {
    using std::cos;
    using std::sin;
    return Dual<T, N>::chain(cos(x.value()), -sin(x.value()), x);
}

template <class T, std::size_t N> Dual<T, N> abs(const Dual<T, N> &x) {
    return primal(x) < 0.0 ? -x : x;
}

/// atan2 with d = (x dy - y dx) / (x^2 + y^2); undefined at the origin.
template <class T, std::size_t N>
Dual<T, N> atan2(const Dual<T, N> &y, const Dual<T, N> &x) {
    using std::atan2;
    const T r2 = x.value() * x.value() + y.value() * y.value();
    Dual<T, N> out(atan2(y.value(), x.value()));
    for (std::size_t i = 0; i < N; ++i) {
        out.tangent(i) =
            (x.value() * y.tangent(i) - y.value() * x.tangent(i)) / r2;
    }
    return out;
}

template <class T, std::size_t N>
std::ostream &operator<<(std::ostream &os, const Dual<T, N> &x) {
    os << "Dual(" << x.value() << "; ";
    for (std::size_t i = 0; i < N; ++i) {
        os << (i ? ", " : "") << x.tangent(i);
    }
    return os << ")";
}

} // namespace diffchem::ad
