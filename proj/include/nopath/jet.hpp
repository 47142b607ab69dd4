#pragma once

// Truncated Taylor arithmetic in one variable: c[k] = f^(k)(t0) / k!.

#include <array>
#include <cmath>
#include <cstddef>

namespace nopath {

template <std::size_t N>
struct Jet {
    std::array<double, N + 1> c{};

    static Jet variable(double t0) {
        Jet j;
        j.c[0] = t0;
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }
    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }

    // k-th derivative.
    double d(std::size_t k) const {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return c[k] * f;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Jet operator*(double s, const Jet& a) {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    friend Jet operator+(double s, const Jet& a) {
        Jet r = a;
        r.c[0] += s;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) {
            for (std::size_t k = 0; k <= i; ++k) r.c[i] += a.c[k] * b.c[i - k];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) {
            double s = a.c[i];
            for (std::size_t k = 1; k <= i; ++k) s -= b.c[k] * r.c[i - k];
            r.c[i] = s / b.c[0];
        }
        return r;
    }
};

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
    // f' = a' f, solved coefficient by coefficient.
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t i = 1; i <= N; ++i) {
        double s = 0.0;
        for (std::size_t k = 1; k <= i; ++k) s += static_cast<double>(k) * a.c[k] * r.c[i - k];
        r.c[i] = s / static_cast<double>(i);
    }
    return r;
}

}  // namespace nopath
