#pragma once

// Small dense matrices over any of the exact scalar or polynomial rings.

#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "zmod.hpp"

namespace adelab {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    T& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw InvalidArgument("matrix add shape");
    Mat<T> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] + y.a[i];
    return z;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw InvalidArgument("matrix sub shape");
    Mat<T> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] - y.a[i];
    return z;
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw InvalidArgument("matrix mul shape");
    if (x.a.empty() || y.a.empty()) return Mat<T>{};
    Mat<T> z(x.rows, y.cols, zero_like(x.a[0]));
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j)
                z.at(i, j) = z.at(i, j) + x.at(i, k) * y.at(k, j);
    return z;
}

template <class T, class S>
Mat<T> scale(const Mat<T>& x, const S& s) {
    Mat<T> z = x;
    for (auto& v : z.a) v = v * s;
    return z;
}

template <class T>
bool is_zero(const Mat<T>& x) {
    for (auto& v : x.a)
        if (!is_zero(v)) return false;
    return true;
}

template <class T>
bool operator==(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!(x.a[i] == y.a[i])) return false;
    return true;
}

template <class T, class F>
auto map_entries(const Mat<T>& x, F f) -> Mat<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    Mat<U> z;
    z.rows = x.rows;
    z.cols = x.cols;
    z.a.reserve(x.a.size());
    for (auto& v : x.a) z.a.push_back(f(v));
    return z;
}

} // namespace adelab
