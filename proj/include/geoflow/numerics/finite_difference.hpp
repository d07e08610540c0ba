#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "geoflow/error.hpp"

namespace geoflow::fd {

/// Fornberg's recursion: weights w[j] such that sum_j w[j] f(x[j]) approximates
/// the `order`-th derivative of f at z. Nodes may be arbitrarily spaced.
template <std::size_t MaxNodes>
std::array<double, MaxNodes> fornberg_weights(double z, std::span<const double> x, int order) {
    const std::size_t n = x.size();
    // c[j][k]: weight of node j for derivative k.
    std::array<std::array<double, 4>, MaxNodes> c{};
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::array<double, MaxNodes> w{};
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

/// Second-order-accurate derivative operator on a (possibly nonuniform,
/// possibly periodic) 1-D grid. Central stencils in the interior; at open
/// ends, one-sided stencils one node wider, so the end error constant stays
/// close to the interior one.
class DerivativeOperator {
public:
    static constexpr std::size_t max_width = 6;

    /// `nodes` are increasing parameter values; for periodic grids `period`
    /// is the parameter length of one full loop.
    DerivativeOperator(std::span<const double> nodes, int order, bool periodic, double period = 0.0)
        : order_(order) {
        if (order < 1 || order > 3) throw Error("invalid-argument", "derivative order must be 1..3");
        const auto n = static_cast<std::ptrdiff_t>(nodes.size());
        const std::ptrdiff_t half = order == 3 ? 2 : 1;
        const std::ptrdiff_t one_sided = std::min<std::ptrdiff_t>(order + 3, n);
        rows_.resize(nodes.size());
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            Row& row = rows_[static_cast<std::size_t>(i)];
            std::array<double, max_width> x{};
            std::ptrdiff_t first = i - half;
            std::ptrdiff_t width = 2 * half + 1;
            if (!periodic) {
                if (first < 0) {
                    first = 0;
                    width = one_sided;
                } else if (i + half > n - 1) {
                    width = one_sided;
                    first = n - width;
                }
            }
            row.count = static_cast<std::size_t>(width);
            for (std::ptrdiff_t k = 0; k < width; ++k) {
                std::ptrdiff_t j = first + k;
                double shift = 0.0;
                if (periodic) {
                    while (j < 0) { j += n; shift -= period; }
                    while (j >= n) { j -= n; shift += period; }
                }
                row.index[static_cast<std::size_t>(k)] = static_cast<std::size_t>(j);
                x[static_cast<std::size_t>(k)] = nodes[static_cast<std::size_t>(j)] + shift;
            }
            row.weight = fornberg_weights<max_width>(nodes[static_cast<std::size_t>(i)],
                                                     std::span<const double>(x.data(), row.count), order);
        }
    }

    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return rows_.size(); }

    template <class T>
    T at(std::span<const T> f, std::size_t i) const {
        const Row& row = rows_[i];
        T acc = row.weight[0] * f[row.index[0]];
        for (std::size_t k = 1; k < row.count; ++k) acc += row.weight[k] * f[row.index[k]];
        return acc;
    }

    template <class T>
    std::vector<T> apply(std::span<const T> f) const {
        if (f.size() != rows_.size()) throw Error("invalid-argument", "sample count mismatch");
        std::vector<T> out;
        out.reserve(f.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(at(f, i));
        return out;
    }

    template <class T>
    std::vector<T> apply(const std::vector<T>& f) const { return apply(std::span<const T>(f)); }

private:
    struct Row {
        std::array<std::size_t, max_width> index{};
        std::array<double, max_width> weight{};
        std::size_t count = 0;
    };
    int order_;
    std::vector<Row> rows_;
};

}  // namespace geoflow::fd
