#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gx {

// Dense row-major tensor of 64-bit floats.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
        data.assign(numel_of(shape), 0.0);
    }

    static size_t numel_of(const std::vector<int>& s) {
        size_t n = 1;
        for (int d : s) {
            if (d < 0) throw std::invalid_argument("negative tensor dim");
            n *= static_cast<size_t>(d);
        }
        return n;
    }
    static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }

    size_t numel() const { return data.size(); }
    int dim(size_t i) const { return shape.at(i); }
    int rank() const { return static_cast<int>(shape.size()); }

    double& operator[](size_t i) { return data[i]; }
    double operator[](size_t i) const { return data[i]; }

    // (c, h, w) indexing for rank-3 tensors
    size_t idx3(int c, int h, int w) const {
        return (static_cast<size_t>(c) * shape[1] + h) * shape[2] + w;
    }
    double& at3(int c, int h, int w) { return data[idx3(c, h, w)]; }
    double at3(int c, int h, int w) const { return data[idx3(c, h, w)]; }

    // (n, c, h, w) indexing for rank-4 tensors
    size_t idx4(int n, int c, int h, int w) const {
        return ((static_cast<size_t>(n) * shape[1] + c) * shape[2] + h) * shape[3] + w;
    }
    double& at4(int n, int c, int h, int w) { return data[idx4(n, c, h, w)]; }
    double at4(int n, int c, int h, int w) const { return data[idx4(n, c, h, w)]; }

    void fill(double v) { std::fill(data.begin(), data.end(), v); }
    bool allFinite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
    bool sameShape(const Tensor& o) const { return shape == o.shape; }

    bool operator==(const Tensor&) const = default;
};

}  // namespace gx
