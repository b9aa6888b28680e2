// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spincouple/qsqrt.hpp"

namespace spincouple {

inline QSqrt conj_value(const QSqrt& v) { return v; }
inline CQSqrt conj_value(const CQSqrt& v) { return v.conj(); }
inline std::complex<double> conj_value(const std::complex<double>& v) {
    return std::conj(v);
}

/// Dense tensor over an arbitrary list of axis lengths, stored row-major
/// (first index outermost).  Rank 0 is a scalar with a single entry.
/// Cartesian axes have length 3; a trailing spinor axis has length 2.
template <typename T>
class Tensor {
public:
    Tensor() : dims_(), data_(1, T{}) {}

    explicit Tensor(std::vector<int> dims) : dims_(std::move(dims)) {
        std::size_t n = 1;
        for (int d : dims_) {
            if (d <= 0) throw std::invalid_argument("tensor axis length must be positive");
            n *= static_cast<std::size_t>(d);
        }
        data_.assign(n, T{});
    }

    static Tensor scalar(T value) {
        Tensor t;
        t.data_[0] = std::move(value);
        return t;
    }

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int axis) const { return dims_.at(static_cast<std::size_t>(axis)); }
    std::size_t size() const { return data_.size(); }

    T& operator[](std::size_t flat) { return data_[flat]; }
    const T& operator[](std::size_t flat) const { return data_[flat]; }

    std::size_t offset(const std::vector<int>& idx) const {
        if (idx.size() != dims_.size()) throw std::invalid_argument("tensor index rank mismatch");
        std::size_t flat = 0;
        for (std::size_t k = 0; k < dims_.size(); ++k) {
            int i = idx[k];
            if (i < 0 || i >= dims_[k]) throw std::out_of_range("tensor index out of range");
            flat = flat * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(i);
        }
        return flat;
    }

    T& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
    const T& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
    T& at(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }
    const T& at(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }

    Tensor& operator+=(const Tensor& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Tensor& operator-=(const Tensor& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Tensor& operator*=(const T& s) {
        for (T& v : data_) v = v * s;
        return *this;
    }

    Tensor operator-() const {
        Tensor t = *this;
        for (T& v : t.data_) v = -v;
        return t;
    }

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, const T& s) { return a *= s; }
    friend Tensor operator*(const T& s, Tensor a) { return a *= s; }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.dims_ == b.dims_ && a.data_ == b.data_;
    }

    Tensor conjugate() const {
        Tensor t = *this;
        for (T& v : t.data_) v = conj_value(v);
        return t;
    }

    bool is_zero() const {
        for (const T& v : data_)
            if (!(v == T{})) return false;
        return true;
    }

private:
    void require_same_shape(const Tensor& o) const {
        if (dims_ != o.dims_) throw std::invalid_argument("tensor shape mismatch");
    }

    std::vector<int> dims_;
    std::vector<T> data_;
};

using CTensor = Tensor<CQSqrt>;
using NTensor = Tensor<std::complex<double>>;

/// Spinor-valued tensors share the dense container; their axis list is
/// rank Cartesian axes followed by one spinor axis of length 2.
using SpinorTensor = CTensor;

/// Advance a multi-index through all values, row-major.  Returns false
/// once the index wraps back to all zeros.
inline bool next_index(std::vector<int>& idx, const std::vector<int>& dims) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        if (++idx[k] < dims[k]) return true;
        idx[k] = 0;
    }
    return false;
}

template <typename T>
Tensor<T> tensor_product(const Tensor<T>& a, const Tensor<T>& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    Tensor<T> out(std::move(dims));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i * b.size() + j] = a[i] * b[j];
    return out;
}

/// Contract the trailing k axes of a with the leading k axes of b.
/// With k equal to both ranks this is the full scalar contraction.
template <typename T>
Tensor<T> contract(const Tensor<T>& a, const Tensor<T>& b, int k) {
    if (k < 0 || k > a.rank() || k > b.rank())
        throw std::invalid_argument("contraction order out of range");
    std::size_t inner = 1;
    for (int i = 0; i < k; ++i) {
        int da = a.dim(a.rank() - k + i);
        int db = b.dim(i);
        if (da != db) throw std::invalid_argument("contraction axis mismatch");
        inner *= static_cast<std::size_t>(da);
    }
    std::vector<int> dims(a.dims().begin(), a.dims().end() - k);
    dims.insert(dims.end(), b.dims().begin() + k, b.dims().end());
    Tensor<T> out(std::move(dims));
    const std::size_t rows = a.size() / inner;
    const std::size_t cols = b.size() / inner;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            T acc{};
            for (std::size_t m = 0; m < inner; ++m)
                acc += a[r * inner + m] * b[m * cols + c];
            out[r * cols + c] = acc;
        }
    return out;
}

/// Contract one axis of a against one axis of b; the result carries a's
/// remaining axes followed by b's remaining axes.
template <typename T>
Tensor<T> contract_single(const Tensor<T>& a, int axis_a, const Tensor<T>& b, int axis_b) {
    if (axis_a < 0 || axis_a >= a.rank() || axis_b < 0 || axis_b >= b.rank())
        throw std::invalid_argument("contraction axis out of range");
    if (a.dim(axis_a) != b.dim(axis_b))
        throw std::invalid_argument("contraction axis mismatch");
    const int n = a.dim(axis_a);
    std::vector<int> dims;
    for (int i = 0; i < a.rank(); ++i)
        if (i != axis_a) dims.push_back(a.dim(i));
    for (int i = 0; i < b.rank(); ++i)
        if (i != axis_b) dims.push_back(b.dim(i));
    Tensor<T> out(dims);
    if (out.size() == 0) return out;
    std::vector<int> idx(dims.size(), 0);
    std::vector<int> ia(static_cast<std::size_t>(a.rank()), 0);
    std::vector<int> ib(static_cast<std::size_t>(b.rank()), 0);
    do {
        std::size_t p = 0;
        for (int i = 0; i < a.rank(); ++i)
            if (i != axis_a) ia[static_cast<std::size_t>(i)] = idx[p++];
        for (int i = 0; i < b.rank(); ++i)
            if (i != axis_b) ib[static_cast<std::size_t>(i)] = idx[p++];
        T acc{};
        for (int m = 0; m < n; ++m) {
            ia[static_cast<std::size_t>(axis_a)] = m;
            ib[static_cast<std::size_t>(axis_b)] = m;
            acc += a.at(ia) * b.at(ib);
        }
        out.at(idx) = acc;
    } while (next_index(idx, dims));
    return out;
}

/// Trace over two axes of a single tensor.
template <typename T>
Tensor<T> trace(const Tensor<T>& t, int axis_p, int axis_q) {
    if (axis_p == axis_q) throw std::invalid_argument("trace axes must differ");
    if (axis_p > axis_q) std::swap(axis_p, axis_q);
    if (axis_q >= t.rank()) throw std::invalid_argument("trace axis out of range");
    if (t.dim(axis_p) != t.dim(axis_q))
        throw std::invalid_argument("trace axis mismatch");
    const int n = t.dim(axis_p);
    std::vector<int> dims;
    for (int i = 0; i < t.rank(); ++i)
        if (i != axis_p && i != axis_q) dims.push_back(t.dim(i));
    Tensor<T> out(dims);
    std::vector<int> idx(dims.size(), 0);
    std::vector<int> it(static_cast<std::size_t>(t.rank()), 0);
    do {
        std::size_t p = 0;
        for (int i = 0; i < t.rank(); ++i)
            if (i != axis_p && i != axis_q) it[static_cast<std::size_t>(i)] = idx[p++];
        T acc{};
        for (int m = 0; m < n; ++m) {
            it[static_cast<std::size_t>(axis_p)] = m;
            it[static_cast<std::size_t>(axis_q)] = m;
            acc += t.at(it);
        }
        out.at(idx) = acc;
    } while (next_index(idx, dims));
    return out;
}

inline NTensor to_numeric(const CTensor& t) {
    NTensor out(t.dims());
    for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k].to_cfloat();
    return out;
}

/// Dense matrix used for operator blocks in a fixed spin basis, with rows
/// and columns ordered by descending projection.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), T{}) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix shape must be positive");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[index(i, j)]; }
    const T& operator()(int i, int j) const { return a_[index(i, j)]; }

    Mat& operator+=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    Mat& operator-=(const Mat& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    Mat& operator*=(const T& s) {
        for (T& v : a_) v = v * s;
        return *this;
    }

    Mat operator-() const {
        Mat m = *this;
        for (T& v : m.a_) v = -v;
        return m;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const T& s) { return a *= s; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& v = a(i, k);
                if (v == T{}) continue;
                for (int j = 0; j < b.cols_; ++j) out(i, j) += v * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    Mat adjoint() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = conj_value((*this)(i, j));
        return m;
    }

    bool is_zero() const {
        for (const T& v : a_)
            if (!(v == T{})) return false;
        return true;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    void require_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<T> a_;
};

using CMat = Mat<CQSqrt>;
using NMat = Mat<std::complex<double>>;

inline NMat to_numeric(const CMat& m) {
    NMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_cfloat();
    return out;
}

}  // namespace spincouple
