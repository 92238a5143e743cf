#ifndef NULLGEOM_MATRIX_HPP
#define NULLGEOM_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nullgeom/jet.hpp"

namespace nullgeom {

template <class T>
using Vec = std::vector<T>;

/// Small dense row-major matrix over doubles, jets or rationals.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T &fill = T(0)) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, fill) {}

    static Mat identity(int n)
    {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    T &operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const T &operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    Vec<T> col(int j) const
    {
        Vec<T> v(rows_);
        for (int i = 0; i < rows_; ++i) {
            v[i] = (*this)(i, j);
        }
        return v;
    }
    void set_col(int j, const Vec<T> &v)
    {
        for (int i = 0; i < rows_; ++i) {
            (*this)(i, j) = v[i];
        }
    }

    Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    T trace() const
    {
        T s(0);
        for (int i = 0; i < rows_ && i < cols_; ++i) {
            s += (*this)(i, i);
        }
        return s;
    }

    Mat &operator+=(const Mat &o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    Mat &operator-=(const Mat &o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    Mat &operator*=(const T &s)
    {
        for (auto &x : data_) {
            x *= s;
        }
        return *this;
    }

    friend Mat operator+(Mat a, const Mat &b) { return a += b; }
    friend Mat operator-(Mat a, const Mat &b) { return a -= b; }
    friend Mat operator*(Mat a, const T &s) { return a *= s; }
    friend Mat operator*(const T &s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat &a, const Mat &b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product shape mismatch");
        }
        Mat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const T &aik = a(i, k);
                for (int j = 0; j < b.cols_; ++j) {
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }

    friend Vec<T> operator*(const Mat &a, const Vec<T> &v)
    {
        if (static_cast<int>(v.size()) != a.cols_) {
            throw std::invalid_argument("matrix-vector shape mismatch");
        }
        Vec<T> r(a.rows_, T(0));
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                r[i] += a(i, k) * v[k];
            }
        }
        return r;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;

    void check_same(const Mat &o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("matrix shape mismatch");
        }
    }
};

inline Mat<double> values(const Mat<Jet> &m)
{
    Mat<double> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            r(i, j) = m(i, j).value();
        }
    }
    return r;
}

inline Vec<double> values(const Vec<Jet> &v)
{
    Vec<double> r;
    r.reserve(v.size());
    for (const auto &x : v) {
        r.push_back(x.value());
    }
    return r;
}

inline const Mat<double> &values(const Mat<double> &m) { return m; }
inline const Vec<double> &values(const Vec<double> &v) { return v; }

template <class T>
Vec<T> axpy(const Vec<T> &x, const T &a, const Vec<T> &y)
{
    Vec<T> r = x;
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] += a * y[k];
    }
    return r;
}

template <class T>
Vec<T> scaled(const Vec<T> &x, const T &a)
{
    Vec<T> r = x;
    for (auto &c : r) {
        c *= a;
    }
    return r;
}

template <class T>
T euclid_dot(const Vec<T> &x, const Vec<T> &y)
{
    T s(0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += x[k] * y[k];
    }
    return s;
}

} // namespace nullgeom

#endif
