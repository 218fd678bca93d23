#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "legdga/errors.hpp"
#include "legdga/ncalg.hpp"

namespace legdga {

// Small dense matrices with exact entries. Ranks, kernels and quotients are
// only computed over Z/2; integer matrices are used for exact identities.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Matrix&) const = default;

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw Error(Error::Kind::validation, "matrix dimension mismatch");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += x * rhs.at(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw Error(Error::Kind::validation, "matrix dimension mismatch");
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw Error(Error::Kind::validation, "matrix dimension mismatch");
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
        return out;
    }

    Matrix mod2() const {
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            Int v = a_[i] % 2;
            if (v < 0) v += 2;
            out.a_[i] = v;
        }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

using Gf2Vec = std::vector<unsigned char>;

namespace gf2 {

// Row echelon reduction in place; returns pivot columns. Entries must be 0/1.
std::vector<std::size_t> rref(std::vector<Gf2Vec>& rows);

inline std::vector<Gf2Vec> to_rows(const Matrix& m) {
    std::vector<Gf2Vec> rows(m.rows(), Gf2Vec(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int v = m.at(i, j) % 2;
            rows[i][j] = static_cast<unsigned char>(v < 0 ? (v + 2) != 0 : v != 0);
        }
    return rows;
}

std::size_t rank(const Matrix& m);

// Basis of the right kernel {x : m x = 0} over Z/2; columns of m index x.
std::vector<Gf2Vec> kernel(const Matrix& m);

// Solve m x = b over Z/2; nullopt when inconsistent.
std::optional<Gf2Vec> solve(const Matrix& m, const Gf2Vec& b);

} // namespace gf2

} // namespace legdga
