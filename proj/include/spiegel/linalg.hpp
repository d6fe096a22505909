#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "spiegel/finite_field.hpp"

namespace spiegel {

using FqVec = std::vector<Elem>;

/// Dense row-major matrix over a table-driven finite field.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(FieldPtr F, std::size_t rows, std::size_t cols)
        : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static FqMatrix identity(FieldPtr F, std::size_t n);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static FqMatrix from_columns(FieldPtr F, std::size_t rows, const std::vector<FqVec>& cols);
    static FqMatrix from_rows(FieldPtr F, std::size_t cols, const std::vector<FqVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FiniteField& field() const { return *F_; }
    const FieldPtr& field_ptr() const { return F_; }

    Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Elem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    FqVec row(std::size_t i) const;
    FqVec column(std::size_t j) const;

    FqMatrix mul(const FqMatrix& b) const;
    FqVec apply(const FqVec& v) const;
    FqMatrix add(const FqMatrix& b) const;
    FqMatrix sub(const FqMatrix& b) const;
    FqMatrix scale(Elem s) const;
    FqMatrix transpose() const;
    FqMatrix hstack(const FqMatrix& b) const;
    FqMatrix vstack(const FqMatrix& b) const;
    bool is_zero() const;

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;
    /// Basis of {x : A x = 0}.
    std::vector<FqVec> kernel() const;
    /// Basis of {y : y A = 0}.
    std::vector<FqVec> left_kernel() const { return transpose().kernel(); }
    /// Some x with A x = b, or nothing when inconsistent.
    std::optional<FqVec> solve(const FqVec& b) const;
    std::optional<FqMatrix> inverse() const;

    friend bool operator==(const FqMatrix& x, const FqMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    FieldPtr F_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> a_;
};

/// Basis of the span of the vectors, in reduced echelon form.
std::vector<FqVec> span_basis(const FieldPtr& F, std::size_t dim, const std::vector<FqVec>& vs);

/// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<mpz_class> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static IntMatrix identity(std::size_t n);

    mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    IntMatrix mul(const IntMatrix& b) const;
    bool is_diagonal() const;
    mpz_class det() const;

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

struct SmithForm {
    IntMatrix U, S, V;
    /// Nonzero diagonal entries of S, positive, in divisibility order.
    std::vector<mpz_class> invariants() const;
};

/// U * M * V = S with U, V unimodular and S diagonal with s_i | s_{i+1}.
SmithForm smith_normal_form(const IntMatrix& M);

/// Row-style Hermite normal form of a growing integer lattice. Rows are kept
/// with strictly increasing pivot columns, positive pivots, and entries above
/// each pivot reduced modulo it.
class LatticeHnf {
public:
    explicit LatticeHnf(std::size_t dim) : dim_(dim) {}

    /// Adds v to the generating set; true when the lattice grew.
    bool add(std::vector<mpz_class> v);
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    bool full_rank() const { return rows_.size() == dim_; }
    /// Pivot column of each row, increasing.
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// Index in Z^dim; only meaningful when full rank.
    mpz_class index() const;
    IntMatrix matrix() const;
    bool contains(std::vector<mpz_class> v) const;

private:
    void reduce_above(std::size_t r);

    std::size_t dim_;
    std::vector<std::vector<mpz_class>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace spiegel
