#include "spiegel/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace spiegel {

FqMatrix FqMatrix::identity(FieldPtr F, std::size_t n) {
    FqMatrix m(std::move(F), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix FqMatrix::from_columns(FieldPtr F, std::size_t rows, const std::vector<FqVec>& cols) {
    FqMatrix m(std::move(F), rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

FqMatrix FqMatrix::from_rows(FieldPtr F, std::size_t cols, const std::vector<FqVec>& rows) {
    FqMatrix m(std::move(F), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
    }
    return m;
}

FqVec FqMatrix::row(std::size_t i) const {
    return FqVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

FqVec FqMatrix::column(std::size_t j) const {
    FqVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

FqMatrix FqMatrix::mul(const FqMatrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    const FiniteField& F = *F_;
    FqMatrix r(F_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem x = at(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Elem y = b.at(k, j);
                if (y) r.at(i, j) = F.add(r.at(i, j), F.mul(x, y));
            }
        }
    return r;
}

FqVec FqMatrix::apply(const FqVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
    const FiniteField& F = *F_;
    FqVec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Elem s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s = F.add(s, F.mul(at(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

FqMatrix FqMatrix::add(const FqMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix add: shape mismatch");
    FqMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], b.a_[i]);
    return r;
}

FqMatrix FqMatrix::sub(const FqMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
    FqMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], b.a_[i]);
    return r;
}

FqMatrix FqMatrix::scale(Elem s) const {
    FqMatrix r = *this;
    for (auto& x : r.a_) x = F_->mul(x, s);
    return r;
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix r(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FqMatrix FqMatrix::hstack(const FqMatrix& b) const {
    if (rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    FqMatrix r(F_, rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, cols_ + j) = b.at(i, j);
    }
    return r;
}

FqMatrix FqMatrix::vstack(const FqMatrix& b) const {
    if (cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    FqMatrix r(F_, rows_ + b.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + a_.size());
    return r;
}

bool FqMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
}

std::vector<std::size_t> FqMatrix::rref() {
    const FiniteField& F = *F_;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = rows_;
        for (std::size_t i = r; i < rows_; ++i)
            if (at(i, c)) {
                piv = i;
                break;
            }
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
        const Elem inv = F.inv(at(r, c));
        Elem* pr = &a_[r * cols_];
        for (std::size_t j = c; j < cols_; ++j) pr[j] = F.mul(pr[j], inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const Elem f = at(i, c);
            if (!f) continue;
            Elem* pi = &a_[i * cols_];
            for (std::size_t j = c; j < cols_; ++j)
                if (pr[j]) pi[j] = F.sub(pi[j], F.mul(f, pr[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t FqMatrix::rank() const {
    FqMatrix m = *this;
    return m.rref().size();
}

std::vector<FqVec> FqMatrix::kernel() const {
    FqMatrix m = *this;
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FqVec> basis;
    for (std::size_t fcol = 0; fcol < cols_; ++fcol) {
        if (is_pivot[fcol]) continue;
        FqVec v(cols_, 0);
        v[fcol] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F_->neg(m.at(r, fcol));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FqVec> FqMatrix::solve(const FqVec& b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve: shape mismatch");
    FqMatrix aug = hstack(FqMatrix::from_columns(F_, rows_, {b}));
    const auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    FqVec x(cols_, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

std::optional<FqMatrix> FqMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    FqMatrix aug = hstack(identity(F_, rows_));
    const auto pivots = aug.rref();
    if (pivots.size() < rows_ || pivots[rows_ - 1] != rows_ - 1) return std::nullopt;
    FqMatrix r(F_, rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) r.at(i, j) = aug.at(i, rows_ + j);
    return r;
}

std::vector<FqVec> span_basis(const FieldPtr& F, std::size_t dim, const std::vector<FqVec>& vs) {
    if (vs.empty()) return {};
    FqMatrix m = FqMatrix::from_rows(F, dim, vs);
    const auto piv = m.rref();
    std::vector<FqVec> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(m.row(i));
    return out;
}

// ---------------------------------------------------------------- integers

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& b) const {
    if (cols != b.rows) throw std::invalid_argument("integer product: shape mismatch");
    IntMatrix r(rows, b.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const mpz_class& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r.at(i, j) += x * b.at(k, j);
        }
    return r;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j && at(i, j) != 0) return false;
    return true;
}

mpz_class IntMatrix::det() const {
    if (rows != cols) throw std::invalid_argument("det of non-square matrix");
    // Bareiss fraction-free elimination
    IntMatrix m = *this;
    const std::size_t n = rows;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = t;
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::vector<mpz_class> SmithForm::invariants() const {
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < std::min(S.rows, S.cols); ++i)
        if (S.at(i, i) != 0) out.push_back(S.at(i, i));
    return out;
}

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(dst, j) -= f * m.at(src, j);
}
void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, dst) -= f * m.at(i, src);
}
void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithForm sf{IntMatrix::identity(M.rows), M, IntMatrix::identity(M.cols)};
    IntMatrix& S = sf.S;
    IntMatrix& U = sf.U;
    IntMatrix& V = sf.V;
    const std::size_t n = std::min(S.rows, S.cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = S.rows, pj = S.cols;
            for (std::size_t i = t; i < S.rows; ++i)
                for (std::size_t j = t; j < S.cols; ++j)
                    if (S.at(i, j) != 0 &&
                        (pi == S.rows || mpz_cmpabs(S.at(i, j).get_mpz_t(), S.at(pi, pj).get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi == S.rows) {
                for (std::size_t i = 0; i < n; ++i)
                    if (S.at(i, i) < 0) {
                        for (std::size_t j = 0; j < S.cols; ++j) S.at(i, j) = -S.at(i, j);
                        for (std::size_t j = 0; j < U.cols; ++j) U.at(i, j) = -U.at(i, j);
                    }
                return sf;
            }
            swap_rows(S, t, pi);
            swap_rows(U, t, pi);
            swap_cols(S, t, pj);
            swap_cols(V, t, pj);
            bool clean = true;
            const mpz_class piv = S.at(t, t);
            for (std::size_t i = t + 1; i < S.rows; ++i) {
                if (S.at(i, t) == 0) continue;
                mpz_class f;
                mpz_fdiv_q(f.get_mpz_t(), S.at(i, t).get_mpz_t(), piv.get_mpz_t());
                row_axpy(S, i, t, f);
                row_axpy(U, i, t, f);
                if (S.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < S.cols; ++j) {
                if (S.at(t, j) == 0) continue;
                mpz_class f;
                mpz_fdiv_q(f.get_mpz_t(), S.at(t, j).get_mpz_t(), piv.get_mpz_t());
                col_axpy(S, j, t, f);
                col_axpy(V, j, t, f);
                if (S.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition on the trailing block
            bool divides = true;
            for (std::size_t i = t + 1; i < S.rows && divides; ++i)
                for (std::size_t j = t + 1; j < S.cols; ++j)
                    if (!mpz_divisible_p(S.at(i, j).get_mpz_t(), piv.get_mpz_t())) {
                        // fold row i into row t and retry
                        row_axpy(S, t, i, -1);
                        row_axpy(U, t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S.at(t, t) < 0) {
            for (std::size_t j = 0; j < S.cols; ++j) S.at(t, j) = -S.at(t, j);
            for (std::size_t j = 0; j < U.cols; ++j) U.at(t, j) = -U.at(t, j);
        }
    }
    return sf;
}

// ------------------------------------------------------------------- HNF

bool LatticeHnf::add(std::vector<mpz_class> v) {
    if (v.size() != dim_) throw std::invalid_argument("LatticeHnf::add: dimension mismatch");
    bool changed = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (v[c] == 0) {
            if (r < rows_.size() && pivots_[r] == c) ++r;
            continue;
        }
        if (r < rows_.size() && pivots_[r] == c) {
            auto& row = rows_[r];
            if (mpz_divisible_p(v[c].get_mpz_t(), row[c].get_mpz_t())) {
                const mpz_class f = v[c] / row[c];
                for (std::size_t j = c; j < dim_; ++j) v[j] -= f * row[j];
            } else {
                mpz_class g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
                const mpz_class a = row[c] / g, b = v[c] / g;
                std::vector<mpz_class> nrow(dim_);
                for (std::size_t j = c; j < dim_; ++j) {
                    nrow[j] = s * row[j] + t * v[j];
                    v[j] = a * v[j] - b * row[j];
                }
                row = std::move(nrow);
                if (row[c] < 0)
                    for (auto& x : row) x = -x;
                changed = true;
                reduce_above(r);
            }
            ++r;
            continue;
        }
        // new pivot column
        if (v[c] < 0)
            for (auto& x : v) x = -x;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(r), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(r), c);
        reduce_above(r);
        // rows below may need reduction of their entries above later pivots
        for (std::size_t k = r + 1; k < rows_.size(); ++k) reduce_above(k);
        return true;
    }
    if (changed)
        for (std::size_t k = 0; k < rows_.size(); ++k) reduce_above(k);
    return changed;
}

void LatticeHnf::reduce_above(std::size_t r) {
    const std::size_t c = pivots_[r];
    const mpz_class& p = rows_[r][c];
    for (std::size_t i = 0; i < r; ++i) {
        auto& row = rows_[i];
        if (row[c] == 0) continue;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), row[c].get_mpz_t(), p.get_mpz_t());
        if (f == 0) continue;
        for (std::size_t j = c; j < dim_; ++j) row[j] -= f * rows_[r][j];
    }
}

mpz_class LatticeHnf::index() const {
    mpz_class r = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) r *= rows_[i][pivots_[i]];
    return r;
}

IntMatrix LatticeHnf::matrix() const {
    IntMatrix m(rows_.size(), dim_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < dim_; ++j) m.at(i, j) = rows_[i][j];
    return m;
}

bool LatticeHnf::contains(std::vector<mpz_class> v) const {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (r < rows_.size() && pivots_[r] == c) {
            if (v[c] != 0) {
                if (!mpz_divisible_p(v[c].get_mpz_t(), rows_[r][c].get_mpz_t())) return false;
                const mpz_class f = v[c] / rows_[r][c];
                for (std::size_t j = c; j < dim_; ++j) v[j] -= f * rows_[r][j];
            }
            ++r;
        } else if (v[c] != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace spiegel
