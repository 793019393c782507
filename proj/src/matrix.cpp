#include "swhw/matrix.hpp"

#include "swhw/error.hpp"

#include <sstream>

namespace swhw {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.resize(static_cast<size_t>(r_) * c_);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c_)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        int j = 0;
        for (long v : row) (*this)(i, j++) = v;
        ++i;
    }
}

QMatrix QMatrix::identity(int n) { return scalar(n, 1); }

QMatrix QMatrix::scalar(int n, const mpq_class& s) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<mpq_class>>& rows, int cols) {
    int r = static_cast<int>(rows.size());
    int c = cols >= 0 ? cols : (r ? static_cast<int>(rows[0].size()) : 0);
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    QMatrix m(r_, o.c_);
    mpq_class t;
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const mpq_class& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < o.c_; ++j) {
                const mpq_class& y = o(k, j);
                if (sgn(y) == 0) continue;
                t = x * y;
                m(i, j) += t;
            }
        }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
    QMatrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shape");
    QMatrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
}

QMatrix QMatrix::operator-() const { return scaled(-1); }

QMatrix QMatrix::scaled(const mpq_class& s) const {
    QMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

bool QMatrix::is_symmetric() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < c_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

QMatrix QMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > r_ || c0 + nc > c_)
        throw Error(ErrorKind::DimensionMismatch, "block out of range");
    QMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void QMatrix::set_block(int r0, int c0, const QMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.r_ > r_ || c0 + b.c_ > c_)
        throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
    for (int i = 0; i < b.r_; ++i)
        for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

QMatrix QMatrix::select_columns(const std::vector<int>& cols) const {
    QMatrix m(r_, static_cast<int>(cols.size()));
    for (int i = 0; i < r_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, cols[j]);
    return m;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
    if (a.r_ != b.r_) throw Error(ErrorKind::DimensionMismatch, "hstack rows");
    QMatrix m(a.r_, a.c_ + b.c_);
    m.set_block(0, 0, a);
    m.set_block(0, a.c_, b);
    return m;
}

QMatrix QMatrix::vstack(const QMatrix& a, const QMatrix& b) {
    if (a.c_ != b.c_) throw Error(ErrorKind::DimensionMismatch, "vstack cols");
    QMatrix m(a.r_ + b.r_, a.c_);
    m.set_block(0, 0, a);
    m.set_block(a.r_, 0, b);
    return m;
}

QMatrix QMatrix::block_diag(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.r_ + b.r_, a.c_ + b.c_);
    m.set_block(0, 0, a);
    m.set_block(a.r_, a.c_, b);
    return m;
}

QMatrix QMatrix::rref(std::vector<int>* pivots) const {
    QMatrix m = *this;
    int row = 0;
    mpq_class f;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int piv = -1;
        for (int i = row; i < r_; ++i)
            if (sgn(m(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < c_; ++j) std::swap(m(piv, j), m(row, j));
        f = m(row, col);
        for (int j = col; j < c_; ++j) m(row, j) /= f;
        for (int i = 0; i < r_; ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            f = m(i, col);
            for (int j = col; j < c_; ++j) m(i, j) -= f * m(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

int QMatrix::rank() const {
    if (empty()) return 0;
    std::vector<int> piv;
    rref(&piv);
    return static_cast<int>(piv.size());
}

mpq_class QMatrix::det() const {
    if (r_ != c_) throw Error(ErrorKind::DimensionMismatch, "det of non-square matrix");
    QMatrix m = *this;
    mpq_class d = 1, f;
    for (int col = 0; col < r_; ++col) {
        int piv = -1;
        for (int i = col; i < r_; ++i)
            if (sgn(m(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < c_; ++j) std::swap(m(piv, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        for (int i = col + 1; i < r_; ++i) {
            if (sgn(m(i, col)) == 0) continue;
            f = m(i, col) / m(col, col);
            for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    QMatrix aug = hstack(*this, identity(r_));
    std::vector<int> piv;
    QMatrix red = aug.rref(&piv);
    if (static_cast<int>(piv.size()) < r_ || (r_ > 0 && piv[r_ - 1] >= r_)) return std::nullopt;
    return red.block(0, r_, r_, r_);
}

QMatrix QMatrix::kernel() const {
    std::vector<int> piv;
    QMatrix red = rref(&piv);
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < c_; ++j)
        if (!is_piv[j]) free.push_back(j);
    QMatrix k(c_, static_cast<int>(free.size()));
    for (size_t t = 0; t < free.size(); ++t) {
        int fj = free[t];
        k(fj, static_cast<int>(t)) = 1;
        for (size_t i = 0; i < piv.size(); ++i) k(piv[i], static_cast<int>(t)) = -red(static_cast<int>(i), fj);
    }
    return k;
}

std::optional<QMatrix> QMatrix::solve(const QMatrix& b) const {
    if (b.r_ != r_) throw Error(ErrorKind::DimensionMismatch, "solve rows");
    QMatrix aug = hstack(*this, b);
    std::vector<int> piv;
    QMatrix red = aug.rref(&piv);
    QMatrix x(c_, b.c_);
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= c_) return std::nullopt;
        for (int j = 0; j < b.c_; ++j) x(piv[i], j) = red(static_cast<int>(i), c_ + j);
    }
    return x;
}

QMatrix QMatrix::complete_basis(const QMatrix& a, const QMatrix& b) {
    QMatrix aug = hstack(a, b);
    std::vector<int> piv;
    aug.rref(&piv);
    std::vector<int> extra;
    for (int p : piv)
        if (p >= a.c_) extra.push_back(p - a.c_);
    return b.select_columns(extra);
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace swhw
