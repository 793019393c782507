#pragma once
// Dense matrices over Q with exact elimination.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace swhw {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }
    static QMatrix identity(int n);
    static QMatrix scalar(int n, const mpq_class& s);
    static QMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows, int cols = -1);

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    mpq_class& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const mpq_class& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator-() const;
    QMatrix scaled(const mpq_class& s) const;
    bool operator==(const QMatrix& o) const;
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

    QMatrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    QMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const QMatrix& b);
    QMatrix column(int j) const { return block(0, j, r_, 1); }
    QMatrix select_columns(const std::vector<int>& cols) const;

    static QMatrix hstack(const QMatrix& a, const QMatrix& b);
    static QMatrix vstack(const QMatrix& a, const QMatrix& b);
    static QMatrix block_diag(const QMatrix& a, const QMatrix& b);

    int rank() const;
    mpq_class det() const;
    std::optional<QMatrix> inverse() const;
    /// Columns form a basis of {x : A x = 0}.
    QMatrix kernel() const;
    /// Some X with A X = B, if one exists.
    std::optional<QMatrix> solve(const QMatrix& b) const;
    /// Reduced row echelon form; pivot columns appended to `pivots`.
    QMatrix rref(std::vector<int>* pivots = nullptr) const;
    /// Columns of B completing the columns of A (assumed independent) to a basis of the span of [A | B].
    static QMatrix complete_basis(const QMatrix& a, const QMatrix& b);

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<mpq_class> a_;
};

}  // namespace swhw
