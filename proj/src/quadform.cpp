#include "swhw/quadform.hpp"

#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"

#include <algorithm>

namespace swhw {

QuadSpace::QuadSpace(QMatrix g, BaseField f) : gram(std::move(g)), field(f) {
    if (!gram.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "Gram matrix is not symmetric");
}

QuadSpace QuadSpace::diagonal(const std::vector<mpq_class>& values, BaseField f) {
    int n = static_cast<int>(values.size());
    QMatrix g(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = values[i];
    return QuadSpace(g, f);
}

QuadSpace orthogonal_sum(const QuadSpace& a, const QuadSpace& b) {
    if (a.field != b.field) throw Error(ErrorKind::FieldMismatch, "orthogonal_sum");
    return QuadSpace(QMatrix::block_diag(a.gram, b.gram), a.field);
}

QuadSpace hyperbolic(int r, BaseField f) {
    QMatrix g(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        g(2 * i, 2 * i + 1) = 1;
        g(2 * i + 1, 2 * i) = 1;
    }
    return QuadSpace(g, f);
}

DiagForm DiagForm::of(const BaseField& f, const std::vector<mpq_class>& values) {
    DiagForm d;
    d.field = f;
    for (const auto& v : values) d.entries.push_back(sqclass(f, v));
    return d;
}

Diagonalization diagonalize_exact(const QMatrix& gram, Pivot strategy) {
    const int n = gram.rows();
    if (gram.cols() != n) throw Error(ErrorKind::DimensionMismatch, "Gram matrix not square");
    QMatrix A = gram;
    QMatrix P = QMatrix::identity(n);
    std::vector<int> rem(n);
    for (int i = 0; i < n; ++i) rem[i] = i;
    std::vector<int> order;

    auto add_col = [&](int k, int j) {  // basis vector k += basis vector j
        for (int i = 0; i < n; ++i) A(i, k) += A(i, j);
        for (int i = 0; i < n; ++i) A(k, i) += A(j, i);
        for (int i = 0; i < n; ++i) P(i, k) += P(i, j);
    };

    while (!rem.empty()) {
        int k = -1;
        for (int i : rem) {
            if (sgn(A(i, i)) == 0) continue;
            if (k < 0) {
                k = i;
                if (strategy == Pivot::Forward) break;
            } else if (abs(A(i, i)) < abs(A(k, k))) {
                k = i;
            }
        }
        if (k < 0) {
            // all remaining diagonal entries vanish: combine two basis vectors
            for (size_t a = 0; a < rem.size() && k < 0; ++a)
                for (size_t b = a + 1; b < rem.size(); ++b)
                    if (sgn(A(rem[a], rem[b])) != 0) {
                        add_col(rem[a], rem[b]);
                        k = rem[a];
                        break;
                    }
            if (k < 0) throw Error(ErrorKind::Degenerate, "bilinear form is degenerate");
        }
        mpq_class piv = A(k, k), c;
        for (int j : rem) {
            if (j == k || sgn(A(k, j)) == 0) continue;
            c = A(k, j) / piv;
            for (int i = 0; i < n; ++i) A(i, j) -= c * A(i, k);
            for (int i = 0; i < n; ++i) A(j, i) -= c * A(k, i);
            for (int i = 0; i < n; ++i) P(i, j) -= c * P(i, k);
        }
        order.push_back(k);
        rem.erase(std::find(rem.begin(), rem.end(), k));
    }
    Diagonalization out;
    std::vector<int> cols;
    for (int k : order) {
        out.values.push_back(A(k, k));
        cols.push_back(k);
    }
    out.P = P.select_columns(cols);
    return out;
}

DiagForm diagonalize(const QuadSpace& D, Pivot strategy) {
    return DiagForm::of(D.field, diagonalize_exact(D.gram, strategy).values);
}

SquareClass disc(const DiagForm& d) {
    SquareClass s = SquareClass::one(d.field);
    for (const auto& a : d.entries) s = s + a;
    return s;
}

H2Class hw2(const DiagForm& d) {
    H2Class x = H2Class::zero(d.field);
    for (size_t i = 0; i < d.entries.size(); ++i)
        for (size_t j = i + 1; j < d.entries.size(); ++j) x = x + cup(d.entries[i], d.entries[j]);
    return x;
}

TruncClass hw_total(const DiagForm& d) {
    TruncClass t = TruncClass::one(d.field);
    for (const auto& a : d.entries) t = t * TruncClass::linear(a);
    return t;
}

IsotropicReduction isotropic_reduce(const QuadSpace& D, const QMatrix& W) {
    const int n = D.dim();
    if (W.rows() != n) throw Error(ErrorKind::DimensionMismatch, "isotropic basis has wrong length");
    const int r = W.cols();
    if (W.rank() != r) throw Error(ErrorKind::NotIndependent, "isotropic vectors are dependent");
    if (!(W.transpose() * D.gram * W).is_zero())
        throw Error(ErrorKind::NotIsotropic, "subspace is not totally isotropic");
    if (D.gram.det() == 0) throw Error(ErrorKind::Degenerate, "bilinear form is degenerate");
    QMatrix perp = (W.transpose() * D.gram).kernel();
    QMatrix U = QMatrix::complete_basis(W, perp);
    IsotropicReduction out;
    out.r = r;
    out.D0 = QuadSpace(U.transpose() * D.gram * U, D.field);
    return out;
}

H2Class isotropic_hw2_rhs(const DiagForm& d0, long r) {
    const BaseField& f = d0.field;
    auto m1 = SquareClass::minus_one(f);
    return hw2(d0) + h2_times(r, cup(m1, disc(d0))) + h2_times(r * (r - 1) / 2, cup(m1, m1));
}

TruncClass scale_hw(const TruncClass& hw, long dim, const SquareClass& a) {
    const SquareClass& dsc = hw.s1;
    TruncClass out;
    out.s1 = sq_times(dim, a) + dsc;
    out.s2 = h2_times(dim * (dim - 1) / 2, cup(a, a)) + h2_times(dim - 1, cup(a, dsc)) + hw.s2;
    return out;
}

TruncClass scale_hw(const DiagForm& d, const SquareClass& a) { return scale_hw(hw_total(d), d.dim(), a); }

TruncClass scale_hw_direct(const DiagForm& d, const SquareClass& a) {
    DiagForm s;
    s.field = d.field;
    for (const auto& x : d.entries) s.entries.push_back(x + a);
    return hw_total(s);
}

long graded_rank(const std::vector<std::pair<int, long>>& offdiag) {
    long r = 0;
    for (const auto& [q, dim] : offdiag) {
        if (q >= 0) throw Error(ErrorKind::InvalidArgument, "off-diagonal degrees must be negative");
        if (dim < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension");
        r += (q % 2 == 0) ? dim : -dim;
    }
    return r;
}

GradedHW graded_hw(const TruncClass& middle, const std::vector<std::pair<int, long>>& offdiag) {
    const long r = graded_rank(offdiag);
    const BaseField& f = middle.field();
    auto m1 = SquareClass::minus_one(f);
    GradedHW g;
    g.hw1 = middle.s1 + sq_times(r, m1);
    g.hw2 = middle.s2 + h2_times(r, cup(m1, middle.s1)) + h2_times(r * (r - 1) / 2, cup(m1, m1));
    return g;
}

GradedHW graded_hw(const GradedQuadSpace& D) { return graded_hw(hw_total(diagonalize(D.middle)), D.offdiag); }

TruncClass graded_hw_product(const TruncClass& middle, const std::vector<std::pair<int, long>>& offdiag) {
    graded_rank(offdiag);
    TruncClass t = middle;
    auto one_m1 = TruncClass::linear(SquareClass::minus_one(middle.field()));
    for (const auto& [q, dim] : offdiag) t = t * trunc_pow(one_m1, (q % 2 == 0) ? dim : -dim);
    return t;
}

Signature signature(const QuadSpace& D) {
    Signature s;
    for (const auto& v : diagonalize_exact(D.gram).values) (sgn(v) > 0 ? s.plus : s.minus)++;
    return s;
}

TruncClass real_hw(long dminus) { return cbar_rank(BaseField::R(), dminus); }

bool isometric(const QuadSpace& a, const QuadSpace& b) {
    if (a.field != b.field) throw Error(ErrorKind::FieldMismatch, "isometric");
    if (a.dim() != b.dim()) return false;
    if (a.dim() == 0) return true;
    DiagForm da = diagonalize(a), db = diagonalize(b);
    if (disc(da) != disc(db) || hw2(da) != hw2(db)) return false;
    if (a.field.is_rationals() || a.field.is_reals()) return signature(a) == signature(b);
    return true;
}

}  // namespace swhw
