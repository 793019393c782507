#pragma once
// Quadratic spaces over Q (read over Q, Q_p or R), diagonalization and
// Hasse-Witt classes.

#include "swhw/coh.hpp"
#include "swhw/matrix.hpp"

#include <utility>
#include <vector>

namespace swhw {

struct QuadSpace {
    QMatrix gram;
    BaseField field = BaseField::Q();

    QuadSpace() = default;
    QuadSpace(QMatrix g, BaseField f = BaseField::Q());
    static QuadSpace diagonal(const std::vector<mpq_class>& values, BaseField f = BaseField::Q());
    int dim() const { return gram.rows(); }
};

QuadSpace orthogonal_sum(const QuadSpace& a, const QuadSpace& b);
/// r hyperbolic planes [[0,1],[1,0]]
QuadSpace hyperbolic(int r, BaseField f = BaseField::Q());

struct DiagForm {
    BaseField field = BaseField::Q();
    std::vector<SquareClass> entries;

    static DiagForm of(const BaseField& f, const std::vector<mpq_class>& values);
    int dim() const { return static_cast<int>(entries.size()); }
};

enum class Pivot {
    Forward,  ///< first remaining index with a nonzero diagonal entry
    MinAbs,   ///< remaining diagonal entry of least absolute value
};

/// P^T G P = diag(values) with P invertible.
struct Diagonalization {
    std::vector<mpq_class> values;
    QMatrix P;
};

Diagonalization diagonalize_exact(const QMatrix& gram, Pivot strategy = Pivot::Forward);
DiagForm diagonalize(const QuadSpace& D, Pivot strategy = Pivot::Forward);

SquareClass disc(const DiagForm& d);
inline SquareClass hw1(const DiagForm& d) { return disc(d); }
/// sum over i<j of {a_i, a_j}
H2Class hw2(const DiagForm& d);
/// product of (1 + {a_i})
TruncClass hw_total(const DiagForm& d);

struct IsotropicReduction {
    QuadSpace D0;  ///< W^perp / W
    int r = 0;
};

/// W holds a basis of a totally isotropic subspace as columns.
IsotropicReduction isotropic_reduce(const QuadSpace& D, const QMatrix& W);
/// hw2(D0) + r {-1, disc D0} + C(r,2) {-1,-1}
H2Class isotropic_hw2_rhs(const DiagForm& d0, long r);

/// hw of the a-scaled form from the closed formula in dim, disc, hw2.
TruncClass scale_hw(const DiagForm& d, const SquareClass& a);
TruncClass scale_hw(const TruncClass& hw, long dim, const SquareClass& a);
/// hw of the form with every entry multiplied by a, recomputed.
TruncClass scale_hw_direct(const DiagForm& d, const SquareClass& a);

struct GradedQuadSpace {
    QuadSpace middle;
    std::vector<std::pair<int, long>> offdiag;  ///< (q < 0, dim D^q)
};

struct GradedHW {
    SquareClass hw1;
    H2Class hw2;
    bool operator==(const GradedHW& o) const { return hw1 == o.hw1 && hw2 == o.hw2; }
};

/// r = sum over q<0 of (-1)^q dim D^q
long graded_rank(const std::vector<std::pair<int, long>>& offdiag);
GradedHW graded_hw(const GradedQuadSpace& D);
/// Same formulas, with the middle given by its total class.
GradedHW graded_hw(const TruncClass& middle, const std::vector<std::pair<int, long>>& offdiag);
/// hw(D^0) times the product of (1+{-1})^{(-1)^q dim D^q}.
TruncClass graded_hw_product(const TruncClass& middle, const std::vector<std::pair<int, long>>& offdiag);

struct Signature {
    int plus = 0;
    int minus = 0;
    bool operator==(const Signature& o) const { return plus == o.plus && minus == o.minus; }
};

Signature signature(const QuadSpace& D);
/// (1 + {-1})^{d^-} read over R: hw1 = d^- {-1}, hw2 = C(d^-,2) {-1,-1}
TruncClass real_hw(long dminus);

/// Hasse-Minkowski over the field of the spaces.
bool isometric(const QuadSpace& a, const QuadSpace& b);

}  // namespace swhw
