#pragma once
// Orthogonal representations given as sums of quadratic characters and
// hyperbolic summands W + W^dual, with their Stiefel-Whitney classes.

#include "swhw/coh.hpp"
#include "swhw/quadform.hpp"

#include <utility>
#include <vector>

namespace swhw {

struct HypSummand {
    CharClass det;  ///< det W
    long rank = 1;  ///< dim W
};

struct OrthRep {
    BaseField field = BaseField::Q();
    std::vector<SquareClass> chars;
    std::vector<HypSummand> hyps;

    static OrthRep trivial(const BaseField& f, long n);
    long dim() const;
};

OrthRep direct_sum(const OrthRep& a, const OrthRep& b);

SquareClass sw1(const OrthRep& V);
H2Class sw2(const OrthRep& V);
/// Whitney product of (1 + chi_i) over characters and (1 + cbar1(det W)) over hyperbolic summands.
TruncClass sw_total(const OrthRep& V);

/// Tensor with an order-2 character.
OrthRep twist(const OrthRep& V, const SquareClass& chi);
/// sw2(V) + (n-1) det V . chi + C(n,2) chi . chi
H2Class twist_sw2_formula(const OrthRep& V, const SquareClass& chi);

/// sw2(V^0) + sum over q<0 of cbar1(det V^q)
H2Class graded_sw2(const OrthRep& V0, const std::vector<std::pair<int, CharClass>>& lower);
H2Class graded_sw2(const H2Class& sw2_middle, const std::vector<std::pair<int, CharClass>>& lower);

/// Reduction of a unit square class of Q_p to F_p.
SquareClass residue_class(const SquareClass& unit);

/// Boundary of sw2(V0 + V1 (x) chi) for unramified V0, V1 over Q_p and a
/// ramified quadratic character chi, from the closed formula in r = dim V1.
SquareClass tame_boundary_sw2(const OrthRep& V0, const OrthRep& V1, const SquareClass& chi);
/// Same quantity: assemble the twisted sum, take sw2 and apply the boundary map.
SquareClass tame_boundary_sw2_direct(const OrthRep& V0, const OrthRep& V1, const SquareClass& chi);

/// Diagonal entries with p-valuation 0 or 1 (BadValuation otherwise).
SquareClass tame_boundary_hw2(const std::vector<mpq_class>& jordan_diag, long p);
/// Any form over Q: diagonalize, then normalize valuations by squares.
SquareClass tame_boundary_hw2(const QuadSpace& D, long p);
/// boundary(hw2) over Q_p of the diagonal form.
SquareClass tame_boundary_hw2_direct(const std::vector<mpq_class>& diag, long p);
/// Multiply each entry by an even power of p so that its valuation is 0 or 1.
std::vector<mpq_class> jordan_normalize(const std::vector<mpq_class>& diag, long p);

}  // namespace swhw
