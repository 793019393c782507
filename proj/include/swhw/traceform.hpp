#pragma once
// Trace forms of etale algebras Q[x]/(f) and the check of Serre's formula
// sw2(permutation representation) = hw2(trace form) + {2, disc}.

#include "swhw/orthorep.hpp"
#include "swhw/polynomial.hpp"
#include "swhw/quadform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace swhw {

constexpr int kDefaultMaxDegree = 24;

struct EtaleAlgebra {
    ZPoly f;
    /// Monic, squarefree, 1 <= degree <= max_degree.
    static EtaleAlgebra from(const ZPoly& f, int max_degree = kDefaultMaxDegree);
    static EtaleAlgebra parse(const std::string& s, int max_degree = kDefaultMaxDegree);
    int degree() const { return f.degree(); }
};

/// p_0 .. p_{count-1}, the power sums of the roots, by Newton's identities.
std::vector<mpz_class> power_sums(const ZPoly& f, int count);

QuadSpace trace_gram(const EtaleAlgebra& A);

struct SplitFactor {
    enum class Kind { Quadratic, OddAbelian };
    Kind kind = Kind::Quadratic;
    long a = 1;    ///< Q(sqrt a), squarefree
    long dim = 1;  ///< odd-order abelian factor of this degree

    std::string str() const;
};

struct AbelianSplitting {
    std::vector<SplitFactor> factors;

    /// "q2,q-3,o3": quadratic fields Q(sqrt 2), Q(sqrt -3) and a cyclic cubic
    static AbelianSplitting parse(const std::string& s);
    long dim() const;
    std::string str() const;
};

/// The permutation representation as an orthogonal representation.
OrthRep perm_rep(const AbelianSplitting& split, const BaseField& field = BaseField::Q());
H2Class perm_sw2_oracle(const AbelianSplitting& split, const BaseField& field = BaseField::Q());

struct SerreReport {
    std::optional<H2Class> lhs;  ///< empty when no splitting is supplied
    H2Class rhs;
    SquareClass disc;
    std::optional<bool> equal;
    std::string status() const;  ///< "EQUAL", "DIFFERENT" or "oracle-unavailable"
};

SerreReport serre_check(const EtaleAlgebra& A, const std::optional<AbelianSplitting>& split);

/// All products of 1..max_fields distinct quadratic fields Q(sqrt a), a squarefree, 1 < |a| <= bound.
std::vector<std::pair<EtaleAlgebra, AbelianSplitting>> quadratic_corpus(long bound, int max_fields);

}  // namespace swhw
