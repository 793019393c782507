#pragma once
// Cohomological profiles of proper smooth varieties of even dimension and
// the class identities relating their l-adic and de Rham invariants.

#include "swhw/coh.hpp"
#include "swhw/matrix.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace swhw {

struct LefschetzData {
    /// index k holds P^{2k}, 0 <= 2k <= n
    std::vector<long> prim_dims;
    std::vector<SquareClass> prim_dets;
};

struct CohomProfile {
    int n = 0;
    std::vector<long> betti;               ///< b_0 .. b_{2n}
    std::vector<std::vector<long>> hodge;  ///< hodge[p][q] = h^{p,q}, 0 <= p,q <= n
    SquareClass dX;
    std::vector<SquareClass> eq_chars;  ///< e_0 .. e_{n-1}, optionally e_n
    std::optional<H2Class> hw2_in;
    std::optional<H2Class> sw2_in;
    long ell = 3;
    BaseField field = BaseField::Q();
    std::optional<LefschetzData> lef;

    long b(int q) const { return (q >= 0 && q < static_cast<int>(betti.size())) ? betti[static_cast<size_t>(q)] : 0; }
    long h(int p, int q) const;
    bool has_en() const { return static_cast<int>(eq_chars.size()) == n + 1; }
};

/// Throws ValidationFailed naming the first violated condition.
void validate(const CohomProfile& P);

struct Invariants {
    long r = 0, beta = 0, eta = 0, h = 0, rprime = 0, s = 0;
    SquareClass e;
};

Invariants derive_invariants(const CohomProfile& P);

enum class Form { Plain, Primed, Graded };
Form parse_form(const std::string& s);
std::string form_name(Form f);

struct Sides {
    H2Class lhs, rhs;
    H2Class difference() const { return lhs + rhs; }
    bool holds() const { return lhs == rhs; }
};

Sides conjecture_sides(const CohomProfile& P, Form form);

/// The l-adic class the identity predicts from hw2_in.
H2Class solve_sw2(const CohomProfile& P);

/// e_n against {d_X} + r{-1} (n = 0 mod 4) or {d_X} + (r + b_n){-1} (n = 2 mod 4).
bool det_formula_check(const CohomProfile& P);
SquareClass det_formula_rhs(const CohomProfile& P);

/// hw2_in and d_X against the Hodge-middle form H^m(Omega^m) padded by s hyperbolic planes.
bool hodge_dR_check(const CohomProfile& P, const H2Class& hw2_hodge, const SquareClass& disc_hodge);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CongruenceReport {
    std::vector<CheckLine> lines;
    bool all_pass() const;
};

CongruenceReport congruence_checks(const CohomProfile& P);

struct CrystallineReport {
    SquareClass lhs;  ///< boundary of solve_sw2
    SquareClass rhs;  ///< h times the boundary of c_p
    bool holds() const { return lhs == rhs; }
};

/// Over Q_p, p odd, l = p, good reduction data. Throws HodgeConditionViolated
/// when some h^{q,n-q} with |q - n/2| >= (p-1)/2 is nonzero.
CrystallineReport crystalline_boundary_check(const CohomProfile& P);

// ---- real place ----

struct RealHodge {
    std::vector<long> hpq;  ///< hpq[i] = h^{i+1,-i-1}
    long h00plus = 0, h00minus = 0;
    long dim() const;
};

struct RealCounts {
    long vminus = 0, dminus = 0;
    bool operator==(const RealCounts& o) const { return vminus == o.vminus && dminus == o.dminus; }
};

/// Counting rule: both equal sum_{p>0} h^{p,-p} + h^{0,0,-}.
RealCounts real_counts(const RealHodge& H);

/// An explicit polarized weight-0 structure: form b_V, conjugation sigma, Weil operator C.
struct PolarizedPiece {
    RealHodge hodge;
    QMatrix bV, sigma, weil;
};

PolarizedPiece synthesize(const RealHodge& H, std::mt19937_64& rng);
/// v^- from the sigma eigenspaces, d^- from the signature of b_D on V^+ + iV^-.
/// Throws InconsistentSynthesis if the structure is not polarized or sigma is not orthogonal.
RealCounts measure(const PolarizedPiece& X);
/// b_D on V^+ + iV^-, as a rational Gram matrix
QMatrix de_rham_gram(const PolarizedPiece& X);

struct RealLefschetz {
    int n = 0;
    std::vector<PolarizedPiece> even;  ///< P^q for q = 0, 2, .., n
    std::vector<long> odd;             ///< dim P^q for q = 1, 3, .., n-1 (even numbers)
};

RealLefschetz random_real_lefschetz(std::mt19937_64& rng, int n);

struct RealIdentityReport {
    H2Class lhs, rhs;
    long en_minus = 0, e_minus = 0, dprime_minus = 0, r = 0, beta = 0;
    bool congruence = false;  ///< e_n^- - 2e^- = d'^- - dim P^(-/+) mod 4
    bool counts_agree = false;
    bool holds() const { return lhs == rhs && congruence && counts_agree; }
};

RealIdentityReport real_identity_check(const RealLefschetz& L);

// ---- constructions ----

/// Dimensions of the graded pieces of C[x_0..x_{n+1}]/(x_i^{d-1}), degrees 0..max_deg.
std::vector<long> jacobian_hilbert(int n, int d, int max_deg);

/// Smooth degree d hypersurface in P^{n+1}: Hodge numbers from the Jacobian ring,
/// e_q trivial for q < n and e_n from the determinant formula.
CohomProfile hypersurface_profile(int n, int d, long ell, const BaseField& field,
                                  std::optional<SquareClass> dX = std::nullopt,
                                  std::optional<H2Class> hw2 = std::nullopt);

/// Abelian surface with good reduction (or over R), hw2 = 0, d_X = 1, e trivial.
CohomProfile abelian_surface_profile(long ell, const BaseField& field);

CohomProfile random_profile(std::mt19937_64& rng);

// ---- JSON ----

std::string profile_to_json(const CohomProfile& P, int indent = -1);
CohomProfile profile_from_json(const std::string& text);

}  // namespace swhw
