#pragma once
// Bounded complexes of finite-dimensional Q-vector spaces, their duals,
// cones and the symmetric-complex constructions, with Stiefel-Whitney
// classes of symmetric complexes truncated at degree 2.

#include "swhw/coh.hpp"
#include "swhw/matrix.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace swhw {

/// d^i : K^i -> K^{i+1}. Missing degrees have dimension 0.
struct Cx {
    std::map<int, int> dims;
    std::map<int, QMatrix> d;

    int dim(int i) const;
    /// stored differential or the zero matrix of shape dim(i+1) x dim(i)
    QMatrix diff(int i) const;
    void set_diff(int i, const QMatrix& m);
    /// lowest and highest degree of nonzero dimension; (0, -1) for the zero complex
    int lo() const;
    int hi() const;
    int total_dim() const;
    long euler() const;  ///< sum (-1)^i dim K^i
};

/// Degree-wise data f^i. For a chain map f^i : K^i -> L^i, for a homotopy t^i : K^i -> M^{i-1}.
struct Graded {
    std::map<int, QMatrix> comp;
    QMatrix at(int i, int rows, int cols) const;
};
struct CxMap : Graded {};
struct Homotopy : Graded {};

// ---- basic checks and arithmetic ----

/// shapes and d^{i+1} d^i = 0
bool is_complex(const Cx& K);
bool is_chain_map(const CxMap& f, const Cx& K, const Cx& L);
/// h^i = t^{i+1} d_K^i + d_M^{i-1} t^i for every i
bool realizes(const Homotopy& t, const CxMap& h, const Cx& K, const Cx& M);

QMatrix map_at(const CxMap& f, const Cx& K, const Cx& L, int i);
QMatrix htp_at(const Homotopy& t, const Cx& K, const Cx& M, int i);

CxMap identity_map(const Cx& K);
CxMap zero_map(const Cx& K, const Cx& L);
CxMap compose(const CxMap& g, const CxMap& f, const Cx& K, const Cx& L, const Cx& M);
CxMap add(const CxMap& f, const CxMap& g, const Cx& K, const Cx& L);
CxMap scale(const CxMap& f, const mpq_class& s);
/// degree-wise inverse of a chain isomorphism
CxMap inverse_map(const CxMap& f, const Cx& K, const Cx& L);
bool maps_equal(const CxMap& f, const CxMap& g, const Cx& K, const Cx& L);
Homotopy compose_htp(const CxMap& g, const Homotopy& t, const CxMap& f, const Cx& K0, const Cx& K,
                     const Cx& M, const Cx& M1);

std::vector<long> cohomology_dims(const Cx& K, int lo, int hi);
bool is_acyclic(const Cx& K);
bool is_quasi_iso(const CxMap& f, const Cx& K, const Cx& L);

Cx direct_sum(const Cx& A, const Cx& B);
CxMap direct_sum_map(const CxMap& f, const CxMap& g, const Cx& A, const Cx& B, const Cx& A2, const Cx& B2);

// ---- duality and shifts ----

/// (DK)^i = D(K^{-i}), differential (-1)^{i+1} (d^{-i-1})^T
Cx dual(const Cx& K);
/// Df : DL -> DK with (Df)^i = (f^{-i})^T
CxMap dual_map(const CxMap& f, const Cx& K, const Cx& L);
/// t : K -> M of degree -1 gives Dt : DM -> DK with (Dt)^i = (-1)^i (t^{1-i})^T
Homotopy dual_homotopy(const Homotopy& t, const Cx& K, const Cx& M);
/// c_K : K -> DDK, (-1)^i on degree i
CxMap bidual_can(const Cx& K);

/// K[n]^i = K^{i+n}, differential (-1)^n d^{i+n}
Cx shift(const Cx& K, int n);
CxMap shift_map(const CxMap& f, int n);
/// D(K[n]) -> (DK)[-n] for even n: multiplication by (-1)^{n/2}
CxMap shift_dual_can(const Cx& K, int n);

// ---- cones ----

/// Cone(f)^i = K^{i+1} + L^i, differential [[-d_K, 0], [f, d_L]]
Cx cone(const CxMap& f, const Cx& K, const Cx& L);
/// Fib(f)^i = K^i + L^{i-1}, differential [[d_K, 0], [f, -d_L]]
Cx fib(const CxMap& f, const Cx& K, const Cx& L);
CxMap cone_in(const CxMap& f, const Cx& K, const Cx& L);   ///< L -> Cone(f)
CxMap cone_out(const CxMap& f, const Cx& K, const Cx& L);  ///< Cone(f) -> K[1]
/// D Cone(f) -> Fib(Df): 1 on D(L^{-i}), (-1)^i on D(K^{1-i})
CxMap dual_cone_iso(const CxMap& f, const Cx& K, const Cx& L);
/// D Fib(f) -> Cone(Df): 1 on D(K^{-i}), (-1)^{i+1} on D(L^{-i-1})
CxMap dual_fib_iso(const CxMap& f, const Cx& K, const Cx& L);
/// (g, t) : Cone(f) -> M given by t^{i+1} + g^i. Throws NotHomotopy.
CxMap cone_map(const CxMap& g, const Homotopy& t, const CxMap& f, const Cx& K, const Cx& L, const Cx& M);

/// K --f--> L --g--> M with g f = t d + d t.
struct Triple {
    Cx K, L, M;
    CxMap f, g;
    Homotopy t;
};

/// C^i = K^{i+1} + L^i + M^{i-1}, differential [[-d, 0, 0], [f, d, 0], [t, g, -d]]. Throws NotHomotopy.
Cx triple_complex(const Triple& T);
/// DM --Dg--> DL --Df--> DK with homotopy Dt
Triple dual_triple(const Triple& T);
/// D C(T) -> C(dual_triple(T)) through D Fib((g,t)) -> Cone(D(g,t)) -> Cone((Dg,Dt)):
/// (-1)^{i+1} + 1 + (-1)^i on D(M^{-1-i}) + D(L^{-i}) + D(K^{1-i})
CxMap dual_triple_iso(const Triple& T);
/// C(T) -> C(DDK -> DDL -> DDM): c_K[1] + c_L + c_M[-1]
CxMap triple_bidual(const Triple& T);
/// c_{C(T)} = D(dual_triple_iso(T)) o dual_triple_iso(dual_triple(T))^{-1} o triple_bidual(T)
bool bidual_square_commutes(const Triple& T);

// ---- symmetric complexes ----

struct SymBundle {
    QMatrix gram;
    int rank() const { return gram.rows(); }
};

struct SymCx {
    Cx K;
    CxMap q;  ///< K -> DK
};

/// Dq o c_K = q, i.e. q^i = (-1)^i (q^{-i})^T
bool is_symmetric(const CxMap& q, const Cx& K);
/// chain map, symmetric, quasi-isomorphism
bool is_symcx(const SymCx& S);
/// t : L -> DL of degree -1 with Dt o c_L = t, i.e. t^i = (t^{1-i})^T
bool is_symmetric_homotopy(const Homotopy& t, const Cx& L);

SymCx bundle_complex(const SymBundle& E);
SymCx sym_sum(const SymCx& A, const SymCx& B);
SymCx sym_negate(const SymCx& S);
/// the hyperbolic complex P + DP with q = [[0, 1], [c_P, 0]]
SymCx hyperbolic_cx(const Cx& P);
/// K' with d'^i = A_{i+1}^{-1} d^i A_i and q' = DA o q o A
SymCx conjugate(const SymCx& S, const CxMap& A);

/// (q + Dq o c_K) / 2. Throws NotQuasiIso.
SymCx make_symmetric(const Cx& K, const CxMap& q_raw);

/// M(L -> K)_{q,t} = C(L --f--> K --Df o q--> DL)_t with its symmetric form.
/// Throws NotSymmetricHomotopy, or NotHomotopy if t does not connect Df o q o f to 0.
SymCx m_construction(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t);
Triple m_triple(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t);

/// stupid truncation K^{>0} and its inclusion
Cx truncate_positive(const Cx& K);
CxMap truncation_inclusion(const Cx& K);

/// Gram matrix of the form induced by q^0 on H^0(K)
SymBundle h0_form(const SymCx& S);

struct Natural {
    SymCx knat;
    SymBundle E;
};
Natural k_natural(const SymCx& S);

/// prod_i cbar(K^i)^{(-1)^i}
TruncClass cbar(const Cx& K);
/// (1, hw1, hw2) of a diagonalization
TruncClass w_bundle(const SymBundle& E);
/// w(E) cbar(K^{>0}) with E = H^0(K-natural)
TruncClass w(const SymCx& S);

/// M(L -> K)_{q,t} acyclic
bool lagrangean_check(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t);

/// N = Fib(K -> DL) -> K + M with t = 0 against q + (-q_M)
struct LagrangeanPair {
    Cx N;
    CxMap F;
    SymCx KM;
};
LagrangeanPair lagrangean_pair(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t);

// ---- random instances and laws ----

QMatrix random_invertible(std::mt19937_64& rng, int n);
/// bounded complex in degrees [lo, hi] with prescribed total dimension and random ranks
Cx random_complex(std::mt19937_64& rng, int lo, int hi, int total, bool acyclic);

struct Instance {
    SymCx S;
    SymBundle E;  ///< degree-0 summand before conjugation
    Cx P;         ///< hyperbolic half
    CxMap fP;     ///< P -> S.K, Lagrangean when E has rank 0
};

/// E[0] + H(P) conjugated by a random chain isomorphism; total dimension <= max_dim
Instance random_instance(std::mt19937_64& rng, int max_dim, bool acyclic_P = false, int e_rank = -1);

struct LawLine {
    std::string name;
    bool pass = false;
};

struct LawReport {
    unsigned long seed = 0;
    std::vector<LawLine> lines;
    bool all_pass() const;
};

LawReport law_suite(unsigned long seed, int max_dim = 12);

// ---- JSON ----

std::string cx_to_json(const Cx& K, int indent = -1);
Cx cx_from_json(const std::string& text);
std::string symcx_to_json(const SymCx& S, int indent = -1);
SymCx symcx_from_json(const std::string& text);

}  // namespace swhw
