#include "swhw/symcx.hpp"

#include "swhw/error.hpp"
#include "swhw/quadform.hpp"

#include <json.hpp>

#include <algorithm>

namespace swhw {

namespace {

int sgn(int i) { return (i % 2 == 0) ? 1 : -1; }

const BaseField kQ = BaseField::Q();

struct Range {
    int lo = 0, hi = -1;
    bool empty() const { return lo > hi; }
};

Range range_of(const Cx& K) { return {K.lo(), K.hi()}; }

Range join(Range a, Range b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Range widen(Range r, int by) {
    if (r.empty()) return r;
    return {r.lo - by, r.hi + by};
}

// block matrix with given row and column sizes; missing blocks are zero
class Blocks {
public:
    Blocks(std::vector<int> rows, std::vector<int> cols) : rs_(std::move(rows)), cs_(std::move(cols)) {
        int R = 0, C = 0;
        for (int r : rs_) R += r;
        for (int c : cs_) C += c;
        m_ = QMatrix(R, C);
    }
    void set(size_t bi, size_t bj, const QMatrix& b) {
        int r0 = 0, c0 = 0;
        for (size_t k = 0; k < bi; ++k) r0 += rs_[k];
        for (size_t k = 0; k < bj; ++k) c0 += cs_[k];
        if (b.rows() != rs_[bi] || b.cols() != cs_[bj]) throw Error(ErrorKind::DimensionMismatch, "block shape");
        if (b.rows() && b.cols()) m_.set_block(r0, c0, b);
    }
    const QMatrix& matrix() const { return m_; }

private:
    std::vector<int> rs_, cs_;
    QMatrix m_;
};

QMatrix independent_columns(const QMatrix& A) {
    std::vector<int> piv;
    A.rref(&piv);
    return A.select_columns(piv);
}

bool cx_equal(const Cx& A, const Cx& B) {
    Range r = widen(join(range_of(A), range_of(B)), 1);
    for (int i = r.lo; i <= r.hi; ++i) {
        if (A.dim(i) != B.dim(i)) return false;
        if (A.diff(i) != B.diff(i)) return false;
    }
    return true;
}

}  // namespace

// ---- Cx ----

int Cx::dim(int i) const {
    auto it = dims.find(i);
    return it == dims.end() ? 0 : it->second;
}

QMatrix Cx::diff(int i) const {
    auto it = d.find(i);
    if (it != d.end()) return it->second;
    return QMatrix(dim(i + 1), dim(i));
}

void Cx::set_diff(int i, const QMatrix& m) {
    if (m.rows() != dim(i + 1) || m.cols() != dim(i)) throw Error(ErrorKind::DimensionMismatch, "differential shape");
    if (m.rows() == 0 || m.cols() == 0) {
        d.erase(i);
        return;
    }
    d[i] = m;
}

int Cx::lo() const {
    for (const auto& [i, n] : dims)
        if (n > 0) return i;
    return 0;
}

int Cx::hi() const {
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        if (it->second > 0) return it->first;
    return -1;
}

int Cx::total_dim() const {
    int s = 0;
    for (const auto& [i, n] : dims) s += n;
    return s;
}

long Cx::euler() const {
    long s = 0;
    for (const auto& [i, n] : dims) s += sgn(i) * n;
    return s;
}

QMatrix Graded::at(int i, int rows, int cols) const {
    auto it = comp.find(i);
    if (it == comp.end()) return QMatrix(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw Error(ErrorKind::DimensionMismatch, "component shape in degree " + std::to_string(i));
    return it->second;
}

QMatrix map_at(const CxMap& f, const Cx& K, const Cx& L, int i) { return f.at(i, L.dim(i), K.dim(i)); }
QMatrix htp_at(const Homotopy& t, const Cx& K, const Cx& M, int i) { return t.at(i, M.dim(i - 1), K.dim(i)); }

bool is_complex(const Cx& K) {
    for (const auto& [i, m] : K.d)
        if (m.rows() != K.dim(i + 1) || m.cols() != K.dim(i)) return false;
    Range r = widen(range_of(K), 1);
    for (int i = r.lo; i <= r.hi; ++i)
        if (!(K.diff(i + 1) * K.diff(i)).is_zero()) return false;
    return true;
}

bool is_chain_map(const CxMap& f, const Cx& K, const Cx& L) {
    Range r = widen(join(range_of(K), range_of(L)), 1);
    for (int i = r.lo; i <= r.hi; ++i)
        if (map_at(f, K, L, i + 1) * K.diff(i) != L.diff(i) * map_at(f, K, L, i)) return false;
    return true;
}

bool realizes(const Homotopy& t, const CxMap& h, const Cx& K, const Cx& M) {
    Range r = widen(join(range_of(K), range_of(M)), 2);
    for (int i = r.lo; i <= r.hi; ++i) {
        QMatrix rhs = htp_at(t, K, M, i + 1) * K.diff(i) + M.diff(i - 1) * htp_at(t, K, M, i);
        if (map_at(h, K, M, i) != rhs) return false;
    }
    return true;
}

CxMap identity_map(const Cx& K) {
    CxMap f;
    for (const auto& [i, n] : K.dims)
        if (n > 0) f.comp[i] = QMatrix::identity(n);
    return f;
}

CxMap zero_map(const Cx&, const Cx&) { return CxMap{}; }

CxMap compose(const CxMap& g, const CxMap& f, const Cx& K, const Cx& L, const Cx& M) {
    CxMap h;
    Range r = join(range_of(K), range_of(M));
    for (int i = r.lo; i <= r.hi; ++i) h.comp[i] = map_at(g, L, M, i) * map_at(f, K, L, i);
    return h;
}

CxMap add(const CxMap& f, const CxMap& g, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = join(range_of(K), range_of(L));
    for (int i = r.lo; i <= r.hi; ++i) h.comp[i] = map_at(f, K, L, i) + map_at(g, K, L, i);
    return h;
}

CxMap scale(const CxMap& f, const mpq_class& s) {
    CxMap h;
    for (const auto& [i, m] : f.comp) h.comp[i] = m.scaled(s);
    return h;
}

CxMap inverse_map(const CxMap& f, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = join(range_of(K), range_of(L));
    for (int i = r.lo; i <= r.hi; ++i) {
        auto inv = map_at(f, K, L, i).inverse();
        if (!inv) throw Error(ErrorKind::InvalidArgument, "map is not invertible in degree " + std::to_string(i));
        h.comp[i] = *inv;
    }
    return h;
}

bool maps_equal(const CxMap& f, const CxMap& g, const Cx& K, const Cx& L) {
    Range r = join(range_of(K), range_of(L));
    for (int i = r.lo; i <= r.hi; ++i)
        if (map_at(f, K, L, i) != map_at(g, K, L, i)) return false;
    return true;
}

Homotopy compose_htp(const CxMap& g, const Homotopy& t, const CxMap& f, const Cx& K0, const Cx& K, const Cx& M,
                     const Cx& M1) {
    Homotopy h;
    Range r = widen(join(range_of(K0), range_of(M1)), 1);
    for (int i = r.lo; i <= r.hi; ++i) h.comp[i] = map_at(g, M, M1, i - 1) * htp_at(t, K, M, i) * map_at(f, K0, K, i);
    return h;
}

std::vector<long> cohomology_dims(const Cx& K, int lo, int hi) {
    std::vector<long> out;
    for (int i = lo; i <= hi; ++i) out.push_back(K.dim(i) - K.diff(i).rank() - K.diff(i - 1).rank());
    return out;
}

bool is_acyclic(const Cx& K) {
    Range r = range_of(K);
    if (r.empty()) return true;
    for (long h : cohomology_dims(K, r.lo, r.hi))
        if (h != 0) return false;
    return true;
}

bool is_quasi_iso(const CxMap& f, const Cx& K, const Cx& L) { return is_acyclic(cone(f, K, L)); }

Cx direct_sum(const Cx& A, const Cx& B) {
    Cx S;
    Range r = join(range_of(A), range_of(B));
    for (int i = r.lo; i <= r.hi; ++i) S.dims[i] = A.dim(i) + B.dim(i);
    for (int i = r.lo; i < r.hi; ++i) S.set_diff(i, QMatrix::block_diag(A.diff(i), B.diff(i)));
    return S;
}

CxMap direct_sum_map(const CxMap& f, const CxMap& g, const Cx& A, const Cx& B, const Cx& A2, const Cx& B2) {
    CxMap h;
    Range r = join(join(range_of(A), range_of(B)), join(range_of(A2), range_of(B2)));
    for (int i = r.lo; i <= r.hi; ++i) h.comp[i] = QMatrix::block_diag(map_at(f, A, A2, i), map_at(g, B, B2, i));
    return h;
}

// ---- duality and shifts ----

Cx dual(const Cx& K) {
    Cx D;
    Range r = range_of(K);
    if (r.empty()) return D;
    for (int i = -r.hi; i <= -r.lo; ++i) D.dims[i] = K.dim(-i);
    for (int i = -r.hi; i < -r.lo; ++i) D.set_diff(i, K.diff(-i - 1).transpose().scaled(sgn(i + 1)));
    return D;
}

CxMap dual_map(const CxMap& f, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = join(range_of(K), range_of(L));
    for (int i = -r.hi; i <= -r.lo; ++i) h.comp[i] = map_at(f, K, L, -i).transpose();
    return h;
}

Homotopy dual_homotopy(const Homotopy& t, const Cx& K, const Cx& M) {
    Homotopy h;
    Range r = widen(join(range_of(K), range_of(M)), 1);
    for (int i = -r.hi; i <= -r.lo; ++i) h.comp[i] = htp_at(t, K, M, 1 - i).transpose().scaled(sgn(i));
    return h;
}

CxMap bidual_can(const Cx& K) {
    CxMap c;
    for (const auto& [i, n] : K.dims)
        if (n > 0) c.comp[i] = QMatrix::scalar(n, sgn(i));
    return c;
}

Cx shift(const Cx& K, int n) {
    Cx S;
    Range r = range_of(K);
    for (int i = r.lo; i <= r.hi; ++i) S.dims[i - n] = K.dim(i);
    for (int i = r.lo; i < r.hi; ++i) S.set_diff(i - n, K.diff(i).scaled(sgn(n)));
    return S;
}

CxMap shift_map(const CxMap& f, int n) {
    CxMap h;
    for (const auto& [i, m] : f.comp) h.comp[i - n] = m;
    return h;
}

CxMap shift_dual_can(const Cx& K, int n) {
    if (n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "shift duality is defined here for even n only");
    Cx DKn = dual(shift(K, n));
    return scale(identity_map(DKn), sgn(n / 2));
}

// ---- cones ----

Cx cone(const CxMap& f, const Cx& K, const Cx& L) {
    Cx C;
    Range r = join(widen(range_of(K), 1), range_of(L));
    if (r.empty()) return C;
    for (int i = r.lo; i <= r.hi; ++i) C.dims[i] = K.dim(i + 1) + L.dim(i);
    for (int i = r.lo; i < r.hi; ++i) {
        Blocks b({K.dim(i + 2), L.dim(i + 1)}, {K.dim(i + 1), L.dim(i)});
        b.set(0, 0, -K.diff(i + 1));
        b.set(1, 0, map_at(f, K, L, i + 1));
        b.set(1, 1, L.diff(i));
        C.set_diff(i, b.matrix());
    }
    return C;
}

Cx fib(const CxMap& f, const Cx& K, const Cx& L) {
    Cx F;
    Range r = join(range_of(K), widen(range_of(L), 1));
    if (r.empty()) return F;
    for (int i = r.lo; i <= r.hi; ++i) F.dims[i] = K.dim(i) + L.dim(i - 1);
    for (int i = r.lo; i < r.hi; ++i) {
        Blocks b({K.dim(i + 1), L.dim(i)}, {K.dim(i), L.dim(i - 1)});
        b.set(0, 0, K.diff(i));
        b.set(1, 0, map_at(f, K, L, i));
        b.set(1, 1, -L.diff(i - 1));
        F.set_diff(i, b.matrix());
    }
    return F;
}

CxMap cone_in(const CxMap&, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = range_of(L);
    for (int i = r.lo; i <= r.hi; ++i) {
        Blocks b({K.dim(i + 1), L.dim(i)}, {L.dim(i)});
        b.set(1, 0, QMatrix::identity(L.dim(i)));
        h.comp[i] = b.matrix();
    }
    return h;
}

CxMap cone_out(const CxMap&, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = widen(range_of(K), 1);
    for (int i = r.lo; i <= r.hi; ++i) {
        Blocks b({K.dim(i + 1)}, {K.dim(i + 1), L.dim(i)});
        b.set(0, 0, QMatrix::identity(K.dim(i + 1)));
        h.comp[i] = b.matrix();
    }
    return h;
}

CxMap cone_map(const CxMap& g, const Homotopy& t, const CxMap& f, const Cx& K, const Cx& L, const Cx& M) {
    if (!realizes(t, compose(g, f, K, L, M), K, M))
        throw Error(ErrorKind::NotHomotopy, "t does not connect g o f to 0");
    CxMap h;
    Range r = join(widen(range_of(K), 1), range_of(L));
    for (int i = r.lo; i <= r.hi; ++i) {
        Blocks b({M.dim(i)}, {K.dim(i + 1), L.dim(i)});
        b.set(0, 0, htp_at(t, K, M, i + 1));
        b.set(0, 1, map_at(g, L, M, i));
        h.comp[i] = b.matrix();
    }
    return h;
}

CxMap dual_cone_iso(const CxMap&, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = widen(join(range_of(K), range_of(L)), 1);
    for (int i = -r.hi; i <= -r.lo; ++i) {
        int c = K.dim(1 - i), b = L.dim(-i);
        Blocks m({b, c}, {c, b});
        m.set(0, 1, QMatrix::identity(b));
        m.set(1, 0, QMatrix::scalar(c, sgn(i)));
        h.comp[i] = m.matrix();
    }
    return h;
}

CxMap dual_fib_iso(const CxMap&, const Cx& K, const Cx& L) {
    CxMap h;
    Range r = widen(join(range_of(K), range_of(L)), 1);
    for (int i = -r.hi; i <= -r.lo; ++i) {
        int a = K.dim(-i), b = L.dim(-i - 1);
        Blocks m({b, a}, {a, b});
        m.set(0, 1, QMatrix::scalar(b, sgn(i + 1)));
        m.set(1, 0, QMatrix::identity(a));
        h.comp[i] = m.matrix();
    }
    return h;
}

Cx triple_complex(const Triple& T) {
    const Cx &K = T.K, &L = T.L, &M = T.M;
    if (!realizes(T.t, compose(T.g, T.f, K, L, M), K, M))
        throw Error(ErrorKind::NotHomotopy, "t does not connect g o f to 0");
    Cx C;
    Range r = join(join(widen(range_of(K), 1), range_of(L)), widen(range_of(M), 1));
    if (r.empty()) return C;
    for (int i = r.lo; i <= r.hi; ++i) C.dims[i] = K.dim(i + 1) + L.dim(i) + M.dim(i - 1);
    for (int i = r.lo; i < r.hi; ++i) {
        Blocks b({K.dim(i + 2), L.dim(i + 1), M.dim(i)}, {K.dim(i + 1), L.dim(i), M.dim(i - 1)});
        b.set(0, 0, -K.diff(i + 1));
        b.set(1, 0, map_at(T.f, K, L, i + 1));
        b.set(1, 1, L.diff(i));
        b.set(2, 0, htp_at(T.t, K, M, i + 1));
        b.set(2, 1, map_at(T.g, L, M, i));
        b.set(2, 2, -M.diff(i - 1));
        C.set_diff(i, b.matrix());
    }
    return C;
}

Triple dual_triple(const Triple& T) {
    Triple D;
    D.K = dual(T.M);
    D.L = dual(T.L);
    D.M = dual(T.K);
    D.f = dual_map(T.g, T.L, T.M);
    D.g = dual_map(T.f, T.K, T.L);
    D.t = dual_homotopy(T.t, T.K, T.M);
    return D;
}

CxMap dual_triple_iso(const Triple& T) {
    Cx DC = dual(triple_complex(T));
    CxMap h;
    Range r = range_of(DC);
    for (int i = r.lo; i <= r.hi; ++i) {
        int a = T.M.dim(-i - 1), b = T.L.dim(-i), c = T.K.dim(1 - i);
        Blocks m({a, b, c}, {c, b, a});
        m.set(0, 2, QMatrix::scalar(a, sgn(i + 1)));
        m.set(1, 1, QMatrix::identity(b));
        m.set(2, 0, QMatrix::scalar(c, sgn(i)));
        h.comp[i] = m.matrix();
    }
    return h;
}

CxMap triple_bidual(const Triple& T) {
    Cx C = triple_complex(T);
    CxMap h;
    Range r = range_of(C);
    for (int i = r.lo; i <= r.hi; ++i) {
        int a = T.K.dim(i + 1), b = T.L.dim(i), c = T.M.dim(i - 1);
        Blocks m({a, b, c}, {a, b, c});
        m.set(0, 0, QMatrix::scalar(a, sgn(i + 1)));
        m.set(1, 1, QMatrix::scalar(b, sgn(i)));
        m.set(2, 2, QMatrix::scalar(c, sgn(i - 1)));
        h.comp[i] = m.matrix();
    }
    return h;
}

bool bidual_square_commutes(const Triple& T) {
    Triple T1 = dual_triple(T);
    Triple T2 = dual_triple(T1);
    Cx C = triple_complex(T), C1 = triple_complex(T1), C2 = triple_complex(T2);
    Cx DC = dual(C), DDC = dual(DC), DC1 = dual(C1);
    CxMap e = dual_triple_iso(T);    // DC -> C1
    CxMap e1 = dual_triple_iso(T1);  // DC1 -> C2
    CxMap De = dual_map(e, DC, C1);  // DC1 -> DDC
    CxMap top = triple_bidual(T);    // C -> C2
    if (!is_chain_map(top, C, C2) || !is_chain_map(e1, DC1, C2) || !is_chain_map(De, DC1, DDC)) return false;
    CxMap path = compose(De, compose(inverse_map(e1, DC1, C2), top, C, C2, DC1), C, DC1, DDC);
    return maps_equal(path, bidual_can(C), C, DDC);
}

// ---- symmetric complexes ----

bool is_symmetric(const CxMap& q, const Cx& K) {
    Cx DK = dual(K);
    Range r = range_of(K);
    for (int i = r.lo; i <= r.hi; ++i)
        if (map_at(q, K, DK, i) != map_at(q, K, DK, -i).transpose().scaled(sgn(i))) return false;
    return true;
}

bool is_symcx(const SymCx& S) {
    if (!is_complex(S.K)) return false;
    Cx DK = dual(S.K);
    return is_chain_map(S.q, S.K, DK) && is_symmetric(S.q, S.K) && is_quasi_iso(S.q, S.K, DK);
}

bool is_symmetric_homotopy(const Homotopy& t, const Cx& L) {
    Cx DL = dual(L);
    Range r = widen(range_of(L), 1);
    for (int i = r.lo; i <= r.hi; ++i)
        if (htp_at(t, L, DL, i) != htp_at(t, L, DL, 1 - i).transpose()) return false;
    return true;
}

SymCx bundle_complex(const SymBundle& E) {
    SymCx S;
    if (E.rank() == 0) return S;
    S.K.dims[0] = E.rank();
    S.q.comp[0] = E.gram;
    return S;
}

SymCx sym_sum(const SymCx& A, const SymCx& B) {
    SymCx S;
    S.K = direct_sum(A.K, B.K);
    S.q = direct_sum_map(A.q, B.q, A.K, B.K, dual(A.K), dual(B.K));
    return S;
}

SymCx sym_negate(const SymCx& S) { return {S.K, scale(S.q, -1)}; }

SymCx hyperbolic_cx(const Cx& P) {
    Cx DP = dual(P);
    SymCx S;
    S.K = direct_sum(P, DP);
    Range r = range_of(S.K);
    for (int i = r.lo; i <= r.hi; ++i) {
        int a = P.dim(i), b = DP.dim(i);
        Blocks m({b, a}, {a, b});
        m.set(0, 1, QMatrix::identity(b));
        m.set(1, 0, QMatrix::scalar(a, sgn(i)));
        S.q.comp[i] = m.matrix();
    }
    return S;
}

SymCx conjugate(const SymCx& S, const CxMap& A) {
    const Cx& K = S.K;
    Cx DK = dual(K);
    SymCx T;
    T.K.dims = K.dims;
    Range r = range_of(K);
    std::map<int, QMatrix> inv;
    for (int i = r.lo; i <= r.hi; ++i) {
        auto x = map_at(A, K, K, i).inverse();
        if (!x) throw Error(ErrorKind::InvalidArgument, "conjugating map is not invertible");
        inv[i] = *x;
    }
    for (int i = r.lo; i < r.hi; ++i) T.K.set_diff(i, inv[i + 1] * K.diff(i) * map_at(A, K, K, i));
    for (int i = r.lo; i <= r.hi; ++i)
        T.q.comp[i] = map_at(A, K, K, -i).transpose() * map_at(S.q, K, DK, i) * map_at(A, K, K, i);
    return T;
}

SymCx make_symmetric(const Cx& K, const CxMap& q_raw) {
    Cx DK = dual(K);
    if (!is_chain_map(q_raw, K, DK)) throw Error(ErrorKind::InvalidArgument, "q is not a chain map K -> DK");
    if (!is_quasi_iso(q_raw, K, DK)) throw Error(ErrorKind::NotQuasiIso, "q is not a quasi-isomorphism");
    SymCx S;
    S.K = K;
    Range r = range_of(K);
    for (int i = r.lo; i <= r.hi; ++i) {
        QMatrix a = map_at(q_raw, K, DK, i);
        QMatrix b = map_at(q_raw, K, DK, -i).transpose().scaled(sgn(i));
        S.q.comp[i] = (a + b).scaled(mpq_class(1, 2));
    }
    if (!is_quasi_iso(S.q, K, DK)) throw Error(ErrorKind::NotQuasiIso, "symmetrization is not a quasi-isomorphism");
    return S;
}

Triple m_triple(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t) {
    Triple T;
    T.K = L;
    T.L = S.K;
    T.M = dual(L);
    T.f = f;
    Cx DK = dual(S.K);
    T.g = compose(dual_map(f, L, S.K), S.q, S.K, DK, T.M);
    T.t = t;
    return T;
}

SymCx m_construction(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t) {
    if (!is_chain_map(f, L, S.K)) throw Error(ErrorKind::InvalidArgument, "f is not a chain map");
    if (!is_symmetric_homotopy(t, L)) throw Error(ErrorKind::NotSymmetricHomotopy, "Dt o c_L differs from t");
    Triple T = m_triple(L, f, S, t);
    if (!realizes(t, compose(T.g, T.f, T.K, T.L, T.M), T.K, T.M))
        throw Error(ErrorKind::NotHomotopy, "t does not connect Df o q o f to 0");
    Cx M = triple_complex(T);
    Triple T1 = dual_triple(T);
    Cx C1 = triple_complex(T1);
    Cx DK = dual(S.K);
    CxMap qt;
    Range r = range_of(M);
    for (int i = r.lo; i <= r.hi; ++i) {
        int a = L.dim(i + 1), b = S.K.dim(i), c = L.dim(1 - i);
        Blocks m({a, b, c}, {a, b, c});
        m.set(0, 0, QMatrix::scalar(a, sgn(i + 1)));
        m.set(1, 1, map_at(S.q, S.K, DK, i));
        m.set(2, 2, QMatrix::identity(c));
        qt.comp[i] = m.matrix();
    }
    Cx DM = dual(M);
    CxMap back = inverse_map(dual_triple_iso(T), DM, C1);
    return {M, compose(back, qt, M, C1, DM)};
}

Cx truncate_positive(const Cx& K) {
    Cx T;
    for (const auto& [i, n] : K.dims)
        if (i > 0 && n > 0) T.dims[i] = n;
    for (const auto& [i, m] : K.d)
        if (i > 0) T.set_diff(i, m);
    return T;
}

CxMap truncation_inclusion(const Cx& K) {
    CxMap f;
    for (const auto& [i, n] : K.dims)
        if (i > 0 && n > 0) f.comp[i] = QMatrix::identity(n);
    return f;
}

SymBundle h0_form(const SymCx& S) {
    const Cx& K = S.K;
    int n = K.dim(0);
    QMatrix q0 = S.q.at(0, n, n);
    QMatrix Z = K.diff(0).kernel();
    QMatrix B = independent_columns(K.diff(-1));
    QMatrix R = QMatrix::complete_basis(B, Z);
    return {R.transpose() * q0 * R};
}

Natural k_natural(const SymCx& S) {
    Cx L = truncate_positive(S.K);
    SymCx knat = m_construction(L, truncation_inclusion(S.K), S, Homotopy{});
    return {knat, h0_form(knat)};
}

TruncClass cbar(const Cx& K) { return cbar_rank(kQ, K.euler()); }

TruncClass w_bundle(const SymBundle& E) {
    if (E.rank() == 0) return TruncClass::one(kQ);
    return hw_total(diagonalize(QuadSpace(E.gram)));
}

TruncClass w(const SymCx& S) { return w_bundle(k_natural(S).E) * cbar(truncate_positive(S.K)); }

bool lagrangean_check(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t) {
    return is_acyclic(m_construction(L, f, S, t).K);
}

LagrangeanPair lagrangean_pair(const Cx& L, const CxMap& f, const SymCx& S, const Homotopy& t) {
    Triple T = m_triple(L, f, S, t);
    SymCx M = m_construction(L, f, S, t);
    LagrangeanPair out;
    out.N = fib(T.g, S.K, T.M);
    out.KM = sym_sum(S, sym_negate(M));
    const Cx& K = S.K;
    Range r = range_of(out.N);
    for (int i = r.lo; i <= r.hi; ++i) {
        int k = K.dim(i), l = L.dim(i + 1), dl = T.M.dim(i - 1);
        Blocks m({k, l, k, dl}, {k, dl});
        m.set(0, 0, QMatrix::identity(k));
        m.set(2, 0, QMatrix::identity(k));
        m.set(3, 1, QMatrix::identity(dl));
        out.F.comp[i] = m.matrix();
    }
    return out;
}

// ---- random instances ----

QMatrix random_invertible(std::mt19937_64& rng, int n) {
    QMatrix Lo = QMatrix::identity(n), Up = QMatrix::identity(n);
    static const long diag[] = {1, -1, 2, -2, 1, 3};
    for (int i = 0; i < n; ++i) {
        Up(i, i) = diag[rng() % 6];
        for (int j = 0; j < n; ++j) {
            long v = static_cast<long>(rng() % 5) - 2;
            if (j < i) Lo(i, j) = v;
            if (j > i) Up(i, j) = v;
        }
    }
    return Lo * Up;
}

Cx random_complex(std::mt19937_64& rng, int lo, int hi, int total, bool acyclic) {
    std::map<int, int> rk, h;
    int left = total;
    while (left > 0) {
        bool pair = left >= 2 && lo < hi && (acyclic || rng() % 2 == 0);
        if (pair) {
            rk[lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo))]++;
            left -= 2;
        } else if (!acyclic) {
            h[lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1))]++;
            left -= 1;
        } else {
            break;
        }
    }
    auto get = [](const std::map<int, int>& m, int i) {
        auto it = m.find(i);
        return it == m.end() ? 0 : it->second;
    };
    Cx K;
    for (int i = lo; i <= hi; ++i) K.dims[i] = get(rk, i - 1) + get(h, i) + get(rk, i);
    std::map<int, QMatrix> A, Ainv;
    for (int i = lo; i <= hi; ++i) {
        A[i] = random_invertible(rng, K.dim(i));
        Ainv[i] = *A[i].inverse();
    }
    for (int i = lo; i < hi; ++i) {
        QMatrix d(K.dim(i + 1), K.dim(i));
        int r = get(rk, i), off = get(rk, i - 1) + get(h, i);
        for (int k = 0; k < r; ++k) d(k, off + k) = 1;
        K.set_diff(i, Ainv[i + 1] * d * A[i]);
    }
    return K;
}

Instance random_instance(std::mt19937_64& rng, int max_dim, bool acyclic_P, int e_rank) {
    Instance I;
    int e = e_rank < 0 ? static_cast<int>(rng() % 4) : e_rank;
    e = std::min(e, max_dim);
    std::vector<mpq_class> vals;
    for (int k = 0; k < e; ++k) {
        long v = 0;
        while (v == 0) v = static_cast<long>(rng() % 19) - 9;
        vals.push_back(v);
    }
    QMatrix G(e, e);
    for (int k = 0; k < e; ++k) G(k, k) = vals[static_cast<size_t>(k)];
    QMatrix A = random_invertible(rng, e);
    I.E = {A.transpose() * G * A};

    int pdim = (max_dim - e) / 2;
    pdim = pdim > 0 ? static_cast<int>(rng() % static_cast<unsigned>(pdim + 1)) : 0;
    int lo = static_cast<int>(rng() % 4) - 2;
    int hi = lo + static_cast<int>(rng() % 4);
    I.P = random_complex(rng, lo, hi, pdim, acyclic_P);

    SymCx S0 = sym_sum(bundle_complex(I.E), hyperbolic_cx(I.P));
    CxMap conj, conj_inv;
    Range r = range_of(S0.K);
    for (int i = r.lo; i <= r.hi; ++i) {
        conj.comp[i] = random_invertible(rng, S0.K.dim(i));
        conj_inv.comp[i] = *conj.comp[i].inverse();
    }
    I.S = conjugate(S0, conj);
    Range rp = range_of(I.P);
    for (int i = rp.lo; i <= rp.hi; ++i) {
        int off = (i == 0) ? e : 0;
        QMatrix inc(S0.K.dim(i), I.P.dim(i));
        for (int k = 0; k < I.P.dim(i); ++k) inc(off + k, k) = 1;
        I.fP.comp[i] = map_at(conj_inv, S0.K, S0.K, i) * inc;
    }
    return I;
}

// ---- law suite ----

bool LawReport::all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const LawLine& l) { return l.pass; });
}

namespace {

TruncClass cohomology_tail(const Cx& K) {
    TruncClass acc = TruncClass::one(kQ);
    Range r = range_of(K);
    for (int i = r.lo; i < 0; ++i) {
        long h = cohomology_dims(K, i, i)[0];
        acc = acc * cbar_rank(kQ, sgn(i) * h);
    }
    return acc;
}

// random symmetric s : K -> DK of degree -1, s^i = (s^{1-i})^T
Homotopy random_symmetric_htp(std::mt19937_64& rng, const Cx& K) {
    Homotopy s;
    Range r = widen(range_of(K), 1);
    for (int i = std::max(1, r.lo); i <= r.hi; ++i) {
        QMatrix m(K.dim(1 - i), K.dim(i));
        for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b) m(a, b) = static_cast<long>(rng() % 5) - 2;
        s.comp[i] = m;
        s.comp[1 - i] = m.transpose();
    }
    return s;
}

Homotopy random_htp(std::mt19937_64& rng, const Cx& K, const Cx& M) {
    Homotopy s;
    Range r = widen(join(range_of(K), range_of(M)), 1);
    for (int i = r.lo; i <= r.hi; ++i) {
        QMatrix m(M.dim(i - 1), K.dim(i));
        for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b) m(a, b) = static_cast<long>(rng() % 5) - 2;
        s.comp[i] = m;
    }
    return s;
}

// q + d s + s d
CxMap perturb(const CxMap& q, const Homotopy& s, const Cx& K) {
    Cx DK = dual(K);
    CxMap out;
    Range r = range_of(K);
    for (int i = r.lo; i <= r.hi; ++i)
        out.comp[i] = map_at(q, K, DK, i) + DK.diff(i - 1) * htp_at(s, K, DK, i) + htp_at(s, K, DK, i + 1) * K.diff(i);
    return out;
}

// random subcomplex of P, as a basis map V : L -> P
std::pair<Cx, CxMap> random_subcomplex(std::mt19937_64& rng, const Cx& P) {
    Cx L;
    CxMap V;
    Range r = range_of(P);
    QMatrix prev;
    for (int i = r.lo; i <= r.hi; ++i) {
        int n = P.dim(i);
        QMatrix img = (i > r.lo && prev.cols() > 0) ? P.diff(i - 1) * prev : QMatrix(n, 0);
        int extra = n > 0 ? static_cast<int>(rng() % static_cast<unsigned>(n + 1)) : 0;
        QMatrix rnd(n, extra);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < extra; ++b) rnd(a, b) = static_cast<long>(rng() % 5) - 2;
        QMatrix basis = independent_columns(QMatrix::hstack(img, rnd));
        L.dims[i] = basis.cols();
        V.comp[i] = basis;
        prev = basis;
    }
    for (int i = r.lo; i < r.hi; ++i) {
        QMatrix img = P.diff(i) * V.comp[i];
        auto x = V.comp[i + 1].solve(img);
        L.set_diff(i, *x);
    }
    return {L, V};
}

}  // namespace

LawReport law_suite(unsigned long seed, int max_dim) {
    std::mt19937_64 rng(seed);
    LawReport rep;
    rep.seed = seed;
    auto line = [&](const std::string& name, bool pass) { rep.lines.push_back({name, pass}); };

    Instance I = random_instance(rng, max_dim);
    const SymCx& S = I.S;
    const Cx& K = S.K;
    Cx DK = dual(K), DDK = dual(DK);

    // sign conventions
    line("audit: d^2 = 0 on K, DK, DDK, Cone(q), Fib(q)",
         is_complex(K) && is_complex(DK) && is_complex(DDK) && is_complex(cone(S.q, K, DK)) &&
             is_complex(fib(S.q, K, DK)));
    {
        CxMap cK = bidual_can(K), cDK = bidual_can(DK);
        Cx DDDK = dual(DDK);
        CxMap DcK = dual_map(cK, K, DDK);
        line("audit: c_K is a chain map and Dc_K o c_DK = id",
             is_chain_map(cK, K, DDK) && maps_equal(compose(DcK, cDK, DK, DDDK, DK), identity_map(DK), DK, DK));
    }
    line("audit: (K, q) symmetric quasi-isomorphism", is_symcx(S));
    line("audit: Fib(q)[1] = Cone(-q)", cx_equal(shift(fib(S.q, K, DK), 1), cone(scale(S.q, -1), K, DK)));
    {
        bool ok = true;
        for (int n : {2, 4, -2}) {
            Cx A = dual(shift(K, n)), B = shift(DK, -n);
            CxMap c = shift_dual_can(K, n);
            ok = ok && cx_equal(A, B) && is_chain_map(c, A, B);
            ok = ok && maps_equal(c, scale(identity_map(A), (n / 2) % 2 == 0 ? 1 : -1), A, B);
        }
        line("audit: D(K[n]) -> (DK)[-n] is (-1)^{n/2}", ok);
    }

    // perturbed symmetric form and an isotropic subcomplex with its symmetric homotopy
    Homotopy s = random_symmetric_htp(rng, K);
    SymCx Sp{K, perturb(S.q, s, K)};
    auto [L, V] = random_subcomplex(rng, I.P);
    CxMap f = compose(I.fP, V, L, I.P, K);
    Cx DL = dual(L);
    Homotopy t = compose_htp(dual_map(f, L, K), s, f, L, K, DK, DL);
    line("audit: perturbed form symmetric, homotopy symmetric", is_symcx(Sp) && is_symmetric_homotopy(t, L));

    Triple T = m_triple(L, f, Sp, t);
    {
        Cx C = triple_complex(T);
        Cx DC = dual(C);
        Cx C1 = triple_complex(dual_triple(T));
        CxMap e = dual_triple_iso(T);
        bool iso = is_chain_map(e, DC, C1);
        try {
            inverse_map(e, DC, C1);
        } catch (const Error&) {
            iso = false;
        }
        line("audit: triple complex d^2 = 0", is_complex(C) && is_complex(C1));
        line("audit: dual triple map is an isomorphism of complexes", iso);
        line("audit: biduality square of the triple complex commutes", bidual_square_commutes(T));
        Cx Co = cone(T.f, T.K, T.L);
        CxMap gt = cone_map(T.g, T.t, T.f, T.K, T.L, T.M);
        line("audit: L -> Cone(f) -> M equals g",
             is_chain_map(gt, Co, T.M) &&
                 maps_equal(compose(gt, cone_in(T.f, T.K, T.L), T.L, Co, T.M), T.g, T.L, T.M));
    }

    TruncClass wK = w(S);

    {
        Instance I2 = random_instance(rng, max_dim / 2);
        Instance I1 = random_instance(rng, max_dim - max_dim / 2);
        line("sum: w(K1 + K2) = w(K1) w(K2)", w(sym_sum(I1.S, I2.S)) == w(I1.S) * w(I2.S));
    }
    line("bundle: w(E[0]) = w(E)", w(bundle_complex(I.E)) == w_bundle(I.E));
    // invariance of w
    {
        Instance Ia = random_instance(rng, std::max(0, max_dim - 6), false);
        Cx A = random_complex(rng, -1, 2, 2 + static_cast<int>(rng() % 2) * 2, true);
        SymCx H = hyperbolic_cx(A);
        SymCx big = sym_sum(Ia.S, H);
        CxMap inc;
        Range r = range_of(Ia.S.K);
        for (int i = r.lo; i <= r.hi; ++i) {
            QMatrix m(big.K.dim(i), Ia.S.K.dim(i));
            for (int k = 0; k < Ia.S.K.dim(i); ++k) m(k, k) = 1;
            inc.comp[i] = m;
        }
        Cx Dbig = dual(big.K), DK1 = dual(Ia.S.K);
        CxMap pulled = compose(dual_map(inc, Ia.S.K, big.K), compose(big.q, inc, Ia.S.K, big.K, Dbig), Ia.S.K, Dbig, DK1);
        line("invariance: acyclic symmetric summand",
             is_quasi_iso(inc, Ia.S.K, big.K) && maps_equal(pulled, Ia.S.q, Ia.S.K, DK1) && w(big) == w(Ia.S));

        Homotopy u = random_htp(rng, K, DK);
        SymCx R = make_symmetric(K, perturb(S.q, u, K));
        line("invariance: homotopic form after symmetrization", is_symcx(R) && w(R) == wK);

        CxMap B;
        Range rk = range_of(K);
        for (int i = rk.lo; i <= rk.hi; ++i) B.comp[i] = random_invertible(rng, K.dim(i));
        line("invariance: conjugated model", w(conjugate(S, B)) == wK);
        line("invariance: perturbed symmetric form", w(Sp) == wK);
        line("make_symmetric fixes a symmetric form", maps_equal(make_symmetric(K, S.q).q, S.q, K, DK));
    }
    // Lagrangeans
    {
        Instance J = random_instance(rng, max_dim, false, 0);
        line("Lagrangean: w(H(P)) = cbar(P) for the Lagrangean P",
             lagrangean_check(J.P, J.fP, J.S, Homotopy{}) && w(J.S) == cbar(J.P));
        line("E[0] + H(P): w = w(E) cbar(P)", w(S) == w_bundle(I.E) * cbar(I.P));
    }
    {
        LagrangeanPair lp = lagrangean_pair(L, f, Sp, t);
        Cx DKM = dual(lp.KM.K), DN = dual(lp.N);
        CxMap iso = compose(dual_map(lp.F, lp.N, lp.KM.K), compose(lp.KM.q, lp.F, lp.N, lp.KM.K, DKM), lp.N, DKM, DN);
        bool zero = maps_equal(iso, CxMap{}, lp.N, DN);
        line("Lagrangean: N -> K + M Lagrangean for q + (-q_M)",
             is_chain_map(lp.F, lp.N, lp.KM.K) && zero && lagrangean_check(lp.N, lp.F, lp.KM, Homotopy{}) &&
                 w(lp.KM) == cbar(lp.N));
    }
    {
        SymCx neg = sym_negate(S);
        SymCx both = sym_sum(S, neg);
        CxMap diag;
        Range r = range_of(K);
        for (int i = r.lo; i <= r.hi; ++i)
            diag.comp[i] = QMatrix::vstack(QMatrix::identity(K.dim(i)), QMatrix::identity(K.dim(i)));
        line("negation: w(K, q) w(K, -q) = cbar(K)", w(S) * w(neg) == cbar(K));
        line("diagonal K -> K + K Lagrangean for q + (-q)", lagrangean_check(K, diag, both, Homotopy{}));
    }
    // M-construction and K-natural
    {
        SymCx M = m_construction(L, f, Sp, t);
        line("M-construction: M symmetric and w(K) = w(M) cbar(L)", is_symcx(M) && w(Sp) == w(M) * cbar(L));
        Natural nat = k_natural(S);
        std::vector<long> hs = cohomology_dims(nat.knat.K, nat.knat.K.lo(), nat.knat.K.hi());
        bool off0 = true;
        for (int i = nat.knat.K.lo(); i <= nat.knat.K.hi(); ++i)
            if (i != 0 && hs[static_cast<size_t>(i - nat.knat.K.lo())] != 0) off0 = false;
        line("K-natural symmetric, acyclic off degree 0", is_symcx(nat.knat) && off0);
    }
    line("cohomology: w(K) = w(H^0) prod_{i<0} cbar(H^i)^{(-1)^i}", wK == w_bundle(h0_form(S)) * cohomology_tail(K));
    // even shifts
    {
        bool ok = true;
        for (int n : {2, 4}) {
            Cx Kn = shift(K, -n);  // K' = Kn[n]
            Cx target = shift(dual(Kn), -2 * n);
            CxMap q;
            for (const auto& [i, m] : S.q.comp) q.comp[i + n] = m.scaled(sgn(n / 2));
            bool sym = is_chain_map(q, Kn, target);
            Range r = range_of(Kn);
            for (int i = r.lo; i <= r.hi; ++i)
                sym = sym && map_at(q, Kn, target, i) == map_at(q, Kn, target, 2 * n - i).transpose().scaled(sgn(i));
            Cx K1 = shift(Kn, n);
            Cx DK1 = dual(K1);
            CxMap qn = shift_map(q, n);
            CxMap can = inverse_map(shift_dual_can(Kn, n), DK1, shift(dual(Kn), -n));
            SymCx S1{K1, compose(can, qn, K1, shift(dual(Kn), -n), DK1)};
            SymBundle qE = h0_form(SymCx{K1, qn});
            SymBundle twisted{qE.gram.scaled(sgn(n / 2))};
            ok = ok && sym && is_symcx(S1) && w(S1) == w_bundle(twisted) * cohomology_tail(K1);
        }
        line("shift: w(K[n]) = w(E, (-1)^{n/2} q_E) prod_{i<0} cbar(H^i)^{(-1)^i}", ok);
    }
    // acyclic case
    {
        Instance Z = random_instance(rng, max_dim, true, 0);
        Natural nat = k_natural(Z.S);
        line("acyclic: acyclic K has w(E) cbar(K^{>0}) = 1",
             is_acyclic(Z.S.K) && (w_bundle(nat.E) * cbar(truncate_positive(Z.S.K))).is_one());
        Instance Y = random_instance(rng, max_dim, true);
        SymBundle En = k_natural(Y.S).E;
        int k = (En.rank() - Y.E.rank()) / 2;
        bool cong = k >= 0 && En.rank() == Y.E.rank() + 2 * k;
        if (cong && En.rank() > 0)
            cong = isometric(QuadSpace(En.gram), orthogonal_sum(QuadSpace(Y.E.gram), hyperbolic(k)));
        line("K-natural form congruent to E + hyperbolic planes", cong && w(Y.S) == w_bundle(Y.E));
    }
    return rep;
}

// ---- JSON ----

namespace {

using nlohmann::json;

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

QMatrix matrix_from(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw Error(ErrorKind::ParseError, "matrix must have " + std::to_string(rows) + " rows");
    QMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw Error(ErrorKind::ParseError, "matrix row must have " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k) {
            const json& e = row[static_cast<size_t>(k)];
            try {
                mpq_class v = e.is_string() ? mpq_class(e.get<std::string>()) : mpq_class(e.get<long>());
                v.canonicalize();
                m(i, k) = v;
            } catch (const std::exception&) {
                throw Error(ErrorKind::ParseError, "bad rational entry");
            }
        }
    }
    return m;
}

json cx_json(const Cx& K) {
    json j;
    int lo = K.lo(), hi = K.hi();
    j["lo"] = lo;
    json dims = json::array(), d = json::array();
    for (int i = lo; i <= hi; ++i) dims.push_back(K.dim(i));
    for (int i = lo; i < hi; ++i) d.push_back(matrix_json(K.diff(i)));
    j["dims"] = dims;
    j["d"] = d;
    return j;
}

Cx cx_from(const json& j) {
    try {
        Cx K;
        int lo = j.at("lo").get<int>();
        const json& dims = j.at("dims");
        for (size_t k = 0; k < dims.size(); ++k) {
            int n = dims[k].get<int>();
            if (n < 0) throw Error(ErrorKind::ParseError, "negative dimension");
            K.dims[lo + static_cast<int>(k)] = n;
        }
        const json& d = j.at("d");
        if (!dims.empty() && d.size() + 1 != dims.size())
            throw Error(ErrorKind::ParseError, "need one differential between consecutive degrees");
        for (size_t k = 0; k < d.size(); ++k) {
            int i = lo + static_cast<int>(k);
            K.set_diff(i, matrix_from(d[k], K.dim(i + 1), K.dim(i)));
        }
        if (!is_complex(K)) throw Error(ErrorKind::ValidationFailed, "d^2 != 0");
        return K;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

}  // namespace

std::string cx_to_json(const Cx& K, int indent) { return cx_json(K).dump(indent); }

Cx cx_from_json(const std::string& text) {
    try {
        return cx_from(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::string symcx_to_json(const SymCx& S, int indent) {
    json j;
    j["complex"] = cx_json(S.K);
    Cx DK = dual(S.K);
    json q = json::array();
    for (int i = S.K.lo(); i <= S.K.hi(); ++i) q.push_back(matrix_json(map_at(S.q, S.K, DK, i)));
    j["q"] = q;
    return j.dump(indent);
}

SymCx symcx_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        SymCx S;
        S.K = cx_from(j.at("complex"));
        const json& q = j.at("q");
        int lo = S.K.lo(), hi = S.K.hi();
        if (static_cast<int>(q.size()) != std::max(0, hi - lo + 1))
            throw Error(ErrorKind::ParseError, "need one component of q per degree");
        for (int i = lo; i <= hi; ++i)
            S.q.comp[i] = matrix_from(q[static_cast<size_t>(i - lo)], S.K.dim(-i), S.K.dim(i));
        if (!is_symcx(S)) throw Error(ErrorKind::ValidationFailed, "q is not a symmetric quasi-isomorphism");
        return S;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

}  // namespace swhw
