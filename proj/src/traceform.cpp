#include "swhw/traceform.hpp"

#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"

#include <functional>
#include <sstream>

namespace swhw {

namespace {

bool squarefree(long a) {
    if (a == 0) return false;
    for (const auto& [p, e] : nt::factor(mpz_class(a)))
        if (e > 1) return false;
    return true;
}

}  // namespace

EtaleAlgebra EtaleAlgebra::from(const ZPoly& f, int max_degree) {
    if (f.degree() < 1) throw Error(ErrorKind::InvalidArgument, "polynomial must have positive degree");
    if (f.degree() > max_degree)
        throw Error(ErrorKind::InvalidArgument,
                    "degree " + std::to_string(f.degree()) + " exceeds the cap " + std::to_string(max_degree));
    if (f.lead() != 1) throw Error(ErrorKind::InvalidArgument, "polynomial must be monic: " + f.str());
    if (gcd_degree(f, f.derivative()) != 0) throw Error(ErrorKind::NotSquarefree, f.str() + " has a repeated factor");
    return EtaleAlgebra{f};
}

EtaleAlgebra EtaleAlgebra::parse(const std::string& s, int max_degree) { return from(parse_poly(s), max_degree); }

std::vector<mpz_class> power_sums(const ZPoly& f, int count) {
    const int n = f.degree();
    // a[k] is the coefficient of x^{n-k}
    auto a = [&](int k) { return f.coeff(n - k); };
    std::vector<mpz_class> p(static_cast<size_t>(std::max(count, 1)));
    p[0] = n;
    for (int k = 1; k < count; ++k) {
        mpz_class s = 0;
        for (int j = 1; j < k && j <= n; ++j) s += a(j) * p[static_cast<size_t>(k - j)];
        if (k <= n) s += a(k) * k;
        p[static_cast<size_t>(k)] = -s;
    }
    p.resize(static_cast<size_t>(count));
    return p;
}

QuadSpace trace_gram(const EtaleAlgebra& A) {
    const int n = A.degree();
    auto p = power_sums(A.f, 2 * n - 1);
    QMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = p[static_cast<size_t>(i + j)];
    return QuadSpace(g);
}

std::string SplitFactor::str() const {
    return kind == Kind::Quadratic ? "q" + std::to_string(a) : "o" + std::to_string(dim);
}

AbelianSplitting AbelianSplitting::parse(const std::string& s) {
    AbelianSplitting out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.size() < 2) throw Error(ErrorKind::ParseError, "bad splitting factor '" + tok + "'");
        long v = 0;
        try {
            size_t used = 0;
            v = std::stol(tok.substr(1), &used);
            if (used != tok.size() - 1) throw std::invalid_argument("trailing");
        } catch (...) {
            throw Error(ErrorKind::ParseError, "bad splitting factor '" + tok + "'");
        }
        SplitFactor f;
        if (tok[0] == 'q') {
            if (!squarefree(v)) throw Error(ErrorKind::InvalidArgument, "quadratic factor needs squarefree a, got " + tok);
            f.kind = SplitFactor::Kind::Quadratic;
            f.a = v;
        } else if (tok[0] == 'o') {
            if (v < 1 || v % 2 == 0) throw Error(ErrorKind::InvalidArgument, "odd abelian factor needs odd degree, got " + tok);
            f.kind = SplitFactor::Kind::OddAbelian;
            f.dim = v;
        } else {
            throw Error(ErrorKind::ParseError, "bad splitting factor '" + tok + "'");
        }
        out.factors.push_back(f);
    }
    if (out.factors.empty()) throw Error(ErrorKind::ParseError, "empty splitting");
    return out;
}

long AbelianSplitting::dim() const {
    long d = 0;
    for (const auto& f : factors) d += f.kind == SplitFactor::Kind::Quadratic ? 2 : f.dim;
    return d;
}

std::string AbelianSplitting::str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].str();
    return s;
}

OrthRep perm_rep(const AbelianSplitting& split, const BaseField& field) {
    OrthRep V;
    V.field = field;
    for (const auto& f : split.factors) {
        if (f.kind == SplitFactor::Kind::Quadratic) {
            // 1 + chi_a
            V.chars.push_back(SquareClass::one(field));
            V.chars.push_back(sqclass(field, f.a));
        } else {
            // odd-order image: all classes vanish, modelled by trivial summands
            for (long i = 0; i < f.dim; ++i) V.chars.push_back(SquareClass::one(field));
        }
    }
    return V;
}

H2Class perm_sw2_oracle(const AbelianSplitting& split, const BaseField& field) {
    return sw2(perm_rep(split, field));
}

std::string SerreReport::status() const {
    if (!equal) return "oracle-unavailable";
    return *equal ? "EQUAL" : "DIFFERENT";
}

SerreReport serre_check(const EtaleAlgebra& A, const std::optional<AbelianSplitting>& split) {
    const BaseField Q = BaseField::Q();
    DiagForm d = diagonalize(trace_gram(A));
    SerreReport rep;
    rep.disc = disc(d);
    rep.rhs = hw2(d) + cup(sqclass(Q, 2), rep.disc);
    if (split) {
        if (split->dim() != A.degree())
            throw Error(ErrorKind::DimensionMismatch, "splitting has degree " + std::to_string(split->dim()) +
                                                          " but f has degree " + std::to_string(A.degree()));
        OrthRep V = perm_rep(*split, Q);
        if (sw1(V) != rep.disc)
            throw Error(ErrorKind::SplittingMismatch, "splitting determinant " + sw1(V).str() +
                                                          " differs from the discriminant class " + rep.disc.str());
        rep.lhs = sw2(V);
        rep.equal = (*rep.lhs == rep.rhs);
    }
    return rep;
}

std::vector<std::pair<EtaleAlgebra, AbelianSplitting>> quadratic_corpus(long bound, int max_fields) {
    std::vector<long> as;
    for (long a = -bound; a <= bound; ++a)
        if (a != 0 && a != 1 && squarefree(a)) as.push_back(a);
    std::vector<std::pair<EtaleAlgebra, AbelianSplitting>> out;
    std::vector<size_t> idx;
    auto emit = [&] {
        ZPoly f = ZPoly::constant(1);
        AbelianSplitting s;
        for (size_t i : idx) {
            f = f * (ZPoly::x().pow(2) - ZPoly::constant(as[i]));
            SplitFactor q;
            q.a = as[i];
            s.factors.push_back(q);
        }
        out.emplace_back(EtaleAlgebra::from(f), s);
    };
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!idx.empty()) emit();
        if (static_cast<int>(idx.size()) == max_fields) return;
        for (size_t i = start; i < as.size(); ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace swhw
