#include "emalg/reps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace emalg {

namespace {

Matrix mul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
        }
    return c;
}

Matrix comm(const Matrix& a, const Matrix& b) { return mul(a, b) - mul(b, a); }

size_t nnz(const Matrix& m) {
    size_t k = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) ++k;
    return k;
}

SparseVec flat(const Matrix& m) { return to_sparse(m.flatten()); }

// an independent subset of the matrices
std::vector<Matrix> independent(const std::vector<Matrix>& ms) {
    SparseEchelon ech;
    std::vector<Matrix> out;
    for (const auto& m : ms)
        if (ech.add(flat(m))) out.push_back(m);
    return out;
}

Matrix leibniz(const std::vector<Matrix>& parts, const std::vector<size_t>& dims) {
    size_t total = 1;
    for (size_t d : dims) total *= d;
    Matrix out(total, total);
    for (size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].is_zero()) continue;
        size_t left = 1, right = 1;
        for (size_t i = 0; i < k; ++i) left *= dims[i];
        for (size_t i = k + 1; i < dims.size(); ++i) right *= dims[i];
        out += kron(kron(Matrix::identity(left), parts[k]), Matrix::identity(right));
    }
    return out;
}

}  // namespace

Matrix MatrixRep::act(const Vec& c) const {
    Matrix out(dim, dim);
    for (size_t i = 0; i < c.size() && i < mats.size(); ++i)
        if (!c[i].is_zero()) out += mats[i] * c[i];
    return out;
}

void check_rep(const LieAlgebra& L, const MatrixRep& r) {
    if (r.mats.size() != L.dim()) throw RepError("representation has " + std::to_string(r.mats.size()) + " matrices for an algebra of dimension " + std::to_string(L.dim()));
    for (const auto& m : r.mats)
        if (m.rows() != r.dim || m.cols() != r.dim) throw RepError("matrix size differs from the module dimension");
    for (size_t i = 0; i < L.dim(); ++i)
        for (size_t j = i + 1; j < L.dim(); ++j)
            if (r.act(L.bracket(L.unit(i), L.unit(j))) != comm(r.mats[i], r.mats[j]))
                throw RepError("bracket compatibility fails on (" + L.labels()[i] + ", " + L.labels()[j] + ")", i, j);
}

MatrixRep sl2_irrep(const LieAlgebra& L, int d) {
    if (!L.cartan() || L.cartan()->type != "A1") throw RepError("sl2 modules need an algebra of type A1");
    if (d < 0) throw RepError("highest weight must be nonnegative");
    const auto& c = *L.cartan();
    size_t n = d + 1;
    Matrix e(n, n), f(n, n), h(n, n);
    for (size_t k = 0; k < n; ++k) {
        int ki = static_cast<int>(k);
        h(k, k) = Scalar(d - 2 * ki);
        if (k + 1 < n) f(k + 1, k) = Scalar(1);
        if (k > 0) e(k - 1, k) = Scalar(ki * (d - ki + 1));
    }
    MatrixRep r{"V(" + std::to_string(d) + ")", n, std::vector<Matrix>(L.dim(), Matrix(n, n))};
    r.mats[c.e_index[0]] = e;
    r.mats[c.f_index[0]] = f;
    r.mats[c.h_index[0]] = h;
    check_rep(L, r);
    return r;
}

MatrixRep defining_rep(const LieAlgebra& L) {
    if (L.defining().empty()) throw RepError("no defining matrices are known for " + L.name());
    MatrixRep r{"defining", L.defining()[0].rows(), L.defining()};
    check_rep(L, r);
    return r;
}

MatrixRep one_dim_rep(const LieAlgebra& L, const Vec& values) {
    if (values.size() != L.dim()) throw RepError("one-dimensional form has the wrong length");
    MatrixRep r{"one_dim", 1, {}};
    for (const auto& v : values) r.mats.push_back(Matrix::scalar(1, v));
    check_rep(L, r);
    return r;
}

MatrixRep user_rep(const LieAlgebra& L, std::vector<Matrix> mats) {
    if (mats.empty()) throw RepError("no matrices given");
    MatrixRep r{"matrices", mats[0].rows(), std::move(mats)};
    check_rep(L, r);
    return r;
}

MatrixRep tensor_rep(const MatrixRep& a, const MatrixRep& b) {
    if (a.mats.size() != b.mats.size() || a.source.empty() != b.source.empty())
        throw RepError("tensor factors have incompatible sources");
    MatrixRep r{a.source + " (x) " + b.source, a.dim * b.dim, {}};
    for (size_t i = 0; i < a.mats.size(); ++i) r.mats.push_back(leibniz({a.mats[i], b.mats[i]}, {a.dim, b.dim}));
    return r;
}

MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
    if (a.mats.size() != b.mats.size()) throw RepError("summands have incompatible sources");
    MatrixRep r{a.source + " + " + b.source, a.dim + b.dim, {}};
    for (size_t i = 0; i < a.mats.size(); ++i) {
        Matrix m(r.dim, r.dim);
        for (size_t p = 0; p < a.dim; ++p)
            for (size_t q = 0; q < a.dim; ++q) m(p, q) = a.mats[i](p, q);
        for (size_t p = 0; p < b.dim; ++p)
            for (size_t q = 0; q < b.dim; ++q) m(a.dim + p, a.dim + q) = b.mats[i](p, q);
        r.mats.push_back(m);
    }
    return r;
}

MatrixRep compose_automorphism(const MatrixRep& r, const LieAutomorphism& phi) {
    MatrixRep out{r.source + " o phi", r.dim, {}};
    for (size_t i = 0; i < r.mats.size(); ++i) out.mats.push_back(r.act(phi.matrix().col(i)));
    return out;
}

MatrixRep twist_by_character(const MatrixRep& r, const Vec& lambda) {
    if (lambda.size() != r.mats.size()) throw RepError("character has the wrong length");
    MatrixRep out{"lambda (x) " + r.source, r.dim, r.mats};
    for (size_t i = 0; i < lambda.size(); ++i) out.mats[i] += Matrix::scalar(r.dim, lambda[i]);
    return out;
}

Matrix LocalRep::act(const Vec& v) const {
    if (!iso.gx.contains(v)) throw RepError("vector is not in the isotropy subalgebra");
    return rep.act(iso.gx.coords(v));
}

namespace {

// a representation of L on the standard basis, moved to the basis of g^x = g
LocalRep from_full(const GroupActionBundle& B, const Point& x, const MatrixRep& full) {
    LocalRep r{point_isotropy(B, x), {}};
    if (r.iso.gx.dim() != B.lie().dim())
        throw RepError("isotropy subalgebra at " + point_str(x) + " is a proper subalgebra; use one_dim or matrices");
    r.rep = MatrixRep{full.source, full.dim, {}};
    for (const auto& b : r.iso.gx.basis()) r.rep.mats.push_back(full.act(b));
    return r;
}

}  // namespace

LocalRep local_sl2(const GroupActionBundle& B, const Point& x, int d) {
    return from_full(B, x, sl2_irrep(B.lie(), d));
}

LocalRep local_defining(const GroupActionBundle& B, const Point& x) {
    return from_full(B, x, defining_rep(B.lie()));
}

LocalRep local_one_dim(const GroupActionBundle& B, const Point& x, const Vec& values) {
    LocalRep r{point_isotropy(B, x), {}};
    if (values.size() != r.iso.z_basis.size())
        throw RepError("one-dimensional form at " + point_str(x) + " needs " + std::to_string(r.iso.z_basis.size()) +
                       " values (dim of g^x/[g^x,g^x])");
    std::string text;
    for (size_t i = 0; i < values.size(); ++i) text += (i ? "," : "") + values[i].str();
    r.rep = MatrixRep{"one_dim(" + text + ")", 1, {}};
    for (const auto& b : r.iso.gx.basis()) {
        Vec z = r.iso.z_coords(b);
        Scalar s(0);
        for (size_t i = 0; i < z.size(); ++i) s += values[i] * z[i];
        r.rep.mats.push_back(Matrix::scalar(1, s));
    }
    return r;
}

LocalRep local_matrices(const GroupActionBundle& B, const Point& x, std::vector<Matrix> mats) {
    LocalRep r{point_isotropy(B, x), {}};
    if (mats.size() != r.iso.gx.dim())
        throw RepError("expected " + std::to_string(r.iso.gx.dim()) + " matrices for g^x at " + point_str(x));
    if (mats.empty()) throw RepError("no matrices given");
    r.rep = MatrixRep{"matrices", mats[0].rows(), std::move(mats)};
    const auto& L = B.lie();
    const auto& bs = r.iso.gx.basis();
    for (size_t i = 0; i < bs.size(); ++i)
        for (size_t j = i + 1; j < bs.size(); ++j)
            if (r.act(L.bracket(bs[i], bs[j])) != comm(r.rep.mats[i], r.rep.mats[j]))
                throw RepError("bracket compatibility fails on g^x basis pair", i, j);
    return r;
}

LocalRep transport(const GroupActionBundle& B, size_t g, const LocalRep& r) {
    Point y = B.act_on_point(g, r.iso.x);
    LocalRep out{point_isotropy(B, y), {}};
    out.rep = MatrixRep{r.rep.source + " o g^-1", r.rep.dim, {}};
    for (const auto& b : out.iso.gx.basis()) out.rep.mats.push_back(r.act(B.lie_action(g).apply_inverse(b)));
    return out;
}

MatrixRep evaluation_rep(const MapAlgebraWindow& w, const std::vector<LocalRep>& reps, size_t count) {
    const auto& B = w.bundle();
    if (count == 0 || count > w.dim()) count = w.dim();
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (B.same_orbit(reps[i].iso.x, reps[j].iso.x))
                throw DomainError("points " + point_str(reps[i].iso.x) + " and " + point_str(reps[j].iso.x) +
                                  " lie in one orbit");
    std::vector<size_t> dims;
    std::string src = "ev";
    for (const auto& r : reps) {
        dims.push_back(r.rep.dim);
        src += " " + point_str(r.iso.x) + ":" + r.rep.source;
    }
    if (reps.empty()) src = "trivial";
    size_t total = 1;
    for (size_t d : dims) total *= d;
    MatrixRep out{"window", total, {}};
    out.source = "window[" + std::to_string(count) + "] " + src;
    for (size_t a = 0; a < count; ++a) {
        std::vector<Matrix> parts;
        for (const auto& r : reps) parts.push_back(r.act(map_evaluate(B.ring(), w.element(a), r.iso.x)));
        out.mats.push_back(reps.empty() ? Matrix(1, 1) : leibniz(parts, dims));
    }
    return out;
}

MatrixRep first_jet_rep(const MapAlgebraWindow& w, const LocalRep& r, size_t count) {
    const auto& B = w.bundle();
    const auto& R = B.ring();
    if (R.nvars() != 1) throw RepError("jet modules are built for one-variable rings");
    if (count == 0 || count > w.dim()) count = w.dim();
    const Point& x = r.iso.x;
    size_t n = r.rep.dim;
    MatrixRep out{"jet " + point_str(x) + ":" + r.rep.source, 2 * n, {}};
    for (size_t a = 0; a < count; ++a) {
        const MapElement& al = w.element(a);
        MapElement der;
        for (const auto& [m, v] : al.terms) {
            if (m[0] == 0) continue;
            Vec u = v;
            for (auto& c : u) c *= Scalar(m[0]);
            der = map_add(der, MapElement{{{Monomial{m[0] - 1}, u}}});
        }
        Matrix v0 = r.act(map_evaluate(R, al, x));
        Matrix v1 = der.is_zero() ? Matrix(n, n) : r.act(map_evaluate(R, der, x));
        Matrix eps(2, 2);
        eps(1, 0) = Scalar(1);
        out.mats.push_back(kron(Matrix::identity(2), v0) + kron(eps, v1));
    }
    return out;
}

void check_window_rep(const MapAlgebraWindow& w, const MatrixRep& r) {
    size_t k = r.mats.size();
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            Vec c;
            try {
                c = w.bracket_coords(i, j);
            } catch (const WindowError&) {
                continue;
            }
            bool inside = true;
            for (size_t t = k; t < c.size(); ++t)
                if (!c[t].is_zero()) inside = false;
            if (!inside) continue;
            if (r.act(c) != comm(r.mats[i], r.mats[j]))
                throw RepError("bracket compatibility fails on (" + w.label(i) + ", " + w.label(j) + ")", i, j);
        }
}

std::vector<Matrix> closure_basis(const MatrixRep& r) {
    size_t n = r.dim, full = n * n;
    std::vector<Matrix> gens = independent(r.mats);
    std::sort(gens.begin(), gens.end(), [](const Matrix& a, const Matrix& b) { return nnz(a) < nnz(b); });
    SparseEchelon ech;
    std::vector<Matrix> basis{Matrix::identity(n)};
    ech.add(flat(basis[0]));
    for (size_t idx = 0; idx < basis.size() && basis.size() < full; ++idx)
        for (const auto& g : gens) {
            Matrix p = mul(g, basis[idx]);
            if (ech.add(flat(p))) basis.push_back(p);
            if (basis.size() == full) break;
        }
    return basis;
}

bool burnside_irreducible(const MatrixRep& r) {
    if (r.dim == 0) throw RepError("zero-dimensional module");
    return closure_basis(r).size() == r.dim * r.dim;
}

namespace {

// kernel of c -> sum c_k cols[k], as sparse coefficient vectors
std::vector<SparseVec> column_kernel(const std::vector<SparseVec>& cols) {
    std::vector<std::pair<SparseVec, SparseVec>> rows;  // leading entry 1, combination
    std::unordered_map<uint32_t, size_t> by_pivot;
    std::vector<SparseVec> ker;
    for (size_t k = 0; k < cols.size(); ++k) {
        SparseVec v = cols[k];
        SparseVec c{{static_cast<uint32_t>(k), Scalar(1)}};
        while (!v.empty()) {
            auto it = by_pivot.find(v.front().first);
            if (it == by_pivot.end()) break;
            Scalar f = -v.front().second;
            v = axpy(v, f, rows[it->second].first);
            c = axpy(c, f, rows[it->second].second);
        }
        if (v.empty()) {
            ker.push_back(std::move(c));
            continue;
        }
        Scalar inv = v.front().second.inverse();
        for (auto& e : v) e.second *= inv;
        for (auto& e : c) e.second *= inv;
        by_pivot[v.front().first] = rows.size();
        rows.emplace_back(std::move(v), std::move(c));
    }
    return ker;
}

struct SparseMat {
    size_t n = 0;
    std::vector<std::vector<std::pair<size_t, Scalar>>> rows, cols;
    explicit SparseMat(const Matrix& m) : n(m.rows()), rows(m.rows()), cols(m.cols()) {
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero()) {
                    rows[i].emplace_back(j, m(i, j));
                    cols[j].emplace_back(i, m(i, j));
                }
    }
};

}  // namespace

size_t intertwiner_dimension(const MatrixRep& a, const MatrixRep& b) {
    if (a.mats.size() != b.mats.size()) throw RepError("representations have different sources");
    size_t n1 = a.dim, n2 = b.dim;
    // pairs (rho1(s), rho2(s)) over an independent set of sources; diagonal and sparse first
    auto cost = [&](size_t i) {
        bool diag = a.mats[i].is_diagonal() && b.mats[i].is_diagonal();
        return std::make_pair(diag ? 0 : 1, nnz(a.mats[i]) + nnz(b.mats[i]));
    };
    std::vector<size_t> order(a.mats.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return cost(i) < cost(j); });
    SparseEchelon ech;
    std::vector<size_t> use;
    for (size_t i : order) {
        SparseVec v = flat(a.mats[i]);
        for (const auto& [c, s] : flat(b.mats[i])) v.emplace_back(static_cast<uint32_t>(n1 * n1 + c), s);
        if (ech.add(v)) use.push_back(i);
    }
    // candidate intertwiners T (n2 x n1), flattened row-major
    std::vector<SparseVec> K;
    for (uint32_t k = 0; k < n1 * n2; ++k) K.push_back({{k, Scalar(1)}});
    for (size_t s : use) {
        if (K.empty()) break;
        SparseMat r1(a.mats[s]), r2(b.mats[s]);
        std::vector<SparseVec> images;
        for (const auto& t : K) {
            std::map<uint32_t, Scalar> img;
            for (const auto& [k, v] : t) {
                size_t i = k / n1, j = k % n1;
                // (T rho1)_{i,l} += T_ij rho1_jl ; (rho2 T)_{m,j} -= rho2_mi T_ij
                for (const auto& [l, x] : r1.rows[j]) img[static_cast<uint32_t>(i * n1 + l)] += v * x;
                for (const auto& [m, x] : r2.cols[i]) img[static_cast<uint32_t>(m * n1 + j)] -= x * v;
            }
            SparseVec sv;
            for (auto& [k, v] : img)
                if (!v.is_zero()) sv.emplace_back(k, std::move(v));
            images.push_back(std::move(sv));
        }
        std::vector<SparseVec> next;
        for (const auto& c : column_kernel(images)) {
            SparseVec t;
            for (const auto& [k, v] : c) t = axpy(t, v, K[k]);
            next.push_back(std::move(t));
        }
        K = std::move(next);
    }
    return K.size();
}

OneDimSplit decompose_one_dim_factor(const MatrixRep& r) {
    if (!burnside_irreducible(r)) throw RepError("representation is not irreducible");
    OneDimSplit out;
    Scalar n(static_cast<long>(r.dim));
    out.rho2 = MatrixRep{"rho2", r.dim, {}};
    for (const auto& m : r.mats) {
        Scalar l = trace(m) / n;
        out.lambda.push_back(l);
        out.rho2.mats.push_back(m - Matrix::scalar(r.dim, l));
    }
    // Lie closure of the image of rho2
    SparseEchelon ech;
    std::vector<Matrix> basis;
    for (const auto& m : out.rho2.mats)
        if (ech.add(flat(m))) basis.push_back(m);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            Matrix c = comm(basis[i], basis[j]);
            if (ech.add(flat(c))) basis.push_back(c);
        }
    out.image_dim = basis.size();
    if (basis.empty()) {
        out.semisimple = true;
    } else {
        std::vector<std::string> labels;
        for (size_t i = 0; i < basis.size(); ++i) labels.push_back("m" + std::to_string(i));
        LieAlgebra img = LieAlgebra::from_matrices("image", labels, basis);
        out.semisimple = analyze_structure(img).semisimple;
    }
    return out;
}

bool completely_reducible(const MatrixRep& r) {
    auto basis = closure_basis(r);
    size_t m = basis.size();
    if (m == r.dim * r.dim) return true;
    Matrix gram(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            Scalar t(0);
            for (size_t p = 0; p < r.dim; ++p)
                for (size_t q = 0; q < r.dim; ++q)
                    if (!basis[i](p, q).is_zero() && !basis[j](q, p).is_zero()) t += basis[i](p, q) * basis[j](q, p);
            gram(i, j) = t;
            gram(j, i) = t;
        }
    return rank(gram) == m;
}

}  // namespace emalg
