#include "emalg/lie.hpp"

#include "emalg/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace emalg {

namespace {

Matrix unit_matrix(size_t n, size_t i, size_t j) {
    Matrix m(n, n);
    m(i, j) = Scalar(1);
    return m;
}

SparseVec normalized(const SparseVec& v, size_t n) {
    for (const auto& [k, x] : v)
        if (k >= n) throw std::invalid_argument("structure constant index out of range");
    Vec d(n);
    for (const auto& [k, x] : v) d[k] += x;
    return to_sparse(d);
}

SparseVec negated(const SparseVec& v) {
    SparseVec r = v;
    for (auto& e : r) e.second = -e.second;
    return r;
}

std::vector<Matrix> ad_all(const LieAlgebra& L) {
    std::vector<Matrix> out;
    out.reserve(L.dim());
    for (size_t i = 0; i < L.dim(); ++i) out.push_back(L.ad_basis(i));
    return out;
}

// scalar c with a = c*b, if one exists
std::optional<Scalar> ratio(const Matrix& a, const Matrix& b) {
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            if (!b(i, j).is_zero()) {
                Scalar c = a(i, j) / b(i, j);
                if (a == b * c) return c;
                return std::nullopt;
            }
    return std::nullopt;
}

int as_int(const Scalar& s) {
    if (!s.is_rational() || s.rational().get_den() != 1)
        throw std::logic_error("expected an integer Cartan entry");
    return static_cast<int>(s.rational().get_num().get_si());
}

using Root = std::vector<int>;

Root add_root(Root a, const Root& b, int k) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
    return a;
}

Root simple_root(size_t r, size_t i) {
    Root a(r, 0);
    a[i] = 1;
    return a;
}

int height(const Root& a) { return std::accumulate(a.begin(), a.end(), 0); }

// positive roots from a Cartan matrix with cartan[i][j] = alpha_j(h_i), by root strings
std::vector<Root> positive_roots(const std::vector<std::vector<int>>& cartan) {
    size_t r = cartan.size();
    std::set<Root> all;
    std::vector<Root> layer;
    for (size_t i = 0; i < r; ++i) layer.push_back(simple_root(r, i));
    all.insert(layer.begin(), layer.end());
    while (!layer.empty()) {
        std::vector<Root> next;
        for (const auto& b : layer)
            for (size_t i = 0; i < r; ++i) {
                int p = 0;
                while (all.count(add_root(b, simple_root(r, i), -(p + 1)))) ++p;
                int bh = 0;
                for (size_t j = 0; j < r; ++j) bh += b[j] * cartan[i][j];
                int q = p - bh;
                if (q <= 0) continue;
                Root g = add_root(b, simple_root(r, i), 1);
                if (all.insert(g).second) next.push_back(g);
            }
        layer = std::move(next);
    }
    std::vector<Root> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return out;
}

std::string root_label(char prefix, const Root& a, size_t simple_index, bool simple) {
    if (simple) return std::string(1, prefix) + std::to_string(simple_index + 1);
    std::string s(1, prefix);
    s += "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

const char* kSignConvention =
    "positive roots ordered by height, then by descending lexicographic order of simple-root "
    "coordinates; e_b = [e_i, e_(b-a_i)]/(p+1) and f_b = -[f_i, f_(b-a_i)]/(p+1) with i minimal "
    "such that b-a_i is a root and p the largest k with b-a_i-k*a_i a root";

}  // namespace

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<SparseVec> table)
    : name_(std::move(name)), n_(labels.size()), labels_(std::move(labels)), table_(std::move(table)) {
    if (table_.size() != n_ * n_) throw std::invalid_argument("structure constant table has wrong size");
    for (auto& t : table_) t = normalized(t, n_);
    for (size_t i = 0; i < n_; ++i) {
        if (!table_[i * n_ + i].empty())
            throw std::invalid_argument("[b" + std::to_string(i) + ", b" + std::to_string(i) + "] is nonzero");
        for (size_t j = i + 1; j < n_; ++j)
            if (table_[i * n_ + j] != negated(table_[j * n_ + i]))
                throw std::invalid_argument("structure constants not antisymmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
    }
    check_jacobi();
}

void LieAlgebra::check_jacobi() const {
    Vec acc(n_);
    auto add_term = [&](size_t a, size_t b, size_t c) {
        // [[b_a, b_b], b_c]
        for (const auto& [m, x] : table_[a * n_ + b])
            for (const auto& [k, y] : table_[m * n_ + c]) acc[k] += x * y;
    };
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = i + 1; j < n_; ++j)
            for (size_t k = j + 1; k < n_; ++k) {
                std::fill(acc.begin(), acc.end(), Scalar());
                add_term(i, j, k);
                add_term(j, k, i);
                add_term(k, i, j);
                if (!is_zero(acc))
                    throw JacobiError("Jacobi identity fails on basis triple (" + labels_[i] + ", " + labels_[j] +
                                          ", " + labels_[k] + ")",
                                      i, j, k);
            }
}

Vec LieAlgebra::unit(size_t i) const {
    Vec v(n_);
    v.at(i) = Scalar(1);
    return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("bracket: dimension mismatch");
    Vec acc(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (j == i || y[j].is_zero()) continue;
            const auto& t = table_[i * n_ + j];
            if (t.empty()) continue;
            Scalar c = x[i] * y[j];
            for (const auto& [k, v] : t) acc[k] += c * v;
        }
    }
    return acc;
}

Matrix LieAlgebra::ad(const Vec& x) const {
    Matrix m(n_, n_);
    for (size_t i = 0; i < n_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < n_; ++j)
            for (const auto& [k, v] : table_[i * n_ + j]) m(k, j) += x[i] * v;
    }
    return m;
}

Matrix LieAlgebra::ad_basis(size_t i) const {
    Matrix m(n_, n_);
    for (size_t j = 0; j < n_; ++j)
        for (const auto& [k, v] : table_[i * n_ + j]) m(k, j) = v;
    return m;
}

LieAlgebra LieAlgebra::from_matrices(std::string name, std::vector<std::string> labels,
                                     const std::vector<Matrix>& basis) {
    if (labels.size() != basis.size()) throw std::invalid_argument("label count differs from basis size");
    size_t n = basis.size();
    if (n == 0) return LieAlgebra(std::move(name), {}, {});
    size_t d = basis[0].rows();
    std::vector<Vec> flat;
    for (const auto& b : basis) {
        if (b.rows() != d || b.cols() != d) throw std::invalid_argument("basis matrices must share one square size");
        flat.push_back(b.flatten());
    }
    Coordinatizer co(flat, d * d);
    std::vector<SparseVec> table(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto c = co.try_coords(commutator(basis[i], basis[j]).flatten());
            if (!c)
                throw std::invalid_argument("matrix span not closed under commutators at (" + labels[i] + ", " +
                                            labels[j] + ")");
            table[i * n + j] = to_sparse(*c);
            table[j * n + i] = negated(table[i * n + j]);
        }
    LieAlgebra L(std::move(name), std::move(labels), std::move(table));
    L.defining_ = basis;
    return L;
}

LieAlgebra LieAlgebra::matrix_family(const std::string& family, int n) {
    std::vector<Matrix> basis;
    std::vector<std::string> labels;
    auto lab = [](const char* p, size_t i, size_t j) { return std::string(p) + std::to_string(i + 1) + "_" + std::to_string(j + 1); };
    if (family == "sl") {
        if (n < 2) throw std::invalid_argument("sl_n needs n >= 2");
        size_t N = n;
        for (size_t i = 0; i + 1 < N; ++i) {
            basis.push_back(unit_matrix(N, i, i) - unit_matrix(N, i + 1, i + 1));
            labels.push_back("H" + std::to_string(i + 1));
        }
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j)
                if (i != j) {
                    basis.push_back(unit_matrix(N, i, j));
                    labels.push_back(lab("E", i, j));
                }
    } else if (family == "so") {
        if (n < 2) throw std::invalid_argument("so_n needs n >= 2");
        size_t N = n;
        for (size_t i = 0; i < N; ++i)
            for (size_t j = i + 1; j < N; ++j) {
                basis.push_back(unit_matrix(N, i, j) - unit_matrix(N, j, i));
                labels.push_back(lab("M", i, j));
            }
    } else if (family == "sp") {
        if (n < 2 || n % 2) throw std::invalid_argument("sp_n needs even n >= 2");
        size_t m = n / 2, N = n;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                basis.push_back(unit_matrix(N, i, j) - unit_matrix(N, m + j, m + i));
                labels.push_back(lab("A", i, j));
            }
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j) {
                Matrix b = unit_matrix(N, i, m + j);
                if (i != j) b += unit_matrix(N, j, m + i);
                basis.push_back(b);
                labels.push_back(lab("B", i, j));
                Matrix c = unit_matrix(N, m + i, j);
                if (i != j) c += unit_matrix(N, m + j, i);
                basis.push_back(c);
                labels.push_back(lab("C", i, j));
            }
    } else {
        throw std::invalid_argument("unknown matrix family '" + family + "'");
    }
    return from_matrices(family + std::to_string(n), std::move(labels), basis);
}

namespace {

struct GeneratorMatrices {
    std::vector<Matrix> e, f;
};

GeneratorMatrices classical_generators(char X, int n) {
    GeneratorMatrices g;
    auto E = [](size_t N, size_t i, size_t j) { return unit_matrix(N, i, j); };
    switch (X) {
    case 'A': {
        size_t N = n + 1;
        for (int i = 0; i < n; ++i) g.e.push_back(E(N, i, i + 1));
        break;
    }
    case 'B': {
        // form J with J(0,0) = 1 and J(i, n+i) = 1, coordinates 0, 1..n, n+1..2n
        size_t N = 2 * n + 1;
        for (int k = 0; k + 1 < n; ++k) g.e.push_back(E(N, k + 1, k + 2) - E(N, n + k + 2, n + k + 1));
        g.e.push_back(E(N, n, 0) - E(N, 0, 2 * n));
        break;
    }
    case 'C': {
        size_t N = 2 * n;
        for (int k = 0; k + 1 < n; ++k) g.e.push_back(E(N, k, k + 1) - E(N, n + k + 1, n + k));
        g.e.push_back(E(N, n - 1, 2 * n - 1));
        break;
    }
    case 'D': {
        size_t N = 2 * n;
        for (int k = 0; k + 1 < n; ++k) g.e.push_back(E(N, k, k + 1) - E(N, n + k + 1, n + k));
        g.e.push_back(E(N, n - 2, 2 * n - 1) - E(N, n - 1, 2 * n - 2));
        break;
    }
    default:
        throw std::invalid_argument("unsupported Cartan type letter");
    }
    for (const auto& e : g.e) g.f.push_back(e.transpose());
    return g;
}

}  // namespace

LieAlgebra LieAlgebra::from_cartan_type(const std::string& type) {
    if (type.size() < 2) throw std::invalid_argument("bad Cartan type '" + type + "'");
    char X = type[0];
    int n = 0;
    try {
        size_t used = 0;
        n = std::stoi(type.substr(1), &used);
        if (used != type.size() - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad Cartan type '" + type + "'");
    }
    bool ok = (X == 'A' && n >= 1) || (X == 'B' && n >= 2) || (X == 'C' && n >= 2) || (X == 'D' && n >= 4) ||
              (X == 'G' && n == 2);
    if (!ok) throw std::invalid_argument("unsupported Cartan type '" + type + "'");

    GeneratorMatrices g;
    if (X == 'G') {
        // fixed points of triality on D4: the outer nodes fold onto one short node
        GeneratorMatrices d = classical_generators('D', 4);
        g.e = {d.e[0] + d.e[2] + d.e[3], d.e[1]};
        g.f = {d.f[0] + d.f[2] + d.f[3], d.f[1]};
    } else {
        g = classical_generators(X, n);
    }
    size_t r = g.e.size();
    std::vector<Matrix> h(r);
    for (size_t i = 0; i < r; ++i) {
        Matrix hh = commutator(g.e[i], g.f[i]);
        auto c = ratio(commutator(hh, g.e[i]), g.e[i]);
        if (!c || c->is_zero()) throw std::logic_error("generator pair is not an sl2 triple");
        g.f[i] *= Scalar(2) / *c;
        h[i] = commutator(g.e[i], g.f[i]);
    }
    std::vector<std::vector<int>> cartan(r, std::vector<int>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            auto c = ratio(commutator(h[i], g.e[j]), g.e[j]);
            if (!c) throw std::logic_error("e_j is not an eigenvector of ad h_i");
            cartan[i][j] = as_int(*c);
        }

    std::vector<Root> roots = positive_roots(cartan);
    std::map<Root, size_t> index;
    for (size_t k = 0; k < roots.size(); ++k) index[roots[k]] = k;
    std::vector<Matrix> Eb(roots.size()), Fb(roots.size());
    CartanData data;
    data.type = type;
    data.rank = static_cast<int>(r);
    data.cartan = cartan;
    data.pos_roots = roots;
    data.sign_convention = kSignConvention;
    for (size_t k = 0; k < roots.size(); ++k) {
        const Root& b = roots[k];
        if (height(b) == 1) {
            size_t i = std::find(b.begin(), b.end(), 1) - b.begin();
            Eb[k] = g.e[i];
            Fb[k] = g.f[i];
            continue;
        }
        for (size_t i = 0; i < r; ++i) {
            Root gm = add_root(b, simple_root(r, i), -1);
            auto it = index.find(gm);
            if (it == index.end()) continue;
            int p = 0;
            while (index.count(add_root(gm, simple_root(r, i), -(p + 1)))) ++p;
            Scalar s = Scalar(1, p + 1);
            Eb[k] = commutator(g.e[i], Eb[it->second]) * s;
            Fb[k] = commutator(g.f[i], Fb[it->second]) * (-s);
            data.steps.push_back({k, i, it->second, p});
            break;
        }
    }

    std::vector<Matrix> basis(h.begin(), h.end());
    std::vector<std::string> labels;
    for (size_t i = 0; i < r; ++i) labels.push_back("h" + std::to_string(i + 1));
    for (size_t k = 0; k < roots.size(); ++k) {
        basis.push_back(Eb[k]);
        labels.push_back(root_label('e', roots[k], k, height(roots[k]) == 1));
    }
    for (size_t k = 0; k < roots.size(); ++k) {
        basis.push_back(Fb[k]);
        labels.push_back(root_label('f', roots[k], k, height(roots[k]) == 1));
    }
    for (size_t i = 0; i < r; ++i) {
        data.h_index.push_back(i);
        data.e_index.push_back(r + i);
        data.f_index.push_back(r + roots.size() + i);
    }
    // steps refer to positive-root positions; store basis indices for e's
    LieAlgebra L = from_matrices(type, std::move(labels), basis);
    for (const auto& t : L.table_)
        for (const auto& [k, v] : t)
            if (!v.is_rational() || v.rational().get_den() != 1)
                throw std::logic_error("non-integral Chevalley structure constant");
    L.cartan_ = std::move(data);
    return L;
}

LieAlgebra LieAlgebra::subalgebra(const LieAlgebra& parent, const Subspace& s) {
    if (s.ambient() != parent.dim()) throw std::invalid_argument("subspace ambient differs from algebra dimension");
    const auto& B = s.basis();
    size_t k = B.size();
    std::vector<std::string> labels;
    for (size_t i = 0; i < k; ++i) labels.push_back("b" + std::to_string(i));
    std::vector<SparseVec> table(k * k);
    if (k > 0) {
        Coordinatizer co(B, parent.dim());
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) {
                auto c = co.try_coords(parent.bracket(B[i], B[j]));
                if (!c) throw std::invalid_argument("subspace is not closed under the bracket");
                table[i * k + j] = to_sparse(*c);
                table[j * k + i] = negated(table[i * k + j]);
            }
    }
    LieAlgebra L(parent.name() + "|sub" + std::to_string(k), std::move(labels), std::move(table));
    L.embedding_ = B;
    if (!parent.defining().empty()) {
        size_t d = parent.defining()[0].rows();
        for (const auto& b : B) {
            Matrix m(d, d);
            for (size_t i = 0; i < b.size(); ++i)
                if (!b[i].is_zero()) m += parent.defining()[i] * b[i];
            L.defining_.push_back(m);
        }
    }
    return L;
}

// ---------------------------------------------------------------------------

Matrix inverse(const Matrix& m) {
    size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar(1);
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DivisionByZero("matrix is singular");
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

LieAutomorphism::LieAutomorphism(const LieAlgebra& L, Matrix m) : m_(std::move(m)) {
    size_t n = L.dim();
    if (m_.rows() != n || m_.cols() != n) throw std::invalid_argument("automorphism matrix has wrong size");
    try {
        inv_ = inverse(m_);
    } catch (const DivisionByZero&) {
        throw AutomorphismError("automorphism matrix is not invertible", 0, 0);
    }
    std::vector<Vec> cols;
    for (size_t j = 0; j < n; ++j) cols.push_back(m_.col(j));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Vec lhs = m_.apply(to_dense(L.constants(i, j), n));
            if (lhs != L.bracket(cols[i], cols[j]))
                throw AutomorphismError("map does not preserve the bracket on (" + L.labels()[i] + ", " +
                                            L.labels()[j] + ")",
                                        i, j);
        }
}

LieAutomorphism LieAutomorphism::identity(const LieAlgebra& L) {
    LieAutomorphism a;
    a.m_ = Matrix::identity(L.dim());
    a.inv_ = a.m_;
    return a;
}

int LieAutomorphism::order(int bound) const {
    Matrix id = Matrix::identity(m_.rows()), p = m_;
    for (int k = 1; k <= bound; ++k) {
        if (p == id) return k;
        p = p * m_;
    }
    return 0;
}

LieAutomorphism automorphism_from_generators(const LieAlgebra& L, const std::vector<Vec>& e_img,
                                             const std::vector<Vec>& f_img) {
    if (!L.cartan()) throw std::invalid_argument("generator recipe needs an algebra built from a Cartan type");
    const CartanData& c = *L.cartan();
    size_t r = c.rank, np = c.pos_roots.size(), n = L.dim();
    if (e_img.size() != r || f_img.size() != r) throw std::invalid_argument("need one image per simple root");
    std::vector<Vec> img(n);
    std::vector<Vec> E(np), F(np);
    for (size_t i = 0; i < r; ++i) {
        E[i] = e_img[i];
        F[i] = f_img[i];
        img[c.h_index[i]] = L.bracket(e_img[i], f_img[i]);
    }
    for (const auto& s : c.steps) {
        Scalar k = Scalar(1, s.p + 1);
        E[s.root] = L.bracket(E[s.simple], E[s.from]);
        F[s.root] = L.bracket(F[s.simple], F[s.from]);
        for (auto& x : E[s.root]) x *= k;
        for (auto& x : F[s.root]) x *= -k;
    }
    for (size_t k = 0; k < np; ++k) {
        img[r + k] = E[k];
        img[r + np + k] = F[k];
    }
    return LieAutomorphism(L, Matrix::from_columns(img, n));
}

LieAutomorphism chevalley_involution(const LieAlgebra& L) {
    if (!L.cartan()) throw std::invalid_argument("Chevalley involution needs an algebra built from a Cartan type");
    const CartanData& c = *L.cartan();
    std::vector<Vec> e, f;
    for (int i = 0; i < c.rank; ++i) {
        Vec a = L.unit(c.f_index[i]), b = L.unit(c.e_index[i]);
        for (auto& x : a) x = -x;
        for (auto& x : b) x = -x;
        e.push_back(a);
        f.push_back(b);
    }
    return automorphism_from_generators(L, e, f);
}

LieAutomorphism diagram_automorphism(const LieAlgebra& L, const std::vector<int>& perm) {
    if (!L.cartan()) throw std::invalid_argument("diagram automorphism needs an algebra built from a Cartan type");
    const CartanData& c = *L.cartan();
    size_t r = c.rank;
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted.size() != r || sorted[i] != static_cast<int>(i))
            throw std::invalid_argument("node permutation is not a permutation of the Dynkin nodes");
    if (sorted.size() != r) throw std::invalid_argument("node permutation is not a permutation of the Dynkin nodes");
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (c.cartan[perm[i]][perm[j]] != c.cartan[i][j])
                throw std::invalid_argument("node permutation does not preserve the Cartan matrix");
    std::vector<Vec> e, f;
    for (size_t i = 0; i < r; ++i) {
        e.push_back(L.unit(c.e_index[perm[i]]));
        f.push_back(L.unit(c.f_index[perm[i]]));
    }
    return automorphism_from_generators(L, e, f);
}

LieAutomorphism explicit_automorphism(const LieAlgebra& L, const Matrix& m) { return LieAutomorphism(L, m); }

LieAutomorphism automorphism_from_defining_map(const LieAlgebra& L, const std::function<Matrix(const Matrix&)>& f) {
    const auto& D = L.defining();
    if (D.empty()) throw std::invalid_argument("algebra has no defining matrices");
    size_t d = D[0].rows();
    std::vector<Vec> flat;
    for (const auto& m : D) flat.push_back(m.flatten());
    Coordinatizer co(flat, d * d);
    std::vector<Vec> cols;
    for (size_t k = 0; k < D.size(); ++k) {
        auto c = co.try_coords(f(D[k]).flatten());
        if (!c) throw std::invalid_argument("defining map leaves the algebra at " + L.labels()[k]);
        cols.push_back(*c);
    }
    return LieAutomorphism(L, Matrix::from_columns(cols, L.dim()));
}

LieAutomorphism compose(const LieAlgebra& L, const LieAutomorphism& a, const LieAutomorphism& b) {
    return LieAutomorphism(L, a.matrix() * b.matrix());
}

Subspace fixed_subalgebra(const LieAlgebra& L, const std::vector<LieAutomorphism>& autos) {
    size_t n = L.dim();
    if (autos.empty()) return Subspace::full(n);
    std::vector<Matrix> ms;
    for (const auto& a : autos) ms.push_back(a.matrix() - Matrix::identity(n));
    return common_kernel(ms, n);
}

Subspace bracket_span(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
    Subspace s(L.dim());
    for (const auto& u : a.basis())
        for (const auto& v : b.basis()) s.add(L.bracket(u, v));
    return s;
}

Subspace derived_subspace(const LieAlgebra& L, const Subspace& s) { return bracket_span(L, s, s); }

bool is_bracket_closed(const LieAlgebra& L, const Subspace& s) {
    const auto& B = s.basis();
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = i + 1; j < B.size(); ++j)
            if (!s.contains(L.bracket(B[i], B[j]))) return false;
    return true;
}

std::vector<GradedPiece> xi_grading(const LieAlgebra& L, const std::vector<LieAutomorphism>& autos,
                                    const std::vector<int>& orders, int conductor) {
    size_t n = L.dim();
    if (autos.size() != orders.size()) throw std::invalid_argument("one order per automorphism required");
    for (size_t a = 0; a < autos.size(); ++a) {
        if (orders[a] < 1) throw std::invalid_argument("orders must be positive");
        for (size_t b = a + 1; b < autos.size(); ++b)
            if (autos[a].matrix() * autos[b].matrix() != autos[b].matrix() * autos[a].matrix())
                throw AutomorphismError("automorphisms " + std::to_string(a) + " and " + std::to_string(b) +
                                            " do not commute",
                                        a, b);
        Matrix p = Matrix::identity(n);
        for (int k = 0; k < orders[a]; ++k) p = p * autos[a].matrix();
        if (p != Matrix::identity(n))
            throw std::invalid_argument("automorphism " + std::to_string(a) + " does not have order dividing " +
                                        std::to_string(orders[a]));
    }
    int N = std::max(conductor, 1);
    for (size_t a = 0; a < autos.size(); ++a) N = std::lcm(N, std::lcm(orders[a], conductor_of(autos[a].matrix())));
    // eigenspaces per automorphism
    std::vector<std::vector<Subspace>> eig(autos.size());
    for (size_t a = 0; a < autos.size(); ++a) {
        Matrix A = lift(autos[a].matrix(), N);
        for (int k = 0; k < orders[a]; ++k) {
            Scalar z = Scalar::zeta(orders[a]).pow(k);
            if (!z.is_rational()) z = z.lift(N);
            eig[a].push_back(kernel_basis(A - Matrix::scalar(n, z)));
        }
    }
    std::vector<GradedPiece> out;
    std::vector<int> ch(autos.size(), 0);
    while (true) {
        Subspace s = Subspace::full(n);
        for (size_t a = 0; a < autos.size() && s.dim() > 0; ++a) s = s.intersect(eig[a][ch[a]]);
        out.push_back({ch, s});
        size_t a = 0;
        while (a < ch.size() && ++ch[a] == orders[a]) ch[a++] = 0;
        if (a == ch.size()) break;
    }
    size_t total = 0;
    for (const auto& p : out) total += p.space.dim();
    if (total != n) throw std::logic_error("graded pieces do not span the algebra");
    auto index_of = [&](const std::vector<int>& c) {
        size_t idx = 0, mult = 1;
        for (size_t a = 0; a < c.size(); ++a) {
            idx += mult * c[a];
            mult *= orders[a];
        }
        return idx;
    };
    for (const auto& p : out)
        for (const auto& q : out) {
            if (!p.space.dim() || !q.space.dim()) continue;
            std::vector<int> c(autos.size());
            for (size_t a = 0; a < c.size(); ++a) c[a] = (p.character[a] + q.character[a]) % orders[a];
            const Subspace& target = out[index_of(c)].space;
            for (const auto& u : p.space.basis())
                for (const auto& v : q.space.basis())
                    if (!target.contains(L.bracket(u, v))) throw std::logic_error("grading is not compatible with the bracket");
        }
    return out;
}

// ---------------------------------------------------------------------------

Probe::Probe(unsigned long seed) : rng_(seed) {}

long Probe::next() { return static_cast<long>(rng_() % 7) - 3; }

Vec Probe::vec(size_t n) {
    Vec v(n);
    for (auto& x : v) x = Scalar(next());
    return v;
}

Matrix killing_form(const LieAlgebra& L) {
    size_t n = L.dim();
    auto ads = ad_all(L);
    Matrix k(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            k(i, j) = trace_product(ads[i], ads[j]);
            k(j, i) = k(i, j);
        }
    return k;
}

size_t rank_estimate(const LieAlgebra& L, unsigned long seed) {
    size_t n = L.dim();
    if (n == 0) return 0;
    Probe p(seed);
    size_t best = n;
    for (int t = 0; t < 5; ++t) {
        Vec h = p.vec(n);
        best = std::min(best, n - rank(L.ad(h)));
    }
    return best;
}

namespace {

std::vector<Matrix> dense_commutant(const std::vector<Matrix>& ads, size_t n) {
    std::vector<Vec> K;
    for (size_t i = 0; i < n * n; ++i) {
        Vec v(n * n);
        v[i] = Scalar(1);
        K.push_back(v);
    }
    for (const auto& A : ads) {
        if (K.empty()) break;
        std::vector<Vec> cols;
        for (const auto& k : K) {
            Matrix T = Matrix::unflatten(k, n, n);
            cols.push_back((T * A - A * T).flatten());
        }
        Matrix R = Matrix::from_columns(cols, n * n);
        if (R.is_zero()) continue;
        Subspace ker = kernel_basis(R);
        std::vector<Vec> next;
        for (const auto& c : ker.basis()) {
            Vec v(n * n);
            for (size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero())
                    for (size_t j = 0; j < v.size(); ++j) v[j] += c[i] * K[i][j];
            next.push_back(v);
        }
        K = std::move(next);
    }
    std::vector<Matrix> out;
    for (const auto& k : K) out.push_back(Matrix::unflatten(k, n, n));
    return out;
}

// number of short positive roots of a split simple algebra of rank r, from a
// greedy split torus among basis elements and root strings; nullopt when no
// split torus of rank r is found this way
std::optional<int> short_simple_roots(const LieAlgebra& S, size_t r) {
    size_t n = S.dim();
    std::vector<Vec> T;
    std::vector<Matrix> TA;
    std::vector<std::vector<Scalar>> eig;
    Subspace span(n);
    auto split_eigen = [](const Matrix& A) -> std::optional<std::vector<Scalar>> {
        Poly m = minimal_polynomial(A);
        for (const auto& c : m)
            if (!c.is_rational()) return std::nullopt;
        auto f = factor_rational_linear(m);
        if (degree(f.rest) > 0) return std::nullopt;
        std::vector<Scalar> roots;
        for (const auto& [x, mult] : f.roots) {
            if (mult != 1) return std::nullopt;
            roots.push_back(x);
        }
        return roots;
    };
    auto try_add = [&](const Vec& t) {
        if (T.size() >= r || is_zero(t) || span.contains(t)) return;
        for (const auto& u : T)
            if (!is_zero(S.bracket(t, u))) return;
        Matrix A = S.ad(t);
        auto ev = split_eigen(A);
        if (!ev) return;
        span.add(t);
        T.push_back(t);
        TA.push_back(A);
        eig.push_back(*ev);
    };
    for (size_t i = 0; i < n; ++i) try_add(S.unit(i));
    for (int sign : {1, -1})
        for (size_t i = 0; i < n && T.size() < r; ++i)
            for (size_t j = i + 1; j < n && T.size() < r; ++j) {
                Vec v = S.unit(i);
                v[j] = Scalar(sign);
                try_add(v);
            }
    if (T.size() != r) return std::nullopt;

    struct Part {
        Vec wt;
        Subspace sp;
    };
    std::vector<Part> parts{{Vec{}, Subspace::full(n)}};
    for (size_t k = 0; k < r; ++k) {
        std::vector<Part> next;
        for (const auto& p : parts)
            for (const auto& lam : eig[k]) {
                Subspace s = p.sp.intersect(kernel_basis(TA[k] - Matrix::scalar(n, lam)));
                if (s.dim() == 0) continue;
                Vec w = p.wt;
                w.push_back(lam);
                next.push_back({w, s});
            }
        parts = std::move(next);
    }
    std::vector<Vec> roots;
    for (const auto& p : parts) {
        if (is_zero(p.wt)) {
            if (p.sp.dim() != r) return std::nullopt;
        } else {
            if (p.sp.dim() != 1) return std::nullopt;
            roots.push_back(p.wt);
        }
    }
    auto is_root = [&](const Vec& v) { return std::find(roots.begin(), roots.end(), v) != roots.end(); };
    auto combo = [](const Vec& a, const Vec& b, long k) {
        Vec c = a;
        for (size_t i = 0; i < c.size(); ++i) c[i] += b[i] * Scalar(k);
        return c;
    };
    // positivity from a functional with rapidly growing weights
    std::vector<Vec> pos;
    for (const auto& a : roots) {
        Scalar v, w(1);
        for (size_t k = 0; k < r; ++k, w *= Scalar(1000)) v += a[k] * w;
        if (v.is_zero()) return std::nullopt;
        if (v.rational() > 0) pos.push_back(a);
    }
    // beta is short when some root string through it has |p - q| = 2 or 3
    int shorts = 0;
    for (const auto& b : pos) {
        bool is_short = false;
        for (const auto& g : roots) {
            if (g == b || g == combo(b, b, -2)) continue;
            int p = 0, q = 0;
            while (is_root(combo(g, b, -(p + 1)))) ++p;
            while (is_root(combo(g, b, q + 1))) ++q;
            if (std::abs(p - q) >= 2) is_short = true;
        }
        if (is_short) ++shorts;
    }
    return shorts;
}

// ideals of a semisimple algebra from its centroid; nullopt when a generic
// centroid element does not split over the rationals
std::optional<std::vector<Subspace>> split_ideals(const LieAlgebra& S, const std::vector<Matrix>& cent,
                                                  unsigned long seed) {
    size_t n = S.dim(), s = cent.size();
    if (s <= 1) return std::vector<Subspace>{Subspace::full(n)};
    Probe probe(seed + 17);
    for (int attempt = 0; attempt < 6; ++attempt) {
        Matrix c(n, n);
        for (size_t i = 0; i < s; ++i) c += cent[i] * Scalar(probe.next() + 10 * static_cast<long>(i + 1));
        Poly m = minimal_polynomial(c);
        bool rational = std::all_of(m.begin(), m.end(), [](const Scalar& x) { return x.is_rational(); });
        if (!rational) return std::nullopt;
        auto f = factor_rational_linear(m);
        if (degree(f.rest) > 0) return std::nullopt;
        if (f.roots.size() != s) continue;
        std::vector<Subspace> out;
        size_t total = 0;
        for (const auto& [lam, mult] : f.roots) {
            out.push_back(kernel_basis(c - Matrix::scalar(n, lam)));
            total += out.back().dim();
        }
        if (total == n) return out;
    }
    return std::nullopt;
}

struct TypeEntry {
    std::string label;
    size_t dim, rank;
};

std::vector<TypeEntry> candidate_types(size_t dim, size_t rank) {
    std::vector<TypeEntry> out;
    for (size_t n = 1; n <= 40; ++n) {
        auto push = [&](const std::string& l, size_t d) {
            if (d == dim && n == rank) out.push_back({l + std::to_string(n), d, n});
        };
        push("A", n * (n + 2));
        if (n >= 2) push("B", n * (2 * n + 1));
        if (n >= 3) push("C", n * (2 * n + 1));
        if (n >= 4) push("D", n * (2 * n - 1));
    }
    for (auto e : std::vector<TypeEntry>{{"G2", 14, 2}, {"F4", 52, 4}, {"E6", 78, 6}, {"E7", 133, 7}, {"E8", 248, 8}})
        if (e.dim == dim && e.rank == rank) out.push_back(e);
    return out;
}

}  // namespace

std::vector<Matrix> centroid(const LieAlgebra& L, unsigned long seed) {
    size_t n = L.dim();
    if (n == 0) return {};
    auto ads = ad_all(L);
    Probe probe(seed ^ 0x5eedUL);
    for (int attempt = 0; attempt < 3; ++attempt) {
        // cyclic vector y for the adjoint action and words U_j with w_j = U_j y
        Vec y = probe.vec(n);
        if (is_zero(y)) y[attempt % n] = Scalar(1);
        std::vector<Vec> W{y};
        std::vector<Matrix> U{Matrix::identity(n)};
        Subspace span(n);
        span.add(y);
        for (size_t q = 0; q < W.size() && W.size() < n; ++q)
            for (size_t b = 0; b < n && W.size() < n; ++b) {
                Vec v = ads[b].apply(W[q]);
                if (span.add(v)) {
                    W.push_back(v);
                    U.push_back(ads[b] * U[q]);
                }
            }
        if (W.size() < n) continue;
        Coordinatizer co(W, n);
        // columns of K span the admissible images v = T y
        Matrix K = Matrix::identity(n);
        std::vector<Matrix> P = U;
        for (size_t b = 0; b < n && K.cols() > 1; ++b)
            for (size_t j = 0; j < n && K.cols() > 1; ++j) {
                Vec c = co.coords(ads[b].apply(W[j]));
                Matrix R = ads[b] * P[j];
                for (size_t k = 0; k < n; ++k)
                    if (!c[k].is_zero()) R -= P[k] * c[k];
                if (R.is_zero()) continue;
                Subspace ker = kernel_basis(R);
                K = K * Matrix::from_columns(ker.basis(), K.cols());
                for (size_t k = 0; k < n; ++k) P[k] = U[k] * K;
            }
        Matrix Winv = inverse(Matrix::from_columns(W, n));
        std::vector<Matrix> out;
        for (size_t l = 0; l < K.cols(); ++l) {
            Vec v = K.col(l);
            std::vector<Vec> img;
            for (size_t j = 0; j < n; ++j) img.push_back(U[j].apply(v));
            out.push_back(Matrix::from_columns(img, n) * Winv);
        }
        return out;
    }
    return dense_commutant(ads, n);
}

std::string identify_simple(const LieAlgebra& S, unsigned long seed) {
    size_t d = S.dim(), r = rank_estimate(S, seed);
    auto cands = candidate_types(d, r);
    if (cands.empty()) return "unidentified";
    if (cands.size() == 1) return cands[0].label;
    // the only collision in the tables is B_r / C_r
    auto shorts = short_simple_roots(S, r);
    std::string R = std::to_string(r);
    int ri = static_cast<int>(r);
    if (shorts && *shorts == ri) return "B" + R;
    if (shorts && *shorts == ri * (ri - 1)) return "C" + R;
    return "B" + R + "-or-C" + R;
}

StructureReport analyze_structure(const LieAlgebra& L, unsigned long seed) {
    StructureReport rep;
    size_t n = L.dim();
    rep.dim = n;
    Subspace derived(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!L.constants(i, j).empty()) derived.add(to_dense(L.constants(i, j), n));
    rep.derived_dim = derived.dim();
    auto ads = ad_all(L);
    Subspace center = common_kernel(ads, n);
    rep.center_dim = center.dim();
    rep.killing_rank = rank(killing_form(L));
    rep.rank_estimate = rank_estimate(L, seed);
    auto cent = centroid(L, seed);
    rep.centroid_dim = cent.size();
    rep.semisimple = n > 0 && rep.killing_rank == n;
    if (n == 0) {
        rep.reductive = rep.semisimple = true;
        rep.label = "0";
        return rep;
    }
    bool reductive = false;
    std::optional<LieAlgebra> S;
    if (rep.semisimple) {
        reductive = true;
    } else if (center.intersect(derived).dim() == 0 && center.dim() + derived.dim() == n) {
        if (derived.dim() == 0) {
            reductive = true;
        } else {
            S.emplace(LieAlgebra::subalgebra(L, derived));
            reductive = rank(killing_form(*S)) == S->dim();
        }
    }
    rep.reductive = reductive;
    if (!reductive) {
        rep.label = "unidentified";
        rep.notes = "not reductive";
        return rep;
    }
    std::vector<std::string> parts;
    if (rep.center_dim > 0) parts.push_back("k^" + std::to_string(rep.center_dim));
    if (derived.dim() > 0) {
        const LieAlgebra& base = S ? *S : L;
        auto ideals = split_ideals(base, S ? centroid(*S, seed) : cent, seed);
        if (!ideals) {
            rep.ideal_dims = {derived.dim()};
            rep.ideal_types = {"unidentified"};
            rep.notes = "generic centroid element does not split over the scalar field";
        } else {
            std::vector<std::pair<size_t, std::string>> found;
            for (const auto& I : *ideals) {
                LieAlgebra simple = LieAlgebra::subalgebra(base, I);
                found.push_back({I.dim(), identify_simple(simple, seed)});
            }
            std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            for (const auto& [d, t] : found) {
                rep.ideal_dims.push_back(d);
                rep.ideal_types.push_back(t);
            }
        }
        for (const auto& t : rep.ideal_types) parts.push_back(t);
    }
    std::string label;
    for (const auto& p : parts) label += (label.empty() ? "" : "+") + p;
    rep.label = label;
    return rep;
}

StructureReport analyze_structure(const LieAlgebra& L, const Subspace& s, unsigned long seed) {
    return analyze_structure(LieAlgebra::subalgebra(L, s), seed);
}

int cartan_rank(const std::string& type) {
    if (type.size() < 2) throw std::invalid_argument("bad Cartan type");
    return std::stoi(type.substr(1));
}

int positive_root_count(const std::string& type) {
    int n = cartan_rank(type);
    switch (type[0]) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'G': return 6;
    case 'F': return 24;
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    }
    throw std::invalid_argument("bad Cartan type");
}

}  // namespace emalg
