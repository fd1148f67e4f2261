#include "emalg/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace emalg {

Echelon rref(const Matrix& m0) {
    Matrix m = m0;
    const size_t R = m.rows(), C = m.cols();
    std::vector<size_t> piv;
    Scalar prev(1);
    size_t r = 0;
    for (size_t c = 0; c < C && r < R; ++c) {
        size_t p = r;
        while (p < R && m(p, c).is_zero()) ++p;
        if (p == R) continue;
        if (p != r)
            for (size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
        const Scalar pv = m(r, c);
        for (size_t i = r + 1; i < R; ++i) {
            const Scalar a = m(i, c);
            for (size_t j = c; j < C; ++j) {
                Scalar x = pv * m(i, j);
                if (!a.is_zero() && !m(r, j).is_zero()) x -= a * m(r, j);
                m(i, j) = x / prev;
            }
        }
        prev = pv;
        piv.push_back(c);
        ++r;
    }
    // normalization and back substitution
    for (size_t k = piv.size(); k-- > 0;) {
        const size_t c = piv[k];
        const Scalar inv = m(k, c).inverse();
        for (size_t j = c; j < C; ++j)
            if (!m(k, j).is_zero()) m(k, j) *= inv;
        for (size_t i = 0; i < k; ++i) {
            const Scalar a = m(i, c);
            if (a.is_zero()) continue;
            for (size_t j = c; j < C; ++j)
                if (!m(k, j).is_zero()) m(i, j) -= a * m(k, j);
        }
    }
    Matrix out(piv.size(), C);
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t j = 0; j < C; ++j) out(i, j) = m(i, j);
    return {out, piv};
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

size_t rank_bottom_pivot(const Matrix& m0) {
    Matrix m = m0;
    const size_t R = m.rows(), C = m.cols();
    std::vector<bool> used(R, false);
    size_t rk = 0;
    for (size_t c = C; c-- > 0;) {
        size_t p = R;
        for (size_t i = R; i-- > 0;)
            if (!used[i] && !m(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p == R) continue;
        used[p] = true;
        ++rk;
        const Scalar inv = m(p, c).inverse();
        for (size_t i = 0; i < R; ++i) {
            if (used[i] || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c) * inv;
            for (size_t j = 0; j < C; ++j)
                if (!m(p, j).is_zero()) m(i, j) -= f * m(p, j);
        }
    }
    return rk;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, size_t ambient) {
    Subspace s(ambient);
    for (const auto& v : vectors) s.add(v);
    return s;
}

Subspace Subspace::full(size_t ambient) {
    Subspace s(ambient);
    for (size_t i = 0; i < ambient; ++i) {
        Vec v(ambient);
        v[i] = Scalar(1);
        s.rows_.push_back(v);
        s.piv_.push_back(i);
    }
    return s;
}

Vec Subspace::reduce(const Vec& v0) const {
    if (v0.size() != n_) throw std::invalid_argument("ambient dimension mismatch");
    Vec v = v0;
    for (size_t k = 0; k < rows_.size(); ++k) {
        const Scalar a = v[piv_[k]];
        if (a.is_zero()) continue;
        const Vec& r = rows_[k];
        for (size_t j = piv_[k]; j < n_; ++j)
            if (!r[j].is_zero()) v[j] -= a * r[j];
    }
    return v;
}

bool Subspace::add(const Vec& v0) {
    Vec v = reduce(v0);
    size_t p = 0;
    while (p < n_ && v[p].is_zero()) ++p;
    if (p == n_) return false;
    const Scalar inv = v[p].inverse();
    for (size_t j = p; j < n_; ++j)
        if (!v[j].is_zero()) v[j] *= inv;
    for (auto& r : rows_) {
        const Scalar a = r[p];
        if (a.is_zero()) continue;
        for (size_t j = p; j < n_; ++j)
            if (!v[j].is_zero()) r[j] -= a * v[j];
    }
    size_t pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    rows_.insert(rows_.begin() + pos, std::move(v));
    piv_.insert(piv_.begin() + pos, p);
    return true;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& s) const {
    for (const auto& r : s.rows_)
        if (!contains(r)) return false;
    return true;
}

Vec Subspace::coords(const Vec& v) const {
    if (!contains(v)) throw std::invalid_argument("vector not in subspace");
    Vec c(rows_.size());
    for (size_t k = 0; k < rows_.size(); ++k) c[k] = v[piv_[k]];
    return c;
}

std::vector<Vec> Subspace::complement() const {
    std::vector<Vec> out;
    size_t k = 0;
    for (size_t j = 0; j < n_; ++j) {
        if (k < piv_.size() && piv_[k] == j) {
            ++k;
            continue;
        }
        Vec e(n_);
        e[j] = Scalar(1);
        out.push_back(e);
    }
    return out;
}

Subspace Subspace::operator+(const Subspace& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ambient dimension mismatch");
    Subspace s = *this;
    for (const auto& r : o.rows_) s.add(r);
    return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ambient dimension mismatch");
    const size_t a = dim(), b = o.dim();
    if (a == 0 || b == 0) return Subspace(n_);
    std::vector<Vec> cols;
    for (const auto& r : rows_) cols.push_back(r);
    for (const auto& r : o.rows_) cols.push_back(r);
    Subspace k = kernel_basis(Matrix::from_columns(cols, n_));
    Subspace out(n_);
    for (const auto& kv : k.basis()) {
        Vec v(n_);
        for (size_t i = 0; i < a; ++i) {
            if (kv[i].is_zero()) continue;
            for (size_t j = 0; j < n_; ++j)
                if (!rows_[i][j].is_zero()) v[j] += kv[i] * rows_[i][j];
        }
        out.add(v);
    }
    return out;
}

Subspace kernel_basis(const Matrix& m) {
    const size_t C = m.cols();
    Echelon e = rref(m);
    std::vector<bool> is_piv(C, false);
    for (size_t p : e.pivots) is_piv[p] = true;
    std::vector<Vec> vecs;
    for (size_t f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        Vec v(C);
        v[f] = Scalar(1);
        for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rref(k, f);
        vecs.push_back(v);
    }
    return Subspace::span(vecs, C);
}

Subspace common_kernel(const std::vector<Matrix>& ms, size_t cols) {
    size_t rows = 0;
    for (const auto& m : ms) {
        if (m.cols() != cols) throw std::invalid_argument("column mismatch");
        rows += m.rows();
    }
    Matrix big(rows, cols);
    size_t r = 0;
    for (const auto& m : ms)
        for (size_t i = 0; i < m.rows(); ++i, ++r)
            for (size_t j = 0; j < cols; ++j) big(r, j) = m(i, j);
    return kernel_basis(big);
}

Coordinatizer::Coordinatizer(const std::vector<Vec>& family, size_t ambient)
    : n_(ambient), k_(family.size()), fam_(family) {
    // rref of [family | I] tracks the transform
    Matrix aug(k_, n_ + k_);
    for (size_t i = 0; i < k_; ++i) {
        if (family[i].size() != n_) throw std::invalid_argument("family ambient mismatch");
        for (size_t j = 0; j < n_; ++j) aug(i, j) = family[i][j];
        aug(i, n_ + i) = Scalar(1);
    }
    Echelon e = rref(aug);
    size_t rk = 0;
    for (size_t p : e.pivots)
        if (p < n_) ++rk;
    if (rk != k_) throw std::invalid_argument("coordinatizer family is dependent");
    ech_.pivots.assign(e.pivots.begin(), e.pivots.begin() + k_);
    ech_.rref = Matrix(k_, n_);
    t_ = Matrix(k_, k_);
    for (size_t i = 0; i < k_; ++i) {
        for (size_t j = 0; j < n_; ++j) ech_.rref(i, j) = e.rref(i, j);
        for (size_t j = 0; j < k_; ++j) t_(i, j) = e.rref(i, n_ + j);
    }
}

std::optional<Vec> Coordinatizer::try_coords(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("ambient dimension mismatch");
    // v = w * rref with w = v restricted to pivots; coords = w * t_
    Vec w(k_);
    for (size_t i = 0; i < k_; ++i) w[i] = v[ech_.pivots[i]];
    Vec check(n_);
    for (size_t i = 0; i < k_; ++i) {
        if (w[i].is_zero()) continue;
        for (size_t j = 0; j < n_; ++j)
            if (!ech_.rref(i, j).is_zero()) check[j] += w[i] * ech_.rref(i, j);
    }
    if (check != v) return std::nullopt;
    Vec c(k_);
    for (size_t i = 0; i < k_; ++i) {
        if (w[i].is_zero()) continue;
        for (size_t j = 0; j < k_; ++j)
            if (!t_(i, j).is_zero()) c[j] += w[i] * t_(i, j);
    }
    return c;
}

Vec Coordinatizer::coords(const Vec& v) const {
    auto c = try_coords(v);
    if (!c) throw std::invalid_argument("vector outside the coordinatized span");
    return *c;
}

SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(static_cast<uint32_t>(i), v[i]);
    return s;
}

Vec to_dense(const SparseVec& v, size_t n) {
    Vec d(n);
    for (const auto& [i, x] : v) d.at(i) = x;
    return d;
}

SparseVec axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
    SparseVec r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Scalar x = a[i].second + c * b[j].second;
            if (!x.is_zero()) r.emplace_back(a[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    return r;
}

SparseVec SparseEchelon::reduce(SparseVec v) const {
    // eliminate pivots in increasing column order; entries before the cursor
    // that have no pivot row are kept
    size_t k = 0;
    while (k < v.size()) {
        auto it = by_pivot_.find(v[k].first);
        if (it == by_pivot_.end()) {
            ++k;
            continue;
        }
        const SparseVec& row = rows_[it->second];
        Scalar c = -v[k].second;  // pivot entries are normalized to 1
        SparseVec head(v.begin(), v.begin() + k);
        SparseVec tail(v.begin() + k, v.end());
        tail = axpy(tail, c, row);
        head.insert(head.end(), tail.begin(), tail.end());
        v = std::move(head);
    }
    return v;
}

std::optional<uint32_t> SparseEchelon::add(SparseVec v) {
    // only the leading entry needs to be a fresh pivot
    while (!v.empty()) {
        auto it = by_pivot_.find(v.front().first);
        if (it == by_pivot_.end()) break;
        Scalar c = -v.front().second;
        v = axpy(v, c, rows_[it->second]);
    }
    if (v.empty()) return std::nullopt;
    const Scalar inv = v.front().second.inverse();
    for (auto& e : v) e.second *= inv;
    uint32_t p = v.front().first;
    by_pivot_[p] = rows_.size();
    rows_.push_back(std::move(v));
    return p;
}

std::vector<uint32_t> SparseEchelon::pivots() const {
    std::vector<uint32_t> p;
    for (const auto& r : rows_) p.push_back(r.front().first);
    return p;
}

}  // namespace emalg
