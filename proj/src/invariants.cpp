#include "emalg/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace emalg {

namespace {

// keeps the elements that are independent of the earlier ones
std::vector<RingElement> independent(const std::vector<RingElement>& elems) {
    std::map<Monomial, uint32_t> col;
    for (const auto& f : elems)
        for (const auto& [m, c] : f.terms) col.emplace(m, 0);
    uint32_t k = 0;
    for (auto& [m, i] : col) i = k++;
    SparseEchelon ech;
    std::vector<RingElement> out;
    for (const auto& f : elems) {
        SparseVec v;
        for (const auto& [m, c] : f.terms) v.push_back({col[m], c});
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (ech.add(v)) out.push_back(f);
    }
    return out;
}

RingElement normalized_at(const RingElement& f, const Monomial& m) {
    auto it = f.terms.find(m);
    Scalar c = it != f.terms.end() ? it->second : f.terms.begin()->second;
    RingElement r;
    for (const auto& [mm, v] : f.terms) r.terms.emplace(mm, v / c);
    return r;
}

std::vector<Monomial> saturate_monomials(const GroupActionBundle& B, const std::vector<Monomial>& monos) {
    const auto& R = B.ring();
    std::set<Monomial> seen(monos.begin(), monos.end());
    std::vector<Monomial> work(monos.begin(), monos.end());
    while (!work.empty()) {
        Monomial m = work.back();
        work.pop_back();
        for (size_t g = 0; g < B.group().order(); ++g)
            for (const auto& [mm, c] : B.act_on_ring(g, R.monomial(m)).terms)
                if (seen.insert(mm).second) work.push_back(mm);
    }
    return {seen.begin(), seen.end()};
}

std::vector<RingElement> project_all(const GroupActionBundle& B, const std::vector<Monomial>& monos,
                                     const std::vector<Scalar>* chi) {
    const auto& R = B.ring();
    std::vector<RingElement> imgs;
    std::vector<Monomial> src;
    for (const auto& m : monos) {
        RingElement f = R.monomial(m);
        RingElement p = chi ? character_projector(B, *chi, f) : reynolds(B, f);
        if (p.is_zero()) continue;
        imgs.push_back(normalized_at(p, m));
        src.push_back(m);
    }
    return independent(imgs);
}

}  // namespace

RingActionReport ring_action(const GroupActionBundle& B) {
    const auto& R = B.ring();
    const auto& G = B.group();
    RingActionReport rep;
    rep.grading_preserved = R.windowable();
    for (size_t s = 0; s < G.generator_count(); ++s) {
        size_t g = G.generator(s);
        std::string line;
        for (size_t i = 0; i < R.nvars(); ++i) {
            if (i) line += ", ";
            line += R.var_names()[i] + " -> " + R.str(B.act_on_ring(g, R.var(i)));
        }
        rep.images.push_back(line);
        std::vector<std::pair<Degree, Degree>> moves;
        if (R.windowable()) {
            // the image of each variable must be a single monomial for pieces to be permuted
            for (size_t i = 0; i < R.nvars(); ++i)
                if (B.act_on_ring(g, R.var(i)).terms.size() != 1) rep.grading_preserved = false;
            for (size_t i = 0; i < R.degree_rank(); ++i) {
                Degree d(R.degree_rank(), 0);
                d[i] = 1;
                moves.push_back({d, B.act_on_degree(g, d)});
            }
        }
        rep.degree_moves.push_back(moves);
    }
    if (!R.windowable())
        rep.note = "Moebius substitution: grading not preserved, point-level operations only";
    return rep;
}

RingElement reynolds(const GroupActionBundle& B, const RingElement& f) {
    const auto& R = B.ring();
    RingElement acc;
    for (size_t g = 0; g < B.group().order(); ++g) acc = R.add(acc, B.act_on_ring(g, f));
    return R.scale(acc, Scalar(1, static_cast<long>(B.group().order())));
}

RingElement character_projector(const GroupActionBundle& B, const std::vector<Scalar>& chi, const RingElement& f) {
    const auto& R = B.ring();
    RingElement acc;
    for (size_t g = 0; g < B.group().order(); ++g)
        acc = R.add(acc, R.scale(B.act_on_ring(g, f), chi.at(g).inverse()));
    return R.scale(acc, Scalar(1, static_cast<long>(B.group().order())));
}

std::vector<Degree> saturate(const GroupActionBundle& B, const std::vector<Degree>& ds) {
    std::set<Degree> seen(ds.begin(), ds.end());
    std::vector<Degree> work(ds.begin(), ds.end());
    while (!work.empty()) {
        Degree d = work.back();
        work.pop_back();
        for (size_t g = 0; g < B.group().order(); ++g) {
            Degree e = B.act_on_degree(g, d);
            if (seen.insert(e).second) work.push_back(e);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<RingElement> invariant_piece(const GroupActionBundle& B, const std::vector<Degree>& ds) {
    std::vector<Monomial> monos;
    for (const auto& d : saturate(B, ds))
        for (const auto& m : B.ring().piece(d)) monos.push_back(m);
    return project_all(B, monos, nullptr);
}

std::vector<RingElement> invariant_span(const GroupActionBundle& B, const std::vector<Monomial>& monos) {
    return project_all(B, saturate_monomials(B, monos), nullptr);
}

std::vector<Character> abelian_characters(const FiniteGroup& G, int conductor) {
    if (!G.is_abelian()) throw GroupError("characters are only enumerated for abelian groups");
    size_t k = G.generator_count(), n = G.order();
    std::vector<int> ord(k);
    for (size_t j = 0; j < k; ++j) ord[j] = G.element_order(G.generator(j));
    std::vector<Character> out;
    std::vector<int> a(k, 0);
    while (true) {
        std::vector<Scalar> gen_val(k);
        for (size_t j = 0; j < k; ++j) {
            if (conductor % ord[j] != 0) throw GroupError("conductor does not contain the generator orders");
            gen_val[j] = Scalar::zeta(conductor).pow(static_cast<long>(conductor / ord[j]) * a[j]);
        }
        std::vector<Scalar> val(n);
        val[0] = Scalar(1);
        for (size_t g = 1; g < n; ++g) {
            Scalar v(1);
            for (int l : G.word(g)) v *= gen_val[l];
            val[g] = v;
        }
        bool ok = true;
        for (size_t h = 0; h < n && ok; ++h)
            for (size_t j = 0; j < k && ok; ++j)
                if (val[G.mul(h, G.generator(j))] != val[h] * gen_val[j]) ok = false;
        if (ok) out.push_back({a, val});
        size_t j = 0;
        while (j < k && ++a[j] == ord[j]) a[j++] = 0;
        if (j == k) break;
    }
    return out;
}

std::vector<int> dual_label(const FiniteGroup& G, const std::vector<int>& label) {
    std::vector<int> out(label.size());
    for (size_t j = 0; j < label.size(); ++j) {
        int m = G.element_order(G.generator(j));
        out[j] = (m - label[j] % m) % m;
    }
    return out;
}

std::vector<IsotypicPiece> isotypic_pieces(const GroupActionBundle& B, const std::vector<Degree>& ds) {
    std::vector<Monomial> monos;
    for (const auto& d : saturate(B, ds))
        for (const auto& m : B.ring().piece(d)) monos.push_back(m);
    std::vector<IsotypicPiece> out;
    for (const auto& chi : abelian_characters(B.group(), B.conductor()))
        out.push_back({chi.label, project_all(B, monos, &chi.values)});
    return out;
}

}  // namespace emalg
