#include "legdga/ainf.hpp"

namespace legdga {

namespace {

void require_z2(const Dga& g, const char* what) {
    if (g.ring().base != Field::Z2)
        throw Error(Error::Kind::unsupported, std::string(what) + " works over Z/2 coefficients");
}

std::vector<int> degrees_of(const AlgebraPtr& alg) {
    std::vector<int> d(alg->size());
    for (GenId g = 0; g < alg->size(); ++g) d[g] = alg->degree(g);
    return d;
}

// iterate all tuples in basis^n, calling fn on each
template <typename F>
void for_each_tuple(std::size_t basis, int n, F&& fn) {
    std::vector<GenId> tuple(static_cast<std::size_t>(n), 0);
    if (basis == 0) return;
    while (true) {
        fn(tuple);
        int pos = n - 1;
        while (pos >= 0) {
            if (++tuple[static_cast<std::size_t>(pos)] < basis) break;
            tuple[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

void xor_into(Gf2Vec& acc, const Gf2Vec& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= v[i];
}

bool all_zero(const Gf2Vec& v) {
    for (auto b : v)
        if (b) return false;
    return true;
}

Matrix m1_matrix(const AinfAlgebra& a) {
    std::size_t n = a.dga->alg->size();
    Matrix m(n, n);
    auto it = a.mk.size() > 1 ? a.mk[1] : std::map<std::vector<GenId>, Gf2Vec>{};
    for (const auto& [tuple, out] : it)
        for (std::size_t i = 0; i < n; ++i)
            if (out[i]) m.at(i, tuple[0]) = 1;
    return m;
}

} // namespace

AinfAlgebra build_ainf(DgaPtr dga_aug, int max_order) {
    require_z2(*dga_aug, "the A-infinity structure");
    if (max_order < 1) throw Error(Error::Kind::validation, "max order must be at least 1");
    AinfAlgebra a;
    a.dga = std::move(dga_aug);
    a.max_order = max_order;
    a.mk.resize(static_cast<std::size_t>(max_order) + 1);
    std::size_t n = a.dga->alg->size();
    for (GenId c = 0; c < n; ++c) {
        if (!a.dga->diff[c].constant_part().is_zero())
            throw Error(Error::Kind::validation, "A-infinity structure needs a constant-free differential");
        for (const auto& [w, coeff] : a.dga->diff[c].terms()) {
            int k = static_cast<int>(w.length());
            if (k < 1 || k > max_order) continue;
            auto& slot = a.mk[static_cast<std::size_t>(k)][w.letters];
            if (slot.empty()) slot.assign(n, 0);
            slot[c] ^= static_cast<unsigned char>(coeff % 2 != 0);
        }
    }
    // drop cancelled entries
    for (auto& table : a.mk)
        for (auto it = table.begin(); it != table.end();)
            it = all_zero(it->second) ? table.erase(it) : std::next(it);
    return a;
}

Gf2Vec eval_mk(const AinfAlgebra& a, const std::vector<GenId>& args) {
    std::size_t n = a.dga->alg->size();
    Gf2Vec zero(n, 0);
    std::size_t k = args.size();
    if (k >= a.mk.size()) return zero;
    auto it = a.mk[k].find(args);
    return it == a.mk[k].end() ? zero : it->second;
}

NcPoly reconstruct_differential(const AinfAlgebra& a, GenId c) {
    NcPoly out(a.dga->alg);
    for (std::size_t k = 1; k < a.mk.size(); ++k)
        for (const auto& [tuple, vec] : a.mk[k])
            if (vec[c]) out.add_term(Word{tuple, 0}, 1);
    return out;
}

StasheffReport check_stasheff(const AinfAlgebra& a, int l) {
    if (l < 1 || l > a.max_order)
        throw Error(Error::Kind::validation, "Stasheff order out of the built range");
    StasheffReport rep;
    rep.order = l;
    std::size_t n = a.dga->alg->size();
    for_each_tuple(n, l, [&](const std::vector<GenId>& tuple) {
        Gf2Vec residual(n, 0);
        for (int i = 0; i <= l - 1; ++i) {
            for (int j = 1; i + j <= l; ++j) {
                int k = l - i - j;
                std::vector<GenId> inner(tuple.begin() + i, tuple.begin() + i + j);
                Gf2Vec mid = eval_mk(a, inner);
                for (GenId b = 0; b < n; ++b) {
                    if (!mid[b]) continue;
                    std::vector<GenId> outer;
                    outer.reserve(static_cast<std::size_t>(i + 1 + k));
                    outer.insert(outer.end(), tuple.begin(), tuple.begin() + i);
                    outer.push_back(b);
                    outer.insert(outer.end(), tuple.begin() + i + j, tuple.end());
                    xor_into(residual, eval_mk(a, outer));
                }
            }
        }
        if (!all_zero(residual)) rep.violations.push_back({tuple, residual});
    });
    return rep;
}

AinfMorphism build_ainf_morphism(const AugmentedMorphism& fa, int max_order) {
    require_z2(*fa.phi.source, "the A-infinity morphism");
    AinfMorphism m;
    m.source_dga = fa.phi.source;
    m.target_dga = fa.phi.target;
    m.max_order = max_order;
    m.phik.resize(static_cast<std::size_t>(max_order) + 1);
    std::size_t n_out = fa.phi.source->alg->size();
    for (GenId c = 0; c < n_out; ++c) {
        for (const auto& [w, coeff] : fa.phi.images[c].terms()) {
            int k = static_cast<int>(w.length());
            if (k < 1 || k > max_order) continue;
            auto& slot = m.phik[static_cast<std::size_t>(k)][w.letters];
            if (slot.empty()) slot.assign(n_out, 0);
            slot[c] ^= static_cast<unsigned char>(coeff % 2 != 0);
        }
    }
    for (auto& table : m.phik)
        for (auto it = table.begin(); it != table.end();)
            it = all_zero(it->second) ? table.erase(it) : std::next(it);
    return m;
}

Gf2Vec eval_phik(const AinfMorphism& m, const std::vector<GenId>& args) {
    std::size_t n = m.source_dga->alg->size();
    Gf2Vec zero(n, 0);
    std::size_t k = args.size();
    if (k >= m.phik.size()) return zero;
    auto it = m.phik[k].find(args);
    return it == m.phik[k].end() ? zero : it->second;
}

AinfMorphismReport check_ainf_morphism(const AinfMorphism& f, const AinfAlgebra& target_structure,
                                       const AinfAlgebra& source_structure, int n) {
    if (!Algebra::same(*f.target_dga->alg, *target_structure.dga->alg) ||
        !Algebra::same(*f.source_dga->alg, *source_structure.dga->alg))
        throw Error(Error::Kind::ring_mismatch, "morphism and structures live on different complexes");
    if (n < 1 || n > f.max_order)
        throw Error(Error::Kind::validation, "morphism order out of the built range");
    AinfMorphismReport rep;
    rep.order = n;
    std::size_t nv = f.target_dga->alg->size();  // input basis
    std::size_t nw = f.source_dga->alg->size();  // output basis

    // compositions of n into r positive parts
    std::vector<std::vector<std::vector<int>>> comps(static_cast<std::size_t>(n) + 1);
    {
        std::vector<int> cur;
        auto rec = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                comps[cur.size()].push_back(cur);
                return;
            }
            for (int p = 1; p <= remaining; ++p) {
                cur.push_back(p);
                self(self, remaining - p);
                cur.pop_back();
            }
        };
        rec(rec, n);
    }

    for_each_tuple(nv, n, [&](const std::vector<GenId>& tuple) {
        Gf2Vec residual(nw, 0);
        // sum phi_{i+1+k} o (1^i x m_j x 1^k)
        for (int i = 0; i <= n - 1; ++i) {
            for (int j = 1; i + j <= n; ++j) {
                std::vector<GenId> inner(tuple.begin() + i, tuple.begin() + i + j);
                Gf2Vec mid = eval_mk(target_structure, inner);
                for (GenId b = 0; b < nv; ++b) {
                    if (!mid[b]) continue;
                    std::vector<GenId> outer;
                    outer.insert(outer.end(), tuple.begin(), tuple.begin() + i);
                    outer.push_back(b);
                    outer.insert(outer.end(), tuple.begin() + i + j, tuple.end());
                    xor_into(residual, eval_phik(f, outer));
                }
            }
        }
        // sum m_r o (phi_{i_1} x ... x phi_{i_r})
        for (std::size_t r = 1; r <= static_cast<std::size_t>(n); ++r) {
            for (const auto& comp : comps[r]) {
                std::vector<Gf2Vec> parts;
                parts.reserve(r);
                int off = 0;
                bool dead = false;
                for (int len : comp) {
                    std::vector<GenId> seg(tuple.begin() + off, tuple.begin() + off + len);
                    off += len;
                    parts.push_back(eval_phik(f, seg));
                    if (all_zero(parts.back())) {
                        dead = true;
                        break;
                    }
                }
                if (dead) continue;
                // expand the tensor product over supports
                std::vector<GenId> pick(r, 0);
                std::vector<std::vector<GenId>> support(r);
                for (std::size_t s = 0; s < r; ++s)
                    for (GenId b = 0; b < nw; ++b)
                        if (parts[s][b]) support[s].push_back(b);
                std::vector<std::size_t> idx(r, 0);
                while (true) {
                    std::vector<GenId> args(r);
                    for (std::size_t s = 0; s < r; ++s) args[s] = support[s][idx[s]];
                    xor_into(residual, eval_mk(source_structure, args));
                    std::size_t pos = r;
                    while (pos > 0) {
                        --pos;
                        if (++idx[pos] < support[pos].size()) break;
                        idx[pos] = 0;
                        if (pos == 0) {
                            pos = r + 1;
                            break;
                        }
                    }
                    if (pos == r + 1) break;
                }
            }
        }
        if (!all_zero(residual)) rep.violations.push_back({tuple, residual});
    });
    return rep;
}

NcPoly filtration_lemma1_residual(const AugmentedMorphism& fa, GenId c, int j, int k) {
    require_z2(*fa.phi.source, "the length filtration identities");
    if (!(j < k)) throw Error(Error::Kind::validation, "filtration identities assume j < k");
    const AlgebraPtr& tgt = fa.phi.target->alg;
    AlgebraDerivation d1 = fa.phi.target->derivation();

    NcPoly phij = fa.phi.images.at(c).length_part(static_cast<std::size_t>(j));
    NcPoly lhs = d1.apply(phij).length_part(static_cast<std::size_t>(k));

    NcPoly rhs(tgt);
    for (const auto& [w, coeff] : phij.terms()) {
        for (std::size_t slot = 0; slot < w.letters.size(); ++slot) {
            NcPoly dpart =
                fa.phi.target->diff[w.letters[slot]].length_part(static_cast<std::size_t>(k - j + 1));
            for (const auto& [dw, dc] : dpart.terms()) {
                Word term;
                term.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(slot));
                term.letters.insert(term.letters.end(), dw.letters.begin(), dw.letters.end());
                term.letters.insert(term.letters.end(),
                                    w.letters.begin() + static_cast<std::ptrdiff_t>(slot) + 1, w.letters.end());
                term.t_power = w.t_power + dw.t_power;
                rhs.add_term(std::move(term), coeff * dc);
            }
        }
    }
    return lhs - rhs;
}

NcPoly filtration_lemma2_residual(const AugmentedMorphism& fa, GenId c, int j, int k) {
    require_z2(*fa.phi.source, "the length filtration identities");
    if (!(j < k)) throw Error(Error::Kind::validation, "filtration identities assume j < k");
    const AlgebraPtr& tgt = fa.phi.target->alg;
    AlgebraHom h = fa.phi.hom();

    NcPoly dj = fa.phi.source->diff.at(c).length_part(static_cast<std::size_t>(j));
    NcPoly lhs = h.apply(dj).length_part(static_cast<std::size_t>(k));

    NcPoly rhs(tgt);
    // compositions of k into j positive parts
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int slots) -> void {
        if (slots == 0) {
            if (remaining == 0) comps.push_back(cur);
            return;
        }
        for (int p = 1; p + (slots - 1) <= remaining; ++p) {
            cur.push_back(p);
            self(self, remaining - p, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, k, j);
    for (const auto& [w, coeff] : dj.terms()) {
        for (const auto& comp : comps) {
            NcPoly prod = NcPoly::constant(tgt, coeff);
            NcPoly tpow = NcPoly::t(tgt, w.t_power);
            prod *= tpow;
            for (std::size_t s = 0; s < w.letters.size(); ++s) {
                prod *= fa.phi.images[w.letters[s]].length_part(static_cast<std::size_t>(comp[s]));
                if (prod.is_zero()) break;
            }
            rhs += prod;
        }
    }
    return lhs - rhs;
}

CohomologyProducts products_on_cohomology(const AinfAlgebra& a) {
    CohomologyProducts out;
    Matrix m1 = m1_matrix(a);
    GradedHomology h(m1, degrees_of(a.dga->alg), +1);
    for (int deg : h.degrees_present())
        if (h.rank(deg) > 0) out.ranks[deg] = h.rank(deg);

    auto class_list = [&]() {
        std::vector<std::pair<int, std::size_t>> classes;
        for (int deg : h.degrees_present())
            for (std::size_t i = 0; i < h.representatives(deg).size(); ++i) classes.emplace_back(deg, i);
        return classes;
    }();

    auto eval_on_reps = [&](const std::vector<std::pair<int, std::size_t>>& args) {
        // multilinear evaluation of m_k on representative cocycles
        std::size_t n = a.dga->alg->size();
        std::vector<std::vector<GenId>> supports;
        for (auto [deg, idx] : args) {
            const Gf2Vec& rep = h.representatives(deg)[idx];
            std::vector<GenId> sup;
            for (GenId g = 0; g < n; ++g)
                if (rep[g]) sup.push_back(g);
            supports.push_back(std::move(sup));
        }
        Gf2Vec acc(n, 0);
        std::vector<std::size_t> idx(args.size(), 0);
        for (const auto& s : supports)
            if (s.empty()) return acc;
        while (true) {
            std::vector<GenId> tuple(args.size());
            for (std::size_t s = 0; s < args.size(); ++s) tuple[s] = supports[s][idx[s]];
            xor_into(acc, eval_mk(a, tuple));
            std::size_t pos = args.size();
            bool done = false;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < supports[pos].size()) break;
                idx[pos] = 0;
                if (pos == 0) done = true;
            }
            if (done) break;
        }
        return acc;
    };

    // m2 on classes
    for (auto [da, ia] : class_list) {
        for (auto [db, ib] : class_list) {
            Gf2Vec val = eval_on_reps({{da, ia}, {db, ib}});
            if (all_zero(val)) continue;
            int deg_out = da + db + 1; // m_k raises the degree label by 1
            auto coords = h.coords(deg_out, val);
            if (!coords)
                throw Error(Error::Kind::validation, "product of cocycles is not a cocycle (internal)");
            bool nonzero = false;
            for (auto b : *coords) nonzero = nonzero || b;
            if (!nonzero) continue;
            CohomologyProducts::ProductEntry e;
            e.deg_a = da;
            e.idx_a = ia;
            e.deg_b = db;
            e.idx_b = ib;
            e.deg_out = deg_out;
            e.coords = *coords;
            out.m2.push_back(std::move(e));
        }
    }

    // higher products on representatives, flagged as quotient-level data
    for (int k = 3; k <= a.max_order; ++k) {
        if (static_cast<std::size_t>(k) >= a.mk.size() || a.mk[static_cast<std::size_t>(k)].empty()) continue;
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        if (class_list.empty()) break;
        while (true) {
            std::vector<std::pair<int, std::size_t>> args;
            int deg_sum = 1;
            for (std::size_t s = 0; s < idx.size(); ++s) {
                args.push_back(class_list[idx[s]]);
                deg_sum += class_list[idx[s]].first;
            }
            Gf2Vec val = eval_on_reps(args);
            if (!all_zero(val)) {
                CohomologyProducts::HigherEntry e;
                e.k = k;
                e.args = args;
                e.deg_out = deg_sum;
                auto coords = h.coords(deg_sum, val);
                e.closes = coords.has_value();
                if (coords) e.coords = *coords;
                out.higher.push_back(std::move(e));
            }
            std::size_t pos = idx.size();
            bool done = false;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < class_list.size()) break;
                idx[pos] = 0;
                if (pos == 0) done = true;
            }
            if (done) break;
        }
    }
    return out;
}

DualMapComparison compare_dual_maps_on_cohomology(const AinfAlgebra& v_side, const AinfAlgebra& w_side,
                                                  const Matrix& phi1, const Matrix& phi2,
                                                  const Matrix& homotopy) {
    DualMapComparison out;
    Matrix m1v = m1_matrix(v_side);
    Matrix m1w = m1_matrix(w_side);
    Matrix lhs = (phi1 - phi2).mod2();
    Matrix rhs = (homotopy * m1v + m1w * homotopy).mod2();
    out.homotopy_equation_holds = lhs == rhs;

    GradedHomology hv(m1v, degrees_of(v_side.dga->alg), +1);
    GradedHomology hw(m1w, degrees_of(w_side.dga->alg), +1);
    auto rows1 = gf2::to_rows(phi1);
    auto rows2 = gf2::to_rows(phi2);
    bool equal = true;
    for (int deg : hv.degrees_present()) {
        for (const Gf2Vec& rep : hv.representatives(deg)) {
            Gf2Vec diff(w_side.dga->alg->size(), 0);
            for (std::size_t r = 0; r < diff.size(); ++r) {
                unsigned char acc = 0;
                for (std::size_t c = 0; c < rep.size(); ++c) acc ^= (rows1[r][c] ^ rows2[r][c]) & rep[c];
                diff[r] = acc;
            }
            auto coords = hw.coords(deg, diff);
            if (!coords) {
                equal = false;
                break;
            }
            for (auto b : *coords)
                if (b) equal = false;
            if (!equal) break;
        }
        if (!equal) break;
    }
    out.induced_maps_equal = equal;
    return out;
}

} // namespace legdga
