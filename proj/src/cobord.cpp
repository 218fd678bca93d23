#include "legdga/cobord.hpp"

#include <sstream>

namespace legdga {

namespace {

Matrix reduce(Matrix m, const CoeffRing& ring) {
    return ring.base == Field::Z2 ? m.mod2() : m;
}

void require_verified(const DgaMorphism& f, const char* what) {
    if (f.kind != MorphismKind::phi)
        throw Error(Error::Kind::validation, std::string(what) + ": needs a phi-type morphism");
    if (f.verified) return;
    auto rep = check_chain_map(f);
    if (!rep.pass())
        throw Error(Error::Kind::validation,
                    std::string(what) + ": morphism is not a chain map (residual at " +
                        rep.failures.front().gen + ": " + rep.failures.front().residual.str() + ")");
}

} // namespace

AlgebraHom DgaMorphism::hom() const {
    if (kind != MorphismKind::phi)
        throw Error(Error::Kind::validation, "K-type data is not a ring homomorphism");
    return AlgebraHom(source->alg, target->alg, images, NcPoly::t(target->alg));
}

DgaMorphism identity_morphism(DgaPtr g) {
    DgaMorphism f;
    f.source = g;
    f.target = g;
    for (GenId c = 0; c < g->alg->size(); ++c) f.images.push_back(NcPoly::generator(g->alg, c));
    f.kind = MorphismKind::phi;
    f.verified = true;
    return f;
}

ChainMapReport check_chain_map(const DgaMorphism& f) {
    ChainMapReport report;
    AlgebraHom h = f.hom();
    AlgebraDerivation d1 = f.target->derivation();
    for (GenId c = 0; c < f.source->alg->size(); ++c) {
        NcPoly lhs = h.apply(f.source->diff[c]);
        NcPoly rhs = d1.apply(f.images[c]);
        NcPoly res = lhs - rhs;
        if (!res.is_zero()) report.failures.push_back({f.source->alg->gen(c).id, std::move(res)});
    }
    return report;
}

DgaMorphism compose(const DgaMorphism& f, const DgaMorphism& g) {
    if (f.kind != MorphismKind::phi || g.kind != MorphismKind::phi)
        throw Error(Error::Kind::validation, "compose needs phi-type morphisms");
    if (!Algebra::same(*f.source->alg, *g.target->alg))
        throw Error(Error::Kind::ring_mismatch, "compose: ends do not match");
    AlgebraHom hf = f.hom();
    DgaMorphism out;
    out.source = g.source;
    out.target = f.target;
    out.kind = MorphismKind::phi;
    for (const NcPoly& im : g.images) out.images.push_back(hf.apply(im));
    out.verified = check_chain_map(out).pass();
    return out;
}

Augmentation pullback_augmentation(const DgaMorphism& f, const Augmentation& e1) {
    require_verified(f, "pullback");
    require_same_algebra(*e1.alg, *f.target->alg, "pullback augmentation");
    verify_augmentation(*f.target, e1);
    Augmentation e2;
    e2.alg = f.source->alg;
    e2.t_image = e1.t_image; // phi morphisms send t to t
    for (GenId c = 0; c < f.source->alg->size(); ++c) e2.values.push_back(e1.evaluate(f.images[c]));
    verify_augmentation(*f.source, e2);
    return e2;
}

AugmentedMorphism augment_morphism(const DgaMorphism& f, const Augmentation& e1) {
    require_verified(f, "augment_morphism");
    AugmentedMorphism out;
    out.eps1 = e1;
    out.eps2 = pullback_augmentation(f, e1);

    auto d1 = std::make_shared<Dga>(augmented_differential(*f.target, e1));
    auto d2 = std::make_shared<Dga>(augmented_differential(*f.source, out.eps2));

    AlgebraHom phi_e1 = tame_iso(e1, +1);
    AlgebraHom phi_minus_e2 = tame_iso(out.eps2, -1);
    AlgebraHom h = f.hom();

    out.phi.source = d2;
    out.phi.target = d1;
    out.phi.kind = MorphismKind::phi;
    for (GenId c = 0; c < f.source->alg->size(); ++c) {
        NcPoly im = phi_e1.apply(h.apply(phi_minus_e2.apply(NcPoly::generator(f.source->alg, c))));
        if (!im.constant_part().is_zero())
            throw Error(Error::Kind::validation,
                        "augmented morphism image has a constant term at " +
                            f.source->alg->gen(c).id + " (input is not a genuine chain map)");
        out.phi.images.push_back(std::move(im));
    }
    auto rep = check_chain_map(out.phi);
    if (!rep.pass())
        throw Error(Error::Kind::validation,
                    "augmented morphism does not commute with the augmented differentials (residual at " +
                        rep.failures.front().gen + ")");
    out.phi.verified = true;
    return out;
}

LinearMap linearize_morphism(const AugmentedMorphism& fa) {
    const DgaMorphism& f = fa.phi;
    LinearMap lm;
    lm.source = f.source->alg;
    lm.target = f.target->alg;
    lm.degree_shift = 0;
    lm.m = Matrix(f.target->alg->size(), f.source->alg->size());
    for (GenId j = 0; j < f.source->alg->size(); ++j) {
        if (!f.images[j].constant_part().is_zero())
            throw Error(Error::Kind::validation, "cannot linearize a morphism with constant terms");
        for (const auto& [w, c] : f.images[j].linear_part().terms()) lm.m.at(w.letters[0], j) = c;
    }
    // the chain-map identity of the linearizations, on the nose
    LinearComplex c2 = linearize(*f.source);
    LinearComplex c1 = linearize(*f.target);
    Matrix lhs = reduce(lm.m * c2.d, f.target->ring());
    Matrix rhs = reduce(c1.d * lm.m, f.target->ring());
    if (!(lhs == rhs))
        throw Error(Error::Kind::validation,
                    "linearized morphism does not commute with the linearized differentials");
    return lm;
}

InducedHomologyMap induced_on_homology(const LinearMap& lm, const LinearComplex& source,
                                       const LinearComplex& target) {
    if (lm.source->ring().base != Field::Z2)
        throw Error(Error::Kind::unsupported, "induced maps on homology need Z/2 coefficients");
    require_same_algebra(*lm.source, *source.alg, "induced map source");
    require_same_algebra(*lm.target, *target.alg, "induced map target");

    auto degrees_of = [](const AlgebraPtr& alg) {
        std::vector<int> d(alg->size());
        for (GenId g = 0; g < alg->size(); ++g) d[g] = alg->degree(g);
        return d;
    };
    GradedHomology hs(source.d, degrees_of(source.alg), -1);
    GradedHomology ht(target.d, degrees_of(target.alg), -1);

    auto rows2 = gf2::to_rows(lm.m);
    InducedHomologyMap out;
    for (int deg : hs.degrees_present()) {
        int sr = hs.rank(deg);
        if (sr > 0) out.source_ranks[deg] = sr;
    }
    for (int deg : ht.degrees_present()) {
        int tr = ht.rank(deg);
        if (tr > 0) out.target_ranks[deg] = tr;
    }
    for (int deg : hs.degrees_present()) {
        const auto& reps = hs.representatives(deg);
        if (reps.empty()) continue;
        int tdeg = deg + lm.degree_shift;
        Matrix block(static_cast<std::size_t>(ht.rank(tdeg)), reps.size());
        for (std::size_t j = 0; j < reps.size(); ++j) {
            Gf2Vec img(lm.target->size(), 0);
            for (std::size_t r = 0; r < img.size(); ++r) {
                unsigned char acc = 0;
                for (std::size_t k = 0; k < reps[j].size(); ++k) acc ^= rows2[r][k] & reps[j][k];
                img[r] = acc;
            }
            auto coords = ht.coords(tdeg, img);
            if (!coords)
                throw Error(Error::Kind::validation, "image of a cycle is not a cycle (internal)");
            for (std::size_t i = 0; i < coords->size(); ++i) block.at(i, j) = (*coords)[i];
        }
        out.blocks[deg] = std::move(block);
    }
    return out;
}

ConstraintsReport check_constraints(const CobordismConstraints& c) {
    ConstraintsReport rep;
    int lhs = c.tb2 - c.tb1;
    int rhs = -c.euler;
    rep.tb_ok = lhs == rhs;
    rep.r_ok = c.r1 == c.r2;
    std::ostringstream os;
    os << "tb2 - tb1 = " << c.tb2 << " - (" << c.tb1 << ") = " << lhs << ", -chi = " << rhs
       << (rep.tb_ok ? " (ok)" : " (violated)");
    if (c.euler == 0)
        os << "; concordance case: tb must agree" << (rep.tb_ok ? "" : " but does not");
    os << "; r1 = " << c.r1 << ", r2 = " << c.r2 << (rep.r_ok ? " (ok)" : " (violated)");
    rep.detail = os.str();
    return rep;
}

void check_k_degrees(const DgaMorphism& k) {
    if (k.kind != MorphismKind::k)
        throw Error(Error::Kind::validation, "expected K-type data");
    for (GenId c = 0; c < k.source->alg->size(); ++c) {
        int want = k.source->alg->degree(c) + 1;
        for (const auto& [w, coeff] : k.images[c].terms()) {
            if (word_degree(*k.target->alg, w) != want)
                throw Error(Error::Kind::validation,
                            "K(" + k.source->alg->gen(c).id + ") has a term of degree " +
                                std::to_string(word_degree(*k.target->alg, w)) + ", expected " +
                                std::to_string(want));
        }
    }
}

OmegaOperator::OmegaOperator(const DgaMorphism& f1, const DgaMorphism& f2, std::vector<NcPoly> k_images)
    : h1_(f1.hom()), h2_(f2.hom()), k_(std::move(k_images)), source_(f1.source->alg), target_(f1.target->alg) {
    if (!Algebra::same(*f1.source->alg, *f2.source->alg) || !Algebra::same(*f1.target->alg, *f2.target->alg))
        throw Error(Error::Kind::ring_mismatch, "Omega needs morphisms with common source and target");
    if (k_.size() != source_->size())
        throw Error(Error::Kind::validation, "Omega needs a K image per source generator");
    for (const auto& im : k_) require_same_algebra(im.algebra(), *target_, "K image");
}

NcPoly OmegaOperator::apply_word(const Word& w) const {
    NcPoly out(target_);
    for (std::size_t j = 0; j < w.letters.size(); ++j) {
        Word prefix{std::vector<GenId>(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(j)),
                    w.t_power};
        Word suffix{std::vector<GenId>(w.letters.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.letters.end()), 0};
        NcPoly p(source_);
        p.add_term(prefix, 1);
        NcPoly s(source_);
        s.add_term(suffix, 1);
        out += h1_.apply(p) * k_[w.letters[j]] * h2_.apply(s);
    }
    return out;
}

NcPoly OmegaOperator::apply(const NcPoly& p) const {
    require_same_algebra(p.algebra(), *source_, "Omega argument");
    NcPoly out(target_);
    for (const auto& [w, c] : p.terms()) {
        NcPoly part = apply_word(w);
        part *= c;
        out += part;
    }
    return out;
}

OmegaOperator build_omega(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K) {
    check_k_degrees(K);
    if (!Algebra::same(*K.source->alg, *f1.source->alg) || !Algebra::same(*K.target->alg, *f1.target->alg))
        throw Error(Error::Kind::ring_mismatch, "K data lives on different ends than the morphisms");
    return OmegaOperator(f1, f2, K.images);
}

AugmentedOmega::AugmentedOmega(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K,
                               const Augmentation& e1)
    : f1a_(augment_morphism(f1, e1)),
      f2a_(augment_morphism(f2, e1)),
      direct_(f1a_.phi, f2a_.phi,
              [&] {
                  check_k_degrees(K);
                  // K^{eps1}(c) = phi^{eps1}(K(phi^{-eps2}(c))) = phi^{eps1}(K(c))
                  AlgebraHom phi_e1 = tame_iso(f1a_.eps1, +1);
                  std::vector<NcPoly> out;
                  for (const NcPoly& im : K.images) out.push_back(phi_e1.apply(im));
                  return out;
              }()),
      plain_(f1, f2, K.images),
      phi_e1_(tame_iso(f1a_.eps1, +1)),
      phi_minus_e2_(tame_iso(f1a_.eps2, -1)) {
    // both augmented morphisms must pull eps1 back to the same eps2, else
    // there is no common phi^{-eps2}
    if (f1a_.eps2.values != f2a_.eps2.values)
        throw Error(Error::Kind::validation,
                    "eps1 o Phi_1 != eps1 o Phi_2: no common augmented Omega exists");
}

NcPoly AugmentedOmega::conjugated(const NcPoly& p) const {
    return phi_e1_.apply(plain_.apply(phi_minus_e2_.apply(p)));
}

HomotopyReport check_homotopy(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K,
                              const std::optional<Augmentation>& e1) {
    HomotopyReport rep;
    OmegaOperator omega = build_omega(f1, f2, K);
    AlgebraDerivation d1 = f1.target->derivation();
    const AlgebraPtr& src = f1.source->alg;
    for (GenId c = 0; c < src->size(); ++c) {
        NcPoly res = f1.images[c] - f2.images[c];
        res -= omega.apply(f1.source->diff[c]);
        res -= d1.apply(K.images[c]);
        if (!res.is_zero()) rep.failures.push_back({src->gen(c).id, std::move(res)});
    }
    rep.equation_pass = rep.failures.empty();
    if (!e1) return rep;

    rep.linearized_attempted = true;
    // Hypotheses of the linearized statement.
    std::ostringstream detail;
    rep.hyp_augmentations_agree = true;
    for (GenId c = 0; c < src->size(); ++c) {
        Int v1 = e1->evaluate(f1.images[c]);
        Int v2 = e1->evaluate(f2.images[c]);
        if (v1 != v2) {
            rep.hyp_augmentations_agree = false;
            detail << "eps1(Phi_1(" << src->gen(c).id << ")) = " << v1.str() << " != " << v2.str()
                   << " = eps1(Phi_2(" << src->gen(c).id << ")); ";
            break;
        }
    }
    if (rep.hyp_augmentations_agree) {
        Augmentation e2 = pullback_augmentation(f1, *e1);
        Dga d_eps2 = augmented_differential(*f1.source, e2);
        rep.hyp_no_degree_minus_one_quadratics = true;
        for (GenId c = 0; c < src->size() && rep.hyp_no_degree_minus_one_quadratics; ++c) {
            for (const auto& [w, coeff] : d_eps2.diff[c].length_part(2).terms()) {
                for (GenId letter : w.letters) {
                    if (src->degree(letter) == -1) {
                        rep.hyp_no_degree_minus_one_quadratics = false;
                        detail << "d_{eps2}(" << src->gen(c).id << ") has quadratic term with degree -1 chord "
                               << src->gen(letter).id << "; ";
                        break;
                    }
                }
                if (!rep.hyp_no_degree_minus_one_quadratics) break;
            }
        }
        if (rep.hyp_no_degree_minus_one_quadratics) {
            // linearized equation
            AugmentedOmega ao(f1, f2, K, *e1);
            LinearMap m1 = linearize_morphism(ao.f1_aug());
            LinearMap m2 = linearize_morphism(ao.f2_aug());
            LinearComplex c2 = linearize(*ao.f1_aug().phi.source);
            LinearComplex c1 = linearize(*ao.f1_aug().phi.target);
            // (Omega^{eps1})^l: linear parts of K^{eps1} on generators
            Matrix om(ao.f1_aug().phi.target->alg->size(), src->size());
            for (GenId c = 0; c < src->size(); ++c) {
                NcPoly keps = ao.direct_word(Word{{c}, 0});
                for (const auto& [w, coeff] : keps.linear_part().terms()) om.at(w.letters[0], c) = coeff;
            }
            const CoeffRing& ring = src->ring();
            Matrix residual =
                reduce(m1.m - m2.m - (om * c2.d + c1.d * om), ring);
            rep.linearized_residual = residual;
            rep.linearized_pass = residual.is_zero();
        }
    }
    rep.hypothesis_detail = detail.str();
    return rep;
}

} // namespace legdga
