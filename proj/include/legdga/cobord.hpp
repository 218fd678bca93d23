#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legdga/augment.hpp"

namespace legdga {

// DGA morphisms induced by exact Lagrangian cobordisms, their augmented and
// linearized versions, chain homotopies and the Chantraine constraints.
//
// A morphism runs from the DGA of the top end Lambda_2 to the DGA of the
// bottom end Lambda_1. Morphisms are data: images are supplied, the library
// verifies every axiom it can.

enum class MorphismKind { phi, k };

struct DgaMorphism {
    DgaPtr source; // Lambda_2 end
    DgaPtr target; // Lambda_1 end
    std::vector<NcPoly> images;
    MorphismKind kind = MorphismKind::phi;
    bool verified = false;

    AlgebraHom hom() const; // phi kind only; sends t to t
};

DgaMorphism identity_morphism(DgaPtr g);

struct ChainMapReport {
    struct Item {
        std::string gen;
        NcPoly residual; // Phi(d2 c) - d1(Phi c)
    };
    std::vector<Item> failures;
    bool pass() const { return failures.empty(); }
};
ChainMapReport check_chain_map(const DgaMorphism& f);

// f after g: source of the result is g's source. Ends must match.
DgaMorphism compose(const DgaMorphism& f, const DgaMorphism& g);

// eps2 = eps1 o Phi, verified as an augmentation of the source.
Augmentation pullback_augmentation(const DgaMorphism& f, const Augmentation& e1);

// Phi^{eps1} = phi^{eps1} o Phi o phi^{-eps2} together with both augmented
// DGAs. Construction fails if a constant term appears (it cannot for genuine
// chain maps) or if the augmented images do not commute with the augmented
// differentials.
struct AugmentedMorphism {
    DgaMorphism phi; // from (A_2, d_{eps2}) to (A_1, d_{eps1})
    Augmentation eps1;
    Augmentation eps2;
};
AugmentedMorphism augment_morphism(const DgaMorphism& f, const Augmentation& e1);

// Matrix of the linear parts; the chain-map identity of the linearizations
// is verified exactly and failure throws.
LinearMap linearize_morphism(const AugmentedMorphism& fa);

struct InducedHomologyMap {
    std::map<int, Matrix> blocks; // per degree: target homology basis x source homology basis
    std::map<int, int> source_ranks;
    std::map<int, int> target_ranks;
};
InducedHomologyMap induced_on_homology(const LinearMap& lm, const LinearComplex& source,
                                       const LinearComplex& target);

// Word-wise chain homotopy operator
// Omega(c_1..c_m) = sum_j Phi_1(c_1..c_{j-1}) K(c_j) Phi_2(c_{j+1}..c_m).
class OmegaOperator {
public:
    OmegaOperator(const DgaMorphism& f1, const DgaMorphism& f2, std::vector<NcPoly> k_images);

    NcPoly apply_word(const Word& w) const;
    NcPoly apply(const NcPoly& p) const;
    const NcPoly& k_image(GenId g) const { return k_[g]; }

private:
    AlgebraHom h1_;
    AlgebraHom h2_;
    std::vector<NcPoly> k_;
    AlgebraPtr source_;
    AlgebraPtr target_;
};

// Validates that every K(c) term has degree |c| + 1.
void check_k_degrees(const DgaMorphism& k);

OmegaOperator build_omega(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K);

// Omega^{eps1} built from the augmented pieces, plus the conjugation route
// phi^{eps1} o Omega o phi^{-eps2} for cross-checking the two computations.
class AugmentedOmega {
public:
    AugmentedOmega(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K,
                   const Augmentation& e1);

    NcPoly direct(const NcPoly& p) const { return direct_.apply(p); }
    NcPoly direct_word(const Word& w) const { return direct_.apply_word(w); }
    NcPoly conjugated(const NcPoly& p) const;
    const OmegaOperator& direct_operator() const { return direct_; }
    const AugmentedMorphism& f1_aug() const { return f1a_; }
    const AugmentedMorphism& f2_aug() const { return f2a_; }

private:
    AugmentedMorphism f1a_;
    AugmentedMorphism f2a_;
    OmegaOperator direct_;
    OmegaOperator plain_;
    AlgebraHom phi_e1_;
    AlgebraHom phi_minus_e2_;
};

struct HomotopyReport {
    struct Item {
        std::string gen;
        NcPoly residual;
    };
    // Phi_1 - Phi_2 - (Omega d_2 + d_1 Omega) on generators
    std::vector<Item> failures;
    bool equation_pass = false;

    // linearized part (only when an augmentation is supplied)
    bool linearized_attempted = false;
    bool hyp_augmentations_agree = false;
    bool hyp_no_degree_minus_one_quadratics = false;
    std::string hypothesis_detail;
    bool linearized_pass = false;
    Matrix linearized_residual;

    bool pass() const {
        if (!equation_pass) return false;
        if (!linearized_attempted) return true;
        return hyp_augmentations_agree && hyp_no_degree_minus_one_quadratics && linearized_pass;
    }
};
HomotopyReport check_homotopy(const DgaMorphism& f1, const DgaMorphism& f2, const DgaMorphism& K,
                              const std::optional<Augmentation>& e1);

struct CobordismConstraints {
    int tb1 = 0, tb2 = 0;
    int r1 = 0, r2 = 0;
    int euler = 0;
};
struct ConstraintsReport {
    bool tb_ok = false;
    bool r_ok = false;
    std::string detail;
    bool pass() const { return tb_ok && r_ok; }
};
ConstraintsReport check_constraints(const CobordismConstraints& c);

} // namespace legdga
