#pragma once

#include <map>
#include <vector>

#include "legdga/cobord.hpp"

namespace legdga {

// The dualized A-infinity structure on the linearized cochain complex over
// Z/2: m_k is the adjoint of the length-k part of the augmented differential,
// so the coefficient of c* in m_k(c_1*, ..., c_k*) is the coefficient of the
// word c_1...c_k in d_eps(c). Degree labels are kept from the chain side,
// which makes every m_k a degree +1 map.

struct AinfAlgebra {
    DgaPtr dga; // augmented, constant-free, Z/2
    int max_order = 4;
    // mk[k] maps a k-tuple of basis indices to the output covector
    std::vector<std::map<std::vector<GenId>, Gf2Vec>> mk;
};

AinfAlgebra build_ainf(DgaPtr dga_aug, int max_order);

// m_k on basis covectors, k = args.size(); zero vector when k > max_order.
Gf2Vec eval_mk(const AinfAlgebra& a, const std::vector<GenId>& args);

// Adjoints applied back reconstruct the differential (finite sum).
NcPoly reconstruct_differential(const AinfAlgebra& a, GenId c);

struct StasheffReport {
    struct Violation {
        std::vector<GenId> tuple;
        Gf2Vec residual;
    };
    int order = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};
// sum_{i+j+k=l} m_{i+1+k} o (1^i x m_j x 1^k) = 0, evaluated on every l-tuple.
StasheffReport check_stasheff(const AinfAlgebra& a, int l);

struct AinfMorphism {
    DgaPtr source_dga; // Lambda_2 side: outputs of phi_k
    DgaPtr target_dga; // Lambda_1 side: inputs of phi_k
    int max_order = 4;
    std::vector<std::map<std::vector<GenId>, Gf2Vec>> phik;
};

AinfMorphism build_ainf_morphism(const AugmentedMorphism& fa, int max_order);
Gf2Vec eval_phik(const AinfMorphism& m, const std::vector<GenId>& args);

struct AinfMorphismReport {
    struct Violation {
        std::vector<GenId> tuple;
        Gf2Vec residual;
    };
    int order = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};
// The A-infinity morphism identity at order n; target_structure carries
// m^{eps1} (inputs), source_structure m^{eps2} (outputs).
AinfMorphismReport check_ainf_morphism(const AinfMorphism& f, const AinfAlgebra& target_structure,
                                       const AinfAlgebra& source_structure, int n);

// Residuals of the two length-filtration identities for j < k, per generator.
NcPoly filtration_lemma1_residual(const AugmentedMorphism& fa, GenId c, int j, int k);
NcPoly filtration_lemma2_residual(const AugmentedMorphism& fa, GenId c, int j, int k);

struct CohomologyProducts {
    std::map<int, int> ranks;
    struct ProductEntry {
        int deg_a = 0;
        std::size_t idx_a = 0;
        int deg_b = 0;
        std::size_t idx_b = 0;
        int deg_out = 0;
        Gf2Vec coords; // in the cohomology basis of deg_out
    };
    std::vector<ProductEntry> m2; // nonzero products of classes only
    struct HigherEntry {
        int k = 0;
        std::vector<std::pair<int, std::size_t>> args; // (degree, class index)
        int deg_out = 0;
        bool closes = false; // value is a cocycle
        Gf2Vec coords;       // class coordinates when it closes
    };
    std::vector<HigherEntry> higher; // k >= 3, on chosen representatives
    bool quotient_caveat = true;     // higher products live on quotients of H*
};
CohomologyProducts products_on_cohomology(const AinfAlgebra& a);

struct DualMapComparison {
    bool homotopy_equation_holds = false;
    bool induced_maps_equal = false;
};
// phi1, phi2: dual maps F_1^* -> F_2^* (transposed linearized morphisms);
// homotopy: the transposed linearized Omega. Checks the dual homotopy
// equation and that both maps agree on cohomology classes.
DualMapComparison compare_dual_maps_on_cohomology(const AinfAlgebra& v_side, const AinfAlgebra& w_side,
                                                  const Matrix& phi1, const Matrix& phi2,
                                                  const Matrix& homotopy);

} // namespace legdga
