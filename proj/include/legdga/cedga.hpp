#pragma once

#include <memory>
#include <string>
#include <vector>

#include "legdga/diagram.hpp"
#include "legdga/ncalg.hpp"

namespace legdga {

// The Chekanov-Eliashberg DGA of a diagram, or a user-supplied DGA.
// The differential lowers degree by exactly 1 and squares to zero; both are
// checked at load time unless explicitly disabled.
struct Dga {
    AlgebraPtr alg;
    std::vector<NcPoly> diff; // per generator
    std::string provenance = "user-supplied";

    const CoeffRing& ring() const { return alg->ring(); }
    AlgebraDerivation derivation() const { return AlgebraDerivation(alg, diff); }
    const NcPoly& d(GenId g) const { return diff.at(g); }
};

using DgaPtr = std::shared_ptr<const Dga>;

// Generators are the Reeb chords with their capping-path gradings; the
// differential counts the immersed disks of the diagram. Diagram DGAs live
// over Z/2 (t collapsed or kept as a Laurent variable).
Dga build_dga(const LagrangianDiagram& diagram, CoeffRing ring);

struct DSquaredReport {
    struct Item {
        std::string gen;
        NcPoly residual;
    };
    std::vector<Item> failures;
    bool pass() const { return failures.empty(); }
};
DSquaredReport check_d_squared(const Dga& g);

struct GradingViolation {
    std::string gen;
    Word word;
    int expected_degree;
    int actual_degree;
};
struct GradingCheckReport {
    std::vector<GradingViolation> failures;
    bool pass() const { return failures.empty(); }
};
GradingCheckReport check_grading(const Dga& g);

// Specialize t to 1, turning a Z/2 Laurent DGA into a collapsed one.
Dga collapse_t(const Dga& g);

} // namespace legdga
