#pragma once

#include <map>
#include <optional>
#include <vector>

#include "legdga/cedga.hpp"
#include "legdga/linalg.hpp"
#include "legdga/ncalg.hpp"

namespace legdga {

// Augmentations, tame isomorphisms, augmented differentials, linearization
// and linearized contact homology.

struct Augmentation {
    AlgebraPtr alg;
    std::vector<Int> values; // per generator; supported in degree 0
    Int t_image = 1;

    Int evaluate(const NcPoly& p) const;
};

Augmentation zero_augmentation(const Dga& g);

// Throws Error::validation when the candidate map is not an augmentation.
void verify_augmentation(const Dga& g, const Augmentation& e);

// Exhaustive search over degree-0 assignments; Z/2 coefficients only.
// Deterministic order: assignment index counted in binary over the degree-0
// generators in generator order. Honors LEGDGA_THREADS.
std::vector<Augmentation> enumerate_augmentations(const Dga& g);

// phi^{sign * eps}: c -> c + sign*eps(c), fixing constants and t.
AlgebraHom tame_iso(const Augmentation& e, int sign = 1);

// d_eps = phi^eps o d o phi^{-eps}; result is constant-free with square zero.
Dga augmented_differential(const Dga& g, const Augmentation& e);

// A free graded module with a degree -1 differential matrix.
struct LinearComplex {
    AlgebraPtr alg; // basis and grading
    Matrix d;       // entry (i, j) = coefficient of gen i in d(gen j)

    std::vector<std::size_t> basis_of_degree(int degree) const;
    // block of d mapping degree d to degree d-1
    Matrix degree_block(int degree) const;
};

// Matrices of the linear part of the differential; input must be constant-free.
LinearComplex linearize(const Dga& g_aug);

// A degree-homogeneous linear map between two complexes.
struct LinearMap {
    AlgebraPtr source;
    AlgebraPtr target;
    Matrix m; // entry (i, j) = coefficient of target gen i in the image of source gen j
    int degree_shift = 0;
};

using PoincarePolynomial = std::map<int, int>; // degree -> rank, zero ranks omitted

PoincarePolynomial lch(const LinearComplex& c);

int euler_characteristic(const LinearComplex& c);

// Homology of a Z/2 complex with a chosen basis of representatives per degree
// and coordinates of cycles in that basis.
class GradedHomology {
public:
    // diff_degree: -1 for chain complexes, +1 for the dualized cochain side.
    GradedHomology(const Matrix& d, const std::vector<int>& degrees, int diff_degree);

    const std::vector<int>& degrees_present() const { return degrees_; }
    int rank(int degree) const;
    // representatives as vectors over the full basis
    const std::vector<Gf2Vec>& representatives(int degree) const;
    // coordinates of a cycle in the homology basis; nullopt when not a cycle
    std::optional<Gf2Vec> coords(int degree, const Gf2Vec& cycle) const;

private:
    struct DegreeData {
        std::vector<std::size_t> basis; // indices into the full basis
        std::vector<Gf2Vec> reps;       // over the full basis
        Matrix solve_mat;               // [image | reps] over the degree basis
        std::size_t image_cols = 0;
    };
    std::map<int, DegreeData> data_;
    std::vector<int> degrees_;
    std::vector<int> basis_degree_;
    int diff_degree_;
};

} // namespace legdga
