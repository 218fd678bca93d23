#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "legdga/augment.hpp"
#include "legdga/cedga.hpp"
#include "legdga/cobord.hpp"

namespace legdga {

using Json = nlohmann::json;

// Serialized polynomials are lists of {coeff, t_power, word} in the canonical
// term order; coefficients ride as numbers when they fit 64 bits and as
// decimal strings otherwise.
Json poly_to_json(const NcPoly& p);
NcPoly poly_from_json(const Json& j, const AlgebraPtr& alg);

Json dga_to_json(const Dga& g);
// Validates the schema, and unless checked = false also the grading and
// d^2 = 0 axioms.
Dga dga_from_json(const Json& j, bool checked = true);

// A DGA reference is either an inline DGA object or a string handled by the
// resolver (usually a path loader).
using DgaResolver = std::function<DgaPtr(const Json& ref)>;

Json morphism_to_json(const DgaMorphism& f);
DgaMorphism morphism_from_json(const Json& j, const DgaResolver& resolve);

Json augmentation_to_json(const Augmentation& e);
Json poincare_to_json(const PoincarePolynomial& p);
Json matrix_to_json(const Matrix& m);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace legdga
