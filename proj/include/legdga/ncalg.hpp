#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "legdga/errors.hpp"

namespace legdga {

// Exact arithmetic in free unital associative algebras Z<a_1..a_n>,
// Z/2<a_1..a_n> and Z[t,t^-1]<a_1..a_n>, with graded signed derivations
// and algebra homomorphisms.

using Int = boost::multiprecision::cpp_int;
using GenId = std::uint32_t;

enum class Field { Z2, Z };
enum class TMode { collapsed, sign, laurent };

Field field_from_string(std::string_view s);
TMode tmode_from_string(std::string_view s);
std::string to_string(Field f);
std::string to_string(TMode m);

struct CoeffRing {
    Field base = Field::Z2;
    TMode t_mode = TMode::collapsed;
    int t_degree = 0; // deg t = -2 r(Lambda); graded operations require 0

    Int normalize(Int c) const;
    bool operator==(const CoeffRing&) const = default;
    // Spec-facing tag: Z2, Z or ZLaurent depending on base and t handling.
    std::string tag() const;
};

struct Generator {
    std::string id;
    int degree = 0;
};

class Algebra {
public:
    static std::shared_ptr<const Algebra> make(CoeffRing ring, std::vector<Generator> gens);

    const CoeffRing& ring() const { return ring_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& gen(GenId g) const { return gens_.at(g); }
    int degree(GenId g) const { return gens_.at(g).degree; }
    std::optional<GenId> find(std::string_view id) const;
    GenId require(std::string_view id) const;

    // Structural equality: same ring and same generator list in the same order.
    static bool same(const Algebra& a, const Algebra& b);

private:
    Algebra() = default;
    CoeffRing ring_;
    std::vector<Generator> gens_;
    std::map<std::string, GenId, std::less<>> index_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// A word t^k a_{i1}...a_{im}; the empty word with k = 0 is the unit.
struct Word {
    std::vector<GenId> letters;
    int t_power = 0;

    bool is_unit() const { return letters.empty() && t_power == 0; }
    std::size_t length() const { return letters.size(); }
    bool operator==(const Word&) const = default;
};

int word_degree(const Algebra& alg, const Word& w);

// Canonical term order: degree, then length, then letters lexicographically,
// then t power. Polynomial equality is structural equality of the term maps.
struct WordLess {
    const Algebra* alg = nullptr;
    bool operator()(const Word& a, const Word& b) const;
};

enum class GradeKind { zero, homogeneous, mixed };
struct Grade {
    GradeKind kind = GradeKind::zero;
    int degree = 0;
};

class NcPoly {
public:
    using TermMap = std::map<Word, Int, WordLess>;

    explicit NcPoly(AlgebraPtr alg);

    static NcPoly zero(AlgebraPtr alg) { return NcPoly(std::move(alg)); }
    static NcPoly unit(AlgebraPtr alg);
    static NcPoly constant(AlgebraPtr alg, Int c);
    static NcPoly generator(AlgebraPtr alg, GenId g);
    static NcPoly generator(AlgebraPtr alg, std::string_view id);
    static NcPoly t(AlgebraPtr alg, int power = 1);

    const Algebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Inserts coeff * w, normalizing t handling and the coefficient ring.
    void add_term(Word w, Int coeff);
    Int coeff(const Word& w) const;

    NcPoly& operator+=(const NcPoly& rhs);
    NcPoly& operator-=(const NcPoly& rhs);
    NcPoly& operator*=(const NcPoly& rhs);
    NcPoly& operator*=(const Int& c);
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(NcPoly a, const NcPoly& b) { return a *= b; }
    friend NcPoly operator*(NcPoly a, const Int& c) { return a *= c; }
    bool operator==(const NcPoly& rhs) const;

    Grade grade() const;
    NcPoly linear_part() const { return length_part(1); }
    NcPoly length_part(std::size_t k) const;
    Int constant_term() const; // coefficient of the unit word t^0
    NcPoly constant_part() const; // all length-0 terms, including t powers
    std::size_t max_word_length() const;

    std::string str() const;

private:
    AlgebraPtr alg_;
    TermMap terms_;
};

// The unique unital ring homomorphism extending generator images and the
// image of t. Source and target must share base field and t mode.
class AlgebraHom {
public:
    AlgebraHom(AlgebraPtr source, AlgebraPtr target, std::vector<NcPoly> images, NcPoly t_image);

    static AlgebraHom identity(const AlgebraPtr& alg);

    const Algebra& source() const { return *source_; }
    const Algebra& target() const { return *target_; }
    const AlgebraPtr& source_ptr() const { return source_; }
    const AlgebraPtr& target_ptr() const { return target_; }
    const NcPoly& image(GenId g) const { return images_.at(g); }
    const std::vector<NcPoly>& images() const { return images_; }
    const NcPoly& t_image() const { return t_image_; }

    NcPoly apply(const NcPoly& p) const;
    AlgebraHom then(const AlgebraHom& next) const; // next o this

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<NcPoly> images_;
    NcPoly t_image_;
};

// The unique signed derivation extending generator images:
// D(w w') = D(w) w' + (-1)^{|w|} w D(w'). Annihilates constants and t.
class AlgebraDerivation {
public:
    AlgebraDerivation(AlgebraPtr alg, std::vector<NcPoly> images);

    const Algebra& algebra() const { return *alg_; }
    const NcPoly& image(GenId g) const { return images_.at(g); }
    const std::vector<NcPoly>& images() const { return images_; }

    NcPoly apply(const NcPoly& p) const;
    NcPoly apply_word(const Word& w) const;

private:
    AlgebraPtr alg_;
    std::vector<NcPoly> images_;
};

void require_same_algebra(const Algebra& a, const Algebra& b, const char* what);

// Inverse of a unit of the coefficient ring embedded in the algebra,
// i.e. a single length-0 term (+-1) t^k. Anything else throws.
NcPoly invert_unit(const NcPoly& u);

} // namespace legdga
