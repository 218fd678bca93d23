#include "legdga/ncalg.hpp"

#include <algorithm>
#include <sstream>

namespace legdga {

Field field_from_string(std::string_view s) {
    if (s == "Z2" || s == "z2") return Field::Z2;
    if (s == "Z" || s == "z") return Field::Z;
    throw Error(Error::Kind::schema, "unknown coefficient field: " + std::string(s));
}

TMode tmode_from_string(std::string_view s) {
    if (s == "collapsed") return TMode::collapsed;
    if (s == "sign") return TMode::sign;
    if (s == "laurent") return TMode::laurent;
    throw Error(Error::Kind::schema, "unknown t mode: " + std::string(s));
}

std::string to_string(Field f) { return f == Field::Z2 ? "Z2" : "Z"; }

std::string to_string(TMode m) {
    switch (m) {
    case TMode::collapsed: return "collapsed";
    case TMode::sign: return "sign";
    default: return "laurent";
    }
}

Int CoeffRing::normalize(Int c) const {
    if (base == Field::Z2) {
        c = c % 2;
        if (c < 0) c += 2;
    }
    return c;
}

std::string CoeffRing::tag() const {
    if (base == Field::Z2) return t_mode == TMode::laurent ? "Z2Laurent" : "Z2";
    return t_mode == TMode::laurent ? "ZLaurent" : "Z";
}

std::shared_ptr<const Algebra> Algebra::make(CoeffRing ring, std::vector<Generator> gens) {
    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->ring_ = ring;
    alg->gens_ = std::move(gens);
    for (GenId i = 0; i < alg->gens_.size(); ++i) {
        const auto& id = alg->gens_[i].id;
        if (id.empty()) throw Error(Error::Kind::validation, "empty generator id");
        if (!alg->index_.emplace(id, i).second)
            throw Error(Error::Kind::validation, "duplicate generator id: " + id);
    }
    return alg;
}

std::optional<GenId> Algebra::find(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

GenId Algebra::require(std::string_view id) const {
    auto g = find(id);
    if (!g) throw Error(Error::Kind::unknown_generator, "unknown generator: " + std::string(id));
    return *g;
}

bool Algebra::same(const Algebra& a, const Algebra& b) {
    if (&a == &b) return true;
    if (!(a.ring_ == b.ring_)) return false;
    if (a.gens_.size() != b.gens_.size()) return false;
    for (std::size_t i = 0; i < a.gens_.size(); ++i)
        if (a.gens_[i].id != b.gens_[i].id || a.gens_[i].degree != b.gens_[i].degree) return false;
    return true;
}

void require_same_algebra(const Algebra& a, const Algebra& b, const char* what) {
    if (!Algebra::same(a, b))
        throw Error(Error::Kind::ring_mismatch, std::string(what) + ": operands live in different algebras");
}

int word_degree(const Algebra& alg, const Word& w) {
    int d = w.t_power * alg.ring().t_degree;
    for (GenId g : w.letters) d += alg.degree(g);
    return d;
}

bool WordLess::operator()(const Word& a, const Word& b) const {
    int da = word_degree(*alg, a);
    int db = word_degree(*alg, b);
    if (da != db) return da < db;
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.t_power < b.t_power;
}

NcPoly::NcPoly(AlgebraPtr alg) : alg_(std::move(alg)), terms_(WordLess{alg_.get()}) {
    if (!alg_) throw Error(Error::Kind::validation, "NcPoly requires an algebra");
}

NcPoly NcPoly::unit(AlgebraPtr alg) { return constant(std::move(alg), 1); }

NcPoly NcPoly::constant(AlgebraPtr alg, Int c) {
    NcPoly p(std::move(alg));
    p.add_term(Word{}, std::move(c));
    return p;
}

NcPoly NcPoly::generator(AlgebraPtr alg, GenId g) {
    NcPoly p(std::move(alg));
    if (g >= p.alg_->size()) throw Error(Error::Kind::unknown_generator, "generator index out of range");
    p.add_term(Word{{g}, 0}, 1);
    return p;
}

NcPoly NcPoly::generator(AlgebraPtr alg, std::string_view id) {
    GenId g = alg->require(id);
    return generator(std::move(alg), g);
}

NcPoly NcPoly::t(AlgebraPtr alg, int power) {
    NcPoly p(std::move(alg));
    p.add_term(Word{{}, power}, 1);
    return p;
}

void NcPoly::add_term(Word w, Int coeff) {
    const CoeffRing& ring = alg_->ring();
    switch (ring.t_mode) {
    case TMode::collapsed:
        w.t_power = 0;
        break;
    case TMode::sign:
        if (w.t_power % 2 != 0) coeff = -coeff;
        w.t_power = 0;
        break;
    case TMode::laurent:
        break;
    }
    coeff = ring.normalize(std::move(coeff));
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(w), coeff);
    if (!inserted) {
        it->second = ring.normalize(it->second + coeff);
        if (it->second == 0) terms_.erase(it);
    }
}

Int NcPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Int(0) : it->second;
}

NcPoly& NcPoly::operator+=(const NcPoly& rhs) {
    require_same_algebra(*alg_, *rhs.alg_, "add");
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& rhs) {
    require_same_algebra(*alg_, *rhs.alg_, "subtract");
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
}

NcPoly& NcPoly::operator*=(const NcPoly& rhs) {
    require_same_algebra(*alg_, *rhs.alg_, "multiply");
    NcPoly prod(alg_);
    for (const auto& [wa, ca] : terms_) {
        for (const auto& [wb, cb] : rhs.terms_) {
            Word w;
            w.letters.reserve(wa.letters.size() + wb.letters.size());
            w.letters = wa.letters;
            w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
            w.t_power = wa.t_power + wb.t_power;
            prod.add_term(std::move(w), ca * cb);
        }
    }
    terms_ = std::move(prod.terms_);
    return *this;
}

NcPoly& NcPoly::operator*=(const Int& c) {
    NcPoly scaled(alg_);
    for (const auto& [w, cw] : terms_) scaled.add_term(w, cw * c);
    terms_ = std::move(scaled.terms_);
    return *this;
}

bool NcPoly::operator==(const NcPoly& rhs) const {
    if (!Algebra::same(*alg_, *rhs.alg_)) return false;
    if (terms_.size() != rhs.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = rhs.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    return true;
}

Grade NcPoly::grade() const {
    if (terms_.empty()) return {GradeKind::zero, 0};
    int d = word_degree(*alg_, terms_.begin()->first);
    for (const auto& [w, c] : terms_)
        if (word_degree(*alg_, w) != d) return {GradeKind::mixed, 0};
    return {GradeKind::homogeneous, d};
}

NcPoly NcPoly::length_part(std::size_t k) const {
    NcPoly out(alg_);
    for (const auto& [w, c] : terms_)
        if (w.length() == k) out.add_term(w, c);
    return out;
}

Int NcPoly::constant_term() const { return coeff(Word{}); }

NcPoly NcPoly::constant_part() const { return length_part(0); }

std::size_t NcPoly::max_word_length() const {
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.length());
    return m;
}

std::string NcPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Int coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool wrote = false;
        if (coeff != 1 || w.is_unit()) {
            os << coeff.str();
            wrote = true;
        }
        if (w.t_power != 0) {
            if (wrote) os << " ";
            os << "t";
            if (w.t_power != 1) os << "^" << w.t_power;
            wrote = true;
        }
        for (GenId g : w.letters) {
            if (wrote) os << " ";
            os << alg_->gen(g).id;
            wrote = true;
        }
    }
    return os.str();
}

NcPoly invert_unit(const NcPoly& u) {
    if (u.terms().size() != 1)
        throw Error(Error::Kind::validation, "not a unit: " + u.str());
    const auto& [w, c] = *u.terms().begin();
    if (!w.letters.empty() || (c != 1 && c != -1))
        throw Error(Error::Kind::validation, "not a unit: " + u.str());
    NcPoly inv(u.algebra_ptr());
    inv.add_term(Word{{}, -w.t_power}, c);
    return inv;
}

AlgebraHom::AlgebraHom(AlgebraPtr source, AlgebraPtr target, std::vector<NcPoly> images, NcPoly t_image)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), t_image_(std::move(t_image)) {
    if (images_.size() != source_->size())
        throw Error(Error::Kind::validation, "homomorphism needs an image for every generator");
    if (source_->ring().base != target_->ring().base || source_->ring().t_mode != target_->ring().t_mode)
        throw Error(Error::Kind::ring_mismatch, "homomorphism between incompatible coefficient rings");
    for (const auto& im : images_) require_same_algebra(im.algebra(), *target_, "homomorphism image");
    require_same_algebra(t_image_.algebra(), *target_, "homomorphism t image");
}

AlgebraHom AlgebraHom::identity(const AlgebraPtr& alg) {
    std::vector<NcPoly> images;
    images.reserve(alg->size());
    for (GenId g = 0; g < alg->size(); ++g) images.push_back(NcPoly::generator(alg, g));
    return AlgebraHom(alg, alg, std::move(images), NcPoly::t(alg));
}

NcPoly AlgebraHom::apply(const NcPoly& p) const {
    require_same_algebra(p.algebra(), *source_, "homomorphism argument");
    NcPoly out(target_);
    for (const auto& [w, c] : p.terms()) {
        NcPoly prod = NcPoly::constant(target_, c);
        if (w.t_power != 0) {
            // t image is a unit of the target; powers of it stay single-term.
            if (w.t_power > 0) {
                for (int i = 0; i < w.t_power; ++i) prod *= t_image_;
            } else {
                NcPoly inv = invert_unit(t_image_);
                for (int i = 0; i < -w.t_power; ++i) prod *= inv;
            }
        }
        for (GenId g : w.letters) prod *= images_[g];
        out += prod;
    }
    return out;
}

AlgebraHom AlgebraHom::then(const AlgebraHom& next) const {
    require_same_algebra(*target_, next.source(), "homomorphism composition");
    std::vector<NcPoly> images;
    images.reserve(images_.size());
    for (const auto& im : images_) images.push_back(next.apply(im));
    return AlgebraHom(source_, next.target_ptr(), std::move(images), next.apply(t_image_));
}

AlgebraDerivation::AlgebraDerivation(AlgebraPtr alg, std::vector<NcPoly> images)
    : alg_(std::move(alg)), images_(std::move(images)) {
    if (images_.size() != alg_->size())
        throw Error(Error::Kind::validation, "derivation needs an image for every generator");
    for (const auto& im : images_) require_same_algebra(im.algebra(), *alg_, "derivation image");
}

NcPoly AlgebraDerivation::apply_word(const Word& w) const {
    // D(c_1...c_m) = sum_i (-1)^{|c_1...c_{i-1}|} c_1..c_{i-1} D(c_i) c_{i+1}..c_m,
    // with the t power carried through unchanged.
    NcPoly out(alg_);
    int prefix_degree = 0;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const NcPoly& di = images_[w.letters[i]];
        if (!di.is_zero()) {
            for (const auto& [dw, dc] : di.terms()) {
                Word term;
                term.letters.reserve(w.letters.size() - 1 + dw.letters.size());
                term.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(i));
                term.letters.insert(term.letters.end(), dw.letters.begin(), dw.letters.end());
                term.letters.insert(term.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                    w.letters.end());
                term.t_power = w.t_power + dw.t_power;
                Int c = dc;
                if (prefix_degree % 2 != 0) c = -c;
                out.add_term(std::move(term), std::move(c));
            }
        }
        prefix_degree += alg_->degree(w.letters[i]);
    }
    return out;
}

NcPoly AlgebraDerivation::apply(const NcPoly& p) const {
    require_same_algebra(p.algebra(), *alg_, "derivation argument");
    NcPoly out(alg_);
    for (const auto& [w, c] : p.terms()) {
        NcPoly dw = apply_word(w);
        dw *= c;
        out += dw;
    }
    return out;
}

} // namespace legdga
