#include "legdga/json_io.hpp"

#include <limits>

namespace legdga {

namespace {

Json coeff_to_json(const Int& c) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(c);
    return c.str();
}

Int coeff_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw Error(Error::Kind::schema, "coefficient must be an integer or a decimal string");
}

void expect(bool cond, const std::string& msg) {
    if (!cond) throw Error(Error::Kind::schema, msg);
}

} // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

Json poly_to_json(const NcPoly& p) {
    Json out = Json::array();
    for (const auto& [w, c] : p.terms()) {
        Json term;
        term["coeff"] = coeff_to_json(c);
        term["t_power"] = w.t_power;
        Json word = Json::array();
        for (GenId g : w.letters) word.push_back(p.algebra().gen(g).id);
        term["word"] = word;
        out.push_back(std::move(term));
    }
    return out;
}

NcPoly poly_from_json(const Json& j, const AlgebraPtr& alg) {
    expect(j.is_array(), "polynomial must be an array of terms");
    NcPoly p(alg);
    for (const Json& term : j) {
        expect(term.is_object(), "polynomial term must be an object");
        expect(term.contains("coeff") && term.contains("word"), "term needs coeff and word");
        Word w;
        w.t_power = term.value("t_power", 0);
        expect(term["word"].is_array(), "term word must be an array of generator ids");
        for (const Json& letter : term["word"]) {
            expect(letter.is_string(), "word letters must be generator ids");
            w.letters.push_back(alg->require(letter.get<std::string>()));
        }
        p.add_term(std::move(w), coeff_from_json(term["coeff"]));
    }
    return p;
}

Json dga_to_json(const Dga& g) {
    Json out;
    out["ring"] = to_string(g.ring().base);
    out["t_mode"] = to_string(g.ring().t_mode);
    Json gens = Json::array();
    for (GenId c = 0; c < g.alg->size(); ++c) {
        Json item;
        item["id"] = g.alg->gen(c).id;
        item["degree"] = g.alg->degree(c);
        gens.push_back(std::move(item));
    }
    out["generators"] = gens;
    Json diff = Json::object();
    for (GenId c = 0; c < g.alg->size(); ++c) diff[g.alg->gen(c).id] = poly_to_json(g.diff[c]);
    out["differential"] = diff;
    out["provenance"] = g.provenance;
    return out;
}

Dga dga_from_json(const Json& j, bool checked) {
    expect(j.is_object(), "DGA document must be an object");
    expect(j.contains("ring") && j.contains("generators") && j.contains("differential"),
           "DGA document needs ring, generators and differential");
    CoeffRing ring;
    ring.base = field_from_string(j["ring"].get<std::string>());
    ring.t_mode = tmode_from_string(j.value("t_mode", std::string("collapsed")));
    if (ring.t_mode == TMode::sign) expect(ring.base == Field::Z, "t mode 'sign' needs Z coefficients");

    std::vector<Generator> gens;
    expect(j["generators"].is_array(), "generators must be an array");
    for (const Json& item : j["generators"]) {
        expect(item.is_object() && item.contains("id") && item.contains("degree"),
               "generator entries need id and degree");
        gens.push_back({item["id"].get<std::string>(), item["degree"].get<int>()});
    }
    AlgebraPtr alg = Algebra::make(ring, std::move(gens));

    Dga g;
    g.alg = alg;
    g.provenance = j.value("provenance", std::string("user-supplied"));
    g.diff.assign(alg->size(), NcPoly::zero(alg));
    expect(j["differential"].is_object(), "differential must be an object keyed by generator id");
    for (const auto& [key, val] : j["differential"].items()) {
        GenId c = alg->require(key);
        g.diff[c] = poly_from_json(val, alg);
    }

    if (checked) {
        auto grading = check_grading(g);
        if (!grading.pass()) {
            const auto& v = grading.failures.front();
            throw Error(Error::Kind::validation,
                        "differential is not degree -1 at " + v.gen + " (term of degree " +
                            std::to_string(v.actual_degree) + ", expected " +
                            std::to_string(v.expected_degree) + ")");
        }
        auto dsq = check_d_squared(g);
        if (!dsq.pass())
            throw Error(Error::Kind::validation,
                        "d^2 != 0 at " + dsq.failures.front().gen + ": residual " +
                            dsq.failures.front().residual.str());
    }
    return g;
}

Json morphism_to_json(const DgaMorphism& f) {
    Json out;
    out["kind"] = f.kind == MorphismKind::phi ? "phi" : "k";
    out["source_dga"] = dga_to_json(*f.source);
    out["target_dga"] = dga_to_json(*f.target);
    Json images = Json::object();
    for (GenId c = 0; c < f.source->alg->size(); ++c)
        images[f.source->alg->gen(c).id] = poly_to_json(f.images[c]);
    out["images"] = images;
    return out;
}

DgaMorphism morphism_from_json(const Json& j, const DgaResolver& resolve) {
    expect(j.is_object(), "morphism document must be an object");
    expect(j.contains("source_dga") && j.contains("target_dga") && j.contains("images"),
           "morphism document needs source_dga, target_dga and images");
    DgaMorphism f;
    std::string kind = j.value("kind", std::string("phi"));
    if (kind == "phi") f.kind = MorphismKind::phi;
    else if (kind == "k") f.kind = MorphismKind::k;
    else throw Error(Error::Kind::schema, "morphism kind must be 'phi' or 'k'");
    f.source = resolve(j["source_dga"]);
    f.target = resolve(j["target_dga"]);
    expect(j["images"].is_object(), "images must be an object keyed by generator id");
    f.images.assign(f.source->alg->size(), NcPoly::zero(f.target->alg));
    std::vector<bool> seen(f.source->alg->size(), false);
    for (const auto& [key, val] : j["images"].items()) {
        GenId c = f.source->alg->require(key);
        f.images[c] = poly_from_json(val, f.target->alg);
        seen[c] = true;
    }
    for (GenId c = 0; c < f.source->alg->size(); ++c)
        if (!seen[c])
            throw Error(Error::Kind::schema,
                        "morphism is missing an image for generator " + f.source->alg->gen(c).id);
    return f;
}

Json augmentation_to_json(const Augmentation& e) {
    Json out;
    Json values = Json::object();
    for (GenId c = 0; c < e.alg->size(); ++c)
        if (e.values[c] != 0) values[e.alg->gen(c).id] = coeff_to_json(e.values[c]);
    out["values"] = values;
    out["t_image"] = coeff_to_json(e.t_image);
    return out;
}

Json poincare_to_json(const PoincarePolynomial& p) {
    Json out = Json::object();
    for (auto [deg, rank] : p) out[std::to_string(deg)] = rank;
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(coeff_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace legdga
