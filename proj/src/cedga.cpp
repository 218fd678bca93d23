#include "legdga/cedga.hpp"

namespace legdga {

Dga build_dga(const LagrangianDiagram& diagram, CoeffRing ring) {
    if (ring.base != Field::Z2)
        throw Error(Error::Kind::unsupported,
                    "diagram DGAs carry Z/2 coefficients; Z-coefficient DGAs are accepted as user input only");
    if (ring.t_mode == TMode::sign)
        throw Error(Error::Kind::unsupported, "t mode 'sign' applies to Z coefficients only");
    ring.t_degree = 0; // enforced below via r = 0

    std::vector<int> degrees = diagram.chord_gradings(); // throws when r != 0
    std::vector<Generator> gens;
    gens.reserve(diagram.num_crossings());
    for (std::size_t v = 0; v < diagram.num_crossings(); ++v)
        gens.push_back({diagram.crossing_id(v), degrees[v]});
    AlgebraPtr alg = Algebra::make(ring, std::move(gens));

    Dga g;
    g.alg = alg;
    g.provenance = "diagram";
    g.diff.assign(alg->size(), NcPoly::zero(alg));
    for (const Disk& disk : diagram.disks()) {
        Word w;
        w.t_power = disk.t_power;
        for (std::size_t v : disk.negative_corners) w.letters.push_back(static_cast<GenId>(v));
        g.diff[disk.positive_corner].add_term(std::move(w), 1);
    }
    return g;
}

DSquaredReport check_d_squared(const Dga& g) {
    DSquaredReport report;
    AlgebraDerivation d = g.derivation();
    for (GenId c = 0; c < g.alg->size(); ++c) {
        NcPoly dd = d.apply(g.diff[c]);
        if (!dd.is_zero()) report.failures.push_back({g.alg->gen(c).id, std::move(dd)});
    }
    return report;
}

GradingCheckReport check_grading(const Dga& g) {
    GradingCheckReport report;
    for (GenId c = 0; c < g.alg->size(); ++c) {
        int expected = g.alg->degree(c) - 1;
        for (const auto& [w, coeff] : g.diff[c].terms()) {
            int actual = word_degree(*g.alg, w);
            if (actual != expected)
                report.failures.push_back({g.alg->gen(c).id, w, expected, actual});
        }
    }
    return report;
}

Dga collapse_t(const Dga& g) {
    CoeffRing ring = g.ring();
    ring.t_mode = TMode::collapsed;
    std::vector<Generator> gens;
    for (GenId c = 0; c < g.alg->size(); ++c) gens.push_back(g.alg->gen(c));
    AlgebraPtr alg = Algebra::make(ring, std::move(gens));
    Dga out;
    out.alg = alg;
    out.provenance = g.provenance;
    out.diff.assign(alg->size(), NcPoly::zero(alg));
    for (GenId c = 0; c < g.alg->size(); ++c)
        for (const auto& [w, coeff] : g.diff[c].terms()) out.diff[c].add_term(w, coeff);
    return out;
}

} // namespace legdga
