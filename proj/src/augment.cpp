#include "legdga/augment.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace legdga {

namespace {

unsigned thread_cap() {
    const char* env = std::getenv("LEGDGA_THREADS");
    if (!env) return 1;
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(std::min<long>(v, hw));
}

Int pow_int(const Int& base, int exp) {
    // exponents of ring units only, so base is +-1 when exp < 0
    if (exp < 0) {
        if (base != 1 && base != -1)
            throw Error(Error::Kind::validation, "negative power of a non-unit");
        return exp % 2 == 0 ? Int(1) : base;
    }
    Int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

} // namespace

Int Augmentation::evaluate(const NcPoly& p) const {
    require_same_algebra(p.algebra(), *alg, "augmentation argument");
    const CoeffRing& ring = alg->ring();
    Int total = 0;
    for (const auto& [w, c] : p.terms()) {
        Int term = c * pow_int(t_image, w.t_power);
        for (GenId g : w.letters) {
            if (term == 0) break;
            term *= values[g];
        }
        total += term;
    }
    return ring.normalize(total);
}

Augmentation zero_augmentation(const Dga& g) {
    Augmentation e;
    e.alg = g.alg;
    e.values.assign(g.alg->size(), 0);
    const CoeffRing& ring = g.ring();
    if (ring.t_mode == TMode::sign) e.t_image = -1;
    else if (ring.t_mode == TMode::laurent) e.t_image = ring.base == Field::Z2 ? 1 : -1;
    else e.t_image = 1;
    e.t_image = ring.normalize(e.t_image);
    return e;
}

void verify_augmentation(const Dga& g, const Augmentation& e) {
    require_same_algebra(*g.alg, *e.alg, "augmentation");
    if (e.values.size() != g.alg->size())
        throw Error(Error::Kind::validation, "augmentation needs a value per generator");
    const CoeffRing& ring = g.ring();
    for (GenId c = 0; c < g.alg->size(); ++c) {
        if (ring.normalize(e.values[c]) != e.values[c])
            throw Error(Error::Kind::validation, "augmentation value not reduced in the ring");
        if (g.alg->degree(c) != 0 && e.values[c] != 0)
            throw Error(Error::Kind::validation,
                        "augmentation does not vanish on " + g.alg->gen(c).id + " of degree " +
                            std::to_string(g.alg->degree(c)));
    }
    Int t = ring.normalize(e.t_image);
    bool unit = ring.base == Field::Z2 ? t == 1 : (t == 1 || t == -1);
    if (!unit) throw Error(Error::Kind::validation, "augmentation must send t to a unit");
    for (GenId c = 0; c < g.alg->size(); ++c) {
        Int v = e.evaluate(g.diff[c]);
        if (v != 0)
            throw Error(Error::Kind::validation,
                        "eps o d != 0 at generator " + g.alg->gen(c).id + " (value " + v.str() + ")");
    }
}

std::vector<Augmentation> enumerate_augmentations(const Dga& g) {
    const CoeffRing& ring = g.ring();
    if (ring.base != Field::Z2)
        throw Error(Error::Kind::unsupported,
                    "augmentation search needs a finite coefficient ring; verify Z-valued candidates instead");
    std::vector<GenId> support;
    for (GenId c = 0; c < g.alg->size(); ++c)
        if (g.alg->degree(c) == 0) support.push_back(c);
    if (support.size() > 24)
        throw Error(Error::Kind::unsupported, "too many degree-0 generators for exhaustive search");

    const std::uint64_t total = 1ull << support.size();
    Augmentation proto = zero_augmentation(g);

    auto try_assignment = [&](std::uint64_t bits) -> std::optional<Augmentation> {
        Augmentation e = proto;
        for (std::size_t i = 0; i < support.size(); ++i)
            e.values[support[i]] = (bits >> i & 1ull) ? 1 : 0;
        for (GenId c = 0; c < g.alg->size(); ++c)
            if (e.evaluate(g.diff[c]) != 0) return std::nullopt;
        return e;
    };

    unsigned threads = thread_cap();
    std::vector<Augmentation> out;
    if (threads <= 1 || total < 64) {
        for (std::uint64_t bits = 0; bits < total; ++bits)
            if (auto e = try_assignment(bits)) out.push_back(std::move(*e));
        return out;
    }
    std::vector<std::future<std::vector<Augmentation>>> futs;
    std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = std::min(total, lo + chunk);
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            std::vector<Augmentation> part;
            for (std::uint64_t bits = lo; bits < hi; ++bits)
                if (auto e = try_assignment(bits)) part.push_back(std::move(*e));
            return part;
        }));
    }
    for (auto& f : futs) {
        auto part = f.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

AlgebraHom tame_iso(const Augmentation& e, int sign) {
    const AlgebraPtr& alg = e.alg;
    std::vector<NcPoly> images;
    images.reserve(alg->size());
    for (GenId c = 0; c < alg->size(); ++c) {
        NcPoly im = NcPoly::generator(alg, c);
        if (e.values[c] != 0) im += NcPoly::constant(alg, sign >= 0 ? e.values[c] : -e.values[c]);
        images.push_back(std::move(im));
    }
    return AlgebraHom(alg, alg, std::move(images), NcPoly::t(alg));
}

Dga augmented_differential(const Dga& g, const Augmentation& e) {
    verify_augmentation(g, e);
    AlgebraHom phi = tame_iso(e, +1);
    AlgebraHom phi_inv = tame_iso(e, -1);
    AlgebraDerivation d = g.derivation();
    Dga out;
    out.alg = g.alg;
    out.provenance = g.provenance;
    out.diff.reserve(g.alg->size());
    for (GenId c = 0; c < g.alg->size(); ++c) {
        NcPoly img = phi.apply(d.apply(phi_inv.apply(NcPoly::generator(g.alg, c))));
        if (!img.constant_part().is_zero())
            throw Error(Error::Kind::validation,
                        "augmented differential has constant terms at " + g.alg->gen(c).id);
        out.diff.push_back(std::move(img));
    }
    auto dsq = check_d_squared(out);
    if (!dsq.pass())
        throw Error(Error::Kind::validation, "augmented differential does not square to zero (internal)");
    return out;
}

std::vector<std::size_t> LinearComplex::basis_of_degree(int degree) const {
    std::vector<std::size_t> out;
    for (GenId c = 0; c < alg->size(); ++c)
        if (alg->degree(c) == degree) out.push_back(c);
    return out;
}

Matrix LinearComplex::degree_block(int degree) const {
    auto cols = basis_of_degree(degree);
    auto rows = basis_of_degree(degree - 1);
    Matrix block(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows.size(); ++i) block.at(i, j) = d.at(rows[i], cols[j]);
    return block;
}

LinearComplex linearize(const Dga& g_aug) {
    LinearComplex c;
    c.alg = g_aug.alg;
    std::size_t n = g_aug.alg->size();
    c.d = Matrix(n, n);
    for (GenId j = 0; j < n; ++j) {
        if (!g_aug.diff[j].constant_part().is_zero())
            throw Error(Error::Kind::validation,
                        "cannot linearize: constant terms present at " + g_aug.alg->gen(j).id);
        NcPoly lin = g_aug.diff[j].linear_part();
        for (const auto& [w, coeff] : lin.terms()) c.d.at(w.letters[0], j) = coeff;
    }
    // degree bookkeeping and d^2 = 0 as matrices
    for (GenId j = 0; j < n; ++j)
        for (GenId i = 0; i < n; ++i)
            if (c.d.at(i, j) != 0 && g_aug.alg->degree(i) != g_aug.alg->degree(j) - 1)
                throw Error(Error::Kind::validation, "linearized differential is not degree -1");
    Matrix sq = c.d * c.d;
    if (g_aug.ring().base == Field::Z2) sq = sq.mod2();
    if (!sq.is_zero())
        throw Error(Error::Kind::validation, "linearized differential does not square to zero");
    return c;
}

PoincarePolynomial lch(const LinearComplex& c) {
    if (c.alg->ring().base != Field::Z2)
        throw Error(Error::Kind::unsupported, "homology needs field coefficients (Z/2)");
    PoincarePolynomial out;
    std::map<int, bool> degrees;
    for (GenId g = 0; g < c.alg->size(); ++g) degrees[c.alg->degree(g)] = true;
    for (auto [deg, _] : degrees) {
        Matrix d_out = c.degree_block(deg);
        Matrix d_in = c.degree_block(deg + 1);
        std::size_t dim = c.basis_of_degree(deg).size();
        std::size_t rank_out = gf2::rank(d_out);
        std::size_t rank_in = gf2::rank(d_in);
        int h = static_cast<int>(dim - rank_out - rank_in);
        if (h < 0) throw Error(Error::Kind::validation, "negative homology rank (internal)");
        if (h > 0) out[deg] = h;
    }
    return out;
}

int euler_characteristic(const LinearComplex& c) {
    int chi = 0;
    for (GenId g = 0; g < c.alg->size(); ++g)
        chi += (c.alg->degree(g) % 2 == 0) ? 1 : -1;
    return chi;
}

GradedHomology::GradedHomology(const Matrix& d, const std::vector<int>& degrees, int diff_degree)
    : basis_degree_(degrees), diff_degree_(diff_degree) {
    std::size_t n = degrees.size();
    if (d.rows() != n || d.cols() != n) throw Error(Error::Kind::validation, "homology: dimension mismatch");
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < n; ++i) by_degree[degrees[i]].push_back(i);

    for (const auto& [deg, basis] : by_degree) {
        DegreeData dd;
        dd.basis = basis;
        // outgoing block: d restricted to this degree
        auto rows_of = [&](int target_deg) -> std::vector<std::size_t> {
            auto it = by_degree.find(target_deg);
            return it == by_degree.end() ? std::vector<std::size_t>{} : it->second;
        };
        std::vector<std::size_t> out_rows = rows_of(deg + diff_degree);
        Matrix block_out(out_rows.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < out_rows.size(); ++i) block_out.at(i, j) = d.at(out_rows[i], basis[j]);
        std::vector<Gf2Vec> cycles = gf2::kernel(block_out);

        // incoming image: d from degree (deg - diff_degree)
        std::vector<std::size_t> in_cols = rows_of(deg - diff_degree);
        std::vector<Gf2Vec> image;
        {
            Matrix block_in(basis.size(), in_cols.size());
            for (std::size_t j = 0; j < in_cols.size(); ++j)
                for (std::size_t i = 0; i < basis.size(); ++i) block_in.at(i, j) = d.at(basis[i], in_cols[j]);
            // column space basis via row reduction of the transpose
            std::vector<Gf2Vec> cols(in_cols.size(), Gf2Vec(basis.size(), 0));
            for (std::size_t j = 0; j < in_cols.size(); ++j)
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    Int v = block_in.at(i, j) % 2;
                    if (v < 0) v += 2;
                    cols[j][i] = static_cast<unsigned char>(v != 0);
                }
            gf2::rref(cols);
            for (auto& row : cols) {
                bool nonzero = false;
                for (auto b : row) nonzero = nonzero || b;
                if (nonzero) image.push_back(row);
            }
        }

        // choose cycle representatives independent modulo the image
        std::vector<Gf2Vec> pool = image;
        for (const auto& z : cycles) {
            std::vector<Gf2Vec> test = pool;
            test.push_back(z);
            auto piv = gf2::rref(test);
            if (piv.size() > pool.size()) {
                pool.push_back(z);
                Gf2Vec rep(n, 0);
                for (std::size_t i = 0; i < basis.size(); ++i) rep[basis[i]] = z[i];
                dd.reps.push_back(std::move(rep));
            }
        }
        dd.image_cols = image.size();
        dd.solve_mat = Matrix(basis.size(), image.size() + dd.reps.size());
        for (std::size_t j = 0; j < image.size(); ++j)
            for (std::size_t i = 0; i < basis.size(); ++i) dd.solve_mat.at(i, j) = image[j][i];
        for (std::size_t j = 0; j < dd.reps.size(); ++j)
            for (std::size_t i = 0; i < basis.size(); ++i)
                dd.solve_mat.at(i, image.size() + j) = dd.reps[j][basis[i]];
        degrees_.push_back(deg);
        data_.emplace(deg, std::move(dd));
    }
}

int GradedHomology::rank(int degree) const {
    auto it = data_.find(degree);
    return it == data_.end() ? 0 : static_cast<int>(it->second.reps.size());
}

const std::vector<Gf2Vec>& GradedHomology::representatives(int degree) const {
    static const std::vector<Gf2Vec> empty;
    auto it = data_.find(degree);
    return it == data_.end() ? empty : it->second.reps;
}

std::optional<Gf2Vec> GradedHomology::coords(int degree, const Gf2Vec& cycle) const {
    auto it = data_.find(degree);
    if (it == data_.end()) {
        for (auto b : cycle)
            if (b) return std::nullopt;
        return Gf2Vec{};
    }
    const DegreeData& dd = it->second;
    Gf2Vec local(dd.basis.size(), 0);
    // the cycle must be supported on this degree's basis
    std::vector<bool> in_basis(cycle.size(), false);
    for (std::size_t i = 0; i < dd.basis.size(); ++i) {
        local[i] = cycle[dd.basis[i]];
        in_basis[dd.basis[i]] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (cycle[i] && !in_basis[i]) return std::nullopt;
    auto sol = gf2::solve(dd.solve_mat, local);
    if (!sol) return std::nullopt;
    Gf2Vec coords(dd.reps.size(), 0);
    for (std::size_t j = 0; j < dd.reps.size(); ++j) coords[j] = (*sol)[dd.image_cols + j];
    return coords;
}

} // namespace legdga
