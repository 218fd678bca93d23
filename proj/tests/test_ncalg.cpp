#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "legdga/ncalg.hpp"

using namespace legdga;

namespace {

AlgebraPtr z2_algebra(std::vector<Generator> gens, TMode t = TMode::collapsed) {
    return Algebra::make(CoeffRing{Field::Z2, t, 0}, std::move(gens));
}

AlgebraPtr z_algebra(std::vector<Generator> gens, TMode t = TMode::collapsed) {
    return Algebra::make(CoeffRing{Field::Z, t, 0}, std::move(gens));
}

NcPoly random_poly(const AlgebraPtr& alg, std::mt19937& rng, int max_terms = 4, int max_len = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<GenId> letter(0, static_cast<GenId>(alg->size() - 1));
    NcPoly p(alg);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Word w;
        int l = len(rng);
        for (int j = 0; j < l; ++j) w.letters.push_back(letter(rng));
        p.add_term(std::move(w), coeff(rng));
    }
    return p;
}

// random homogeneous polynomial of the given degree built from generator words
NcPoly random_homogeneous(const AlgebraPtr& alg, std::mt19937& rng, int degree, int tries = 40) {
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<GenId> letter(0, static_cast<GenId>(alg->size() - 1));
    NcPoly p(alg);
    for (int i = 0; i < tries; ++i) {
        Word w;
        int l = len(rng);
        int d = 0;
        for (int j = 0; j < l; ++j) {
            GenId g = letter(rng);
            w.letters.push_back(g);
            d += alg->degree(g);
        }
        if (d == degree) p.add_term(std::move(w), 1);
        if (p.terms().size() >= 3) break;
    }
    return p;
}

} // namespace

TEST_CASE("product basics") {
    auto alg = z2_algebra({{"a", 1}, {"b1", 0}, {"b3", 0}});
    auto a = NcPoly::generator(alg, "a");
    auto b1 = NcPoly::generator(alg, "b1");
    auto b3 = NcPoly::generator(alg, "b3");
    auto one = NcPoly::unit(alg);

    // concatenation
    NcPoly ab = a * b1;
    REQUIRE(ab.terms().size() == 1);
    CHECK(ab.terms().begin()->first.letters == std::vector<GenId>{0, 1});

    // distributivity
    NcPoly lhs = (one + b1) * (one + b3);
    NcPoly rhs = one + b1 + b3 + b1 * b3;
    CHECK(lhs == rhs);

    // char 2: cross terms cancel
    NcPoly sq = (one + a) * (one + a);
    CHECK(sq == one + a * a);
}

TEST_CASE("ring mismatch is a typed error") {
    auto alg1 = z2_algebra({{"a", 1}});
    auto alg2 = z2_algebra({{"b", 1}});
    auto p = NcPoly::generator(alg1, "a");
    auto q = NcPoly::generator(alg2, "b");
    CHECK_THROWS_AS(p * q, Error);
}

TEST_CASE("grading") {
    auto alg = z2_algebra({{"a1", 1}, {"a2", 1}, {"b1", 0}, {"b2", 0}, {"b3", 0}});
    CHECK(word_degree(*alg, Word{}) == 0);
    CHECK(word_degree(*alg, Word{{0, 1}, 0}) == 2);
    CHECK(word_degree(*alg, Word{{2, 3, 4}, 0}) == 0);

    NcPoly mixed = NcPoly::generator(alg, "a1") + NcPoly::generator(alg, "b1");
    CHECK(mixed.grade().kind == GradeKind::mixed);
    NcPoly hom = NcPoly::generator(alg, "a1") + NcPoly::generator(alg, "a2");
    CHECK(hom.grade().kind == GradeKind::homogeneous);
    CHECK(hom.grade().degree == 1);
    CHECK(NcPoly::zero(alg).grade().kind == GradeKind::zero);

    CHECK_THROWS_AS(alg->require("nope"), Error);
}

TEST_CASE("derivation Leibniz expansion") {
    auto alg = z_algebra({{"c1", 1}, {"c2", 1}, {"u", 0}, {"v", 0}});
    auto u = NcPoly::generator(alg, "u");
    auto v = NcPoly::generator(alg, "v");
    std::vector<NcPoly> images = {u, v, NcPoly::zero(alg), NcPoly::zero(alg)};
    AlgebraDerivation d(alg, images);

    CHECK(d.apply(NcPoly::unit(alg)).is_zero());

    // D(c1 c2) = u c2 - c1 v for |c1| = 1
    auto c1 = NcPoly::generator(alg, "c1");
    auto c2 = NcPoly::generator(alg, "c2");
    NcPoly expect = u * c2 - c1 * v;
    CHECK(d.apply(c1 * c2) == expect);

    // three-letter signed expansion
    NcPoly w = c1 * c2 * c1;
    NcPoly manual = u * c2 * c1 - c1 * v * c1 + c1 * c2 * u;
    CHECK(d.apply(w) == manual);
}

TEST_CASE("derivation signed Leibniz on random homogeneous inputs") {
    auto alg = z_algebra({{"x", 1}, {"y", 0}, {"z", 2}, {"w", -1}});
    std::mt19937 rng(7);
    std::vector<NcPoly> images;
    for (GenId g = 0; g < alg->size(); ++g) images.push_back(random_poly(alg, rng, 2, 2));
    AlgebraDerivation d(alg, images);
    for (int trial = 0; trial < 50; ++trial) {
        int deg_p = static_cast<int>(rng() % 5) - 2;
        NcPoly p = random_homogeneous(alg, rng, deg_p);
        NcPoly q = random_poly(alg, rng);
        if (p.is_zero()) continue;
        NcPoly lhs = d.apply(p * q);
        NcPoly sign_term = d.apply(q);
        NcPoly rhs = d.apply(p) * q;
        NcPoly pq = p * sign_term;
        if (((deg_p % 2) + 2) % 2 == 1) rhs -= pq;
        else rhs += pq;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("homomorphism is unital and multiplicative") {
    auto alg = z2_algebra({{"c1", 0}, {"c2", 0}});
    auto c1 = NcPoly::generator(alg, "c1");
    auto c2 = NcPoly::generator(alg, "c2");
    std::vector<NcPoly> images = {c1 + NcPoly::unit(alg), c2 * c1};
    AlgebraHom h(alg, alg, images, NcPoly::t(alg));

    CHECK(h.apply(NcPoly::unit(alg)) == NcPoly::unit(alg));
    CHECK(h.apply(c1 * c2) == h.apply(c1) * h.apply(c2));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        NcPoly p = random_poly(alg, rng);
        NcPoly q = random_poly(alg, rng);
        CHECK(h.apply(p * q) == h.apply(p) * h.apply(q));
    }
}

TEST_CASE("tame-style substitution over Z and Z/2") {
    // c -> c + 1: over Z, c^2 -> c^2 + 2c + 1; over Z/2, c^2 + 1
    auto algz = z_algebra({{"c", 0}});
    auto c = NcPoly::generator(algz, "c");
    AlgebraHom h(algz, algz, {c + NcPoly::unit(algz)}, NcPoly::t(algz));
    NcPoly expect = c * c + c * Int(2) + NcPoly::unit(algz);
    CHECK(h.apply(c * c) == expect);

    auto alg2 = z2_algebra({{"c", 0}});
    auto c2 = NcPoly::generator(alg2, "c");
    AlgebraHom h2(alg2, alg2, {c2 + NcPoly::unit(alg2)}, NcPoly::t(alg2));
    CHECK(h2.apply(c2 * c2) == c2 * c2 + NcPoly::unit(alg2));
}

TEST_CASE("linear and length parts") {
    auto alg = z2_algebra({{"b1", 0}, {"b2", 0}, {"b3", 0}});
    auto b1 = NcPoly::generator(alg, "b1");
    auto b2 = NcPoly::generator(alg, "b2");
    auto b3 = NcPoly::generator(alg, "b3");
    NcPoly p = NcPoly::unit(alg) + b1 + b1 * b2 * b3;

    CHECK(p.linear_part() == b1);
    CHECK(NcPoly::zero(alg).linear_part().is_zero());
    CHECK(p.length_part(3) == b1 * b2 * b3);
    CHECK(p.length_part(0) == NcPoly::unit(alg));

    // linear_part is idempotent; length parts partition the polynomial
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        NcPoly q = random_poly(alg, rng, 6, 5);
        CHECK(q.linear_part().linear_part() == q.linear_part());
        NcPoly sum(alg);
        for (std::size_t k = 0; k <= q.max_word_length(); ++k) sum += q.length_part(k);
        CHECK(sum == q);
    }

    // 3c + c^2 over Z keeps only 3c
    auto algz = z_algebra({{"c", 0}});
    auto cz = NcPoly::generator(algz, "c");
    NcPoly r = cz * Int(3) + cz * cz;
    CHECK(r.linear_part() == cz * Int(3));
}

TEST_CASE("degree bookkeeping of derivations") {
    // if D maps generators to degree |c| - 1, then D drops word degree by 1
    auto alg = z_algebra({{"x", 2}, {"y", 1}, {"z", 0}});
    auto y = NcPoly::generator(alg, "y");
    auto z = NcPoly::generator(alg, "z");
    std::vector<NcPoly> images = {y * z + y, z * z, NcPoly::zero(alg)};
    AlgebraDerivation d(alg, images);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        for (int deg = 0; deg <= 4; ++deg) {
            NcPoly p = random_homogeneous(alg, rng, deg);
            if (p.is_zero()) continue;
            NcPoly dp = d.apply(p);
            if (dp.is_zero()) continue;
            CHECK(dp.grade().kind == GradeKind::homogeneous);
            CHECK(dp.grade().degree == deg - 1);
        }
    }
}

TEST_CASE("t handling modes") {
    // laurent keeps exact powers
    auto laur = z2_algebra({{"a", 1}}, TMode::laurent);
    NcPoly p = NcPoly::t(laur, 2) + NcPoly::t(laur, -1);
    CHECK(p.terms().size() == 2);

    // collapsed sets t = 1
    auto coll = z2_algebra({{"a", 1}}, TMode::collapsed);
    NcPoly q = NcPoly::t(coll, 5);
    CHECK(q == NcPoly::unit(coll));

    // sign mode folds t into the sign over Z
    auto sign = z_algebra({{"a", 1}}, TMode::sign);
    CHECK(NcPoly::t(sign, 1) == NcPoly::constant(sign, -1));
    CHECK(NcPoly::t(sign, 2) == NcPoly::unit(sign));

    // unit inversion
    CHECK(invert_unit(NcPoly::t(laur, 3)) == NcPoly::t(laur, -3));
    CHECK_THROWS_AS(invert_unit(NcPoly::generator(laur, "a")), Error);
}

TEST_CASE("canonical term order is degree, length, lex") {
    auto alg = z_algebra({{"a", 2}, {"b", 0}});
    NcPoly p = NcPoly::generator(alg, "a") + NcPoly::generator(alg, "b") +
               NcPoly::generator(alg, "b") * NcPoly::generator(alg, "b") + NcPoly::unit(alg);
    std::vector<std::size_t> lengths;
    std::vector<int> degrees;
    for (const auto& [w, c] : p.terms()) {
        lengths.push_back(w.length());
        degrees.push_back(word_degree(*alg, w));
    }
    CHECK(degrees == std::vector<int>{0, 0, 0, 2});
    CHECK(lengths == std::vector<std::size_t>{0, 1, 2, 1});
}
