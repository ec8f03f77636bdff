#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "linkhom/laurent.hpp"

using namespace linkhom;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int dim, int max_terms = 4,
                        bool nonzero = false) {
    std::uniform_int_distribution<int> nterms(nonzero ? 1 : 0, max_terms);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> expo(-3, 3);
    LaurentPoly p(dim);
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        ExponentVec e(dim);
        for (int j = 0; j < dim; ++j) e[j] = expo(rng);
        p += LaurentPoly::monomial(dim, e, coeff(rng));
    }
    if (nonzero && p.is_zero()) p += LaurentPoly::constant(dim, 1);
    return p;
}

}  // namespace

TEST_CASE("arithmetic basics") {
    auto u = LaurentPoly::variable(1, 1);
    auto one = LaurentPoly::constant(1, 1);
    CHECK((u - one) * (u + one) == parse_poly("t^2 - 1"));
    auto f = parse_poly("2t^3 - t + 4");
    CHECK((f + (-f)).is_zero());
    CHECK(f - f == LaurentPoly::zero(1));

    // regrouped two-variable product: (2-u1) + u1*u2*(2*u1-1)
    auto lhs = parse_poly("2 - u1", 2) +
               parse_poly("u1*u2", 2) * parse_poly("2*u1 - 1", 2);
    CHECK(lhs == parse_poly("2 - u1 - u1*u2 + 2*u1^2*u2", 2));
    // which is the substitution u2 -> u1*u2 applied to 2 - u1 - u2 + 2*u1*u2
    auto sub = parse_poly("2 - u1 - u2 + 2*u1*u2").substitute(
        {{1, 0}, {1, 1}}, 2);
    CHECK(sub == lhs);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(parse_poly("u1 + u2") + parse_poly("t"), DimensionMismatch);
}

TEST_CASE("exact division") {
    CHECK(parse_poly("t^2 - 1").exact_div(parse_poly("t - 1")) ==
          parse_poly("t + 1"));
    auto f = parse_poly("2 - u1 - u2 + 2*u1*u2");
    CHECK(f.exact_div(f) == LaurentPoly::constant(2, 1));

    auto a = parse_poly("u1 - 1", 2);
    auto b = parse_poly("1 - u1", 2) * parse_poly("1 - u2", 2);
    CHECK((a * b).exact_div(a) * a == a * b);  // re-multiplication oracle

    CHECK_THROWS_AS(parse_poly("t^2 + 1").exact_div(parse_poly("t - 1")),
                    ExactDivisionError);
    CHECK_THROWS_AS(parse_poly("t").exact_div(LaurentPoly::zero(1)), Error);
}

TEST_CASE("exact division with monomial shifts") {
    // quotients may be genuine Laurent monomial multiples
    auto g = parse_poly("1 + u1*u2");
    auto f = g * parse_poly("u1", 2);
    auto h = g * parse_poly("u2", 2);
    auto q = f.exact_div(h);
    CHECK(q == parse_poly("u1*u2^-1"));
    CHECK(q * h == f);
    CHECK(parse_poly("u1^2", 2).exact_div(parse_poly("u1^3", 2)) ==
          parse_poly("u1^-1", 2));
}

TEST_CASE("evaluation") {
    auto f = parse_poly("t^2 - 3t + 1");
    CHECK(f.eval({{-1.0, 0.0}}).real() == Catch::Approx(5.0));
    CHECK(std::abs(parse_poly("u1 - 1").eval({{1.0, 0.0}})) < 1e-15);

    // value checked against direct complex arithmetic
    std::complex<double> zeta = std::polar(1.0, M_PI / 3.0);
    auto g = parse_poly("2 - u1 - u2 + 2*u1*u2");
    std::complex<double> expect =
        2.0 - 1.0 - zeta + 2.0 * zeta;  // = 1 + zeta
    CHECK(std::abs(g.eval({{1.0, 0.0}, zeta}) - expect) < 1e-14);
    CHECK(std::abs(expect - (1.0 + zeta)) < 1e-15);

    CHECK_THROWS(parse_poly("t^-1").eval({{0.0, 0.0}}));
}

TEST_CASE("canonical normalization") {
    // -u^-1 * (u^2 - u + 1)
    auto f = parse_poly("-t") + parse_poly("1") - parse_poly("t^-1");
    CHECK(f.normalize() == parse_poly("t^2 - t + 1"));

    auto g = parse_poly("u1^-1 + u2^-1 - 1 + u1 + u2");
    CHECK(g.normalize() ==
          parse_poly("u2 + u1 - u1*u2 + u1^2*u2 + u1*u2^2"));
    CHECK(LaurentPoly::zero(2).normalize().is_zero());
    CHECK(g.normalize().normalize() == g.normalize());
}

TEST_CASE("substitution") {
    auto f = parse_poly("u1 + u2 - 3*u1*u2");
    CHECK(f.substitute({{1, 0}, {0, 1}}, 2) == f);
    CHECK(parse_poly("u1 + u2").substitute({{1}, {3}}, 1) ==
          parse_poly("t + t^3"));
    CHECK_THROWS_AS(f.substitute({{1, 0}}, 2), DimensionMismatch);
}

TEST_CASE("univariate gcd") {
    CHECK(uni_gcd(parse_poly("t^2 - 1"), parse_poly("t^3 - 1")) ==
          parse_poly("t - 1").normalize());
    auto f = parse_poly("-2t^2 + 6t");
    CHECK(uni_gcd(f, LaurentPoly::zero(1)) == f.normalize());
    CHECK(uni_gcd(parse_poly("2t^2 - 2"), parse_poly("4t - 4")) ==
          parse_poly("2t - 2").normalize());
    CHECK_THROWS_AS(uni_gcd(parse_poly("u1 + u2"), parse_poly("u1", 2)),
                    DimensionMismatch);
}

TEST_CASE("uni_gcd against a naive divisor-check oracle") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        LaurentPoly a = random_poly(rng, 1, 3, true);
        LaurentPoly b = random_poly(rng, 1, 3, true);
        LaurentPoly c = random_poly(rng, 1, 2, true);
        LaurentPoly g = uni_gcd(a * c, b * c);
        // c divides the gcd; gcd divides both products
        CHECK_NOTHROW(g.exact_div(c.normalize() * LaurentPoly::constant(1, 1)));
        CHECK_NOTHROW((a * c).exact_div(g));
        CHECK_NOTHROW((b * c).exact_div(g));
    }
}

TEST_CASE("property: normalize constant on unit orbits") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> expo(-4, 4);
    std::uniform_int_distribution<int> signd(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        LaurentPoly f = random_poly(rng, dim);
        ExponentVec e(dim);
        for (int j = 0; j < dim; ++j) e[j] = expo(rng);
        LaurentPoly unit =
            LaurentPoly::monomial(dim, e, signd(rng) ? 1 : -1);
        CHECK((unit * f).normalize() == f.normalize());
    }
}

TEST_CASE("property: division undoes multiplication") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int dim = 1 + static_cast<int>(trial % 2);
        LaurentPoly f = random_poly(rng, dim, 4, true);
        LaurentPoly g = random_poly(rng, dim, 4, true);
        CHECK((f * g).exact_div(g) == f);
    }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 100; ++trial) {
        int dim = 1 + static_cast<int>(trial % 2);
        LaurentPoly f = random_poly(rng, dim);
        LaurentPoly g = random_poly(rng, dim);
        std::vector<Complex> p(dim);
        for (int j = 0; j < dim; ++j) p[j] = std::polar(1.0, angle(rng));
        Complex lhs = (f * g).eval(p);
        Complex rhs = f.eval(p) * g.eval(p);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("property: substitution composes") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> expo(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        LaurentPoly f = random_poly(rng, 2);
        // sigma: 2 vars -> 2 vars, tau: 2 vars -> 1 var
        std::vector<ExponentVec> sigma = {{expo(rng), expo(rng)},
                                          {expo(rng), expo(rng)}};
        std::vector<ExponentVec> tau = {{expo(rng)}, {expo(rng)}};
        std::vector<ExponentVec> comp(2, ExponentVec(1));
        for (int i = 0; i < 2; ++i)
            comp[i][0] = sigma[i][0] * tau[0][0] + sigma[i][1] * tau[1][0];
        CHECK(f.substitute(sigma, 2).substitute(tau, 1) ==
              f.substitute(comp, 1));
    }
}

TEST_CASE("text grammar round-trips") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 80; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        LaurentPoly f = random_poly(rng, dim, 5);
        if (f.is_zero()) continue;
        CHECK(parse_poly(f.to_string(), dim) == f);
    }
    CHECK(parse_poly("u1 + u2 - 1 + u1^-1 + u2^-1").dim() == 2);
    CHECK(parse_poly("t^2-3t+1") == parse_poly("u1^2 - 3*u1 + 1"));
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("u"), ParseError);
    CHECK_THROWS_AS(parse_poly("3 +"), ParseError);
    CHECK_THROWS_AS(parse_poly("u1 + u3", 2), DimensionMismatch);
}

TEST_CASE("content") {
    CHECK(parse_poly("2t^2 - 4t + 6").content() == 2);
    CHECK(parse_poly("t").content() == 1);
    CHECK(LaurentPoly::zero(1).content() == 0);
}
