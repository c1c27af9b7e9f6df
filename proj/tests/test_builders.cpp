#include "sigma/builders.hpp"
#include "sigma/io.hpp"
#include "sigma/snf.hpp"

#include "support/random_complex.hpp"

#include <doctest.h>

#include <cstdio>

using namespace sigma;

namespace {

GroupRingElem t_pow(long long e, long long c = 1) {
    return GroupRingElem::term1(RingSpec::Z(), e, Rat(c));
}

}  // namespace

TEST_CASE("presentation complexes: circle, bs12, trefoil") {
    auto circle = builtin_complex("circle");
    CHECK(circle.ranks() == std::vector<int>{1, 1});
    CHECK(circle.boundary(1).entry(0, 0) == t_pow(1) - t_pow(0));

    // Fox oracle for BS(1,2): dr/da = t - tat^-1(1+a) -> t - 2,
    //                         dr/dt = 1 - tat^-1 -> 0
    auto bs = builtin_complex("bs12");
    CHECK(bs.ranks() == std::vector<int>{1, 2, 1});
    CHECK(bs.boundary(1).entry(0, 0).is_zero());
    CHECK(bs.boundary(1).entry(0, 1) == t_pow(1) - t_pow(0));
    CHECK(bs.boundary(2).entry(0, 0) == t_pow(1) - t_pow(0, 2));
    CHECK(bs.boundary(2).entry(1, 0).is_zero());

    // trefoil: dr/dx -> 1 - t + t^2, dr/dy -> -(1 - t + t^2)
    auto tre = builtin_complex("trefoil");
    GroupRingElem alex = t_pow(2) - t_pow(1) + t_pow(0);
    CHECK(tre.boundary(2).entry(0, 0) == alex);
    CHECK(tre.boundary(2).entry(1, 0) == -alex);
}

TEST_CASE("word parsing") {
    std::vector<std::string> gens = {"a", "t"};
    auto w = parse_word("tat^-1a^-2", gens);
    std::vector<std::pair<int, int>> expect = {{1, 1}, {0, 1}, {1, -1}, {0, -1}, {0, -1}};
    CHECK(w == expect);
    // free reduction
    CHECK(parse_word("a a^-1 t", gens) == std::vector<std::pair<int, int>>{{1, 1}});
    CHECK_THROWS_AS(parse_word("zb", gens), SchemaError);

    // relator that does not die in the abelian quotient is rejected
    PresentationInput p;
    p.generators = {"x"};
    p.relators = {"x"};
    p.abelianization["x"] = {1};
    p.deck_rank = 1;
    CHECK_THROWS_AS(presentation_complex(p), SchemaError);

    // assignment must generate a finite-index sublattice
    PresentationInput q;
    q.generators = {"x"};
    q.abelianization["x"] = {0, 1};
    q.deck_rank = 2;
    CHECK_THROWS_AS(presentation_complex(q), SchemaError);
}

TEST_CASE("fox boundaries compose to zero on random presentations") {
    testing::Rng rng(19);
    std::vector<std::string> gens = {"x", "y"};
    for (int it = 0; it < 60; ++it) {
        // random commutator-like relator w = u v u^-1 v^-1 dies abelianized
        auto rand_word = [&](int len) {
            std::string s;
            for (int i = 0; i < len; ++i) {
                s += gens[static_cast<size_t>(rng.uniform(0, 1))];
                if (rng.uniform(0, 1)) s += "^-1";
            }
            return s;
        };
        std::string u = rand_word(rng.uniform(1, 3)), v = rand_word(rng.uniform(1, 3));
        auto inv = [&](const std::string& w) {
            auto letters = parse_word(w, gens);
            std::string s;
            for (auto it2 = letters.rbegin(); it2 != letters.rend(); ++it2) {
                s += gens[static_cast<size_t>(it2->first)];
                if (it2->second > 0) s += "^-1";
            }
            return s;
        };
        PresentationInput p;
        p.generators = gens;
        p.relators = {u + v + inv(u) + inv(v)};
        p.abelianization["x"] = {1, 0};
        p.abelianization["y"] = {0, 1};
        p.deck_rank = 2;
        auto c = presentation_complex(p);
        CHECK(validate(c).ok);
    }
}

TEST_CASE("mapping torus of a point is the circle") {
    BasedFreeComplex point(RingSpec::Z(), 1, {1});
    auto f = ChainMap::identity(std::make_shared<BasedFreeComplex>(point));
    auto mt = mapping_torus(point, f);
    CHECK(mt.ranks() == std::vector<int>{1, 1});
    CHECK(mt.boundary(1).entry(0, 0) == t_pow(1) - t_pow(0));
}

TEST_CASE("mapping torus of the degree-2 circle map matches bs12 homology") {
    // circle as a Z-complex: 0 -> Z -0-> Z
    BasedFreeComplex s1(RingSpec::Z(), 1, {1, 1});
    auto s1p = std::make_shared<BasedFreeComplex>(s1);
    ChainMap f = ChainMap::identity(s1p);
    f.at(1).set(0, 0, t_pow(0, 2));  // degree two on the edge
    auto mt = mapping_torus(s1, f);
    CHECK(validate(mt).ok);
    CHECK(mt.dim() == 2);

    auto factors = [](const BasedFreeComplex& c) {
        auto hq = homology_lambda(tensor_coefficients(c, RingSpec::Q()));
        std::vector<std::string> out;
        for (const auto& h : hq) {
            std::string s = "deg" + std::to_string(h.degree) + ":" + std::to_string(h.free_rank);
            for (const auto& fct : h.factors) s += "|" + fct.str();
            out.push_back(s);
        }
        return out;
    };
    CHECK(factors(mt) == factors(builtin_complex("bs12")));
}

TEST_CASE("builtin wedge-s1-s2") {
    auto w = builtin_complex("wedge-s1-s2");
    CHECK(w.ranks() == std::vector<int>{1, 1, 1});
    CHECK(w.boundary(2).is_zero());
    CHECK(w.boundary(1).entry(0, 0) == t_pow(1) - t_pow(0));
    CHECK_THROWS_AS(builtin_complex("nope"), SchemaError);
}

TEST_CASE("json round trip is the identity, bit-exactly") {
    for (const auto& name : builtin_names()) {
        auto c = builtin_complex(name);
        std::string path = std::string("/tmp/sigma_io_") + name + ".json";
        to_file(c, path);
        auto c2 = from_file(path);
        CHECK(c2 == c);
        std::string path2 = path + ".again";
        to_file(c2, path2);
        // byte-identical re-serialization
        auto slurp = [](const std::string& p) {
            FILE* f = fopen(p.c_str(), "rb");
            REQUIRE(f);
            std::string s;
            char buf[4096];
            size_t n;
            while ((n = fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
            fclose(f);
            return s;
        };
        CHECK(slurp(path) == slurp(path2));
        std::remove(path.c_str());
        std::remove(path2.c_str());
    }
}

TEST_CASE("shipped complex files load to the builtins") {
    for (const auto& name : builtin_names()) {
        std::string path = std::string(SIGMA_SOURCE_DIR) + "/data/complexes/" + name + ".json";
        auto c = from_file(path);
        CHECK(c == builtin_complex(name));
    }
}

TEST_CASE("schema violations are rejected with locations") {
    // matrix dimension mismatch
    nlohmann::json j;
    j["ring"] = {{"coefficients", "Z"}, {"deck_rank", 1}};
    j["ranks"] = {1, 1};
    j["boundaries"] = nlohmann::json::array();
    nlohmann::json b;
    b["degree"] = 1;
    b["entries"] = nlohmann::json::array();
    nlohmann::json e;
    e["row"] = 5;
    e["col"] = 0;
    e["terms"] = nlohmann::json::array({nlohmann::json::array({nlohmann::json::array({1}), 1})});
    b["entries"].push_back(e);
    j["boundaries"].push_back(b);
    CHECK_THROWS_AS(complex_from_json(j), SchemaError);

    // dd != 0 named with degree and entry
    nlohmann::json bad;
    bad["ring"] = {{"coefficients", "Z"}, {"deck_rank", 1}};
    bad["ranks"] = {1, 2, 1};
    auto term = [](long long e2, long long c) {
        return nlohmann::json::array({nlohmann::json::array({e2}), c});
    };
    nlohmann::json b1, b2;
    b1["degree"] = 1;
    b1["entries"] = nlohmann::json::array();
    {
        nlohmann::json e1;
        e1["row"] = 0;
        e1["col"] = 0;
        e1["terms"] = nlohmann::json::array({term(0, 1)});
        b1["entries"].push_back(e1);
        nlohmann::json e2;
        e2["row"] = 0;
        e2["col"] = 1;
        e2["terms"] = nlohmann::json::array({term(1, 1), term(0, -1)});
        b1["entries"].push_back(e2);
    }
    b2["degree"] = 2;
    b2["entries"] = nlohmann::json::array();
    {
        nlohmann::json e1;
        e1["row"] = 0;
        e1["col"] = 0;
        e1["terms"] = nlohmann::json::array({term(1, 1), term(0, -2)});
        b2["entries"].push_back(e1);
    }
    bad["boundaries"] = nlohmann::json::array({b1, b2});
    try {
        complex_from_json(bad);
        CHECK(false);
    } catch (const SchemaError& err) {
        CHECK(std::string(err.what()).find("degree 1") != std::string::npos);
    }
}

TEST_CASE("big integers become decimal strings") {
    BasedFreeComplex c(RingSpec::Z(), 1, {1, 1});
    GrMatrix d1(RingSpec::Z(), 1, 1, 1);
    Rat big = Rat(Int("123456789123456789123456789123456789"));
    GroupRingElem x(RingSpec::Z(), 1);
    x.add_term({0}, big);
    d1.set(0, 0, x);
    c.set_boundary(1, d1);
    auto j = complex_to_json(c);
    CHECK(j["boundaries"][0]["entries"][0]["terms"][0][1].is_string());
    auto c2 = complex_from_json(j);
    CHECK(c2 == c);
}
