#include "doctest.h"

#include <cmath>

#include "gendirect/hybrid.hpp"

using namespace gendirect;

TEST_CASE("local search finds a 1-D parabola minimum") {
    UnitObjective f = [](const UnitPoint& x) { return (x[0] - 0.3) * (x[0] - 0.3); };
    HybridConfig cfg;
    LocalSearchResult r = local_search(f, {0.0}, std::nullopt, cfg);
    CHECK(std::abs(r.x[0] - 0.3) < 1e-6);
    CHECK(r.evals_used <= cfg.max_evaluations);
    CHECK(r.f <= (0.3 * 0.3) + 1e-12);
}

TEST_CASE("local search walks to an active bound") {
    UnitObjective f = [](const UnitPoint& x) { return x[0]; };
    LocalSearchResult r = local_search(f, {0.5}, std::nullopt, HybridConfig{});
    CHECK(r.x[0] < 1e-9);
}

TEST_CASE("zero budget returns the start point") {
    int calls = 0;
    UnitObjective f = [&calls](const UnitPoint& x) {
        ++calls;
        return x[0];
    };
    HybridConfig cfg;
    cfg.max_evaluations = 1;  // smallest positive budget allowed by validation
    LocalSearchResult r = local_search(f, {0.5}, std::nullopt, cfg);
    CHECK(r.x == UnitPoint{0.5});
    CHECK(r.evals_used <= 1);
    CHECK(calls <= 1);

    // a known start value costs nothing
    LocalSearchResult r2 = local_search(f, {0.5}, 0.5, cfg);
    CHECK(r2.evals_used <= 1);
}

TEST_CASE("local search never exceeds its budget and never regresses") {
    UnitObjective rosen = [](const UnitPoint& x) {
        double a = 10.0 * (x[1] - x[0] * x[0]);
        double b = 1.0 - x[0];
        return a * a + b * b;
    };
    for (int budget : {5, 20, 100, 1000}) {
        HybridConfig cfg;
        cfg.max_evaluations = budget;
        LocalSearchResult r = local_search(rosen, {0.2, 0.8}, std::nullopt, cfg);
        CHECK(r.evals_used <= budget);
        CHECK(r.f <= rosen({0.2, 0.8}) + 1e-12);
    }
}

TEST_CASE("solver names select a parameterization but all descend") {
    UnitObjective f = [](const UnitPoint& x) {
        return (x[0] - 0.61) * (x[0] - 0.61) + (x[1] - 0.37) * (x[1] - 0.37);
    };
    for (LocalSearchKind kind : kAllLocalSearchKinds) {
        HybridConfig cfg;
        cfg.local_search = kind;
        LocalSearchResult r = local_search(f, {0.1, 0.9}, std::nullopt, cfg);
        CHECK(r.f < 1e-8);
    }
}

TEST_CASE("cluster_points splits distant blobs and keeps their best points") {
    std::vector<UnitPoint> pts;
    std::vector<double> vals;
    // two tight blobs; values rise with the index inside each blob
    for (int i = 0; i < 5; ++i) {
        pts.push_back({0.1 + 0.001 * i, 0.1});
        vals.push_back(0.1 * i);
        pts.push_back({0.9 - 0.001 * i, 0.9});
        vals.push_back(0.05 * i);
    }
    auto reps = cluster_points(pts, vals);
    REQUIRE(reps.size() == 2);
    CHECK(((reps[0][0] < 0.5) != (reps[1][0] < 0.5)));

    SUBCASE("identical points collapse to one representative") {
        std::vector<UnitPoint> same(4, UnitPoint{0.5, 0.5});
        std::vector<double> v{1.0, 2.0, 3.0, 4.0};
        auto r = cluster_points(same, v);
        CHECK(r.size() == 1);
        CHECK(r[0] == UnitPoint{0.5, 0.5});
    }
    SUBCASE("single point is its own cluster") {
        auto r = cluster_points({UnitPoint{0.25}}, {1.0});
        CHECK(r.size() == 1);
    }
    SUBCASE("empty archive is an error") {
        CHECK_THROWS_AS(cluster_points({}, {}), std::invalid_argument);
    }
}

TEST_CASE("hybrid driver strategies") {
    UnitObjective f = [](const UnitPoint& x) {
        return (x[0] - 0.3) * (x[0] - 0.3) + (x[1] - 0.7) * (x[1] - 0.7);
    };
    auto no_cap = [](long long) { return false; };

    SUBCASE("off is the identity") {
        HybridDriver d({HybridStrategy::Off, LocalSearchKind::Sqp, 1000, 3000}, 2);
        double fmin = 1.0;
        UnitPoint xmin{0.0, 0.0};
        CHECK(d.step(f, true, {}, {}, 100, no_cap, std::nullopt, fmin, xmin) == 0);
        CHECK(fmin == 1.0);
    }

    SUBCASE("single fires only on improvement") {
        HybridDriver d({HybridStrategy::Single, LocalSearchKind::Sqp, 1000, 3000}, 2);
        double fmin = f({0.1, 0.1});
        UnitPoint xmin{0.1, 0.1};
        CHECK(d.step(f, false, {}, {}, 100, no_cap, std::nullopt, fmin, xmin) == 0);
        long long used = d.step(f, true, {}, {}, 100, no_cap, std::nullopt, fmin, xmin);
        CHECK(used > 0);
        CHECK(fmin < 1e-8);
    }

    SUBCASE("aggressive launches one search per distinct start") {
        HybridConfig cfg{HybridStrategy::Aggressive, LocalSearchKind::Sqp, 50, 60};
        HybridDriver d(cfg, 2);
        double fmin = 10.0;
        UnitPoint xmin{0.0, 0.0};
        std::vector<std::pair<UnitPoint, std::optional<double>>> starts{
            {{0.2, 0.2}, std::nullopt},
            {{0.2, 0.2}, std::nullopt},  // duplicate within 1e-6: skipped
            {{0.8, 0.8}, std::nullopt},
            {{0.5, 0.5}, std::nullopt},
        };
        long long used = d.step(f, false, starts, {}, 100, no_cap, std::nullopt, fmin, xmin);
        CHECK(used > 0);
        CHECK(used <= 3 * 60);
        CHECK(fmin < 1e-6);
    }

    SUBCASE("clustering waits for the evaluation threshold") {
        HybridDriver d({HybridStrategy::Clustering, LocalSearchKind::Sqp, 1000, 300}, 2);
        double fmin = 5.0;
        UnitPoint xmin{0.0, 0.0};
        std::vector<std::pair<UnitPoint, double>> archive{
            {{0.1, 0.1}, 1.0}, {{0.12, 0.1}, 1.5}, {{0.9, 0.9}, 0.5}, {{0.88, 0.9}, 0.6}};
        // below 100n+1 = 201: nothing happens
        CHECK(d.step(f, true, {}, archive, 200, no_cap, std::nullopt, fmin, xmin) == 0);
        // at the threshold: cluster representatives each get a local search
        long long used = d.step(f, true, {}, archive, 201, no_cap, std::nullopt, fmin, xmin);
        CHECK(used > 0);
        CHECK(fmin < 1e-6);
        // afterwards it behaves like Single
        double before = fmin;
        CHECK(d.step(f, false, {}, archive, 500, no_cap, std::nullopt, fmin, xmin) == 0);
        CHECK(fmin == before);
    }
}
