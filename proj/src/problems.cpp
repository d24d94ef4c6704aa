#include "gendirect/problems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace gendirect {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

using Vec = std::vector<double>;

struct Entry {
    const char* name;
    int default_n;
    bool scalable, separable, multimodal;
    double lo, hi;                       // uniform bounds (0 marks per-problem bounds)
    std::function<double(const Vec&)> f;
    std::function<double(int)> fstar;    // n -> f*
    std::function<Vec(int)> xstar;       // n -> x*
};

double sq(double v) { return v * v; }

// Per-dimension optima frozen from high-precision refinement.
constexpr double kSchwefelX = 420.96874635998202731;
constexpr double kSchwefelF = -418.98288727243370627;
constexpr double kStybX = -2.9035340277711770951;
constexpr double kStybF = -39.166165703771415464;

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = [] {
        std::vector<Entry> r;

        r.push_back({"Sphere", 2, true, true, false, -5.12, 5.12,
                     [](const Vec& x) {
                         double s = 0;
                         for (double v : x) s += v * v;
                         return s;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 0.0); }});

        r.push_back({"Rosenbrock", 2, true, false, false, -2.048, 2.048,
                     [](const Vec& x) {
                         double s = 0;
                         for (std::size_t i = 0; i + 1 < x.size(); ++i)
                             s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(1.0 - x[i]);
                         return s;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 1.0); }});

        r.push_back({"Rastrigin", 2, true, true, true, -5.12, 5.12,
                     [](const Vec& x) {
                         double s = 10.0 * static_cast<double>(x.size());
                         for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v);
                         return s;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 0.0); }});

        r.push_back({"Ackley", 2, true, false, true, -32.768, 32.768,
                     [](const Vec& x) {
                         double n = static_cast<double>(x.size());
                         double s2 = 0, sc = 0;
                         for (double v : x) {
                             s2 += v * v;
                             sc += std::cos(2.0 * kPi * v);
                         }
                         return -20.0 * std::exp(-0.2 * std::sqrt(s2 / n)) - std::exp(sc / n) +
                                20.0 + kE;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 0.0); }});

        r.push_back({"Griewank", 2, true, false, true, -600.0, 600.0,
                     [](const Vec& x) {
                         double s = 0, p = 1;
                         for (std::size_t i = 0; i < x.size(); ++i) {
                             s += x[i] * x[i] / 4000.0;
                             p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
                         }
                         return s - p + 1.0;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 0.0); }});

        r.push_back({"Levy", 2, true, false, true, -10.0, 10.0,
                     [](const Vec& x) {
                         auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
                         std::size_t n = x.size();
                         double s = sq(std::sin(kPi * w(0)));
                         for (std::size_t i = 0; i + 1 < n; ++i)
                             s += sq(w(i) - 1.0) * (1.0 + 10.0 * sq(std::sin(kPi * w(i) + 1.0)));
                         s += sq(w(n - 1) - 1.0) * (1.0 + sq(std::sin(2.0 * kPi * w(n - 1))));
                         return s;
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 1.0); }});

        r.push_back({"Zakharov", 2, true, false, false, -5.0, 10.0,
                     [](const Vec& x) {
                         double s1 = 0, s2 = 0;
                         for (std::size_t i = 0; i < x.size(); ++i) {
                             s1 += x[i] * x[i];
                             s2 += 0.5 * static_cast<double>(i + 1) * x[i];
                         }
                         return s1 + sq(s2) + sq(sq(s2));
                     },
                     [](int) { return 0.0; }, [](int n) { return Vec(n, 0.0); }});

        r.push_back({"StyblinskiTang", 2, true, true, true, -5.0, 5.0,
                     [](const Vec& x) {
                         double s = 0;
                         for (double v : x) s += v * v * v * v - 16.0 * v * v + 5.0 * v;
                         return 0.5 * s;
                     },
                     [](int n) { return kStybF * n; }, [](int n) { return Vec(n, kStybX); }});

        r.push_back({"Schwefel", 2, true, true, true, -500.0, 500.0,
                     [](const Vec& x) {
                         double s = 0;
                         for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
                         return s;
                     },
                     [](int n) { return kSchwefelF * n; }, [](int n) { return Vec(n, kSchwefelX); }});

        r.push_back({"Branin", 2, false, false, true, 0.0, 0.0,
                     [](const Vec& x) {
                         double b = 5.1 / (4.0 * kPi * kPi), c = 5.0 / kPi, t = 1.0 / (8.0 * kPi);
                         return sq(x[1] - b * x[0] * x[0] + c * x[0] - 6.0) +
                                10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
                     },
                     [](int) { return 5.0 / (4.0 * kPi); }, [](int) { return Vec{kPi, 2.275}; }});

        r.push_back({"SixHumpCamel", 2, false, false, true, 0.0, 0.0,
                     [](const Vec& x) {
                         return (4.0 - 2.1 * sq(x[0]) + sq(sq(x[0])) / 3.0) * sq(x[0]) +
                                x[0] * x[1] + (-4.0 + 4.0 * sq(x[1])) * sq(x[1]);
                     },
                     [](int) { return -1.0316284534898773504; },
                     [](int) { return Vec{0.089842013100318062, -0.71265640302073963}; }});

        r.push_back({"GoldsteinPrice", 2, false, false, true, -2.0, 2.0,
                     [](const Vec& x) {
                         double a = 1.0 + sq(x[0] + x[1] + 1.0) *
                                              (19.0 - 14.0 * x[0] + 3.0 * sq(x[0]) - 14.0 * x[1] +
                                               6.0 * x[0] * x[1] + 3.0 * sq(x[1]));
                         double b = 30.0 + sq(2.0 * x[0] - 3.0 * x[1]) *
                                               (18.0 - 32.0 * x[0] + 12.0 * sq(x[0]) + 48.0 * x[1] -
                                                36.0 * x[0] * x[1] + 27.0 * sq(x[1]));
                         return a * b;
                     },
                     [](int) { return 3.0; }, [](int) { return Vec{0.0, -1.0}; }});

        r.push_back({"Easom", 2, false, false, true, -100.0, 100.0,
                     [](const Vec& x) {
                         return -std::cos(x[0]) * std::cos(x[1]) *
                                std::exp(-(sq(x[0] - kPi) + sq(x[1] - kPi)));
                     },
                     [](int) { return -1.0; }, [](int) { return Vec{kPi, kPi}; }});

        r.push_back({"Booth", 2, false, false, false, -10.0, 10.0,
                     [](const Vec& x) {
                         return sq(x[0] + 2.0 * x[1] - 7.0) + sq(2.0 * x[0] + x[1] - 5.0);
                     },
                     [](int) { return 0.0; }, [](int) { return Vec{1.0, 3.0}; }});

        r.push_back({"Matyas", 2, false, false, false, -10.0, 10.0,
                     [](const Vec& x) {
                         return 0.26 * (sq(x[0]) + sq(x[1])) - 0.48 * x[0] * x[1];
                     },
                     [](int) { return 0.0; }, [](int) { return Vec{0.0, 0.0}; }});

        r.push_back({"Michalewicz", 2, false, true, true, 0.0, kPi,
                     [](const Vec& x) {
                         double s = 0;
                         for (std::size_t i = 0; i < x.size(); ++i) {
                             double si = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / kPi);
                             s -= std::sin(x[i]) * std::pow(si, 20.0);
                         }
                         return s;
                     },
                     [](int) { return -1.8013034100985525327; },
                     [](int) { return Vec{2.2029055201726093461, 1.5707963267948966192}; }});

        r.push_back({"Bohachevsky", 2, false, true, true, -100.0, 100.0,
                     [](const Vec& x) {
                         return sq(x[0]) + 2.0 * sq(x[1]) - 0.3 * std::cos(3.0 * kPi * x[0]) -
                                0.4 * std::cos(4.0 * kPi * x[1]) + 0.7;
                     },
                     [](int) { return 0.0; }, [](int) { return Vec{0.0, 0.0}; }});

        r.push_back({"ThreeHumpCamel", 2, false, false, true, -5.0, 5.0,
                     [](const Vec& x) {
                         return 2.0 * sq(x[0]) - 1.05 * sq(sq(x[0])) +
                                sq(x[0]) * sq(sq(x[0])) / 6.0 + x[0] * x[1] + sq(x[1]);
                     },
                     [](int) { return 0.0; }, [](int) { return Vec{0.0, 0.0}; }});

        r.push_back({"Beale", 2, false, false, false, -4.5, 4.5,
                     [](const Vec& x) {
                         return sq(1.5 - x[0] + x[0] * x[1]) + sq(2.25 - x[0] + x[0] * sq(x[1])) +
                                sq(2.625 - x[0] + x[0] * x[1] * sq(x[1]));
                     },
                     [](int) { return 0.0; }, [](int) { return Vec{3.0, 0.5}; }});

        r.push_back({"DropWave", 2, false, false, true, -5.12, 5.12,
                     [](const Vec& x) {
                         double r2 = sq(x[0]) + sq(x[1]);
                         return -(1.0 + std::cos(12.0 * std::sqrt(r2))) / (0.5 * r2 + 2.0);
                     },
                     [](int) { return -1.0; }, [](int) { return Vec{0.0, 0.0}; }});

        r.push_back({"Shekel5", 4, false, false, true, 0.0, 10.0,
                     [](const Vec& x) {
                         static const double C[4][5] = {{4, 1, 8, 6, 3},
                                                        {4, 1, 8, 6, 7},
                                                        {4, 1, 8, 6, 3},
                                                        {4, 1, 8, 6, 7}};
                         static const double beta[5] = {0.1, 0.2, 0.2, 0.4, 0.4};
                         double s = 0;
                         for (int i = 0; i < 5; ++i) {
                             double d = beta[i];
                             for (int j = 0; j < 4; ++j) d += sq(x[j] - C[j][i]);
                             s -= 1.0 / d;
                         }
                         return s;
                     },
                     [](int) { return -10.153199679058227457; },
                     [](int) {
                         return Vec{4.0000371528196762307, 4.00013327659156009,
                                    4.0000371528196762307, 4.00013327659156009};
                     }});

        r.push_back({"Hartman3", 3, false, false, true, 0.0, 1.0,
                     [](const Vec& x) {
                         static const double A[4][3] = {
                             {3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
                         static const double c[4] = {1, 1.2, 3, 3.2};
                         static const double P[4][3] = {{0.3689, 0.1170, 0.2673},
                                                        {0.4699, 0.4387, 0.7470},
                                                        {0.1091, 0.8732, 0.5547},
                                                        {0.0381, 0.5743, 0.8828}};
                         double s = 0;
                         for (int i = 0; i < 4; ++i) {
                             double e = 0;
                             for (int j = 0; j < 3; ++j) e += A[i][j] * sq(x[j] - P[i][j]);
                             s -= c[i] * std::exp(-e);
                         }
                         return s;
                     },
                     [](int) { return -3.8627797873326625228; },
                     [](int) {
                         return Vec{0.11458887665506896836, 0.55564889461693004477,
                                    0.85254698468667743762};
                     }});

        r.push_back({"Hartman6", 6, false, false, true, 0.0, 1.0,
                     [](const Vec& x) {
                         static const double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                                        {0.05, 10, 17, 0.1, 8, 14},
                                                        {3, 3.5, 1.7, 10, 17, 8},
                                                        {17, 8, 0.05, 10, 0.1, 14}};
                         static const double c[4] = {1, 1.2, 3, 3.2};
                         static const double P[4][6] = {
                             {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                             {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                             {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                             {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
                         double s = 0;
                         for (int i = 0; i < 4; ++i) {
                             double e = 0;
                             for (int j = 0; j < 6; ++j) e += A[i][j] * sq(x[j] - P[i][j]);
                             s -= c[i] * std::exp(-e);
                         }
                         return s;
                     },
                     [](int) { return -3.3223680114155148001; },
                     [](int) {
                         return Vec{0.20168951100670542433, 0.15001069182345796879,
                                    0.47687397422189699032, 0.27533243049405606824,
                                    0.31165161660011324245, 0.65730053406562030606};
                     }});
        return r;
    }();
    return entries;
}

const Entry& find_entry(const std::string& name) {
    for (const Entry& e : registry())
        if (name == e.name) return e;
    throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

}  // namespace

OptProblem TestProblem::to_opt_problem() const {
    OptProblem p;
    p.name = name;
    p.objective = objective;
    p.n = n;
    p.a = a;
    p.b = b;
    p.f_star = f_star;
    p.x_star = x_star;
    return p;
}

std::vector<std::string> problem_names() {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.emplace_back(e.name);
    return out;
}

TestProblem make_problem(const std::string& name, int n) {
    const Entry& e = find_entry(name);
    if (n == 0) n = e.default_n;
    if (n != e.default_n && !e.scalable)
        throw std::invalid_argument("make_problem: '" + name + "' has fixed dimension " +
                                    std::to_string(e.default_n));
    if (n < 1) throw std::invalid_argument("make_problem: dimension must be at least 1");

    TestProblem p;
    p.name = e.name;
    p.objective = e.f;
    p.n = n;
    if (name == "Branin") {
        p.a = {-5.0, 0.0};
        p.b = {10.0, 15.0};
    } else if (name == "SixHumpCamel") {
        p.a = {-3.0, -2.0};
        p.b = {3.0, 2.0};
    } else {
        p.a.assign(static_cast<std::size_t>(n), e.lo);
        p.b.assign(static_cast<std::size_t>(n), e.hi);
    }
    p.f_star = e.fstar(n);
    p.x_star = e.xstar(n);
    p.separable = e.separable;
    p.multimodal = e.multimodal;
    p.scalable = e.scalable;

    double at_opt = p.objective(p.x_star);
    if (std::abs(at_opt - p.f_star) > 1e-9)
        throw std::logic_error("make_problem: '" + name + "' fails its optimum check");
    return p;
}

std::vector<TestProblem> builtin_suite(const std::string& filter) {
    std::vector<TestProblem> out;
    for (const Entry& e : registry()) {
        if (filter == "" || filter == "all") {
        } else if (filter == "separable") {
            if (!e.separable) continue;
        } else if (filter == "multimodal") {
            if (!e.multimodal) continue;
        } else if (filter == "scalable") {
            if (!e.scalable) continue;
        } else if (filter == "unimodal") {
            if (e.multimodal) continue;
        } else {
            throw std::invalid_argument("builtin_suite: unknown filter '" + filter + "'");
        }
        out.push_back(make_problem(e.name));
    }
    return out;
}

double max_step(const std::vector<double>& x_star, const std::vector<double>& v,
                const std::vector<double>& a, const std::vector<double>& b) {
    if (x_star.size() != v.size() || a.size() != v.size() || b.size() != v.size())
        throw std::invalid_argument("max_step: dimension mismatch");
    bool any = false;
    double lambda = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0.0) continue;
        any = true;
        double slack = v[j] > 0.0 ? (b[j] - x_star[j]) / v[j] : (a[j] - x_star[j]) / v[j];
        lambda = std::min(lambda, slack);
    }
    if (!any) throw std::invalid_argument("max_step: direction is zero");
    return std::max(lambda, 0.0);
}

ShiftSpec draw_shift(const TestProblem& p, std::uint64_t seed) {
    if (p.x_star.empty()) throw std::invalid_argument("draw_shift: problem has no known minimizer");
    ShiftSpec s;
    s.seed = seed;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    };
    // Gaussian direction via Box-Muller, normalized to the unit sphere.
    std::size_t n = static_cast<std::size_t>(p.n);
    s.direction.resize(n);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double u1 = std::max(uniform(), 1e-300);
        double u2 = uniform();
        s.direction[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        norm2 += sq(s.direction[j]);
    }
    double norm = std::sqrt(norm2);
    if (norm < 1e-12) {
        s.direction.assign(n, 0.0);
        s.direction[0] = 1.0;
        norm = 1.0;
    } else {
        for (double& d : s.direction) d /= norm;
    }
    s.rates.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.rates[j] = 0.1 * uniform();
    s.step = max_step(p.x_star, s.direction, p.a, p.b);
    return s;
}

TestProblem apply_shift(const TestProblem& p, const ShiftSpec& spec) {
    TestProblem out = p;
    std::size_t n = static_cast<std::size_t>(p.n);
    std::vector<double> offset(n);
    for (std::size_t j = 0; j < n; ++j) offset[j] = spec.rates[j] * spec.step * spec.direction[j];

    Objective base = p.objective;
    std::vector<double> a = p.a, b = p.b, off = offset;
    out.objective = [base, a, b, off](const Vec& x) {
        Vec y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            y[j] = std::min(std::max(x[j] - off[j], a[j]), b[j]);
        return base(y);
    };
    for (std::size_t j = 0; j < n; ++j) out.x_star[j] = p.x_star[j] + offset[j];
    return out;
}

TestProblem shift_problem(const TestProblem& p, std::uint64_t seed) {
    return apply_shift(p, draw_shift(p, seed));
}

}  // namespace gendirect
