#include "sgact/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sgact {

namespace {

double entropy_map(const std::vector<long long>& deg, const std::vector<double>& a) {
    double s = 0.0;
    for (size_t i = 0; i < deg.size(); ++i) s += a[i] * double(deg[i]);
    return std::log(s);
}

} // namespace

PressureReport pressure_report(const SemigroupSpec& spec, const RandomWalk& walk) {
    if (walk.p() != spec.p())
        throw ValidationError("pressure_report: walk length must match generator count");
    PressureReport r;
    r.walk = walk;
    auto deg = spec.degrees();
    double mean_deg = 0.0, fibered = 0.0, shannon = 0.0;
    for (int i = 0; i < spec.p(); ++i) {
        double a = walk.weights[size_t(i)];
        mean_deg += a * double(deg[size_t(i)]);
        fibered += a * std::log(double(deg[size_t(i)]));
        if (a > 0.0) shannon -= a * std::log(a); // 0 log 0 = 0
    }
    r.relative_entropy = std::log(mean_deg);
    r.annealed = r.relative_entropy;
    r.quenched = fibered;
    r.fibered = fibered;
    r.shannon = shannon;
    r.skew_measure_entropy = shannon + fibered;
    return r;
}

RandomWalk distinguished_vector_m(const SemigroupSpec& spec) {
    auto deg = spec.degrees();
    double total = 0.0;
    for (long long d : deg) total += double(d);
    std::vector<double> w;
    w.reserve(deg.size());
    for (long long d : deg) w.push_back(double(d) / total);
    return RandomWalk(std::move(w));
}

EqualDegreeReport equal_degree_test(const SemigroupSpec& spec) {
    EqualDegreeReport rep;
    auto deg = spec.degrees();
    RandomWalk sym = RandomWalk::symmetric(spec.p());
    PressureReport pr = pressure_report(spec, sym);
    rep.entropy_gap = pr.relative_entropy - pr.fibered;
    rep.entropy_equals_fibered_at_symmetric = std::fabs(rep.entropy_gap) < 1e-12;

    RandomWalk m = distinguished_vector_m(spec);
    rep.m_is_symmetric = true;
    for (double w : m.weights)
        if (std::fabs(w - 1.0 / spec.p()) > 1e-12) rep.m_is_symmetric = false;

    rep.degrees_all_equal =
        std::all_of(deg.begin(), deg.end(), [&](long long d) { return d == deg.front(); });

    rep.agree = (rep.entropy_equals_fibered_at_symmetric == rep.m_is_symmetric) &&
                (rep.m_is_symmetric == rep.degrees_all_equal);
    return rep;
}

EntropyMaxResult entropy_map_maximize(const SemigroupSpec& spec, int grid_resolution) {
    if (grid_resolution < 10)
        throw ValidationError("entropy_map_maximize: grid_resolution must be >= 10");
    auto deg = spec.degrees();
    long long dmax = *std::max_element(deg.begin(), deg.end());

    EntropyMaxResult res;
    res.value = std::log(double(dmax));
    for (int i = 0; i < spec.p(); ++i)
        if (deg[size_t(i)] == dmax) res.max_face.push_back(i);
    std::vector<double> w(size_t(spec.p()), 0.0);
    for (int i : res.max_face) w[size_t(i)] = 1.0 / double(res.max_face.size());
    res.maximizer = RandomWalk(w);

    // Verification pass over a simplex grid with roughly grid_resolution nodes.
    int steps;
    if (spec.p() == 1) {
        steps = 1;
    } else if (spec.p() == 2) {
        steps = grid_resolution - 1;
    } else {
        steps = 2;
        auto nodes = [&](int m) {
            long long c = 1; // C(m + p - 1, p - 1)
            for (int i = 1; i < spec.p(); ++i) c = c * (m + i) / i;
            return c;
        };
        while (nodes(steps + 1) <= grid_resolution) ++steps;
    }
    res.grid_max = -1e300;
    std::vector<int> k(size_t(spec.p()), 0);
    std::function<void(int, int)> scan = [&](int pos, int remaining) {
        if (pos == spec.p() - 1) {
            k[size_t(pos)] = remaining;
            std::vector<double> a(size_t(spec.p()));
            for (int i = 0; i < spec.p(); ++i) a[size_t(i)] = double(k[size_t(i)]) / double(steps);
            double v = entropy_map(deg, a);
            if (v > res.grid_max) {
                res.grid_max = v;
                res.grid_argmax = RandomWalk(a);
            }
            return;
        }
        for (int j = 0; j <= remaining; ++j) {
            k[size_t(pos)] = j;
            scan(pos + 1, remaining - j);
        }
    };
    res.grid_argmax = res.maximizer;
    if (spec.p() == 1) {
        res.grid_max = entropy_map(deg, {1.0});
    } else {
        scan(0, steps);
    }
    return res;
}

MatchingWalkResult matching_walk(const SemigroupSpec& spec) {
    MatchingWalkResult out;
    auto deg = spec.degrees();
    double target = 0.0;
    for (long long d : deg) target += double(d);
    target = std::log(target / double(spec.p())); // h_top(S)

    bool all_equal =
        std::all_of(deg.begin(), deg.end(), [&](long long d) { return d == deg.front(); });
    if (all_equal) {
        out.whole_simplex = true;
        out.walk = RandomWalk::symmetric(spec.p());
        out.description = "every walk matches (equal degrees); symmetric vector reported";
        return out;
    }

    if (spec.p() == 2) {
        double l1 = std::log(double(deg[0])), l2 = std::log(double(deg[1]));
        double a1 = (target - l2) / (l1 - l2);
        if (a1 < 0.0 || a1 > 1.0) {
            out.description = "no walk on the simplex solves the matching equation";
            return out;
        }
        out.walk = RandomWalk({a1, 1.0 - a1});
        out.unique = true;
        out.description = "unique solution of a1 log d1 + a2 log d2 = log((d1+d2)/2)";
        return out;
    }

    // p >= 3: the solutions form the slice {sum a_i log d_i = h_top(S)} of the
    // simplex; report the point on the edge between the extreme degrees.
    auto imin = std::min_element(deg.begin(), deg.end()) - deg.begin();
    auto imax = std::max_element(deg.begin(), deg.end()) - deg.begin();
    double lmin = std::log(double(deg[size_t(imin)]));
    double lmax = std::log(double(deg[size_t(imax)]));
    double t = (target - lmin) / (lmax - lmin);
    std::vector<double> w(size_t(spec.p()), 0.0);
    w[size_t(imin)] = 1.0 - t;
    w[size_t(imax)] = t;
    out.walk = RandomWalk(w);
    out.description =
        "one-parameter family: simplex slice {sum a_i log d_i = h_top(S)}; edge representative reported";
    return out;
}

} // namespace sgact
