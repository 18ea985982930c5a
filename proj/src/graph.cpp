#include "rsg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "rsg/constants.hpp"
#include "rsg/errors.hpp"

namespace rsg {

const char* color_name(Color c) { return c == Color::Red ? "red" : "blue"; }

Color parse_color(const std::string& s) {
    if (s == "red") return Color::Red;
    if (s == "blue") return Color::Blue;
    domain_fail("unknown color '" + s + "'");
}

BitGraph::BitGraph(int n) : n_(n), words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * words_, 0) {}

void BitGraph::set(int i, int j) {
    rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= 1ULL << (j & 63);
    rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |= 1ULL << (i & 63);
}

int BitGraph::degree(int i) const {
    int d = 0;
    for (int w = 0; w < words_; ++w) d += std::popcount(row(i)[w]);
    return d;
}

BitGraph BitGraph::complement() const {
    BitGraph g(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (!has(i, j)) g.set(i, j);
    return g;
}

double SphereGraph::cutoff() const { return -c / std::sqrt(k); }

SphereGraph graph_from_points(double k, double p, double c, Sequence points) {
    SphereGraph g;
    g.k = k;
    g.p = p;
    g.c = c;
    g.points = std::move(points);
    const int n = g.n();
    g.red = BitGraph(n);
    const double cut = g.cutoff();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.points[i].dot(g.points[j]) <= cut) g.red.set(i, j);
    return g;
}

SphereGraph build_graph(int k, double p, int n, Rng& rng, int max_n) {
    if (n < 2) domain_fail("build_graph: n must be >= 2");
    if (n > max_n) throw ResourceError("build_graph: n exceeds the configured vertex cap");
    CapThreshold t = solve_cap_threshold(k, p);
    return graph_from_points(k, p, t.c, sample_sequence(k, n, rng));
}

namespace {

class CliqueSearch {
public:
    CliqueSearch(const BitGraph& adj, int target) : target_(target) {
        const int n = adj.n();
        order_.resize(static_cast<std::size_t>(n));
        std::iota(order_.begin(), order_.end(), 0);
        std::vector<int> deg(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) deg[i] = adj.degree(i);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return deg[a] > deg[b]; });
        g_ = BitGraph(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (adj.has(order_[i], order_[j])) g_.set(i, j);
    }

    std::optional<std::vector<int>> run() {
        const int n = g_.n();
        std::vector<std::uint64_t> P(static_cast<std::size_t>(g_.words()), 0);
        for (int i = 0; i < n; ++i) P[i >> 6] |= 1ULL << (i & 63);
        if (!expand(P)) return std::nullopt;
        std::vector<int> out;
        for (int v : R_) out.push_back(order_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static bool empty(const std::vector<std::uint64_t>& s) {
        return std::all_of(s.begin(), s.end(), [](std::uint64_t w) { return w == 0; });
    }

    // Greedy sequential coloring; vertices come out grouped by nondecreasing color.
    void color_sort(const std::vector<std::uint64_t>& P, std::vector<int>& verts, std::vector<int>& cols) const {
        std::vector<std::uint64_t> U = P, Q;
        int color = 0;
        while (!empty(U)) {
            ++color;
            Q = U;
            for (std::size_t w = 0; w < Q.size(); ++w) {
                while (Q[w]) {
                    int v = static_cast<int>(w * 64) + std::countr_zero(Q[w]);
                    Q[w] &= Q[w] - 1;
                    U[w] &= ~(1ULL << (v & 63));
                    const std::uint64_t* nb = g_.row(v);
                    for (std::size_t x = w; x < Q.size(); ++x) Q[x] &= ~nb[x];
                    verts.push_back(v);
                    cols.push_back(color);
                }
            }
        }
    }

    bool expand(std::vector<std::uint64_t> P) {
        if (static_cast<int>(R_.size()) >= target_) return true;
        std::vector<int> verts, cols;
        color_sort(P, verts, cols);
        for (int idx = static_cast<int>(verts.size()) - 1; idx >= 0; --idx) {
            if (static_cast<int>(R_.size()) + cols[idx] < target_) return false;
            int v = verts[idx];
            R_.push_back(v);
            std::vector<std::uint64_t> next(P.size());
            const std::uint64_t* nb = g_.row(v);
            for (std::size_t w = 0; w < P.size(); ++w) next[w] = P[w] & nb[w];
            if (expand(std::move(next))) return true;
            R_.pop_back();
            P[v >> 6] &= ~(1ULL << (v & 63));
        }
        return false;
    }

    int target_;
    BitGraph g_;
    std::vector<int> order_;
    std::vector<int> R_;
};

}  // namespace

std::optional<std::vector<int>> find_clique(const BitGraph& adj, int size) {
    if (size <= 0) return std::vector<int>{};
    if (size > adj.n()) return std::nullopt;
    return CliqueSearch(adj, size).run();
}

std::optional<CliqueWitness> find_mono_clique(const SphereGraph& g, Color color, int size) {
    if (size < 2 || size > g.n()) {
        if (size > g.n()) return std::nullopt;
        domain_fail("find_mono_clique: size must be >= 2");
    }
    auto found = find_clique(g.adjacency(color), size);
    if (!found) return std::nullopt;
    return CliqueWitness{color, std::move(*found)};
}

bool witness_valid(const SphereGraph& g, const CliqueWitness& w) {
    const double cut = g.cutoff();
    for (std::size_t a = 0; a < w.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < w.vertices.size(); ++b) {
            bool red = g.points[w.vertices[a]].dot(g.points[w.vertices[b]]) <= cut;
            if (red != (w.color == Color::Red)) return false;
        }
    return true;
}

bool verify_certificate(const SphereGraph& g, int red_size, int blue_size) {
    SphereGraph fresh = graph_from_points(g.k, g.p, g.c, g.points);
    if (red_size <= fresh.n() && find_clique(fresh.adjacency(Color::Red), red_size)) return false;
    if (blue_size <= fresh.n() && find_clique(fresh.adjacency(Color::Blue), blue_size)) return false;
    return true;
}

CertifyResult certify_lower_bound(double C, int ell, int k, double p, int n, long long max_attempts,
                                  std::uint64_t seed, int workers) {
    if (!(C >= 1.0)) domain_fail("certify_lower_bound: C must be >= 1");
    if (ell < 2) domain_fail("certify_lower_bound: ell must be >= 2");
    if (n < 2) domain_fail("certify_lower_bound: n must be >= 2");
    if (max_attempts < 1) domain_fail("certify_lower_bound: max_attempts must be >= 1");
    if (n > kMaxGraphVertices) throw ResourceError("certify_lower_bound: n exceeds the vertex cap");
    const int blue = static_cast<int>(std::ceil(C * ell - 1e-12));
    // Exact clique search is exponential in the clique size; beyond this the search is not honest.
    const double log10_space = (std::lgamma(n + 1.0) - std::lgamma(ell + 1.0) - std::lgamma(n - ell + 1.0)) / std::log(10.0);
    if (log10_space > 12.0)
        throw InfeasibleError("certify_lower_bound: exact search over C(n, ell) subsets is beyond desk scale");
    const double c = solve_cap_threshold(k, p).c;
    if (workers < 1) workers = 1;

    CertifyResult res;
    res.red_size = ell;
    res.blue_size = blue;
    const long long batch = static_cast<long long>(workers) * 16;
    for (long long start = 0; start < max_attempts; start += batch) {
        const long long stop = std::min(max_attempts, start + batch);
        std::vector<long long> winner(static_cast<std::size_t>(workers), -1);
        std::vector<std::optional<SphereGraph>> graphs(static_cast<std::size_t>(workers));
        auto task = [&](int w) {
            for (long long a = start + w; a < stop; a += workers) {
                Rng rng = substream(seed, static_cast<std::uint64_t>(a), Purpose::Certify);
                SphereGraph g = graph_from_points(k, p, c, sample_sequence(k, n, rng));
                if (!find_clique(g.adjacency(Color::Red), ell) && !find_clique(g.adjacency(Color::Blue), blue)) {
                    winner[w] = a;
                    graphs[w] = std::move(g);
                    return;
                }
            }
        };
        if (workers == 1) {
            task(0);
        } else {
            std::vector<std::jthread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(task, w);
        }
        long long best = -1;
        int best_w = -1;
        for (int w = 0; w < workers; ++w)
            if (winner[w] >= 0 && (best < 0 || winner[w] < best)) {
                best = winner[w];
                best_w = w;
            }
        if (best >= 0) {
            res.found = true;
            res.attempt_index = best;
            res.attempts = best + 1;
            res.graph = std::move(graphs[best_w]);
            return res;
        }
        res.attempts = stop;
    }
    return res;
}

double union_bound_value(double C, double ell, double x) {
    double l = std::log1p(x);
    return 0.5 * std::exp(-0.5 * ell * ell * l) + 0.5 * std::exp(-0.5 * C * C * ell * ell * l);
}

double union_bound_gap(double C, double ell, double x) {
    double l = std::log1p(x);
    return -0.5 * std::expm1(-0.5 * ell * ell * l) - 0.5 * std::expm1(-0.5 * C * C * ell * ell * l);
}

UnionBoundReport union_bound_report(double C, double ell, double D, double ell0) {
    if (!(C > 1.0)) domain_fail("union_bound_report: C must be > 1");
    if (!(ell >= 2.0)) domain_fail("union_bound_report: ell must be >= 2");
    ThresholdConstants t = threshold_constants(C);
    UnionBoundReport r;
    r.C = C;
    r.ell = ell;
    r.D = D > 0.0 ? D : t.D;
    r.k = r.D * r.D * ell * ell;
    r.p_C = t.p_C;
    r.M_C = t.M_C;
    r.eps0 = t.eps0;
    r.eps = r.M_C * t.eps0 / (6.0 * r.D);
    const double x = r.eps / r.M_C;
    r.log_n = ell * std::log(r.M_C + r.eps);
    // ell / sqrt(k) = 1 / D
    r.red_base = r.p_C - r.eps0 / r.D;
    r.blue_base = 1.0 - r.p_C - r.eps0 / r.D;
    r.bound = union_bound_value(C, ell, x);
    r.one_minus_bound = union_bound_gap(C, ell, x);
    r.bound_below_one = r.one_minus_bound > 0.0;
    r.auxiliary_holds = std::log1p(-r.eps0 / (2.0 * r.p_C * r.D)) <= -3.0 * std::log1p(x);
    const double a = a_coefficient(solve_cap_threshold(r.k, r.p_C).c);
    const double deficit = ell * a / (3.0 * std::sqrt(r.k)) * (1.0 / (r.p_C * r.p_C) - C / ((1 - r.p_C) * (1 - r.p_C)));
    r.base_sum = 1.0 - deficit;
    r.base_sum_below_one = deficit > 0.0;
    r.ell0 = ell0;
    r.ell_at_least_ell0 = ell >= ell0;
    return r;
}

}  // namespace rsg
