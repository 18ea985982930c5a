#include "rsg/estimators.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "rsg/constants.hpp"
#include "rsg/errors.hpp"
#include "rsg/frame.hpp"
#include "rsg/parallel.hpp"
#include "rsg/perfect.hpp"
#include "rsg/stats.hpp"

namespace rsg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long long kTriesPerSample = 100000000;

struct Region {
    double cutoff;
    bool red;
    double bound;
};

Region region_of(const ModelParams& p, Color color) { return {p.cutoff(), color == Color::Red, p.bound}; }

inline bool satisfies(double a, const Region& reg) { return reg.red ? a <= reg.cutoff : a > reg.cutoff; }

MCEstimate finish(const Moments& m, long long proposals, const RunConfig& cfg) {
    MCEstimate e;
    e.value = m.mean;
    e.std_error = m.std_error();
    e.n_samples = proposals;
    e.n_accepted = m.n;
    e.seed = cfg.seed;
    e.workers = std::max(1, cfg.workers);
    return e;
}

// One proposal for a point relative to an m-dimensional frame whose first rows(L)
// directions carry the sequence; the leading perfect_dims coordinates span the sequence.
bool try_frame_region(const Eigen::MatrixXd& L, int m, double k, const Region& reg, int perfect_dims, Rng& rng,
                      Draws& draws, Eigen::VectorXd& span) {
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i) g[i] = draws.gaussian(rng);
    const auto r = L.rows();
    // Red with cutoff <= 0 needs every raw inner product <= 0; reject before the chi-square draw.
    if (reg.red && reg.cutoff <= 0.0)
        for (Eigen::Index i = 0; i < r; ++i)
            if (L.row(i).dot(g) > 0.0) return false;
    const double rest = draws.chi2(rng, k + 1.0 - m);
    span = g / std::sqrt(g.squaredNorm() + rest);
    for (Eigen::Index i = 0; i < r; ++i)
        if (!satisfies(L.row(i).dot(span), reg)) return false;
    if (reg.bound < kInf && span.head(perfect_dims).norm() > reg.bound) return false;
    return true;
}

// One proposal for an r-tuple in its own Gram-Schmidt frame, aborting at the first
// violated pair (colored) or perfectness condition.
bool try_tuple(double k, int r, const Region& reg, bool colored, Rng& rng, Draws& draws, Eigen::MatrixXd& L) {
    L.setZero(r, r);
    L(0, 0) = 1.0;
    Eigen::VectorXd g;
    for (int i = 1; i < r; ++i) {
        g.resize(i);
        for (int t = 0; t < i; ++t) g[t] = draws.gaussian(rng);
        if (colored && reg.red && reg.cutoff <= 0.0)
            for (int j = 0; j < i; ++j)
                if (L.row(j).head(i).dot(g) > 0.0) return false;
        const double rest = draws.chi2(rng, k + 1.0 - i);
        const double norm = std::sqrt(g.squaredNorm() + rest);
        g /= norm;
        if (reg.bound < kInf && g.norm() > reg.bound) return false;
        if (colored)
            for (int j = 0; j < i; ++j)
                if (!satisfies(L.row(j).head(i).dot(g), reg)) return false;
        L.row(i).head(i) = g.transpose();
        L(i, i) = std::sqrt(rest) / norm;
    }
    return true;
}

void draw_tuple(double k, int r, const Region& reg, bool colored, Rng& rng, Draws& draws, Eigen::MatrixXd& L,
                long long& tries) {
    for (long long t = 0; t < kTriesPerSample; ++t) {
        ++tries;
        if (try_tuple(k, r, reg, colored, rng, draws, L)) return;
    }
    throw RejectionExhausted("tuple rejection sampling exhausted its budget");
}

void draw_frame_region(const Eigen::MatrixXd& L, int m, double k, const Region& reg, int perfect_dims, Rng& rng,
                       Draws& draws, Eigen::VectorXd& span, long long& tries) {
    for (long long t = 0; t < kTriesPerSample; ++t) {
        ++tries;
        if (try_frame_region(L, m, k, reg, perfect_dims, rng, draws, span)) return;
    }
    throw RejectionExhausted("region rejection sampling exhausted its budget");
}

// Coordinates of the sequence in its own Gram-Schmidt basis (rows are points).
Eigen::MatrixXd frame_of(const Sequence& seq) {
    Eigen::MatrixXd X = as_matrix(seq);
    SequenceDecomposition dec = dual_basis(X);
    return (dec.E.transpose() * X).transpose();
}

struct Tally {
    Moments m;
    long long tries = 0;
    std::vector<double> units;
};

}  // namespace

PredictionComparison compare(const MCEstimate& est, double prediction, std::string source) {
    PredictionComparison pc;
    pc.estimate = est;
    pc.prediction = prediction;
    pc.prediction_source = std::move(source);
    double diff = est.value - prediction;
    if (est.std_error > 0)
        pc.z_score = diff / est.std_error;
    else
        pc.z_score = diff == 0 ? 0.0 : std::copysign(kInf, diff);
    return pc;
}

double ModelParams::cutoff() const { return -c / std::sqrt(k); }

ModelParams make_params(double k, double p, double C, double ell, bool perfect) {
    ModelParams mp;
    mp.k = k;
    mp.p = p;
    mp.c = solve_cap_threshold(k, p).c;
    if (perfect) mp.bound = perfect_bound(alpha_C(C, solve_p_C(C)), ell, k);
    return mp;
}

void check_envelope(double k, int r, long long N, const Envelope& env) {
    if (k > env.max_k)
        throw InfeasibleError("k = " + std::to_string(static_cast<long long>(k)) + " exceeds the desk-scale limit " +
                              std::to_string(static_cast<long long>(env.max_k)));
    if (r > env.max_r)
        throw InfeasibleError("r = " + std::to_string(r) + " exceeds the desk-scale limit " + std::to_string(env.max_r));
    if (N > env.max_samples)
        throw InfeasibleError("N = " + std::to_string(N) + " exceeds the desk-scale limit " +
                              std::to_string(env.max_samples));
}

long long plan_samples(double k, double p, int r, Color color) {
    if (r < 2) domain_fail("plan_samples: r must be >= 2");
    const double q = color == Color::Red ? p : 1.0 - p;
    const double P0 = std::pow(q, r * (r - 1) / 2.0);
    const double a = a_coefficient(solve_cap_threshold(k, p).c);
    const double delta = a / (q * q) * (r - 1) / std::sqrt(k);
    const double N = 16.0 * (1.0 - P0) / (P0 * delta * delta);
    return static_cast<long long>(std::clamp(std::ceil(N), 1000.0, 1e8));
}

MCEstimate estimate_clique_prob(double k, double p, int r, Color color, long long N, const RunConfig& cfg,
                                double perfect_bound) {
    if (r < 2) domain_fail("estimate_clique_prob: r must be >= 2");
    if (N < 1) domain_fail("estimate_clique_prob: N must be positive");
    check_envelope(k, r, N);
    ModelParams mp;
    mp.k = k;
    mp.p = p;
    mp.c = solve_cap_threshold(k, p).c;
    mp.bound = perfect_bound;
    const Region reg = region_of(mp, color);
    auto accs = run_workers<Moments>(cfg.workers, N, cfg.seed, Purpose::Points, [&](Rng& rng, long long n, Moments& acc) {
        Draws draws;
        Eigen::MatrixXd L;
        for (long long i = 0; i < n; ++i) acc.add(try_tuple(k, r, reg, true, rng, draws, L) ? 1.0 : 0.0);
    });
    Moments tot;
    for (auto& a : accs) tot.merge(a);
    return finish(tot, N, cfg);
}

double exact_pair_region_prob(double k, double rho, double c, Color color) {
    if (!(k >= 3.0)) domain_fail("exact_pair_region_prob: k must be >= 3");
    if (!(std::abs(rho) < 1.0)) domain_fail("exact_pair_region_prob: |rho| must be < 1");
    const bool red = color == Color::Red;
    const double h = -c / std::sqrt(k);
    const double srho = std::sqrt(1.0 - rho * rho);
    // u = <z, x_1>; given u, <z, x_2> = rho u + sqrt(1-u^2) sqrt(1-rho^2) t with t a cap coordinate on S^{k-1}.
    auto integrand = [&](double u) {
        const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
        double F;
        if (su == 0.0) {
            F = (h - rho * u) >= 0.0 ? 1.0 : 0.0;
        } else {
            double t = std::clamp((h - rho * u) / (su * srho), -1.0, 1.0);
            F = cap_probability(k - 1.0, t);
        }
        return cap_density(k, u) * (red ? F : 1.0 - F);
    };
    // Beyond |u| = umax the density (1-u^2)^{(k-2)/2} is below 1e-20 of its peak.
    const double umax = std::sqrt(-std::expm1(-2.0 * 46.0 / std::max(k - 2.0, 1.0)));
    const double lo = red ? -umax : h, hi = red ? h : umax;
    if (lo >= hi) return 0.0;
    std::vector<double> cuts{lo, hi};
    const double w = 1.0 / std::sqrt(k);
    for (double s : {-32.0, -16.0, -8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 16.0, 32.0}) cuts.push_back(s * w);
    // kinks where the inner argument reaches +-1
    const double disc = (1.0 - h * h) * (1.0 - rho * rho);
    if (disc >= 0.0) {
        cuts.push_back(h * rho - std::sqrt(disc));
        cuts.push_back(h * rho + std::sqrt(disc));
    }
    std::vector<double> pts;
    for (double x : cuts)
        if (x >= lo && x <= hi) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, pts[i], pts[i + 1], 15, 1e-12);
    return total;
}

bool region_member(const Sequence& seq, const UnitVector& z, Color color, const ModelParams& params) {
    const Region reg = region_of(params, color);
    for (const auto& x : seq)
        if (!satisfies(x.dot(z), reg)) return false;
    if (params.perfect_only() && !seq.empty()) {
        std::vector<Vec> cols;
        for (const auto& x : seq) cols.push_back(x.coords());
        if (Subspace::span_of(cols).project(z.coords()).norm() > params.bound) return false;
    }
    return true;
}

namespace {

struct FullRegion {
    Subspace sub;
    Region reg;
    const Sequence* seq;

    bool member(const UnitVector& z) const {
        for (const auto& x : *seq)
            if (!satisfies(x.dot(z), reg)) return false;
        if (reg.bound < kInf && sub.dim() > 0 && sub.project(z.coords()).norm() > reg.bound) return false;
        return true;
    }
};

FullRegion full_region(const Sequence& seq, Color color, const ModelParams& params) {
    if (params.perfect_only() && seq.size() > 1 && !is_perfect(as_matrix(seq), params.bound).is_perfect)
        domain_fail("perfect neighborhood requested for a non-perfect sequence");
    std::vector<Vec> cols;
    for (const auto& x : seq) cols.push_back(x.coords());
    return {Subspace::span_of(cols), region_of(params, color), &seq};
}

}  // namespace

RegionSample sample_in_region(const Sequence& seq, Color color, const ModelParams& params, Rng& rng,
                              long long max_tries) {
    const FullRegion fr = full_region(seq, color, params);
    const int k = static_cast<int>(params.k);
    for (long long t = 1; t <= max_tries; ++t) {
        UnitVector z = sample_unit_vector(k, rng);
        if (fr.member(z)) return {std::move(z), t};
    }
    throw RejectionExhausted("sample_in_region: no acceptance within " + std::to_string(max_tries) + " tries");
}

MCEstimate region_acceptance(const Sequence& seq, Color color, const ModelParams& params, long long N,
                             const RunConfig& cfg) {
    check_envelope(params.k, static_cast<int>(seq.size()), N);
    const FullRegion fr = full_region(seq, color, params);
    const int k = static_cast<int>(params.k);
    auto accs = run_workers<Moments>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, Moments& acc) {
        for (long long i = 0; i < n; ++i) acc.add(fr.member(sample_unit_vector(k, rng)) ? 1.0 : 0.0);
    });
    Moments tot;
    for (auto& a : accs) tot.merge(a);
    return finish(tot, N, cfg);
}

MCEstimate estimate_kappa(double k, double p, double ell, double C, int r, Color color, long long N,
                          const RunConfig& cfg, int inner, std::vector<double>* unit_values) {
    if (r < 1) domain_fail("estimate_kappa: r must be >= 1");
    if (inner < 1) domain_fail("estimate_kappa: inner sample count must be >= 1");
    check_envelope(k, r, N);
    const ModelParams mp = make_params(k, p, C, ell, true);
    const Region reg = region_of(mp, color);
    auto accs = run_workers<Tally>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, Tally& acc) {
        Draws draws;
        Eigen::MatrixXd L;
        Eigen::VectorXd span;
        for (long long i = 0; i < n; ++i) {
            draw_tuple(k, r, reg, true, rng, draws, L, acc.tries);
            int hits = 0;
            for (int j = 0; j < inner; ++j) hits += try_frame_region(L, r, k, reg, r, rng, draws, span) ? 1 : 0;
            const double h = static_cast<double>(hits) / inner;
            acc.m.add(h);
            if (unit_values) acc.units.push_back(h);
        }
    });
    Moments tot;
    long long tries = 0;
    for (auto& a : accs) {
        tot.merge(a.m);
        tries += a.tries;
        if (unit_values) unit_values->insert(unit_values->end(), a.units.begin(), a.units.end());
    }
    return finish(tot, tries, cfg);
}

PredictionComparison estimate_Q(const Sequence& seq, const UnitVector& y, Color color, const ModelParams& params,
                                long long N, const RunConfig& cfg) {
    const int r = static_cast<int>(seq.size());
    check_envelope(params.k, r, N);
    if (N < 1) domain_fail("estimate_Q: N must be positive");
    Sequence all = seq;
    all.push_back(y);
    if (params.perfect_only() && !is_perfect(as_matrix(all), params.bound).is_perfect)
        domain_fail("estimate_Q: (x[r], y) must be perfect");
    const Eigen::MatrixXd F = frame_of(all);  // (r+1) x (r+1), last row is y
    const Eigen::MatrixXd Lx = F.topRows(r);
    const Eigen::VectorXd ly = F.row(r).transpose();
    const Region reg = region_of(params, color);
    const double k = params.k;

    struct QTally {
        Moments inner;
        long long hits = 0;
        long long tries = 0;
    };
    auto accs = run_workers<QTally>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, QTally& acc) {
        Draws draws;
        Eigen::VectorXd span;
        for (long long i = 0; i < n; ++i) {
            draw_frame_region(Lx, r + 1, k, reg, r, rng, draws, span, acc.tries);
            acc.inner.add(ly.head(r).dot(span.head(r)));
            if (satisfies(ly.dot(span), reg) && !(reg.bound < kInf && span.norm() > reg.bound)) ++acc.hits;
        }
    });
    Moments inner;
    long long hits = 0, tries = 0;
    for (auto& a : accs) {
        inner.merge(a.inner);
        hits += a.hits;
        tries += a.tries;
    }
    MCEstimate est;
    est.n_accepted = inner.n;
    est.n_samples = tries;
    est.value = static_cast<double>(hits) / static_cast<double>(inner.n);
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(inner.n));
    est.seed = cfg.seed;
    est.workers = std::max(1, cfg.workers);
    const double slope = std::sqrt(k / (2.0 * std::numbers::pi)) * std::exp(-0.5 * params.c * params.c);
    const double pred = color == Color::Red ? params.p - slope * inner.mean : 1.0 - params.p + slope * inner.mean;
    return compare(est, pred, color == Color::Red ? "first-order red neighborhood" : "first-order blue neighborhood");
}

PredictionComparison estimate_coefficient_mean(double k, double p, int r, int s_index, Color color, long long N,
                                               const RunConfig& cfg, const ModelParams& params,
                                               const std::optional<Sequence>& seq) {
    if (r < 1 || s_index < 1 || s_index > r) domain_fail("estimate_coefficient_mean: need 1 <= s <= r");
    if (N < 1) domain_fail("estimate_coefficient_mean: N must be positive");
    check_envelope(k, r, N);
    const Region reg = region_of(params, color);
    std::optional<Eigen::MatrixXd> fixed;
    std::optional<SequenceDecomposition> fixed_dec;
    if (seq) {
        if (static_cast<int>(seq->size()) != r) domain_fail("estimate_coefficient_mean: sequence length must equal r");
        if (params.perfect_only() && !is_perfect(as_matrix(*seq), params.bound).is_perfect)
            domain_fail("estimate_coefficient_mean: supplied sequence is not perfect");
        fixed = frame_of(*seq);
        fixed_dec = dual_basis(Eigen::MatrixXd(fixed->transpose()));
    }
    auto accs = run_workers<Tally>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, Tally& acc) {
        Draws draws;
        Eigen::MatrixXd L;
        Eigen::VectorXd span;
        for (long long i = 0; i < n; ++i) {
            std::optional<SequenceDecomposition> dec;
            if (fixed) {
                L = *fixed;
            } else {
                draw_tuple(k, r, reg, false, rng, draws, L, acc.tries);
            }
            draw_frame_region(L, r, k, reg, r, rng, draws, span, acc.tries);
            Eigen::VectorXd a = fixed ? corner_coordinates(*fixed_dec, span)
                                      : corner_coordinates(dual_basis(Eigen::MatrixXd(L.transpose())), span);
            acc.m.add(a[s_index - 1]);
        }
    });
    Moments tot;
    long long tries = 0;
    for (auto& a : accs) {
        tot.merge(a.m);
        tries += a.tries;
    }
    const double base = std::exp(-0.5 * params.c * params.c) / std::sqrt(2.0 * std::numbers::pi * k);
    const double pred = color == Color::Red ? -base / p : base / (1.0 - p);
    return compare(finish(tot, tries, cfg), pred, "coefficient-mean first order");
}

PredictionComparison estimate_projection_inner(double k, double p, int r, int s, Color color, long long N,
                                               const RunConfig& cfg, const ModelParams& params) {
    if (r < 1 || s < 0 || s > r) domain_fail("estimate_projection_inner: need 0 <= s <= r and r >= 1");
    if (N < 1) domain_fail("estimate_projection_inner: N must be positive");
    check_envelope(k, r, N);
    const Region reg = region_of(params, color);
    const double q = color == Color::Red ? p : 1.0 - p;
    const double pred = std::exp(-params.c * params.c) / (2.0 * std::numbers::pi * q * q) * s / k;
    if (s == 0) {
        MCEstimate e;
        e.n_samples = e.n_accepted = N;
        e.seed = cfg.seed;
        e.workers = std::max(1, cfg.workers);
        return compare(e, pred, "projection-inner first order");
    }
    auto accs = run_workers<Tally>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, Tally& acc) {
        Draws draws;
        Eigen::MatrixXd L;
        Eigen::VectorXd ys, zs;
        for (long long i = 0; i < n; ++i) {
            draw_tuple(k, r, reg, false, rng, draws, L, acc.tries);
            draw_frame_region(L, r, k, reg, r, rng, draws, ys, acc.tries);
            const Eigen::MatrixXd Ls = L.topLeftCorner(s, s);
            draw_frame_region(Ls, s, k, reg, s, rng, draws, zs, acc.tries);
            acc.m.add(ys.head(s).dot(zs));
        }
    });
    Moments tot;
    long long tries = 0;
    for (auto& a : accs) {
        tot.merge(a.m);
        tries += a.tries;
    }
    return compare(finish(tot, tries, cfg), pred, "projection-inner first order");
}

HatzReport hatz_uniformity_test(const Sequence& seq, Color color, const ModelParams& params, long long N,
                                const RunConfig& cfg, int directions, double alpha) {
    const int r = static_cast<int>(seq.size());
    const int k = static_cast<int>(params.k);
    if (r >= k) domain_fail("hatz_uniformity_test: need r < k");
    if (N < 2 || directions < 1) domain_fail("hatz_uniformity_test: need N >= 2 and at least one direction");
    check_envelope(params.k, r, N);
    const FullRegion fr = full_region(seq, color, params);

    // Fixed orthonormal test directions inside the complement of span(seq).
    std::vector<Vec> dirs;
    {
        Rng rng = substream(cfg.seed, 0, Purpose::Verify);
        std::normal_distribution<double> normal;
        for (int j = 0; j < directions; ++j) {
            Vec w(k + 1);
            for (int i = 0; i <= k; ++i) w[i] = normal(rng);
            for (int pass = 0; pass < 2; ++pass) {
                w -= fr.sub.project(w);
                for (const auto& d : dirs) w -= d.dot(w) * d;
            }
            dirs.push_back(w / w.norm());
        }
    }

    struct HTally {
        std::vector<double> tilde;
        std::vector<std::vector<double>> coords;
        long long tries = 0;
    };
    auto accs = run_workers<HTally>(cfg.workers, N, cfg.seed, Purpose::Region, [&](Rng& rng, long long n, HTally& acc) {
        acc.coords.resize(static_cast<std::size_t>(directions));
        for (long long i = 0; i < n; ++i) {
            UnitVector z;
            for (;;) {
                ++acc.tries;
                z = sample_unit_vector(k, rng);
                if (fr.member(z)) break;
                if (acc.tries > kTriesPerSample) throw RejectionExhausted("hatz_uniformity_test: rejection budget exhausted");
            }
            Vec zt = fr.sub.dim() > 0 ? fr.sub.project(z.coords()) : Vec::Zero(k + 1);
            Vec zh = z.coords() - zt;
            const double nh = zh.norm();
            acc.tilde.push_back(zt.norm());
            for (int j = 0; j < directions; ++j) acc.coords[j].push_back(dirs[j].dot(zh) / nh);
        }
    });
    HatzReport rep;
    std::vector<double> tilde;
    std::vector<std::vector<double>> coords(static_cast<std::size_t>(directions));
    for (auto& a : accs) {
        rep.tries += a.tries;
        tilde.insert(tilde.end(), a.tilde.begin(), a.tilde.end());
        for (int j = 0; j < directions; ++j) coords[j].insert(coords[j].end(), a.coords[j].begin(), a.coords[j].end());
    }
    rep.n = static_cast<long long>(tilde.size());
    const double m = static_cast<double>(k - r);
    rep.pass = true;
    for (int j = 0; j < directions; ++j) {
        HatzCoordinate hc;
        CoMoments cm;
        for (std::size_t i = 0; i < tilde.size(); ++i) cm.add(tilde[i], coords[j][i]);
        hc.correlation = r == 0 ? 0.0 : cm.correlation();
        hc.correlation_bound = 4.0 / std::sqrt(static_cast<double>(rep.n));
        std::vector<double> xs = coords[j];
        hc.ks = ks_statistic(xs, [m](double t) { return cap_probability(m, std::clamp(t, -1.0, 1.0)); });
        hc.critical = ks_critical(alpha, rep.n);
        hc.ks_pass = hc.ks <= hc.critical;
        hc.corr_pass = std::abs(hc.correlation) <= hc.correlation_bound;
        rep.pass = rep.pass && hc.ks_pass && hc.corr_pass;
        rep.coords.push_back(hc);
    }
    return rep;
}

PerfectFraction perfect_fraction(double k, double ell, double C, int r, long long N, const RunConfig& cfg,
                                 double alpha_override) {
    if (r < 1) domain_fail("perfect_fraction: r must be >= 1");
    if (N < 1) domain_fail("perfect_fraction: N must be positive");
    check_envelope(k, r, N);
    const double alpha = alpha_override > 0.0 ? alpha_override : alpha_C(C, solve_p_C(C));
    const double bound = perfect_bound(alpha, ell, k);
    PerfectFraction out;
    if (r == 1) {
        out.estimate.value = 1.0;
        out.estimate.n_samples = out.estimate.n_accepted = N;
        out.estimate.seed = cfg.seed;
        out.estimate.workers = std::max(1, cfg.workers);
        out.union_lower = out.tail_lower = 1.0;
        return out;
    }
    const Region reg{0.0, true, bound};
    auto accs = run_workers<Moments>(cfg.workers, N, cfg.seed, Purpose::Sequence, [&](Rng& rng, long long n, Moments& acc) {
        Draws draws;
        Eigen::MatrixXd L;
        for (long long i = 0; i < n; ++i) acc.add(try_tuple(k, r, reg, false, rng, draws, L) ? 1.0 : 0.0);
    });
    Moments tot;
    for (auto& a : accs) tot.merge(a);
    out.estimate = finish(tot, N, cfg);
    out.union_lower = 1.0 - (r - 1) * projection_norm_tail(k, r - 1, std::min(bound, 1.0));
    out.tail_lower = 1.0 - (r - 1) * projection_norm_tail(k, r - 1, std::min(bound / 2.0, 1.0));
    return out;
}

}  // namespace rsg
