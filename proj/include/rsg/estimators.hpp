#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rsg/geometry.hpp"
#include "rsg/graph.hpp"

namespace rsg {

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long n_samples = 0;   // proposals drawn
    long long n_accepted = 0;  // samples entering the average
    std::uint64_t seed = 0;
    int workers = 1;
};

struct PredictionComparison {
    MCEstimate estimate;
    double prediction = 0.0;
    std::string prediction_source;
    double z_score = 0.0;
};

PredictionComparison compare(const MCEstimate& est, double prediction, std::string source);

struct RunConfig {
    std::uint64_t seed = 0;
    int workers = 1;
};

// Threshold and perfectness bound shared by every conditioned sampler.
struct ModelParams {
    double k = 0;
    double p = 0;
    double c = 0;
    double bound = std::numeric_limits<double>::infinity();  // alpha_C sqrt(ell) / sqrt(k)

    double cutoff() const;
    bool perfect_only() const { return bound < std::numeric_limits<double>::infinity(); }
};

// perfect = false leaves the bound infinite.
ModelParams make_params(double k, double p, double C = 2.0, double ell = 1.0, bool perfect = true);

struct Envelope {
    double max_k = 3e4;
    int max_r = 8;
    long long max_samples = 100000000;
};

void check_envelope(double k, int r, long long N, const Envelope& env = {});

// N with stderr <= effect/4 for a monochromatic r-clique probability, effect from a_{k,p}.
long long plan_samples(double k, double p, int r, Color color);

MCEstimate estimate_clique_prob(double k, double p, int r, Color color, long long N, const RunConfig& cfg,
                                double perfect_bound = std::numeric_limits<double>::infinity());

double exact_pair_region_prob(double k, double rho, double c, Color color);

struct RegionSample {
    UnitVector z;
    long long tries = 0;
};

RegionSample sample_in_region(const Sequence& seq, Color color, const ModelParams& params, Rng& rng,
                              long long max_tries);
bool region_member(const Sequence& seq, const UnitVector& z, Color color, const ModelParams& params);

// Fraction of uniform proposals landing in the (perfect) region of seq.
MCEstimate region_acceptance(const Sequence& seq, Color color, const ModelParams& params, long long N,
                             const RunConfig& cfg);

// unit_values, when given, receives the per-tuple inner estimates in worker order.
MCEstimate estimate_kappa(double k, double p, double ell, double C, int r, Color color, long long N,
                          const RunConfig& cfg, int inner = 256, std::vector<double>* unit_values = nullptr);

PredictionComparison estimate_Q(const Sequence& seq, const UnitVector& y, Color color, const ModelParams& params,
                                long long N, const RunConfig& cfg);

// seq, when given, is held fixed; otherwise a fresh perfect sequence is drawn per sample.
PredictionComparison estimate_coefficient_mean(double k, double p, int r, int s_index, Color color, long long N,
                                               const RunConfig& cfg, const ModelParams& params,
                                               const std::optional<Sequence>& seq = std::nullopt);

PredictionComparison estimate_projection_inner(double k, double p, int r, int s, Color color, long long N,
                                               const RunConfig& cfg, const ModelParams& params);

struct HatzCoordinate {
    double ks = 0;
    double critical = 0;
    double correlation = 0;
    double correlation_bound = 0;
    bool ks_pass = false;
    bool corr_pass = false;
};

struct HatzReport {
    std::vector<HatzCoordinate> coords;
    long long n = 0;
    long long tries = 0;
    bool pass = false;
};

HatzReport hatz_uniformity_test(const Sequence& seq, Color color, const ModelParams& params, long long N,
                                const RunConfig& cfg, int directions = 3, double alpha = 1e-3);

struct PerfectFraction {
    MCEstimate estimate;
    double union_lower = 0;  // 1 - (r-1) tail at alpha_C sqrt(ell)/sqrt(k)
    double tail_lower = 0;  // 1 - (r-1) tail at alpha_C sqrt(ell)/(2 sqrt(k))
};

PerfectFraction perfect_fraction(double k, double ell, double C, int r, long long N, const RunConfig& cfg,
                                 double alpha_override = 0.0);

}  // namespace rsg
