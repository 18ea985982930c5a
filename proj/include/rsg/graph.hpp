#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsg/geometry.hpp"

namespace rsg {

enum class Color { Red, Blue };

const char* color_name(Color c);
Color parse_color(const std::string& s);

// Dense bit-packed symmetric adjacency without self loops.
class BitGraph {
public:
    BitGraph() = default;
    explicit BitGraph(int n);

    int n() const { return n_; }
    int words() const { return words_; }
    void set(int i, int j);
    bool has(int i, int j) const {
        return (rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1ULL;
    }
    const std::uint64_t* row(int i) const { return &rows_[static_cast<std::size_t>(i) * words_]; }
    int degree(int i) const;
    BitGraph complement() const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rows_;
};

struct SphereGraph {
    double k = 0;
    double p = 0;
    double c = 0;
    Sequence points;
    BitGraph red;  // blue is the complement

    int n() const { return static_cast<int>(points.size()); }
    double cutoff() const;
    bool is_red(int i, int j) const { return red.has(i, j); }
    BitGraph adjacency(Color color) const { return color == Color::Red ? red : red.complement(); }
};

struct CliqueWitness {
    Color color;
    std::vector<int> vertices;
};

inline constexpr int kMaxGraphVertices = 1 << 14;

// Colors recomputed from points with the exact comparison <x_i,x_j> <= -c/sqrt(k).
SphereGraph graph_from_points(double k, double p, double c, Sequence points);
SphereGraph build_graph(int k, double p, int n, Rng& rng, int max_n = kMaxGraphVertices);

// Exact search for a clique of the given size in the given color.
std::optional<CliqueWitness> find_mono_clique(const SphereGraph& g, Color color, int size);
std::optional<std::vector<int>> find_clique(const BitGraph& adj, int size);
bool witness_valid(const SphereGraph& g, const CliqueWitness& w);

struct CertifyResult {
    bool found = false;
    long long attempts = 0;       // attempts examined
    long long attempt_index = -1; // index of the winning attempt
    int red_size = 0;
    int blue_size = 0;
    std::optional<SphereGraph> graph;
};

// Independent resamples of G_{k,p}(n); the lowest successful attempt index wins.
CertifyResult certify_lower_bound(double C, int ell, int k, double p, int n, long long max_attempts,
                                  std::uint64_t seed, int workers = 1);

// Re-derives colors from the points and checks both forbidden cliques.
bool verify_certificate(const SphereGraph& g, int red_size, int blue_size);

struct UnionBoundReport {
    double C = 0, ell = 0, D = 0, k = 0;
    double p_C = 0, M_C = 0, eps0 = 0, eps = 0;
    double log_n = 0;
    double red_base = 0;
    double blue_base = 0;
    double bound = 0;
    double one_minus_bound = 0;
    bool bound_below_one = false;
    bool auxiliary_holds = false;
    double base_sum = 0;  // 1 + (ell a/(3 sqrt k)) (C/(1-p)^2 - 1/p^2)
    bool base_sum_below_one = false;
    double ell0 = 0;      // user-supplied lower limit on ell; not derived
    bool ell_at_least_ell0 = true;
};

// D <= 0 selects D(C) from threshold_constants. ell0 is recorded and compared, never certified.
UnionBoundReport union_bound_report(double C, double ell, double D = 0.0, double ell0 = 0.0);
// 1/2 (1+x)^{-ell^2/2} + 1/2 (1+x)^{-C^2 ell^2/2} and its gap to 1, with x = eps/M_C.
double union_bound_value(double C, double ell, double x);
double union_bound_gap(double C, double ell, double x);

}  // namespace rsg
