#pragma once

#include "walkscan/graph.hpp"

namespace walkscan {

struct F1Report {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t intersection = 0;
};

/// Harmonic mean, with H(0,0) defined as 0.
double harmonic_mean(double a, double b);

/// F1 of `found` against a non-empty `target`. An empty `found` scores 0.
F1Report f1_score(const NodeSet& found, const NodeSet& target);

struct ConductanceReport {
    std::size_t cut = 0;
    std::size_t volume = 0;
    std::size_t complement_volume = 0;
    double value = 1.0;
    bool degenerate = false;  // x empty, x = V, or min volume 0
};

/// cut(x) / min(vol(x), vol(V \ x)). Self-loops count in volume, never in
/// the cut. Degenerate inputs get the worst value 1 with the flag set.
ConductanceReport conductance_report(const Graph& g, const NodeSet& x);
double conductance(const Graph& g, const NodeSet& x);

}  // namespace walkscan
